#include <doctest.h>

#include <string>

#include "fluidscore/parse.h"
#include "fluidscore/plot.h"
#include "support/test_support.h"

using namespace fluidscore;
namespace ft = fluidscore::testing;

namespace {

size_t countOccurrences(const std::string& haystack, const std::string& needle) {
  size_t count = 0;
  size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

struct Rendered {
  Score score;
  std::vector<Pathline> lines;
  std::vector<PhaseSegment> phases;
};

Rendered analyzeFixture(const char* name) {
  Rendered r;
  r.score = parseScore(ft::readFixture(name));
  r.lines = extractPathlines(r.score);
  r.phases = classifyPhases(r.lines, r.score.tick_count);
  return r;
}

}  // namespace

TEST_CASE("svg output is deterministic with one circle per event") {
  Rendered r = analyzeFixture("opening.fls");
  std::string svg = emitScatterSvg(r.score, r.lines, r.phases);
  CHECK(svg == emitScatterSvg(r.score, r.lines, r.phases));
  CHECK(countOccurrences(svg, "<circle") == r.score.events.size());
  // Background plus one shaded rect per phase segment.
  CHECK(countOccurrences(svg, "<rect") == 1 + r.phases.size());
  // First two layers take the red and blue palette slots.
  CHECK(svg.find("#d62728") != std::string::npos);
  CHECK(svg.find("#1f77b4") != std::string::npos);
}

TEST_CASE("empty score renders axes only") {
  Score empty;
  std::string svg = emitScatterSvg(empty, {}, {});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(countOccurrences(svg, "<circle") == 0);
  CHECK(countOccurrences(svg, "<line") >= 2);  // the two axes
}

TEST_CASE("turbulent register descends past the zero gridline") {
  Rendered r = analyzeFixture("turbulent.fls");
  bool below_zero = false;
  for (const auto& e : r.score.events) below_zero = below_zero || e.y() < 0;
  REQUIRE(below_zero);
  std::string svg = emitScatterSvg(r.score, r.lines, r.phases);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // zero gridline
  CHECK(svg.find(std::string(phaseShade(PhaseLabel::Turbulent))) !=
        std::string::npos);
}

TEST_CASE("phase shading follows each fixture's dominant state") {
  struct Expectation {
    const char* fixture;
    PhaseLabel label;
  };
  for (const Expectation& e : {Expectation{"opening.fls", PhaseLabel::Laminar},
                               Expectation{"transition.fls", PhaseLabel::Transitional},
                               Expectation{"turbulent.fls", PhaseLabel::Turbulent}}) {
    Rendered r = analyzeFixture(e.fixture);
    std::string svg = emitScatterSvg(r.score, r.lines, r.phases);
    CHECK(svg.find(std::string(phaseShade(e.label))) != std::string::npos);
  }
}

TEST_CASE("y-range modes") {
  Rendered r = analyzeFixture("opening.fls");
  PlotSpec table6;
  table6.y_range = YRangeMode::Table6;
  std::string fixed = emitScatterSvg(r.score, r.lines, r.phases, table6);
  std::string aut = emitScatterSvg(r.score, r.lines, r.phases);
  CHECK(fixed != aut);
  CHECK(fixed.find(">-24<") != std::string::npos);  // bottom legend row
}

TEST_CASE("scatter csv carries the phase label of each point") {
  Rendered r = analyzeFixture("opening.fls");
  std::string csv = emitScatterCsv(r.score, r.lines, r.phases);
  CHECK(csv == emitScatterCsv(r.score, r.lines, r.phases));
  CHECK(countOccurrences(csv, "\n") == r.score.events.size() + 1);
  CHECK(csv.rfind("t,y,pathline_id,pressure,phase_label\n", 0) == 0);

  // Rows before t=8 are the sparse lead-in, the rest laminar.
  size_t pos = csv.find('\n') + 1;
  while (pos < csv.size()) {
    size_t end = csv.find('\n', pos);
    std::string row = csv.substr(pos, end - pos);
    int t = std::stoi(row.substr(0, row.find(',')));
    std::string label = row.substr(row.rfind(',') + 1);
    CHECK(label == (t < 8 ? "Sparse" : "Laminar"));
    pos = end + 1;
  }
}

TEST_CASE("single-event score reports a sparse point") {
  Score s = parseScore("0: B4@p\n");
  auto lines = extractPathlines(s);
  auto phases = classifyPhases(lines, s.tick_count);
  std::string csv = emitScatterCsv(s, lines, phases);
  CHECK(csv == "t,y,pathline_id,pressure,phase_label\n0,23,0,9,Sparse\n");
}
