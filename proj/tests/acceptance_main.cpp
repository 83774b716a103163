// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one PASS/FAIL line each. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fluidscore/dynamics.h"
#include "fluidscore/flow.h"
#include "fluidscore/parse.h"
#include "fluidscore/pathline.h"
#include "fluidscore/pitch.h"
#include "fluidscore/plot.h"
#include "fluidscore/report.h"
#include "support/test_support.h"

using namespace fluidscore;
namespace ft = fluidscore::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  try {
    body();
    std::cout << "[PASS] " << name << "\n";
  } catch (const std::exception& e) {
    ++g_failures;
    std::cout << "[FAIL] " << name << ": " << e.what() << "\n";
  }
}

void require(bool cond, const std::string& detail) {
  if (!cond) throw std::runtime_error(detail);
}

struct Analyzed {
  Score score;
  std::vector<Pathline> lines;
  FlowAnalysis analysis;
};

Analyzed analyzeFixture(const std::string& name) {
  Analyzed a;
  a.score = parseScore(ft::readFixture(name));
  a.lines = extractPathlines(a.score);
  a.analysis = analyzeFlow(a.lines, a.score.tick_count, FlowConfig{});
  return a;
}

const Pathline& lowestLayer(const std::vector<Pathline>& lines) {
  const Pathline* lowest = &lines.front();
  for (const auto& p : lines) {
    if (p.events.front().y() < lowest->events.front().y()) lowest = &p;
  }
  return *lowest;
}

PhaseLabel labelAt(const std::vector<PhaseSegment>& segments, TimeIndex t) {
  for (const auto& seg : segments) {
    if (t >= seg.start && t < seg.end) return seg.label;
  }
  throw std::runtime_error("tick " + std::to_string(t) + " not covered");
}

std::string runCli(const std::string& args) {
#ifdef FLUIDSCORE_CLI_PATH
  fs::path dir = fs::temp_directory_path() / "fluidscore_acceptance";
  fs::create_directories(dir);
  fs::path out = dir / "out.bin";
  std::string cmd = std::string(FLUIDSCORE_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "cli run failed: " + args);
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
#else
  (void)args;
  throw std::runtime_error("cli path not configured");
#endif
}

}  // namespace

int main() {
  criterion("table4: 18 dynamic levels map bijectively onto 1..18", [] {
    const auto& tokens = dynamicTokens();
    require(tokens.size() == 18, "expected 18 markings");
    std::set<int> seen;
    int prev = 0;
    for (const auto& token : tokens) {
      Dynamic d;
      require(parseDynamicToken(token, d), "unparsed marking");
      int pa = dynamicToPressure(d);
      require(pa == prev + 1, "not strictly increasing by one");
      require(seen.insert(pa).second, "duplicate pressure value");
      prev = pa;
    }
    require(seen.size() == 18 && *seen.begin() == 1 && *seen.rbegin() == 18,
            "range is not exactly 1..18");
    Dynamic probe;
    require(parseDynamicToken("pppp", probe) && dynamicToPressure(probe) == 6,
            "pppp != 6");
    require(parseDynamicToken("p", probe) && dynamicToPressure(probe) == 9,
            "p != 9");
    require(parseDynamicToken("fffffff", probe) && dynamicToPressure(probe) == 18,
            "fffffff != 18");
  });

  criterion("table6: spot values and full-range round trip", [] {
    require(pitchToY({Letter::B, Accidental::Natural, 6}) == 47, "B6 != 47");
    require(pitchToY({Letter::C, Accidental::Natural, 4}) == 12, "C4 != 12");
    require(pitchToY({Letter::C, Accidental::Natural, 3}) == 0, "C3 != 0");
    require(pitchToY({Letter::D, Accidental::Flat, 3}) == 1, "Db3 != 1");
    require(pitchToY({Letter::C, Accidental::Natural, 1}) == -24, "C1 != -24");
    require(pitchToY({Letter::B, Accidental::Flat, 3}) == 10, "Bb3 != 10");
    for (int y = -36; y <= 59; ++y) {
      require(pitchToY(yToPitch(y)) == y,
              "round trip failed at y=" + std::to_string(y));
    }
  });

  criterion("opening fixture: layer spans, adjacency, density, laminar window", [] {
    Analyzed a = analyzeFixture("opening.fls");
    require(a.lines.size() >= 2, "expected at least two layers");
    require(a.lines[0].spanStart() == 0 && a.lines[0].spanEnd() == 15,
            "layer 1 span is not t0..t15");
    require(a.lines[0].events.front().y() == 23 &&
                a.lines[0].events.back().y() == 8,
            "layer 1 does not descend B4 to Ab3");
    for (size_t i = 1; i < a.lines[0].events.size(); ++i) {
      require(a.lines[0].events[i].y() == a.lines[0].events[i - 1].y() - 1,
              "layer 1 is not chromatic");
    }
    require(a.lines[1].spanStart() == 8 && a.lines[1].spanEnd() == 23,
            "layer 2 span is not t8..t23");
    auto adj = adjacencyAt(a.lines, 8);
    require(adj.pairs.size() == 1 && adj.pairs[0].interval == 8,
            "adjacency at t8 is not a single minor sixth");
    require(a.analysis.density[7] == 1 && a.analysis.density[8] == 2,
            "density does not step 1 -> 2 at t8");
    require(checkLaminar(a.lines, 8, 15).holds, "window t8..t15 not laminar");
    require(labelAt(a.analysis.phases, 8) == PhaseLabel::Laminar &&
                labelAt(a.analysis.phases, 15) == PhaseLabel::Laminar,
            "t8..t15 not inside a Laminar segment");
  });

  criterion("transition fixture: t198 pressure step, halts at t206/t213", [] {
    Analyzed a = analyzeFixture("transition.fls");
    const Pathline& bass = lowestLayer(a.lines);
    bool found_change = false;
    for (const auto& c : a.analysis.pressure_changes) {
      if (c.pathline == bass.id && c.t == 198) {
        require(c.from == 6 && c.to == 9 && c.delta == 3,
                "t198 change is not 6 -> 9 (+3)");
        found_change = true;
      }
    }
    require(found_change, "no pressure change at t198 in the bass layer");

    std::vector<SpotEvent> bass_spots;
    for (const auto& s : a.analysis.spots) {
      require(s.pathline == bass.id, "spot outside the bass layer");
      bass_spots.push_back(s);
    }
    require(bass_spots.size() == 2, "expected exactly two spots");
    require(bass_spots[0].t == 206 && bass_spots[0].kind == SpotKind::Halt,
            "first spot is not a halt at t206");
    require(bass_spots[1].t == 213 && bass_spots[1].kind == SpotKind::Halt,
            "second spot is not a halt at t213");
    for (TimeIndex t = 198; t <= 213; ++t) {
      require(labelAt(a.analysis.phases, t) == PhaseLabel::Transitional,
              "t" + std::to_string(t) + " not Transitional");
    }
  });

  criterion("turbulent fixture: pressure set {10,11,12,13}, spotted layers", [] {
    Analyzed a = analyzeFixture("turbulent.fls");
    const PhaseSegment* turbulent = nullptr;
    for (const auto& seg : a.analysis.phases) {
      if (seg.label == PhaseLabel::Turbulent) {
        require(turbulent == nullptr, "more than one turbulent segment");
        turbulent = &seg;
      }
    }
    require(turbulent != nullptr, "no turbulent segment found");
    auto pressures = pressuresInSpan(a.lines, turbulent->start, turbulent->end);
    require(pressures == std::vector<int>{10, 11, 12, 13},
            "pressure set is not {10,11,12,13}");

    std::set<int> spotted;
    std::set<SpotKind> kinds;
    for (const auto& s : a.analysis.spots) {
      if (s.t >= turbulent->start && s.t < turbulent->end) {
        spotted.insert(s.pathline);
        kinds.insert(s.kind);
      }
    }
    require(spotted.size() >= 2, "fewer than two layers carry spots");
    require(kinds.count(SpotKind::Reversal) == 1 && kinds.count(SpotKind::Halt) == 1,
            "both spot kinds must appear");
  });

  criterion("plug flow: shared velocity profile of 1 across all fixtures", [] {
    for (const char* name : {"opening.fls", "transition.fls", "turbulent.fls"}) {
      Analyzed a = analyzeFixture(name);
      require(a.analysis.velocity.constant, std::string(name) + ": not constant");
      require(a.analysis.velocity.shared.has_value() &&
                  *a.analysis.velocity.shared == Rational(1, 1),
              std::string(name) + ": profile != 1");
    }
  });

  criterion("oracle equivalence: 500 partition scores, 200 labeled scores", [] {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20220426);
    for (int trial = 0; trial < 500; ++trial) {
      Score s = ft::randomPartitionScore(rng);
      auto expected = ft::oraclePartition(s);
      auto actual = ft::pathlinesAsChains(extractPathlines(s));
      require(actual == expected,
              "partition mismatch on trial " + std::to_string(trial));
    }
    FlowConfig config;
    for (int trial = 0; trial < 200; ++trial) {
      Score s = ft::randomPhaseScore(rng);
      auto lines = extractPathlines(s);
      auto segments = classifyPhases(lines, s.tick_count, config);
      TimeIndex last_start =
          std::max<TimeIndex>(0, s.tick_count - config.window_size);
      for (TimeIndex t = 0; t < s.tick_count; ++t) {
        TimeIndex wstart = std::min(t, last_start);
        TimeIndex wend =
            std::min<TimeIndex>(wstart + config.window_size, s.tick_count);
        require(labelAt(segments, t) ==
                    ft::oracleWindowLabel(lines, wstart, wend, config),
                "label mismatch on trial " + std::to_string(trial) + " at t=" +
                    std::to_string(t));
      }
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    require(elapsed < 60, "oracle suite exceeded 60 s");
  });

  criterion("determinism: analyze and plot bytes identical across runs", [] {
    for (const char* name : {"opening.fls", "transition.fls", "turbulent.fls",
                             "decay.fls"}) {
      std::string path = ft::fixturePath(name);
      require(runCli("analyze " + path) == runCli("analyze " + path),
              std::string(name) + ": analyze bytes differ");
      fs::path dir = fs::temp_directory_path() / "fluidscore_acceptance";
      for (const char* format : {"svg", "csv"}) {
        std::string stem = fs::path(name).stem().string();
        runCli("plot " + path + " --format " + format + " --out " + dir.string());
        std::ifstream in1(dir / (stem + "." + format), std::ios::binary);
        std::ostringstream first;
        first << in1.rdbuf();
        runCli("plot " + path + " --format " + format + " --out " + dir.string());
        std::ifstream in2(dir / (stem + "." + format), std::ios::binary);
        std::ostringstream second;
        second << in2.rdbuf();
        require(first.str() == second.str() && !first.str().empty(),
                std::string(name) + ": plot bytes differ");
      }
    }
  });

  criterion("monotone sensitivity: an injected spot never labels laminar", [] {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
      int spot_slot = 0;
      Score laminar = ft::randomLaminarScore(rng, spot_slot);
      auto clean = classifyPhases(extractPathlines(laminar), laminar.tick_count);
      require(clean.size() == 1 && clean[0].label == PhaseLabel::Laminar,
              "control window is not laminar");
      TimeIndex spot_t = 0;
      Score disturbed = ft::injectSpot(laminar, rng, spot_slot, spot_t);
      auto segments =
          classifyPhases(extractPathlines(disturbed), disturbed.tick_count);
      require(labelAt(segments, spot_t) != PhaseLabel::Laminar,
              "window with injected spot still labeled laminar");
    }
  });

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << g_failures << " criterion(s) failed\n";
  return 1;
}
