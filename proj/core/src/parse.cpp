#include "fluidscore/parse.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

namespace fluidscore {

namespace {

constexpr int kAnonVoice = -1;  // stream key for untagged entries

struct Token {
  std::string text;
  int column;  // 1-based char offset in the line
};

std::vector<Token> splitTokens(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool parseInt(const std::string& s, long& out) {
  if (s.empty()) return false;
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000L) return false;
  }
  out = v;
  return true;
}

ColumnEntry parseEntry(const Token& tok, int line_no) {
  ColumnEntry e;
  e.line = line_no;
  e.column = tok.column;
  std::string body = tok.text;

  size_t eq = body.find('=');
  if (eq != std::string::npos) {
    long voice = 0;
    if (!parseInt(body.substr(0, eq), voice)) {
      throw ParseError(line_no, tok.column, "malformed voice tag in '" + tok.text + "'");
    }
    e.voice = static_cast<int>(voice);
    body = body.substr(eq + 1);
  }

  std::string pitch_part = body;
  size_t at = body.find('@');
  if (at != std::string::npos) {
    pitch_part = body.substr(0, at);
    std::string dyn_part = body.substr(at + 1);
    Dynamic d;
    if (!parseDynamicToken(dyn_part, d)) {
      throw ParseError(line_no, tok.column, "unknown dynamic token '" + dyn_part + "'");
    }
    e.dynamic = d;
  }
  if (!parsePitchToken(pitch_part, e.pitch)) {
    throw ParseError(line_no, tok.column, "unknown pitch token '" + pitch_part + "'");
  }
  return e;
}

GradualDirective parseDirective(const std::vector<Token>& toks, int line_no) {
  GradualDirective dir;
  dir.line = line_no;
  dir.kind = toks[0].text == "!cresc" ? DirectiveKind::Crescendo
                                      : DirectiveKind::Decrescendo;
  if (toks.size() < 2) {
    throw ParseError(line_no, 1, "directive needs a span, e.g. !cresc 4..12");
  }
  const std::string& span = toks[1].text;
  size_t dots = span.find("..");
  long t0 = 0, t1 = 0;
  if (dots == std::string::npos || !parseInt(span.substr(0, dots), t0) ||
      !parseInt(span.substr(dots + 2), t1)) {
    throw ParseError(line_no, toks[1].column, "malformed span '" + span + "'");
  }
  dir.span_start = static_cast<TimeIndex>(t0);
  dir.span_end = static_cast<TimeIndex>(t1);
  if (dir.span_end < dir.span_start) {
    throw ParseError(line_no, toks[1].column, "empty directive span");
  }

  for (size_t i = 2; i < toks.size(); ++i) {
    const std::string& t = toks[i].text;
    if (t.rfind("voices=", 0) == 0) {
      std::stringstream ss(t.substr(7));
      std::string item;
      while (std::getline(ss, item, ',')) {
        long v = 0;
        if (!parseInt(item, v)) {
          throw ParseError(line_no, toks[i].column, "malformed voice list '" + t + "'");
        }
        dir.voices.push_back(static_cast<int>(v));
      }
      if (dir.voices.empty()) {
        throw ParseError(line_no, toks[i].column, "empty voice list");
      }
    } else {
      Dynamic d;
      if (dir.target || !parseDynamicToken(t, d)) {
        throw ParseError(line_no, toks[i].column, "unknown dynamic token '" + t + "'");
      }
      dir.target = d;
    }
  }
  return dir;
}

}  // namespace

ScoreDocument parseDocument(const std::string& text) {
  ScoreDocument doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool saw_column = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = trim(line);
    if (body.empty()) continue;

    if (body[0] == '#') {
      size_t colon = body.find(':');
      if (colon == std::string::npos) {
        throw ParseError(line_no, 1, "malformed header line (expected '#key: value')");
      }
      std::string key = trim(body.substr(1, colon - 1));
      std::string value = trim(body.substr(colon + 1));
      if (key == "offset") {
        long off = 0;
        if (!parseInt(value, off)) {
          throw ParseError(line_no, 1, "malformed #offset value '" + value + "'");
        }
        if (saw_column) {
          throw ParseError(line_no, 1, "#offset must precede the first column");
        }
        doc.offset = static_cast<TimeIndex>(off);
      } else if (key == "title") {
        doc.title = value;
      }
      doc.header.emplace_back(key, value);
      continue;
    }

    if (body == "|") continue;  // bar separator, zero width

    if (body[0] == '!') {
      auto toks = splitTokens(line);
      if (toks[0].text != "!cresc" && toks[0].text != "!decresc") {
        throw ParseError(line_no, toks[0].column,
                         "unknown directive '" + toks[0].text + "'");
      }
      doc.directives.push_back(parseDirective(toks, line_no));
      continue;
    }

    // Column line: <t>: entries...
    size_t colon = body.find(':');
    if (colon == std::string::npos) {
      throw ParseError(line_no, 1, "expected a column line '<t>: ...'");
    }
    auto toks = splitTokens(line);
    long t = 0;
    if (toks.empty() || toks[0].text.back() != ':' ||
        !parseInt(toks[0].text.substr(0, toks[0].text.size() - 1), t)) {
      throw ParseError(line_no, 1, "malformed column index");
    }
    TimeIndex expected = doc.offset + static_cast<TimeIndex>(doc.columns.size());
    if (static_cast<TimeIndex>(t) != expected) {
      throw ParseError(line_no, toks[0].column,
                       "non-contiguous column numbering (expected " +
                           std::to_string(expected) + ", got " +
                           std::to_string(t) + ")");
    }
    Column col;
    col.t = static_cast<TimeIndex>(t);
    col.line = line_no;
    if (toks.size() == 2 && toks[1].text == "-") {
      // rest column
    } else {
      if (toks.size() < 2) {
        throw ParseError(line_no, toks[0].column,
                         "column needs at least one entry or '-'");
      }
      for (size_t i = 1; i < toks.size(); ++i) {
        col.entries.push_back(parseEntry(toks[i], line_no));
      }
    }
    doc.columns.push_back(std::move(col));
    saw_column = true;
  }

  TimeIndex tick_count = doc.offset + static_cast<TimeIndex>(doc.columns.size());
  for (const auto& dir : doc.directives) {
    if (dir.span_start < doc.offset || dir.span_end >= tick_count) {
      throw ParseError(dir.line, 1, "directive span references missing columns");
    }
  }
  return doc;
}

namespace {

// A stream's dynamic level changes at set points: explicit markings and the
// unit steps of gradual spans.
struct SetPoint {
  TimeIndex t;
  int value;
};

struct StreamState {
  std::vector<SetPoint> points;  // sorted by t after resolution
  std::vector<std::pair<TimeIndex, TimeIndex>> gradual_spans;
};

int valueAt(const std::vector<SetPoint>& points, TimeIndex t, bool& found) {
  int v = 0;
  found = false;
  for (const auto& p : points) {
    if (p.t > t) break;
    v = p.value;
    found = true;
  }
  return v;
}

}  // namespace

std::vector<std::vector<int>> resolveDynamics(const ScoreDocument& doc) {
  // Explicit markings per stream. A marking applies to the stream's whole
  // column; two different markings for one stream at one column conflict.
  std::map<int, std::map<TimeIndex, std::pair<int, const ColumnEntry*>>> marks;
  std::map<int, std::vector<TimeIndex>> event_ticks;
  for (const auto& col : doc.columns) {
    for (const auto& entry : col.entries) {
      int stream = entry.voice.value_or(kAnonVoice);
      event_ticks[stream].push_back(col.t);
      if (!entry.dynamic) continue;
      int value = dynamicToPressure(*entry.dynamic);
      auto [it, inserted] = marks[stream].emplace(
          col.t, std::make_pair(value, &entry));
      if (!inserted && it->second.first != value) {
        throw ParseError(entry.line, entry.column,
                         "conflicting dynamics for one voice at column " +
                             std::to_string(col.t));
      }
    }
  }

  // Per-stream set points: explicit markings first, then gradual spans in
  // timeline order, each stepping from the value prevailing at its start.
  std::map<int, StreamState> streams;
  for (const auto& [stream, stream_marks] : marks) {
    for (const auto& [t, mark] : stream_marks) {
      streams[stream].points.push_back({t, mark.first});
    }
  }
  for (const auto& [stream, ticks] : event_ticks) {
    streams[stream];  // ensure stream exists even without markings
    (void)ticks;
  }

  std::vector<const GradualDirective*> dirs;
  for (const auto& d : doc.directives) dirs.push_back(&d);
  std::sort(dirs.begin(), dirs.end(),
            [](const GradualDirective* a, const GradualDirective* b) {
              return std::tie(a->span_start, a->span_end, a->line) <
                     std::tie(b->span_start, b->span_end, b->line);
            });

  for (const GradualDirective* dir : dirs) {
    std::vector<int> affected;
    if (!dir->voices.empty()) {
      affected = dir->voices;
      for (int v : affected) {
        if (!event_ticks.count(v)) {
          throw ParseError(dir->line, 1,
                           "directive names unknown voice " + std::to_string(v));
        }
      }
    } else {
      for (const auto& [stream, ticks] : event_ticks) {
        bool in_span = std::any_of(ticks.begin(), ticks.end(), [&](TimeIndex t) {
          return t >= dir->span_start && t <= dir->span_end;
        });
        if (in_span) affected.push_back(stream);
      }
    }

    for (int stream : affected) {
      auto& st = streams[stream];
      for (const auto& [prev_start, prev_end] : st.gradual_spans) {
        if (dir->span_start <= prev_end && prev_start <= dir->span_end) {
          throw ParseError(dir->line, 1,
                           "overlapping gradual spans for one voice");
        }
      }
      auto mark_it = marks.find(stream);
      if (mark_it != marks.end()) {
        for (const auto& [t, mark] : mark_it->second) {
          if (t >= dir->span_start && t <= dir->span_end) {
            throw ParseError(mark.second->line, mark.second->column,
                             "explicit dynamic inside a gradual span");
          }
        }
      }

      std::sort(st.points.begin(), st.points.end(),
                [](const SetPoint& a, const SetPoint& b) { return a.t < b.t; });
      bool found = false;
      int prevailing = valueAt(st.points, dir->span_start - 1, found);
      if (!found) {
        throw ParseError(dir->line, 1,
                         "gradual span has no prevailing dynamic for voice " +
                             (stream == kAnonVoice ? std::string("(untagged)")
                                                   : std::to_string(stream)));
      }
      int target;
      if (dir->target) {
        target = dynamicToPressure(*dir->target);
      } else {
        target = prevailing + (dir->kind == DirectiveKind::Crescendo ? 1 : -1);
        if (target < kPressureMin || target > kPressureMax) {
          throw ParseError(dir->line, 1, "gradual change leaves the dynamic range");
        }
      }
      if (dir->kind == DirectiveKind::Crescendo && target < prevailing) {
        throw ParseError(dir->line, 1, "crescendo target below prevailing dynamic");
      }
      if (dir->kind == DirectiveKind::Decrescendo && target > prevailing) {
        throw ParseError(dir->line, 1, "decrescendo target above prevailing dynamic");
      }

      // Unit steps at span_start + floor(k*N/S), k = 1..S: monotone, as
      // evenly spaced as possible, terminal value at the final column.
      int steps = std::abs(target - prevailing);
      int sign = target >= prevailing ? 1 : -1;
      TimeIndex n = dir->span_end - dir->span_start;
      for (int k = 1; k <= steps; ++k) {
        TimeIndex at = dir->span_start +
                       static_cast<TimeIndex>(static_cast<long>(k) * n / steps);
        st.points.push_back({at, prevailing + sign * k});
      }
      st.gradual_spans.emplace_back(dir->span_start, dir->span_end);
    }
  }

  for (auto& [stream, st] : streams) {
    std::sort(st.points.begin(), st.points.end(),
              [](const SetPoint& a, const SetPoint& b) { return a.t < b.t; });
  }

  std::vector<std::vector<int>> out(doc.columns.size());
  for (size_t ci = 0; ci < doc.columns.size(); ++ci) {
    const auto& col = doc.columns[ci];
    out[ci].reserve(col.entries.size());
    for (const auto& entry : col.entries) {
      int stream = entry.voice.value_or(kAnonVoice);
      bool found = false;
      int v = valueAt(streams[stream].points, col.t, found);
      if (!found) {
        throw ParseError(entry.line, entry.column,
                         "voice has no initial dynamic at or before its first event");
      }
      out[ci].push_back(v);
    }
  }
  return out;
}

Score buildScore(const ScoreDocument& doc) {
  auto pressures = resolveDynamics(doc);
  Score s;
  s.title = doc.title;
  s.tick_count = doc.offset + static_cast<TimeIndex>(doc.columns.size());
  for (TimeIndex t = 0; t < doc.offset; ++t) s.rests.push_back(t);
  for (size_t ci = 0; ci < doc.columns.size(); ++ci) {
    const auto& col = doc.columns[ci];
    if (col.entries.empty()) {
      s.rests.push_back(col.t);
      continue;
    }
    for (size_t ei = 0; ei < col.entries.size(); ++ei) {
      const auto& entry = col.entries[ei];
      s.events.push_back(NoteEvent{col.t, entry.pitch, pressures[ci][ei], entry.voice});
    }
  }
  std::sort(s.events.begin(), s.events.end(), canonicalLess);
  return s;
}

Score parseScore(const std::string& text) { return buildScore(parseDocument(text)); }

std::string serializeScore(const Score& score) {
  std::string out;
  if (!score.title.empty()) {
    out += "#title: " + score.title + "\n";
  }
  TimeIndex offset = 0;
  {
    size_t ri = 0;
    while (offset < score.tick_count && ri < score.rests.size() &&
           score.rests[ri] == offset) {
      ++offset;
      ++ri;
    }
  }
  if (offset > 0) {
    out += "#offset: " + std::to_string(offset) + "\n";
  }

  std::map<int, int> prevailing;  // stream -> last emitted pressure
  size_t idx = 0;
  for (TimeIndex t = offset; t < score.tick_count; ++t) {
    out += std::to_string(t) + ":";
    bool any = false;
    while (idx < score.events.size() && score.events[idx].onset == t) {
      const NoteEvent& e = score.events[idx];
      int stream = e.voice.value_or(kAnonVoice);
      out += ' ';
      if (e.voice) out += std::to_string(*e.voice) + "=";
      out += pitchToken(e.pitch);
      auto it = prevailing.find(stream);
      if (it == prevailing.end() || it->second != e.pressure) {
        out += '@';
        out += dynamicToken(Dynamic{e.pressure});
        prevailing[stream] = e.pressure;
      }
      any = true;
      ++idx;
    }
    if (!any) out += " -";
    out += '\n';
  }
  return out;
}

std::string exportCsv(const Score& score) {
  std::string out = "t,y,pitch,pressure,voice\n";
  for (const auto& e : score.events) {
    out += std::to_string(e.onset) + "," + std::to_string(e.y()) + "," +
           pitchToken(e.pitch) + "," + std::to_string(e.pressure) + ",";
    if (e.voice) out += std::to_string(*e.voice);
    out += '\n';
  }
  return out;
}

}  // namespace fluidscore
