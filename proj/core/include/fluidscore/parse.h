// Plain-text score format: parsing, dynamics resolution, canonical
// serialization, and CSV export.
//
// Grammar (one onset column per line):
//   header line:     #key: value            (#title and #offset are special)
//   column line:     <t>: <entry> <entry> ...   or   <t>: -   (rest column)
//   entry:           [<voice>=]<pitch>[@<dynamic>]
//   pitch:           LETTER + optional b/# + octave digit  (Ab3, C#5, B4)
//   directive line:  !cresc <t0>..<t1> [<target-dynamic>] [voices=a,b,...]
//                    !decresc ...
//   bar line:        |   (zero-width separator, ignored)
//
// Column numbering must be contiguous. `#offset: N` starts numbering at N
// and records [0, N) as implicit rests, so excerpt encodings can keep the
// absolute timeline indices of the full piece.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluidscore/dynamics.h"
#include "fluidscore/score.h"

namespace fluidscore {

/// Parse or dynamics-resolution failure, with 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ColumnEntry {
  std::optional<int> voice;
  PitchSpec pitch;
  std::optional<Dynamic> dynamic;
  int line = 0;
  int column = 0;
};

struct Column {
  TimeIndex t = 0;
  std::vector<ColumnEntry> entries;  // empty = rest column
  int line = 0;
};

enum class DirectiveKind { Crescendo, Decrescendo };

/// A gradual-dynamics span. With no target, the net change is +1
/// (crescendo) or -1 (decrescendo). An empty voice list applies the
/// directive to every voice with events in the span.
struct GradualDirective {
  DirectiveKind kind = DirectiveKind::Crescendo;
  TimeIndex span_start = 0;
  TimeIndex span_end = 0;  // inclusive
  std::optional<Dynamic> target;
  std::vector<int> voices;
  int line = 0;
};

struct ScoreDocument {
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<Column> columns;
  std::vector<GradualDirective> directives;
  TimeIndex offset = 0;
  std::string title;
};

/// Parses the text grammar into a document. Throws ParseError with
/// line/column on malformed tokens or non-contiguous column numbering.
ScoreDocument parseDocument(const std::string& text);

/// Resolves per-event pressures: explicit markings persist per voice until
/// superseded; gradual spans step by integers, monotone, placed as evenly
/// as possible, reaching the terminal value at the span's final column.
/// Result is parallel to doc.columns / entries.
std::vector<std::vector<int>> resolveDynamics(const ScoreDocument& doc);

/// Assembles the document plus resolved pressures into a canonical Score.
Score buildScore(const ScoreDocument& doc);

/// parseDocument + buildScore.
Score parseScore(const std::string& text);

/// Canonical text form. Dynamics are emitted only where a voice's pressure
/// changes, leading rests collapse to #offset, and entries follow canonical
/// event order, so serializing twice is byte-identical and
/// parseScore(serializeScore(s)) == s.
std::string serializeScore(const Score& score);

/// CSV export, one row per event in canonical order:
/// t,y,pitch,pressure,voice (voice empty when untagged). Byte-stable.
std::string exportCsv(const Score& score);

}  // namespace fluidscore
