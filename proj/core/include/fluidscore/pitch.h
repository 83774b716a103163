// Spelled pitches and their chromatic flow-field coordinate.

#pragma once

#include <string>

namespace fluidscore {

enum class Letter { C, D, E, F, G, A, B };
enum class Accidental { Flat, Natural, Sharp };

/// A spelled pitch: letter, accidental, and octave in [0, 9].
///
/// Spellings are preserved for reports; all analysis works on the chromatic
/// Y coordinate, so enharmonic spellings collapse to the same integer.
struct PitchSpec {
  Letter letter = Letter::C;
  Accidental accidental = Accidental::Natural;
  int octave = 4;

  bool operator==(const PitchSpec&) const = default;
};

/// Chromatic flow-field coordinate. C3 = 0, each octave spans 12 integers,
/// so y = 12 * (octave - 3) + semitone(letter) + accidental offset.
/// Total over all PitchSpecs; enharmonic equivalents map to the same value.
int pitchToY(const PitchSpec& p);

/// Inverse of pitchToY with canonical spelling (naturals, flats for the
/// five black keys). Supported range is y in [-36, 59]; throws
/// std::out_of_range outside it.
PitchSpec yToPitch(int y);

inline constexpr int kYMin = -36;
inline constexpr int kYMax = 59;

/// Token form used by the score grammar: letter, optional 'b'/'#', octave
/// digit. Examples: "B4", "Ab3", "C#5".
std::string pitchToken(const PitchSpec& p);

/// Parses a pitch token. Returns false on malformed input.
bool parsePitchToken(const std::string& token, PitchSpec& out);

}  // namespace fluidscore
