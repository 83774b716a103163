#include "fluidscore/pitch.h"

#include <array>
#include <stdexcept>

namespace fluidscore {

namespace {

constexpr std::array<int, 7> kLetterSemitone = {0, 2, 4, 5, 7, 9, 11};

constexpr int accidentalOffset(Accidental a) {
  switch (a) {
    case Accidental::Flat:
      return -1;
    case Accidental::Sharp:
      return 1;
    case Accidental::Natural:
      break;
  }
  return 0;
}

// Canonical spelling per pitch class: naturals where possible, flats for the
// five black keys.
struct Spelling {
  Letter letter;
  Accidental accidental;
};

constexpr std::array<Spelling, 12> kCanonicalSpelling = {{
    {Letter::C, Accidental::Natural},
    {Letter::D, Accidental::Flat},
    {Letter::D, Accidental::Natural},
    {Letter::E, Accidental::Flat},
    {Letter::E, Accidental::Natural},
    {Letter::F, Accidental::Natural},
    {Letter::G, Accidental::Flat},
    {Letter::G, Accidental::Natural},
    {Letter::A, Accidental::Flat},
    {Letter::A, Accidental::Natural},
    {Letter::B, Accidental::Flat},
    {Letter::B, Accidental::Natural},
}};

constexpr char kLetterName[7] = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};

}  // namespace

int pitchToY(const PitchSpec& p) {
  return 12 * (p.octave - 3) + kLetterSemitone[static_cast<size_t>(p.letter)] +
         accidentalOffset(p.accidental);
}

PitchSpec yToPitch(int y) {
  if (y < kYMin || y > kYMax) {
    throw std::out_of_range("y coordinate " + std::to_string(y) +
                            " outside supported range [-36, 59]");
  }
  // floor division so negative y lands in the right octave
  int octave_off = y >= 0 ? y / 12 : -((-y + 11) / 12);
  int pc = y - 12 * octave_off;
  const Spelling& s = kCanonicalSpelling[static_cast<size_t>(pc)];
  return PitchSpec{s.letter, s.accidental, octave_off + 3};
}

std::string pitchToken(const PitchSpec& p) {
  std::string out;
  out += kLetterName[static_cast<size_t>(p.letter)];
  if (p.accidental == Accidental::Flat) out += 'b';
  if (p.accidental == Accidental::Sharp) out += '#';
  out += static_cast<char>('0' + p.octave);
  return out;
}

bool parsePitchToken(const std::string& token, PitchSpec& out) {
  if (token.size() < 2 || token.size() > 3) return false;
  PitchSpec p;
  switch (token[0]) {
    case 'C': p.letter = Letter::C; break;
    case 'D': p.letter = Letter::D; break;
    case 'E': p.letter = Letter::E; break;
    case 'F': p.letter = Letter::F; break;
    case 'G': p.letter = Letter::G; break;
    case 'A': p.letter = Letter::A; break;
    case 'B': p.letter = Letter::B; break;
    default: return false;
  }
  size_t i = 1;
  p.accidental = Accidental::Natural;
  if (token[i] == 'b') {
    p.accidental = Accidental::Flat;
    ++i;
  } else if (token[i] == '#') {
    p.accidental = Accidental::Sharp;
    ++i;
  }
  if (i + 1 != token.size()) return false;
  char oc = token[i];
  if (oc < '0' || oc > '9') return false;
  p.octave = oc - '0';
  out = p;
  return true;
}

}  // namespace fluidscore
