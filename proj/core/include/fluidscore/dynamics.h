// Dynamic markings and their integer pressure magnitudes.

#pragma once

#include <array>
#include <string>
#include <string_view>

namespace fluidscore {

inline constexpr int kPressureMin = 1;
inline constexpr int kPressureMax = 18;

/// One of the 18 dynamic levels, ppppppppp (softest) through fffffff
/// (loudest). The ordered levels map bijectively onto pressures 1..18.
struct Dynamic {
  int level = 9;  // 1-based index into the ordered marking sequence

  bool operator==(const Dynamic&) const = default;
};

/// Pressure magnitude of a marking: ppppppppp -> 1, ..., p -> 9, mp -> 10,
/// mf -> 11, f -> 12, ..., fffffff -> 18.
int dynamicToPressure(Dynamic d);

/// The marking token for a level, e.g. "pp", "mf", "fff".
std::string_view dynamicToken(Dynamic d);

/// All 18 marking tokens in ascending pressure order.
const std::array<std::string_view, 18>& dynamicTokens();

/// Parses a marking token. Returns false for anything outside the 18 levels
/// (markings beyond the table, e.g. ten f's, are rejected rather than
/// clamped).
bool parseDynamicToken(std::string_view token, Dynamic& out);

}  // namespace fluidscore
