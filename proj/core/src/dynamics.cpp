#include "fluidscore/dynamics.h"

namespace fluidscore {

namespace {

constexpr std::array<std::string_view, 18> kTokens = {
    "ppppppppp", "pppppppp", "ppppppp", "pppppp", "ppppp", "pppp",
    "ppp",       "pp",       "p",       "mp",     "mf",    "f",
    "ff",        "fff",      "ffff",    "fffff",  "ffffff", "fffffff",
};

}  // namespace

int dynamicToPressure(Dynamic d) { return d.level; }

std::string_view dynamicToken(Dynamic d) {
  return kTokens[static_cast<size_t>(d.level - 1)];
}

const std::array<std::string_view, 18>& dynamicTokens() { return kTokens; }

bool parseDynamicToken(std::string_view token, Dynamic& out) {
  for (size_t i = 0; i < kTokens.size(); ++i) {
    if (kTokens[i] == token) {
      out = Dynamic{static_cast<int>(i) + 1};
      return true;
    }
  }
  return false;
}

}  // namespace fluidscore
