// Scatter-plot emission: timeline on X, chromatic Y coordinate on Y, one
// point per note event colored by pathline, phase-shaded background.

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "fluidscore/flow.h"
#include "fluidscore/pathline.h"
#include "fluidscore/score.h"

namespace fluidscore {

enum class YRangeMode {
  Auto,    // data extent padded by 2
  Table6,  // fixed [-24, 47]
};

/// Deterministic rendering parameters. The eight-color palette is keyed by
/// pathline id mod 8; the first four entries follow the red/blue/green/
/// purple layer convention.
struct PlotSpec {
  int width = 960;
  int height = 480;
  double point_radius = 2.5;
  YRangeMode y_range = YRangeMode::Auto;
  int x_tick_spacing = 8;
  int y_tick_spacing = 6;
};

/// The fixed layer palette (hex colors).
const std::array<std::string_view, 8>& layerPalette();

/// Background shade for a phase label (hex color).
std::string_view phaseShade(PhaseLabel label);

/// Emits an SVG 1.1 subset (rect, circle, line, text): one circle per event
/// at (t, y), phase-segment background rectangles, labeled axes, and a zero
/// gridline separating the negative-Y octaves. Byte-identical across runs
/// for identical inputs; an empty score yields an axes-only document.
std::string emitScatterSvg(const Score& score,
                           std::span<const Pathline> pathlines,
                           std::span<const PhaseSegment> phases,
                           const PlotSpec& spec = {});

/// Plot data as CSV: t,y,pathline_id,pressure,phase_label, one row per
/// event in canonical order. Byte-stable.
std::string emitScatterCsv(const Score& score,
                           std::span<const Pathline> pathlines,
                           std::span<const PhaseSegment> phases);

}  // namespace fluidscore
