#include "fluidscore/plot.h"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace fluidscore {

namespace {

constexpr int kMarginLeft = 48;
constexpr int kMarginRight = 14;
constexpr int kMarginTop = 14;
constexpr int kMarginBottom = 34;

constexpr std::array<std::string_view, 8> kPalette = {
    "#d62728",  // red
    "#1f77b4",  // blue
    "#2ca02c",  // green
    "#9467bd",  // purple
    "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Frame {
  double sx = 1.0;
  double sy = 1.0;
  int y_min = 0;
  int y_max = 12;
  double plot_w = 0.0;
  double plot_h = 0.0;

  double x(double t) const { return kMarginLeft + (t + 0.5) * sx; }
  double xEdge(double t) const { return kMarginLeft + t * sx; }
  double y(double value) const { return kMarginTop + (y_max - value + 0.5) * sy; }
};

}  // namespace

const std::array<std::string_view, 8>& layerPalette() { return kPalette; }

std::string_view phaseShade(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Laminar: return "#e3eef9";
    case PhaseLabel::Transitional: return "#fdf2d0";
    case PhaseLabel::Turbulent: return "#fbe0e0";
    case PhaseLabel::Sparse: return "#f2f2f2";
  }
  return "#ffffff";
}

std::string emitScatterSvg(const Score& score,
                           std::span<const Pathline> pathlines,
                           std::span<const PhaseSegment> phases,
                           const PlotSpec& spec) {
  Frame f;
  f.plot_w = spec.width - kMarginLeft - kMarginRight;
  f.plot_h = spec.height - kMarginTop - kMarginBottom;

  if (spec.y_range == YRangeMode::Table6) {
    f.y_min = -24;
    f.y_max = 47;
  } else if (!score.events.empty()) {
    f.y_min = score.events.front().y();
    f.y_max = f.y_min;
    for (const auto& e : score.events) {
      f.y_min = std::min(f.y_min, e.y());
      f.y_max = std::max(f.y_max, e.y());
    }
    f.y_min -= 2;
    f.y_max += 2;
  }
  int ticks = std::max<TimeIndex>(score.tick_count, 1);
  f.sx = f.plot_w / ticks;
  f.sy = f.plot_h / (f.y_max - f.y_min + 1);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
         "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" fill=\"#ffffff\"/>\n";

  for (const auto& seg : phases) {
    svg += "<rect x=\"" + num(f.xEdge(seg.start)) + "\" y=\"" + num(kMarginTop) +
           "\" width=\"" + num((seg.end - seg.start) * f.sx) + "\" height=\"" +
           num(f.plot_h) + "\" fill=\"" + std::string(phaseShade(seg.label)) +
           "\"/>\n";
  }

  // Zero gridline: the boundary under the y = 0 row, separating the
  // negative-Y octaves.
  if (f.y_min < 0 && f.y_max >= 0) {
    double zero = kMarginTop + (f.y_max + 1) * f.sy;
    svg += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(zero) + "\" x2=\"" +
           num(kMarginLeft + f.plot_w) + "\" y2=\"" + num(zero) +
           "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  }

  // Axes.
  svg += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop) +
         "\" x2=\"" + num(kMarginLeft) + "\" y2=\"" +
         num(kMarginTop + f.plot_h) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop + f.plot_h) +
         "\" x2=\"" + num(kMarginLeft + f.plot_w) + "\" y2=\"" +
         num(kMarginTop + f.plot_h) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  for (TimeIndex t = 0; t < score.tick_count; t += spec.x_tick_spacing) {
    double tx = f.x(t);
    double base = kMarginTop + f.plot_h;
    svg += "<line x1=\"" + num(tx) + "\" y1=\"" + num(base) + "\" x2=\"" + num(tx) +
           "\" y2=\"" + num(base + 4) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(tx) + "\" y=\"" + num(base + 16) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
           std::to_string(t) + "</text>\n";
  }
  svg += "<text x=\"" + num(kMarginLeft + f.plot_w / 2) + "\" y=\"" +
         num(spec.height - 6) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
         "t</text>\n";

  int first_tick = f.y_min;
  int rem = first_tick % spec.y_tick_spacing;
  if (rem != 0) first_tick += (rem < 0 ? -rem : spec.y_tick_spacing - rem);
  for (int yv = first_tick; yv <= f.y_max; yv += spec.y_tick_spacing) {
    double ty = f.y(yv);
    svg += "<line x1=\"" + num(kMarginLeft - 4) + "\" y1=\"" + num(ty) + "\" x2=\"" +
           num(kMarginLeft) + "\" y2=\"" + num(ty) +
           "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(kMarginLeft - 7) + "\" y=\"" + num(ty + 3) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" +
           std::to_string(yv) + "</text>\n";
  }
  svg += "<text x=\"12\" y=\"" + num(kMarginTop + f.plot_h / 2) +
         "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
         "y</text>\n";

  // One circle per event, colored by owning pathline.
  for (const auto& p : pathlines) {
    std::string color(kPalette[static_cast<size_t>(p.id) % kPalette.size()]);
    for (const auto& e : p.events) {
      svg += "<circle cx=\"" + num(f.x(e.onset)) + "\" cy=\"" + num(f.y(e.y())) +
             "\" r=\"" + num(spec.point_radius) + "\" fill=\"" + color + "\"/>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

std::string emitScatterCsv(const Score& score,
                           std::span<const Pathline> pathlines,
                           std::span<const PhaseSegment> phases) {
  (void)score;
  auto labelOf = [&](TimeIndex t) -> std::string_view {
    for (const auto& seg : phases) {
      if (t >= seg.start && t < seg.end) return phaseLabelName(seg.label);
    }
    return "Sparse";
  };

  struct Row {
    TimeIndex t;
    int y;
    int id;
    int pressure;
  };
  std::vector<Row> rows;
  for (const auto& p : pathlines) {
    for (const auto& e : p.events) {
      rows.push_back({e.onset, e.y(), p.id, e.pressure});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::make_tuple(a.t, -a.y, a.id) < std::make_tuple(b.t, -b.y, b.id);
  });

  std::string out = "t,y,pathline_id,pressure,phase_label\n";
  for (const auto& r : rows) {
    out += std::to_string(r.t) + "," + std::to_string(r.y) + "," +
           std::to_string(r.id) + "," + std::to_string(r.pressure) + "," +
           std::string(labelOf(r.t)) + "\n";
  }
  return out;
}

}  // namespace fluidscore
