#include "fluidscore/flow.h"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fluidscore {

namespace {

// Event lookup tolerant of hand-built sparse pathlines (extracted ones are
// gap-free, but nothing here relies on that).
const NoteEvent* eventAt(const Pathline& p, TimeIndex t) {
  auto it = std::lower_bound(
      p.events.begin(), p.events.end(), t,
      [](const NoteEvent& e, TimeIndex value) { return e.onset < value; });
  if (it != p.events.end() && it->onset == t) return &*it;
  return nullptr;
}

bool spansOverlap(const Pathline& p, TimeIndex first, TimeIndex last) {
  return p.spanStart() <= last && p.spanEnd() >= first;
}

}  // namespace

std::string_view phaseLabelName(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Laminar: return "Laminar";
    case PhaseLabel::Transitional: return "Transitional";
    case PhaseLabel::Turbulent: return "Turbulent";
    case PhaseLabel::Sparse: return "Sparse";
  }
  return "?";
}

LaminarCheck checkLaminar(std::span<const Pathline> pathlines,
                          TimeIndex first, TimeIndex last) {
  if (first > last || first < 0) {
    throw std::invalid_argument("empty laminar-check window");
  }
  LaminarCheck chk;
  chk.window_first = first;
  chk.window_last = last;

  std::vector<const Pathline*> active;
  for (const auto& p : pathlines) {
    if (spansOverlap(p, first, last)) active.push_back(&p);
  }

  // Minimum concurrent layer count over the window.
  chk.active_layer_count = 0;
  for (TimeIndex t = first; t <= last; ++t) {
    int n = 0;
    for (const Pathline* p : active) {
      if (p->activeAt(t)) ++n;
    }
    if (t == first || n < chk.active_layer_count) chk.active_layer_count = n;
  }

  // (a) every pair of concurrently moving layers shares the step direction
  // and size at each step of the window.
  chk.a_parallel = true;
  for (TimeIndex t = first; t < last && chk.a_parallel; ++t) {
    bool have_dy = false;
    int dy = 0;
    for (const Pathline* p : active) {
      const NoteEvent* a = eventAt(*p, t);
      const NoteEvent* b = eventAt(*p, t + 1);
      if (!a || !b) continue;
      int d = b->y() - a->y();
      if (!have_dy) {
        dy = d;
        have_dy = true;
      } else if (d != dy) {
        chk.a_parallel = false;
        break;
      }
    }
  }

  // (b) one pressure value across all concurrent events at each tick.
  chk.b_same_pressure = true;
  for (TimeIndex t = first; t <= last && chk.b_same_pressure; ++t) {
    bool have = false;
    int pressure = 0;
    for (const Pathline* p : active) {
      const NoteEvent* e = eventAt(*p, t);
      if (!e) continue;
      if (!have) {
        pressure = e->pressure;
        have = true;
      } else if (e->pressure != pressure) {
        chk.b_same_pressure = false;
        break;
      }
    }
  }

  // (c) concurrent layers sound at the same ticks wherever their spans
  // overlap inside the window. Entries and exits are not rhythm breaks.
  chk.c_same_rhythm = true;
  for (size_t i = 0; i < active.size() && chk.c_same_rhythm; ++i) {
    for (size_t j = i + 1; j < active.size() && chk.c_same_rhythm; ++j) {
      TimeIndex lo = std::max({first, active[i]->spanStart(), active[j]->spanStart()});
      TimeIndex hi = std::min({last, active[i]->spanEnd(), active[j]->spanEnd()});
      for (TimeIndex t = lo; t <= hi; ++t) {
        bool a = eventAt(*active[i], t) != nullptr;
        bool b = eventAt(*active[j], t) != nullptr;
        if (a != b) {
          chk.c_same_rhythm = false;
          break;
        }
      }
    }
  }

  chk.holds = chk.active_layer_count >= 2 && chk.a_parallel &&
              chk.b_same_pressure && chk.c_same_rhythm;
  return chk;
}

std::vector<SpotEvent> detectSpots(std::span<const Pathline> pathlines) {
  std::vector<SpotEvent> spots;
  for (const auto& p : pathlines) {
    for (size_t i = 2; i < p.events.size(); ++i) {
      int prev_dy = p.events[i - 1].y() - p.events[i - 2].y();
      int cur_dy = p.events[i].y() - p.events[i - 1].y();
      if (prev_dy != -1) continue;
      if (cur_dy == 1) {
        spots.push_back({p.id, p.events[i].onset, SpotKind::Reversal, prev_dy, cur_dy});
      } else if (cur_dy == 0) {
        spots.push_back({p.id, p.events[i].onset, SpotKind::Halt, prev_dy, cur_dy});
      }
    }
  }
  std::sort(spots.begin(), spots.end(), [](const SpotEvent& a, const SpotEvent& b) {
    return std::tie(a.t, a.pathline) < std::tie(b.t, b.pathline);
  });
  return spots;
}

std::vector<PressureChange> detectPressureChanges(
    std::span<const Pathline> pathlines) {
  std::vector<PressureChange> changes;
  for (const auto& p : pathlines) {
    for (size_t i = 1; i < p.events.size(); ++i) {
      int from = p.events[i - 1].pressure;
      int to = p.events[i].pressure;
      if (from != to) {
        changes.push_back({p.id, p.events[i].onset, from, to, to - from});
      }
    }
  }
  std::sort(changes.begin(), changes.end(),
            [](const PressureChange& a, const PressureChange& b) {
              return std::tie(a.t, a.pathline) < std::tie(b.t, b.pathline);
            });
  return changes;
}

namespace {

PhaseLabel labelWindow(std::span<const Pathline> pathlines,
                       const std::vector<int>& density,
                       const std::vector<SpotEvent>& spots,
                       const std::vector<PressureChange>& changes,
                       TimeIndex start, TimeIndex end,  // half-open
                       const FlowConfig& config) {
  int min_density = 0;
  for (TimeIndex t = start; t < end; ++t) {
    int d = density[static_cast<size_t>(t)];
    if (t == start || d < min_density) min_density = d;
  }
  if (min_density < 2) return PhaseLabel::Sparse;

  bool spot_in_window = false;
  std::set<int> spotted_layers;
  for (const auto& s : spots) {
    if (s.t >= start && s.t < end) {
      spot_in_window = true;
      spotted_layers.insert(s.pathline);
    }
  }
  bool change_in_window = false;
  for (const auto& c : changes) {
    if (c.t >= start && c.t < end) {
      change_in_window = true;
      break;
    }
  }

  if (!spot_in_window && !change_in_window &&
      checkLaminar(pathlines, start, end - 1).holds) {
    return PhaseLabel::Laminar;
  }

  bool pressure_nonuniform = false;
  for (TimeIndex t = start; t < end && !pressure_nonuniform; ++t) {
    bool have = false;
    int pressure = 0;
    for (const auto& p : pathlines) {
      const NoteEvent* e = eventAt(p, t);
      if (!e) continue;
      if (!have) {
        pressure = e->pressure;
        have = true;
      } else if (e->pressure != pressure) {
        pressure_nonuniform = true;
        break;
      }
    }
  }
  if (static_cast<int>(spotted_layers.size()) >=
          config.turbulence_min_layers_with_spots &&
      pressure_nonuniform) {
    return PhaseLabel::Turbulent;
  }
  return PhaseLabel::Transitional;
}

}  // namespace

std::vector<PhaseSegment> classifyPhases(std::span<const Pathline> pathlines,
                                         TimeIndex tick_count,
                                         const FlowConfig& config) {
  if (config.window_size < 2) {
    throw std::invalid_argument("window size must be at least 2");
  }
  if (tick_count <= 0) return {};

  auto density = densitySeries(pathlines, tick_count);
  auto spots = detectSpots(pathlines);
  auto changes = detectPressureChanges(pathlines);

  TimeIndex w = config.window_size;
  TimeIndex last_start = std::max<TimeIndex>(0, tick_count - w);
  std::vector<PhaseLabel> window_label(static_cast<size_t>(last_start) + 1);
  for (TimeIndex s = 0; s <= last_start; ++s) {
    TimeIndex end = std::min<TimeIndex>(s + w, tick_count);
    window_label[static_cast<size_t>(s)] =
        labelWindow(pathlines, density, spots, changes, s, end, config);
  }

  std::vector<PhaseSegment> segments;
  for (TimeIndex t = 0; t < tick_count; ++t) {
    PhaseLabel label = window_label[static_cast<size_t>(std::min(t, last_start))];
    if (!segments.empty() && segments.back().label == label) {
      segments.back().end = t + 1;
    } else {
      segments.push_back({t, t + 1, label});
    }
  }
  return segments;
}

VelocityReport velocityConstancy(std::span<const Pathline> pathlines) {
  VelocityReport report;
  report.constant = true;
  for (const auto& p : pathlines) {
    auto profile = velocityProfile(p);
    report.layers.emplace_back(p.id, profile);
    if (!profile) continue;  // single-event layers carry no motion to compare
    if (!report.shared) {
      report.shared = profile;
    } else if (*report.shared != *profile) {
      report.constant = false;
    }
  }
  if (!report.constant) report.shared.reset();
  return report;
}

std::vector<int> pressuresInSpan(std::span<const Pathline> pathlines,
                                 TimeIndex start, TimeIndex end) {
  std::set<int> values;
  for (const auto& p : pathlines) {
    for (const auto& e : p.events) {
      if (e.onset >= start && e.onset < end) values.insert(e.pressure);
    }
  }
  return {values.begin(), values.end()};
}

FlowAnalysis analyzeFlow(std::span<const Pathline> pathlines,
                         TimeIndex tick_count, const FlowConfig& config) {
  FlowAnalysis out;
  out.spots = detectSpots(pathlines);
  out.pressure_changes = detectPressureChanges(pathlines);
  out.density = densitySeries(pathlines, tick_count);
  out.velocity = velocityConstancy(pathlines);
  out.phases = classifyPhases(pathlines, tick_count, config);
  return out;
}

}  // namespace fluidscore
