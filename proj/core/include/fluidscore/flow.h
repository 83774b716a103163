// Laminar/turbulent analysis over pathlines: the laminar parameter check,
// turbulent-spot and pressure-change detection, and phase segmentation.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fluidscore/pathline.h"
#include "fluidscore/rational.h"

namespace fluidscore {

/// A localized disruption inside a layer: a descent turning upward
/// (reversal) or stalling on a repeated pitch (halt).
enum class SpotKind { Reversal, Halt };

struct SpotEvent {
  int pathline = 0;
  TimeIndex t = 0;  // onset of the deviating event
  SpotKind kind = SpotKind::Reversal;
  int prev_dy = 0;
  int cur_dy = 0;

  bool operator==(const SpotEvent&) const = default;
};

struct PressureChange {
  int pathline = 0;
  TimeIndex t = 0;  // onset of the event with the new pressure
  int from = 0;
  int to = 0;
  int delta = 0;

  bool operator==(const PressureChange&) const = default;
};

/// Result of the three-condition laminar test over a window:
/// (a) concurrent layers move in parallel, (b) one shared pressure at each
/// tick, (c) shared rhythm. Holds only with at least two concurrent layers.
/// Harmonic-interval equality between the layers is not required.
struct LaminarCheck {
  TimeIndex window_first = 0;
  TimeIndex window_last = 0;
  bool holds = false;
  bool a_parallel = false;
  bool b_same_pressure = false;
  bool c_same_rhythm = false;
  int active_layer_count = 0;  // minimum concurrent layers over the window
};

enum class PhaseLabel { Laminar, Transitional, Turbulent, Sparse };

std::string_view phaseLabelName(PhaseLabel label);

/// Half-open timeline interval with a phase label. Segments partition
/// [0, tick_count); adjacent segments carry different labels.
struct PhaseSegment {
  TimeIndex start = 0;
  TimeIndex end = 0;
  PhaseLabel label = PhaseLabel::Sparse;

  bool operator==(const PhaseSegment&) const = default;
};

struct FlowConfig {
  int window_size = 8;
  int turbulence_min_layers_with_spots = 2;
};

/// Evaluates the laminar conditions over the inclusive window
/// [first, last]. Throws std::invalid_argument for an empty window.
LaminarCheck checkLaminar(std::span<const Pathline> pathlines,
                          TimeIndex first, TimeIndex last);

/// All reversal and halt events across all pathlines, in (t, pathline)
/// order. Both manifestations of directional change are detected.
std::vector<SpotEvent> detectSpots(std::span<const Pathline> pathlines);

/// Every within-pathline step where pressure differs from the previous
/// event's pressure, in (t, pathline) order.
std::vector<PressureChange> detectPressureChanges(
    std::span<const Pathline> pathlines);

/// Sliding-window labeling merged into maximal segments.
///
/// Each window of `config.window_size` ticks is labeled: Sparse below two
/// concurrent layers; Laminar when the laminar check holds with no spot and
/// no pressure change inside; Turbulent when at least
/// `turbulence_min_layers_with_spots` layers carry spots in the window and
/// the window's pressures differ across layers; Transitional otherwise.
/// Tick t takes the label of the window starting at t (the final ticks
/// inherit the last window). Throws std::invalid_argument if
/// config.window_size < 2.
std::vector<PhaseSegment> classifyPhases(std::span<const Pathline> pathlines,
                                         TimeIndex tick_count,
                                         const FlowConfig& config = {});

struct VelocityReport {
  bool constant = false;
  std::optional<Rational> shared;  // the common profile when constant
  std::vector<std::pair<int, std::optional<Rational>>> layers;
};

/// True iff every pathline with a defined velocity profile reports the same
/// value (single-event layers are skipped; empty input is vacuously true).
VelocityReport velocityConstancy(std::span<const Pathline> pathlines);

/// Distinct event pressures over the half-open span [start, end), ascending.
std::vector<int> pressuresInSpan(std::span<const Pathline> pathlines,
                                 TimeIndex start, TimeIndex end);

/// The full per-score analysis consumed by reports and plots.
struct FlowAnalysis {
  std::vector<SpotEvent> spots;
  std::vector<PressureChange> pressure_changes;
  std::vector<int> density;
  VelocityReport velocity;
  std::vector<PhaseSegment> phases;
};

FlowAnalysis analyzeFlow(std::span<const Pathline> pathlines,
                         TimeIndex tick_count, const FlowConfig& config = {});

}  // namespace fluidscore
