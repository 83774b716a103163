// Pathline extraction: segmenting a score into maximal chromatic-descent
// layers, plus per-timeline adjacency, density, and velocity profiles.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fluidscore/rational.h"
#include "fluidscore/score.h"

namespace fluidscore {

/// A maximal chromatic-descent layer. Events occupy consecutive timeline
/// indices; descent segments step by exactly -1, with repeats (0) and
/// upward steps (+1) admitted as recorded deviations so that a disturbance
/// stays inside its layer.
struct Pathline {
  int id = 0;  // entry order
  std::vector<NoteEvent> events;

  TimeIndex spanStart() const { return events.front().onset; }
  TimeIndex spanEnd() const { return events.back().onset; }  // inclusive
  bool activeAt(TimeIndex t) const { return t >= spanStart() && t <= spanEnd(); }

  /// Y of the event at t. Pathlines are gap-free, so this indexes directly.
  int yAt(TimeIndex t) const {
    return events[static_cast<size_t>(t - spanStart())].y();
  }
  int pressureAt(TimeIndex t) const {
    return events[static_cast<size_t>(t - spanStart())].pressure;
  }
};

/// Simultaneous pathline pairs at one timeline index with their harmonic
/// interval in semitones (unison pairs are omitted).
struct AdjacencyRecord {
  TimeIndex t = 0;
  struct Pair {
    int pathline_a;
    int pathline_b;
    int interval;
    bool operator==(const Pair&) const = default;
  };
  std::vector<Pair> pairs;
};

/// Partitions every event into exactly one pathline.
///
/// Columns are processed left to right. An active pathline whose last Y was
/// y claims an event at the next tick with Y == y-1, else y, else y+1;
/// otherwise it closes. Claims are resolved in priority order (longer
/// current run first, then lower id), unclaimed events open new pathlines,
/// and ids follow onset order. Events carrying a voice tag bind to that
/// voice's pathline instead of competing in the claiming step; a gap or a
/// jump of |dY| >= 2 still closes a tagged voice's pathline.
std::vector<Pathline> extractPathlines(const Score& score);

/// All unordered pairs of pathlines active at t with their intervals.
AdjacencyRecord adjacencyAt(std::span<const Pathline> pathlines, TimeIndex t);

/// Number of pathlines active at each tick of [0, tick_count).
std::vector<int> densitySeries(std::span<const Pathline> pathlines,
                               TimeIndex tick_count);

/// Semitones traversed per timeline step, taken over the steps where the
/// layer actually moves (dY != 0); a layer that only repeats its pitch has
/// velocity 0. Undefined (nullopt) for single-event pathlines.
std::optional<Rational> velocityProfile(const Pathline& p);

}  // namespace fluidscore
