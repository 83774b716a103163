// Note events on a dense timeline, assembled into a Score.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluidscore/pitch.h"

namespace fluidscore {

/// Index of one onset column of the piece, after measure bars are removed.
/// t = 0 is the first column; indices are dense over [0, tick_count).
using TimeIndex = int32_t;

/// One sounding pitch at a timeline index.
///
/// `pressure` is the resolved dynamic magnitude (1..18) governing this
/// onset, after any gradual-dynamics adjustment. `voice` is the staff/beam
/// group tag from the encoding when one was given.
struct NoteEvent {
  TimeIndex onset = 0;
  PitchSpec pitch;
  int pressure = 9;
  std::optional<int> voice;

  int y() const { return pitchToY(pitch); }

  bool operator==(const NoteEvent&) const = default;
};

/// A parsed piece: events in canonical order plus the explicit rest set.
///
/// Canonical order is (onset, y descending, voice); every tick in
/// [0, tick_count) either carries at least one event or appears in `rests`.
/// Instances are immutable after construction and safe to share across
/// threads.
struct Score {
  std::vector<NoteEvent> events;
  TimeIndex tick_count = 0;
  std::vector<TimeIndex> rests;
  std::string title;
  std::string source_path;  // not part of identity

  /// Builds a Score from arbitrary events: sorts canonically, derives
  /// tick_count (unless a larger one is given) and the rest set.
  static Score fromEvents(std::vector<NoteEvent> events,
                          TimeIndex tick_count = 0,
                          std::string title = {});

  /// Events at one tick, as a subrange of the canonical order.
  std::vector<NoteEvent> eventsAt(TimeIndex t) const;

  bool operator==(const Score& other) const {
    return events == other.events && tick_count == other.tick_count &&
           rests == other.rests && title == other.title;
  }
};

/// Canonical event ordering: (onset, y descending, tagged voices before
/// untagged, voice number, spelling).
bool canonicalLess(const NoteEvent& a, const NoteEvent& b);

}  // namespace fluidscore
