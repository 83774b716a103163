#include "fluidscore/score.h"

#include <algorithm>
#include <tuple>

namespace fluidscore {

bool canonicalLess(const NoteEvent& a, const NoteEvent& b) {
  auto key = [](const NoteEvent& e) {
    return std::make_tuple(e.onset, -e.y(), !e.voice.has_value(),
                           e.voice.value_or(0),
                           static_cast<int>(e.pitch.letter),
                           static_cast<int>(e.pitch.accidental));
  };
  return key(a) < key(b);
}

Score Score::fromEvents(std::vector<NoteEvent> events, TimeIndex tick_count,
                        std::string title) {
  Score s;
  s.events = std::move(events);
  s.title = std::move(title);
  std::sort(s.events.begin(), s.events.end(), canonicalLess);
  TimeIndex max_onset = -1;
  for (const auto& e : s.events) max_onset = std::max(max_onset, e.onset);
  s.tick_count = std::max(tick_count, max_onset + 1);
  size_t idx = 0;
  for (TimeIndex t = 0; t < s.tick_count; ++t) {
    while (idx < s.events.size() && s.events[idx].onset < t) ++idx;
    if (idx >= s.events.size() || s.events[idx].onset != t) {
      s.rests.push_back(t);
    }
  }
  return s;
}

std::vector<NoteEvent> Score::eventsAt(TimeIndex t) const {
  std::vector<NoteEvent> out;
  for (const auto& e : events) {
    if (e.onset == t) out.push_back(e);
    if (e.onset > t) break;
  }
  return out;
}

}  // namespace fluidscore
