#include "fluidscore/pathline.h"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace fluidscore {

namespace {

struct OpenLine {
  Pathline line;
  int last_y = 0;
  TimeIndex last_t = -1;
};

// Priority for claiming: longer current run, then lower id.
bool claimsBefore(const OpenLine& a, const OpenLine& b) {
  if (a.line.events.size() != b.line.events.size()) {
    return a.line.events.size() > b.line.events.size();
  }
  return a.line.id < b.line.id;
}

}  // namespace

std::vector<Pathline> extractPathlines(const Score& score) {
  std::vector<Pathline> done;
  std::vector<OpenLine> open;
  int next_id = 0;

  // Bucket events per tick; canonical order keeps each bucket Y-descending.
  std::map<TimeIndex, std::vector<const NoteEvent*>> buckets;
  for (const auto& e : score.events) buckets[e.onset].push_back(&e);

  for (auto& [t, bucket] : buckets) {
    // Lines that did not sound at t-1 are closed before claiming begins.
    for (auto it = open.begin(); it != open.end();) {
      if (it->last_t != t - 1) {
        done.push_back(std::move(it->line));
        it = open.erase(it);
      } else {
        ++it;
      }
    }

    std::vector<bool> claimed(bucket.size(), false);
    std::vector<OpenLine*> order;
    for (auto& ol : open) order.push_back(&ol);
    std::sort(order.begin(), order.end(),
              [](const OpenLine* a, const OpenLine* b) { return claimsBefore(*a, *b); });

    std::vector<OpenLine*> survivors;
    for (OpenLine* ol : order) {
      const NoteEvent* take = nullptr;
      size_t take_idx = 0;
      for (int want : {ol->last_y - 1, ol->last_y, ol->last_y + 1}) {
        for (size_t i = 0; i < bucket.size(); ++i) {
          if (claimed[i]) continue;
          if (bucket[i]->voice != ol->line.events.back().voice) continue;
          if (bucket[i]->y() == want) {
            take = bucket[i];
            take_idx = i;
            break;
          }
        }
        if (take) break;
      }
      if (take) {
        claimed[take_idx] = true;
        ol->line.events.push_back(*take);
        ol->last_y = take->y();
        ol->last_t = t;
        survivors.push_back(ol);
      }
    }

    // Close everything that failed to claim.
    for (auto it = open.begin(); it != open.end();) {
      if (it->last_t != t) {
        done.push_back(std::move(it->line));
        it = open.erase(it);
      } else {
        ++it;
      }
    }

    // Unclaimed events open new pathlines, ids in onset (then Y-desc) order.
    for (size_t i = 0; i < bucket.size(); ++i) {
      if (claimed[i]) continue;
      OpenLine ol;
      ol.line.id = next_id++;
      ol.line.events.push_back(*bucket[i]);
      ol.last_y = bucket[i]->y();
      ol.last_t = t;
      open.push_back(std::move(ol));
    }
  }

  for (auto& ol : open) done.push_back(std::move(ol.line));
  std::sort(done.begin(), done.end(),
            [](const Pathline& a, const Pathline& b) { return a.id < b.id; });
  return done;
}

AdjacencyRecord adjacencyAt(std::span<const Pathline> pathlines, TimeIndex t) {
  AdjacencyRecord rec;
  rec.t = t;
  std::vector<const Pathline*> active;
  for (const auto& p : pathlines) {
    if (p.activeAt(t)) active.push_back(&p);
  }
  for (size_t i = 0; i < active.size(); ++i) {
    for (size_t j = i + 1; j < active.size(); ++j) {
      int interval = std::abs(active[i]->yAt(t) - active[j]->yAt(t));
      if (interval >= 1) {
        rec.pairs.push_back({active[i]->id, active[j]->id, interval});
      }
    }
  }
  return rec;
}

std::vector<int> densitySeries(std::span<const Pathline> pathlines,
                               TimeIndex tick_count) {
  std::vector<int> density(static_cast<size_t>(tick_count), 0);
  for (const auto& p : pathlines) {
    for (TimeIndex t = p.spanStart(); t <= p.spanEnd() && t < tick_count; ++t) {
      if (t >= 0) ++density[static_cast<size_t>(t)];
    }
  }
  return density;
}

std::optional<Rational> velocityProfile(const Pathline& p) {
  if (p.events.size() < 2) return std::nullopt;
  long long semitones = 0;
  long long ticks = 0;
  for (size_t i = 1; i < p.events.size(); ++i) {
    int dy = p.events[i].y() - p.events[i - 1].y();
    if (dy == 0) continue;
    semitones += std::abs(dy);
    ticks += p.events[i].onset - p.events[i - 1].onset;
  }
  if (ticks == 0) return Rational(0, 1);  // repetition only: no flow
  return Rational(semitones, ticks);
}

}  // namespace fluidscore
