#include "fluidscore/report.h"

#include <json.hpp>

#include "fluidscore/pitch.h"

namespace fluidscore {

namespace {

using json = nlohmann::ordered_json;

json profileJson(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return r->str();
}

}  // namespace

std::string buildReportJson(const Score& score,
                            std::span<const Pathline> pathlines,
                            const FlowAnalysis& analysis,
                            const FlowConfig& config) {
  json root;

  json lines = json::array();
  for (const auto& p : pathlines) {
    json line;
    line["id"] = p.id;
    line["start"] = p.spanStart();
    line["end"] = p.spanEnd();
    json events = json::array();
    for (const auto& e : p.events) {
      json ev;
      ev["t"] = e.onset;
      ev["y"] = e.y();
      ev["pitch"] = pitchToken(e.pitch);
      ev["pressure"] = e.pressure;
      if (e.voice) {
        ev["voice"] = *e.voice;
      } else {
        ev["voice"] = nullptr;
      }
      events.push_back(std::move(ev));
    }
    line["events"] = std::move(events);
    lines.push_back(std::move(line));
  }
  root["pathlines"] = std::move(lines);

  json spots = json::array();
  for (const auto& s : analysis.spots) {
    json spot;
    spot["pathline"] = s.pathline;
    spot["t"] = s.t;
    spot["kind"] = s.kind == SpotKind::Reversal ? "reversal" : "halt";
    spot["prev_dy"] = s.prev_dy;
    spot["cur_dy"] = s.cur_dy;
    spots.push_back(std::move(spot));
  }
  root["spots"] = std::move(spots);

  json changes = json::array();
  for (const auto& c : analysis.pressure_changes) {
    json ch;
    ch["pathline"] = c.pathline;
    ch["t"] = c.t;
    ch["from"] = c.from;
    ch["to"] = c.to;
    ch["delta"] = c.delta;
    changes.push_back(std::move(ch));
  }
  root["pressure_changes"] = std::move(changes);

  root["density"] = analysis.density;

  json velocity;
  velocity["constant"] = analysis.velocity.constant;
  velocity["shared"] = profileJson(analysis.velocity.shared);
  json layers = json::array();
  for (const auto& [id, profile] : analysis.velocity.layers) {
    json layer;
    layer["id"] = id;
    layer["profile"] = profileJson(profile);
    layers.push_back(std::move(layer));
  }
  velocity["layers"] = std::move(layers);
  root["velocity"] = std::move(velocity);

  json phases = json::array();
  for (const auto& seg : analysis.phases) {
    json ph;
    ph["start"] = seg.start;
    ph["end"] = seg.end;
    ph["label"] = std::string(phaseLabelName(seg.label));
    phases.push_back(std::move(ph));
  }
  root["phases"] = std::move(phases);

  json cfg;
  cfg["window_size"] = config.window_size;
  cfg["turbulence_min_layers_with_spots"] = config.turbulence_min_layers_with_spots;
  cfg["title"] = score.title;
  cfg["tick_count"] = score.tick_count;
  root["config"] = std::move(cfg);

  return root.dump(2) + "\n";
}

}  // namespace fluidscore
