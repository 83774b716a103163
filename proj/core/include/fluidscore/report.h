// Machine-readable analysis report.

#pragma once

#include <span>
#include <string>

#include "fluidscore/flow.h"
#include "fluidscore/pathline.h"
#include "fluidscore/score.h"

namespace fluidscore {

/// Serializes the full analysis as JSON with stable key order:
/// pathlines, spots, pressure_changes, density, velocity, phases, config.
/// Identical inputs produce identical bytes.
std::string buildReportJson(const Score& score,
                            std::span<const Pathline> pathlines,
                            const FlowAnalysis& analysis,
                            const FlowConfig& config);

}  // namespace fluidscore
