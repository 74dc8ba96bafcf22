#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aircomp/experiment.hpp"
#include "aircomp/run_config.hpp"

namespace aircomp {

// Columns: snr_db,scheme,mse_empirical,ci95_low,ci95_high,mse_theory,
//          trials_used,error_events
// Values are locale-independent with 17 significant digits, so parsing an
// emitted file reproduces the records bit-exactly.

void write_curve_csv(std::ostream& out, const SweepCurve& curve, const RunConfig& cfg);
void write_curve_json(std::ostream& out, const SweepCurve& curve, const RunConfig& cfg);

std::vector<PointRecord> read_curve_csv(std::istream& in);
std::vector<PointRecord> read_curve_json(std::istream& in);

/// Write curve to cfg.output_path in cfg.format ("-" = stdout).
/// Throws std::runtime_error naming the path on I/O failure.
void emit_curves(const SweepCurve& curve, const RunConfig& cfg);

}  // namespace aircomp
