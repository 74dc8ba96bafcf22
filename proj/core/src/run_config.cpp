#include "aircomp/run_config.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace aircomp {

namespace {

// Locale-independent shortest round-trip formatting.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::json:
      return "json";
  }
  return "unknown";
}

void RunConfig::validate() const {
  sweep.validate();
  for (double db : sweep.snr_points_db)
    if (db < -10.0 || db > 60.0)
      throw std::invalid_argument("snr_points_db must lie within [-10, 60] dB");
  if (options.workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (options.max_trials < sweep.trials)
    throw std::invalid_argument("max_trials must be >= trials");
  if (options.min_error_events < 0)
    throw std::invalid_argument("min_error_events must be >= 0");
  if (!(options.ci_rel_target > 0.0))
    throw std::invalid_argument("ci_rel_target must be > 0");
  if (output_path.empty()) throw std::invalid_argument("output_path must be non-empty");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("devices", fmt(sweep.base.devices));
  kv.emplace_back("resources", fmt(static_cast<std::int64_t>(sweep.base.resources)));
  kv.emplace_back("symbol_duration", fmt(sweep.base.symbol_duration));
  kv.emplace_back("noise_density", fmt(sweep.base.noise_density));

  std::string snr;
  for (double db : sweep.snr_points_db) {
    if (!snr.empty()) snr += ' ';
    snr += fmt(db);
  }
  kv.emplace_back("snr_points_db", snr);

  kv.emplace_back("trials", fmt(sweep.trials));
  kv.emplace_back("base_seed", fmt(sweep.base_seed));

  std::string schemes;
  for (Scheme s : sweep.schemes) {
    if (!schemes.empty()) schemes += ' ';
    schemes += scheme_name(s);
  }
  kv.emplace_back("schemes", schemes);

  kv.emplace_back("distribution", sweep.distribution.describe());
  kv.emplace_back("workers", fmt(static_cast<std::int64_t>(options.workers)));
  kv.emplace_back("adaptive", fmt(options.adaptive));
  kv.emplace_back("max_trials", fmt(options.max_trials));
  kv.emplace_back("min_error_events", fmt(options.min_error_events));
  kv.emplace_back("ci_rel_target", fmt(options.ci_rel_target));
  kv.emplace_back("freeze_data", fmt(options.freeze_data));
  kv.emplace_back("lattice_theory", std::string(lattice_theory_name(options.lattice_theory)));
  kv.emplace_back("format", std::string(format_name(format)));
  kv.emplace_back("theory_only", fmt(theory_only));
  return kv;
}

}  // namespace aircomp
