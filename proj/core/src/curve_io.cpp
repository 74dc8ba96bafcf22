#include "aircomp/curve_io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace aircomp {

namespace {

constexpr std::string_view kColumns =
    "snr_db,scheme,mse_empirical,ci95_low,ci95_high,mse_theory,trials_used,error_events";

// 17 significant digits round-trip any double exactly, independent of locale.
std::string fmt17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, int line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::runtime_error("curve csv: bad number '" + std::string(field) + "' on line " +
                             std::to_string(line_no));
  return v;
}

std::int64_t parse_int(std::string_view field, int line_no) {
  std::int64_t v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw std::runtime_error("curve csv: bad integer '" + std::string(field) + "' on line " +
                             std::to_string(line_no));
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

nlohmann::json record_to_json(const PointRecord& rec) {
  return nlohmann::json{{"snr_db", rec.snr_db},
                        {"scheme", std::string(scheme_name(rec.scheme))},
                        {"mse_empirical", rec.mse_empirical},
                        {"ci95_low", rec.ci95_low},
                        {"ci95_high", rec.ci95_high},
                        {"mse_theory", rec.mse_theory},
                        {"trials_used", rec.trials_used},
                        {"error_events", rec.error_events}};
}

PointRecord record_from_json(const nlohmann::json& j) {
  PointRecord rec;
  const auto name = j.at("scheme").get<std::string>();
  const auto scheme = scheme_from_name(name);
  if (!scheme) throw std::runtime_error("curve json: unknown scheme '" + name + "'");
  rec.scheme = *scheme;
  rec.snr_db = j.at("snr_db").get<double>();
  rec.mse_empirical = j.at("mse_empirical").get<double>();
  rec.ci95_low = j.at("ci95_low").get<double>();
  rec.ci95_high = j.at("ci95_high").get<double>();
  rec.mse_theory = j.at("mse_theory").get<double>();
  rec.trials_used = j.at("trials_used").get<std::int64_t>();
  rec.error_events = j.at("error_events").get<std::int64_t>();
  return rec;
}

}  // namespace

void write_curve_csv(std::ostream& out, const SweepCurve& curve, const RunConfig& cfg) {
  for (const auto& [key, value] : cfg.echo()) out << "# " << key << '=' << value << '\n';
  out << kColumns << '\n';
  for (const auto& rec : curve.records) {
    out << fmt17(rec.snr_db) << ',' << scheme_name(rec.scheme) << ','
        << fmt17(rec.mse_empirical) << ',' << fmt17(rec.ci95_low) << ','
        << fmt17(rec.ci95_high) << ',' << fmt17(rec.mse_theory) << ',' << rec.trials_used
        << ',' << rec.error_events << '\n';
  }
}

void write_curve_json(std::ostream& out, const SweepCurve& curve, const RunConfig& cfg) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : cfg.echo()) config[key] = value;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : curve.records) records.push_back(record_to_json(rec));
  out << nlohmann::json{{"config", config}, {"records", records}}.dump(2) << '\n';
}

std::vector<PointRecord> read_curve_csv(std::istream& in) {
  std::vector<PointRecord> records;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kColumns)
        throw std::runtime_error("curve csv: unexpected column header on line " +
                                 std::to_string(line_no));
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 8)
      throw std::runtime_error("curve csv: expected 8 fields on line " + std::to_string(line_no));
    PointRecord rec;
    rec.snr_db = parse_double(fields[0], line_no);
    const auto scheme = scheme_from_name(fields[1]);
    if (!scheme)
      throw std::runtime_error("curve csv: unknown scheme '" + std::string(fields[1]) +
                               "' on line " + std::to_string(line_no));
    rec.scheme = *scheme;
    rec.mse_empirical = parse_double(fields[2], line_no);
    rec.ci95_low = parse_double(fields[3], line_no);
    rec.ci95_high = parse_double(fields[4], line_no);
    rec.mse_theory = parse_double(fields[5], line_no);
    rec.trials_used = parse_int(fields[6], line_no);
    rec.error_events = parse_int(fields[7], line_no);
    records.push_back(rec);
  }
  if (!header_seen) throw std::runtime_error("curve csv: missing column header");
  return records;
}

std::vector<PointRecord> read_curve_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("curve json: parse failure: ") + e.what());
  }
  std::vector<PointRecord> records;
  for (const auto& j : doc.at("records")) records.push_back(record_from_json(j));
  return records;
}

void emit_curves(const SweepCurve& curve, const RunConfig& cfg) {
  const auto write = [&](std::ostream& out) {
    if (cfg.format == OutputFormat::csv)
      write_curve_csv(out, curve, cfg);
    else
      write_curve_json(out, curve, cfg);
  };
  if (cfg.output_path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("emit_curves: write to stdout failed");
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw std::runtime_error("emit_curves: cannot open '" + cfg.output_path + "'");
  write(out);
  out.flush();
  if (!out) throw std::runtime_error("emit_curves: write to '" + cfg.output_path + "' failed");
}

}  // namespace aircomp
