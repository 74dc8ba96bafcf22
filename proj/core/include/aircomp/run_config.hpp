#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aircomp/experiment.hpp"

namespace aircomp {

enum class OutputFormat { csv, json };

std::string_view format_name(OutputFormat f);

/// Fully resolved run description: sweep + runner options + output sink.
struct RunConfig {
  SweepSpec sweep;
  RunOptions options;
  std::string output_path = "-";  // "-" writes to stdout
  OutputFormat format = OutputFormat::csv;
  bool theory_only = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// The resolved configuration as ordered key=value pairs; embedded in every
  /// output file so a result can be reproduced from its own header.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

}  // namespace aircomp
