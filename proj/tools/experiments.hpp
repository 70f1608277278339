#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace bergman::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Extra "# key: value" lines written after the config echo.
  std::vector<std::string> notes;
};

struct Outcome {
  json results;
  Table table;
};

const std::vector<std::string>& experiment_names();

/// Runs one experiment. Parameters are read (and validated) from `c` before any computation.
Outcome run_experiment(const std::string& name, Cfg& c, std::uint64_t seed);

}  // namespace bergman::cli
