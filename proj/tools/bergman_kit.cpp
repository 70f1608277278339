// bergman-kit <experiment> --config <path> [--out <dir>] [--seed <int>]
//
// Exit codes: 0 success, 2 configuration error, 3 numeric or module failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bergman/errors.hpp"
#include "bergman/io.hpp"
#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace bergman;

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericExit = 3;

int diagnose(const std::string& experiment, const char* kind, const std::string& message, int code) {
  json d{{"error", kind}, {"experiment", experiment}, {"message", message}, {"exit", code}};
  std::cerr << d.dump() << '\n';
  return code;
}

void write_csv(const fs::path& path, const std::string& config_line, const cli::Table& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << "# " << kVersion << '\n' << "# config: " << config_line << '\n';
  for (const auto& note : t.notes) os << "# " << note << '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  if (!os) throw ConfigError("write failed: " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman-space operator experiments"};
  std::string experiment;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_flag;
  app.add_option("experiment", experiment, "one of: lattice, carleson, berezin-profile, approx-identity, bk-approx, "
                                           "segmented, estimators, verdict")
      ->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_flag, "overrides the config seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    bool known = false;
    for (const auto& n : cli::experiment_names()) known = known || n == experiment;
    if (!known) throw ConfigError("unknown experiment '" + experiment + "'");

    const json raw = cli::read_json_file(config_path);
    cli::Echo echo = cli::Echo::object();
    cli::Cfg cfg(raw, echo, "");
    const std::string named = cfg.str("experiment", experiment);
    if (named != experiment) throw ConfigError("config is for experiment '" + named + "', not '" + experiment + "'");
    std::uint64_t seed = cfg.seed("seed", 0);
    if (seed_flag) {
      seed = *seed_flag;
      echo["seed"] = seed;
    }
    cli::Outcome outcome = cli::run_experiment(experiment, cfg, seed);

    const json effective = json::parse(echo.dump());
    json doc{{"version", kVersion}, {"experiment", experiment}, {"config", effective}, {"results", outcome.results}};
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create " + out_dir + ": " + ec.message());
    {
      std::ofstream os(fs::path(out_dir) / (experiment + ".json"), std::ios::binary);
      if (!os) throw ConfigError("cannot write into " + out_dir);
      os << doc.dump(2) << '\n';
    }
    write_csv(fs::path(out_dir) / (experiment + ".csv"), effective.dump(), outcome.table);
  } catch (const ConfigError& e) {
    return diagnose(experiment, "config", e.what(), kConfigExit);
  } catch (const json::exception& e) {
    return diagnose(experiment, "config", e.what(), kConfigExit);
  } catch (const NumericError& e) {
    return diagnose(experiment, "numeric", e.what(), kNumericExit);
  } catch (const DomainError& e) {
    return diagnose(experiment, "domain", e.what(), kNumericExit);
  } catch (const std::exception& e) {
    return diagnose(experiment, "internal", e.what(), kNumericExit);
  }
  return 0;
}
