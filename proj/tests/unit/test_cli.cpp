#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "bergman/io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using bergman::json;

namespace {

const fs::path kWork = fs::path(BERGMAN_TEST_WORKDIR) / "cli_test";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write_config(const std::string& name, const std::string& body) {
  fs::create_directories(kWork);
  const fs::path p = kWork / name;
  std::ofstream(p) << body;
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(BERGMAN_KIT_EXE) + " " + args + " 2>" + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("configuration errors exit with 2") {
  const fs::path empty_ladder = write_config("empty_ladder.json", R"({"rho_ladder": []})");
  CHECK(run("approx-identity --config " + empty_ladder.string() + " --out " + (kWork / "x").string()) == 2);
  CHECK(slurp(kWork / "stderr.txt").find("nonempty") != std::string::npos);

  const fs::path unsorted = write_config("unsorted.json", R"({"sigma_ladder": [1, 3, 2]})");
  CHECK(run("segmented --config " + unsorted.string() + " --out " + (kWork / "x").string()) == 2);

  const fs::path typo = write_config("typo.json", R"({"rho_ladr": [0.5]})");
  CHECK(run("approx-identity --config " + typo.string() + " --out " + (kWork / "x").string()) == 2);

  const fs::path broken = write_config("broken.json", "{");
  CHECK(run("lattice --config " + broken.string()) == 2);
  CHECK(run("no-such-experiment --config " + typo.string()) == 2);
  CHECK(run("lattice --config " + (kWork / "missing.json").string()) == 2);
  CHECK(run("lattice") == 2);
}

TEST_CASE("module failures exit with 3") {
  // At D = 4 the kernel at |z| = 0.9 is far outside the truncation.
  const fs::path cfg = write_config("tail.json", R"({"D": 4, "radii": [0.0, 0.9]})");
  CHECK(run("berezin-profile --config " + cfg.string() + " --out " + (kWork / "x").string()) == 3);
  const json diag = json::parse(slurp(kWork / "stderr.txt"));
  CHECK(diag["exit"] == 3);
  CHECK(diag["experiment"] == "berezin-profile");
}

TEST_CASE("approx-identity output format and monotone column") {
  const fs::path cfg = write_config("ai.json", R"({"rho_ladder": [0.5, 0.25, 0.125], "seed": 5})");
  const fs::path out = kWork / "ai";
  REQUIRE(run("approx-identity --config " + cfg.string() + " --out " + out.string()) == 0);
  const json doc = json::parse(slurp(out / "approx-identity.json"));
  CHECK(doc["version"] == bergman::kVersion);
  CHECK(doc["config"]["seed"] == 5);
  CHECK(doc["config"]["beta_max"] == 11.0);
  const auto& rows = doc["results"]["rows"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[1]["error"].get<double>() < rows[0]["error"].get<double>());
  CHECK(rows[2]["error"].get<double>() < rows[1]["error"].get<double>());

  std::istringstream csv(slurp(out / "approx-identity.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == std::string("# ") + bergman::kVersion);
  std::getline(csv, line);
  CHECK(line.rfind("# config: {", 0) == 0);
  CHECK(line.find("\"seed\":5") != std::string::npos);
  while (std::getline(csv, line) && line[0] == '#') {
  }
  CHECK(line == "rho,error,error_inner,ratio_to_previous");
  std::getline(csv, line);
  const std::string err = line.substr(line.find(',') + 1, line.find(',', line.find(',') + 1) - line.find(',') - 1);
  CHECK(std::stod(err) == rows[0]["error"].get<double>());
}

TEST_CASE("seed flag overrides the config and reruns are identical") {
  const fs::path cfg = write_config("lat.json", R"({"rho_ladder": [1.0], "sigma_ladder": [1.0], "k_list": [0],
                                                   "samples": 500, "seed": 1})");
  for (const char* dir : {"lat_a", "lat_b"}) REQUIRE(run("lattice --config " + cfg.string() + " --seed 9 --out " + (kWork / dir).string()) == 0);
  CHECK(slurp(kWork / "lat_a" / "lattice.csv") == slurp(kWork / "lat_b" / "lattice.csv"));
  CHECK(slurp(kWork / "lat_a" / "lattice.json") == slurp(kWork / "lat_b" / "lattice.json"));
  CHECK(json::parse(slurp(kWork / "lat_a" / "lattice.json"))["config"]["seed"] == 9);
}

TEST_CASE("verdict on the rank-one projection onto constants is vanishing") {
  const fs::path cfg = write_config("r1.json", R"({"operator": {"kind": "rank_one_constants"}})");
  const fs::path out = kWork / "r1";
  REQUIRE(run("verdict --config " + cfg.string() + " --out " + out.string()) == 0);
  const json doc = json::parse(slurp(out / "verdict.json"));
  CHECK(doc["results"]["verdict"] == "vanishing");
  CHECK(slurp(out / "verdict.csv").find("# verdict: vanishing\n") != std::string::npos);
}
