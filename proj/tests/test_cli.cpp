#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "folnerlab/error.hpp"
#include "folnerlab/experiments.hpp"

using namespace folnerlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("folnerlab_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("experiment catalog", "[cli]") {
  const auto& cat = cli::list_experiments();
  CHECK(cat.size() >= 12);
  bool khintchine = false, diverge = false;
  for (const auto& e : cat) {
    khintchine |= e.name == "khintchine";
    diverge |= e.name == "diverge-demo";
    CHECK_FALSE(e.anchor.empty());
    CHECK(cli::default_config(e.name)["experiment"] == e.name);
  }
  CHECK(khintchine);
  CHECK(diverge);
  CHECK_THROWS_AS(cli::default_config("nope"), ConfigError);
}

TEST_CASE("malformed configs are rejected", "[cli]") {
  const auto dir = scratch("bad");
  CHECK_THROWS_AS(cli::run(nlohmann::json::object(), dir), ConfigError);
  CHECK_THROWS_AS(cli::run({{"experiment", "teleport"}}, dir), ConfigError);
  auto cfg = cli::default_config("folner-check");
  cfg["indices"] = {5, 3};
  CHECK_THROWS_AS(cli::run(cfg, dir), ConfigError);
  cfg = cli::default_config("folner-check");
  cfg["sequence"] = "boxes:d=2";
  CHECK_THROWS_AS(cli::run(cfg, dir), ConfigError);
}

TEST_CASE("folner-check output", "[cli]") {
  const auto dir = scratch("folner");
  auto cfg = cli::default_config("folner-check");
  cfg["indices"] = {{"from", 1}, {"to", 6}};
  const auto files = cli::run(cfg, dir);
  REQUIRE(fs::exists(dir / "folner-check.csv"));
  CHECK(files.size() >= 2);
  const auto csv = slurp(dir / "folner-check.csv");
  CHECK(csv.rfind("# folnerlab 0.1.0\n# config ", 0) == 0);
  CHECK(csv.find("\n5,6,1/3,") != std::string::npos);
  CHECK(csv.find(",11/6,") != std::string::npos);
  CHECK(csv.find(",25/6,") != std::string::npos);
  const auto report = nlohmann::json::parse(slurp(dir / "folner-check.json"));
  CHECK(report["folnerlab"] == "0.1.0");
  CHECK(report["config"] == cfg);
}

TEST_CASE("runs are reproducible", "[cli]") {
  auto cfg = cli::default_config("khintchine");
  const auto a = scratch("rep_a"), b = scratch("rep_b");
  cli::run(cfg, a);
  cli::run(cfg, b);
  CHECK(slurp(a / "khintchine.csv") == slurp(b / "khintchine.csv"));
}

TEST_CASE("mathematical failures surface as library errors", "[cli]") {
  const auto dir = scratch("shear");
  auto cfg = cli::default_config("meanlin");
  cfg["matrix"] = {{1.0, 1.0}, {0.0, 1.0}};
  bool threw = false;
  try {
    cli::run(cfg, dir);
  } catch (const ConfigError&) {
    FAIL("shear matrix reported as a config error");
  } catch (const Error&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("every output file carries the header", "[cli]") {
  const auto dir = scratch("headers");
  const auto cfg = cli::default_config("meanlin");
  for (const auto& p : cli::run(cfg, dir)) {
    INFO(p.string());
    const auto text = slurp(p);
    if (p.extension() == ".csv") {
      CHECK(text.rfind("# folnerlab 0.1.0\n# config " + cfg.dump() + "\n", 0) == 0);
    } else {
      const auto report = nlohmann::json::parse(text);
      CHECK(report["folnerlab"] == "0.1.0");
      CHECK(report["config"] == cfg);
    }
  }
}
