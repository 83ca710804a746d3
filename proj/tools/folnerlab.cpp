#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "folnerlab/error.hpp"
#include "folnerlab/experiments.hpp"
#include "folnerlab/reduce.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kMathExit = 3;

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw folnerlab::ConfigError("cannot read config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw folnerlab::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folnerlab: ergodic averages along Følner sequences"};
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool list = false;
  std::string print_default;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "override the config seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--list", list, "list the experiment catalog");
  app.add_option("--default", print_default, "print the default config of an experiment");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (list) {
      for (const auto& e : folnerlab::cli::list_experiments()) std::cout << e.name << "\t" << e.anchor << "\n";
      return 0;
    }
    if (!print_default.empty()) {
      std::cout << folnerlab::cli::default_config(print_default).dump(2) << "\n";
      return 0;
    }
    if (config_path.empty()) throw folnerlab::ConfigError("--config is required");
    auto config = load_config(config_path);
    if (seed && config.is_object()) config["seed"] = *seed;
    folnerlab::set_thread_count(threads);
    for (const auto& path : folnerlab::cli::run(config, out_dir)) std::cout << path.string() << "\n";
    return 0;
  } catch (const folnerlab::ConfigError& e) {
    std::cerr << "folnerlab: config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const folnerlab::Error& e) {
    std::cerr << "folnerlab: " << e.what() << "\n";
    return kMathExit;
  } catch (const std::exception& e) {
    std::cerr << "folnerlab: " << e.what() << "\n";
    return kMathExit;
  }
}
