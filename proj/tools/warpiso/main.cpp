#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "experiments.hpp"
#include "warpiso/errors.hpp"

namespace fs = std::filesystem;
using namespace warpiso::cli;

namespace {

constexpr int kExitFailedVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

fs::path default_root() {
  if (const char* env = std::getenv("WARPISO_OUT"); env && *env) return env;
  return "warpiso-out";
}

struct Outcome {
  int status = 0;
  std::string message;
};

Outcome run_one(std::string experiment, const std::string& config_path, fs::path out,
                std::optional<int> resolution, std::optional<int> seed) {
  try {
    Config cfg = config_path.empty() ? Config() : Config::load(config_path);
    if (cfg.has("experiment")) {
      const std::string named = cfg.get_string("experiment", "");
      if (experiment == "run") experiment = named;
      else if (named != experiment)
        throw ConfigError(config_path + ": config is for experiment '" + named + "', not '" + experiment + "'");
    }
    if (experiment == "run") throw ConfigError("'run' needs a config with an experiment key");
    const ExperimentInfo* info = find_experiment(experiment);
    if (!info) throw ConfigError("unknown experiment '" + experiment + "' (see 'warpiso list')");
    if (resolution) cfg.set("resolution", static_cast<double>(*resolution));
    if (seed) cfg.set("seed", static_cast<double>(*seed));
    if (out.empty())
      out = default_root() / (config_path.empty() ? experiment : fs::path(config_path).stem().string());
    const auto start = std::chrono::steady_clock::now();
    Bundle bundle = run_experiment(*info, cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_bundle(bundle, out, wall);
    std::string failed;
    for (const auto& e : bundle.expectations)
      if (!e.passed) failed += "\n  FAIL " + e.name + (e.detail.empty() ? "" : " (" + e.detail + ")");
    const std::size_t passed = std::count_if(bundle.expectations.begin(), bundle.expectations.end(),
                                             [](const Expectation& e) { return e.passed; });
    std::string msg = experiment + ": " + std::to_string(passed) + "/" + std::to_string(bundle.expectations.size()) +
                      " expected verdicts hold, report in " + out.string() + failed;
    return {bundle.passed() ? 0 : kExitFailedVerdict, msg};
  } catch (const ConfigError& e) {
    return {kExitUsage, std::string("configuration error: ") + e.what()};
  } catch (const warpiso::PreconditionError& e) {
    return {kExitUsage, std::string("invalid input: ") + e.what()};
  } catch (const warpiso::ConstructionError& e) {
    return {kExitUsage, std::string("invalid input: ") + e.what()};
  } catch (const warpiso::NumericError& e) {
    return {kExitNumeric, std::string("numeric failure: ") + e.what() + " (best estimate " +
                              std::to_string(e.best_estimate()) + ", error " + std::to_string(e.achieved_error()) + ")"};
  } catch (const std::exception& e) {
    return {kExitNumeric, std::string("error: ") + e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"warpiso: isoperimetric checks in warped product spaces"};
  std::string command;
  std::string config_path;
  std::string out;
  std::optional<int> resolution;
  std::optional<int> seed;
  int jobs = 0;
  app.add_option("experiment", command,
                 "experiment name, 'run' (take it from the config), 'suite' (every *.cfg in --config) or 'list'")
      ->required();
  app.add_option("--config,-c", config_path, "config file (a directory for 'suite')");
  app.add_option("--out,-o", out, "output directory (default $WARPISO_OUT/<config name>)");
  app.add_option("--resolution", resolution, "fiber grid resolution override");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--jobs,-j", jobs, "concurrent experiments for 'suite' (default: hardware threads)");
  CLI11_PARSE(app, argc, argv);

  if (command == "list") {
    for (const auto& e : experiments()) std::cout << e.name << "  " << e.summary << "\n";
    return 0;
  }
  if (command != "suite") {
    const Outcome o = run_one(command, config_path, out, resolution, seed);
    (o.status == 0 ? std::cout : std::cerr) << o.message << "\n";
    return o.status;
  }

  if (config_path.empty() || !fs::is_directory(config_path)) {
    std::cerr << "suite needs --config <directory of .cfg files>\n";
    return kExitUsage;
  }
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(config_path))
    if (entry.path().extension() == ".cfg") configs.push_back(entry.path());
  std::sort(configs.begin(), configs.end());
  const fs::path root = out.empty() ? default_root() : fs::path(out);
  if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Outcome> outcomes(configs.size());
  for (std::size_t start = 0; start < configs.size(); start += jobs) {
    std::vector<std::future<Outcome>> batch;
    for (std::size_t i = start; i < std::min(configs.size(), start + jobs); ++i)
      batch.push_back(std::async(std::launch::async, run_one, "run", configs[i].string(),
                                 root / configs[i].stem(), resolution, seed));
    for (std::size_t i = 0; i < batch.size(); ++i) outcomes[start + i] = batch[i].get();
  }
  int status = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::cout << (outcomes[i].status == 0 ? "[ok]   " : "[fail] ") << configs[i].filename().string() << ": "
              << outcomes[i].message << "\n";
    status = std::max(status, outcomes[i].status);
  }
  return status;
}
