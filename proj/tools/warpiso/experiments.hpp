#pragma once

// Named experiments: each reads its keys from a Config, calls the owning
// core module and fills a Bundle with records, CSV rows, expected-verdict
// checks and plots.

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "svg.hpp"
#include "warpiso/records.hpp"

namespace warpiso::cli {

struct Expectation {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Bundle {
  std::string experiment;
  nlohmann::json config;
  nlohmann::json records = nlohmann::json::array();
  std::vector<CsvRow> rows;
  std::vector<Expectation> expectations;
  std::vector<std::pair<std::string, SvgPlot>> plots;
  std::vector<std::string> resolutions;

  bool passed() const;
  void expect(std::string name, bool ok, std::string detail);
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::set<std::string> keys;  // besides experiment, resolution, seed
  void (*run)(Config&, Bundle&);
};

const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo* find_experiment(const std::string& name);

/// Validates keys, runs, and fills bundle.config with the resolved config.
Bundle run_experiment(const ExperimentInfo& info, Config& config);

/// Writes report.json, report.csv, run.log and the plots into dir.
void write_bundle(const Bundle& bundle, const std::filesystem::path& dir, double wall_seconds);

/// SVG files for the bundle's plots; warns on stderr and writes nothing when
/// there are none.
void emit_plots(const Bundle& bundle, const std::filesystem::path& dir);

}  // namespace warpiso::cli
