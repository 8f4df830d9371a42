#pragma once

/// \file
/// JSON and CSV serialization of verification records. Output is a pure
/// function of the record, so reports compare byte-exactly across runs.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "warpiso/iso_lab.hpp"
#include "warpiso/minkowski_chain.hpp"
#include "warpiso/spectral_stability.hpp"
#include "warpiso/warp_model.hpp"

namespace warpiso {

void to_json(nlohmann::json& j, const GridResolution& r);
void to_json(nlohmann::json& j, const Hypothesis& h);
void to_json(nlohmann::json& j, const VerificationRecord& r);
void to_json(nlohmann::json& j, const RegimeReport& r);
void to_json(nlohmann::json& j, const HMResult& r);
void to_json(nlohmann::json& j, const PositivityReport& r);
void to_json(nlohmann::json& j, const ChainReport& r);
void to_json(nlohmann::json& j, const JensenResult& r);
void to_json(nlohmann::json& j, const StabilityVerdict& r);
void to_json(nlohmann::json& j, const ProbeResult& r);
void to_json(nlohmann::json& j, const ThresholdReport& r);
void to_json(nlohmann::json& j, const AnnulusRecord& r);
void to_json(nlohmann::json& j, const EigenBoundRecord& r);

/// One flat report row.
struct CsvRow {
  std::string experiment;
  std::string model;
  std::string shape;
  std::string weight;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string verdict;
};

inline constexpr const char* kCsvHeader = "experiment,model,shape,weight,lhs,rhs,margin,verdict";

/// "%.17g", with "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double x);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

std::string to_csv_line(const CsvRow& row);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

/// 2-space indented JSON with sorted keys and shortest round-trip doubles,
/// terminated by a newline. Non-finite doubles become null.
std::string dump_json(const nlohmann::json& j);

CsvRow csv_row(const std::string& experiment, const VerificationRecord& r);

}  // namespace warpiso
