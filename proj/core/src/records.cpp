#include "warpiso/records.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace warpiso {

using nlohmann::json;

void to_json(json& j, const GridResolution& r) { j = json{{"primary", r.primary}, {"secondary", r.secondary}}; }

void to_json(json& j, const Hypothesis& h) {
  j = json{{"name", h.name}, {"passed", h.passed}, {"evidence", h.evidence}};
}

void to_json(json& j, const VerificationRecord& r) {
  j = json{{"kind", r.kind},
           {"model", r.model},
           {"shape", r.shape},
           {"weight", r.weight},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"margin", r.margin},
           {"sharp_radius", r.sharp_radius},
           {"volume", r.volume},
           {"hypotheses", r.hypotheses},
           {"theorems", r.theorems},
           {"equality_flag", r.equality_flag},
           {"equality_note", r.equality_note},
           {"resolution", r.resolution},
           {"quadrature_tolerance", r.quadrature_tolerance},
           {"equality_tolerance", r.equality_tolerance},
           {"inequality_holds", r.inequality_holds()}};
}

void to_json(json& j, const RegimeReport& r) {
  j = json{{"regime", to_string(r.regime)},
           {"explanation", r.explanation},
           {"s_monotone", r.s_monotone},
           {"s_vanishes_at_zero", r.s_vanishes_at_zero},
           {"min_defect", r.min_defect},
           {"max_defect", r.max_defect},
           {"K", r.K ? json(*r.K) : json(nullptr)},
           {"samples", r.samples},
           {"r_min", r.r_min},
           {"r_max", r.r_max}};
}

void to_json(json& j, const HMResult& r) {
  j = json{{"k", r.k}, {"terms", r.terms}, {"raw", r.raw}, {"denominator", r.denominator}, {"residual", r.residual}};
}

void to_json(json& j, const PositivityReport& r) {
  j = json{{"p", r.p},
           {"min_H", r.min_H},
           {"min_H_node", r.min_H_node},
           {"min_newton_eigenvalue", r.min_newton_eigenvalue},
           {"min_newton_node", r.min_newton_node},
           {"positive", r.positive},
           {"location", r.location},
           {"certification", r.certification}};
}

void to_json(json& j, const ChainReport& r) {
  j = json{{"k", r.k},
           {"l", r.l},
           {"base", r.base},
           {"weighted_volume", r.weighted_volume},
           {"entries", r.entries},
           {"margins", r.margins},
           {"positivity", r.positivity ? json(*r.positivity) : json(nullptr)},
           {"hypotheses", r.hypotheses},
           {"hypotheses_hold", r.hypotheses_hold()},
           {"nondecreasing", r.nondecreasing()}};
}

void to_json(json& j, const JensenResult& r) {
  j = json{{"gap", r.gap},
           {"mean_psi", r.mean_psi},
           {"psi_at_mean_volume", r.psi_at_mean_volume},
           {"convexity_holds", r.convexity_holds}};
}

void to_json(json& j, const StabilityVerdict& r) {
  j = json{{"r0", r.r0},
           {"curvature_term", r.curvature_term},
           {"lambda1", r.lambda1},
           {"stable", r.stable},
           {"marginal", r.marginal}};
}

void to_json(json& j, const ProbeResult& r) {
  j = json{{"mode", r.mode},
           {"h", r.h},
           {"fd_h", r.fd_h},
           {"fd_half", r.fd_half},
           {"fd", r.fd},
           {"formula", r.formula},
           {"eigenvalue", r.eigenvalue},
           {"volume_shifts", r.volume_shifts}};
}

void to_json(json& j, const ThresholdReport& r) {
  j = json{{"n", r.n},
           {"threshold", r.threshold},
           {"s_prime0", r.s_prime0},
           {"violated", r.violated},
           {"r", r.r},
           {"area_at_origin", r.area_at_origin},
           {"area_geodesic", r.area_geodesic}};
}

void to_json(json& j, const AnnulusRecord& r) {
  j = json{{"m", r.m},
           {"R1", r.R1},
           {"R2", r.R2},
           {"volume_ratio", r.volume_ratio},
           {"volume_closed_form", r.volume_closed_form},
           {"area_ratio", r.area_ratio},
           {"area_closed_form", r.area_closed_form}};
}

void to_json(json& j, const EigenBoundRecord& r) {
  j = json{{"kind", r.kind},
           {"shape", r.shape},
           {"k", r.k},
           {"eigenvalue", r.eigenvalue},
           {"bound", r.bound},
           {"holds", r.holds},
           {"equality", r.equality},
           {"method", r.method},
           {"volume", r.volume},
           {"integral", r.integral},
           {"centroid", r.centroid}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string to_csv_line(const CsvRow& row) {
  return csv_escape(row.experiment) + ',' + csv_escape(row.model) + ',' + csv_escape(row.shape) + ',' +
         csv_escape(row.weight) + ',' + format_double(row.lhs) + ',' + format_double(row.rhs) + ',' +
         format_double(row.margin) + ',' + csv_escape(row.verdict);
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& row : rows) out << to_csv_line(row) << '\n';
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

CsvRow csv_row(const std::string& experiment, const VerificationRecord& r) {
  std::string verdict = r.inequality_holds() ? "holds" : "violated";
  if (r.equality_flag) verdict = "equality";
  return {experiment, r.model, r.shape, r.weight, r.lhs, r.rhs, r.margin, verdict};
}

}  // namespace warpiso
