#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "blaschke/classifier.hpp"

namespace blaschke {

// 17 significant digits: losslessly round-trips every finite double.
std::string format_real(double x);

std::string verdict_kind_name(VerdictKind kind);
VerdictKind verdict_kind_from_name(const std::string& name);

nlohmann::json limit_estimate_to_json(const LimitEstimate& est);
LimitEstimate limit_estimate_from_json(const nlohmann::json& j);

nlohmann::json boundedness_to_json(const BoundednessReport& report);
BoundednessReport boundedness_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const ClassificationVerdict& verdict);
ClassificationVerdict verdict_from_json(const nlohmann::json& j);

// Per-point table of a classification verdict: angle, liminf columns.
std::string verdict_per_point_csv(const ClassificationVerdict& verdict);

struct BoundaryScanRow {
  double angle;
  LimitEstimate liminf;
  LimitEstimate limit;
  AngularDerivativeEstimate derivative;
};

// angle, liminf_tau_alpha, limit_tau_alpha, angular_derivative. Unbounded
// limit estimates serialize as the literal "unbounded", infinite derivative
// estimates as "inf", disagreeing extrapolations as "undetermined".
std::string boundary_scan_csv(const std::vector<BoundaryScanRow>& rows);

struct AlphaSweepRow {
  double alpha;
  double c_estimate;
  BoundednessReport boundedness;
  VerdictKind verdict;
};

std::string alpha_sweep_csv(const std::vector<AlphaSweepRow>& rows);

struct FieldRow {
  double re;
  double im;
  double tau;
  double jc_quotient;
};

std::string distortion_field_csv(const std::vector<FieldRow>& rows);

}  // namespace blaschke
