#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyvol/admissible.hpp"
#include "polyvol/bounds.hpp"
#include "polyvol/integral_lab.hpp"
#include "polyvol/loja.hpp"
#include "polyvol/mclab.hpp"
#include "polyvol/newton.hpp"
#include "polyvol/polynomial.hpp"

namespace polyvol {

inline constexpr const char* kToolVersion = "0.1.0";

/// A place where a published treatment of the analyzed family prints a value
/// that disagrees with what direct computation gives. Surfaced instead of
/// silently following either side.
struct DiscrepancyNote {
  std::string topic;
  std::string text;
};

struct ChainSummary {
  int l = 0;
  std::string tail;                 // canonical text of the last chain entry
  std::optional<int> tail_degree;   // nullopt when the tail vanishes
  bool feasible = false;            // tail nonconstant, exponents available
};

/// Full symbolic analysis of one polynomial: certificates, exponents, every
/// predicted bound, and any notes or warnings the input triggers. Contains
/// no sampled data; labs consume the predictions separately.
struct AnalysisReport {
  std::string polynomial;
  int dimension = 0;
  int degree = 0;
  std::vector<AdmissibleCertificate> admissible;
  AdmissibleDegree ad;
  NewtonDistance nd;
  std::vector<ChainSummary> chains;
  std::vector<BoundPrediction> predictions;
  std::optional<IntegrabilityBounds> integrability;  // absent when P(0) != 0
  std::optional<OscillatoryBound> oscillatory;
  std::vector<DiscrepancyNote> notes;
  std::vector<std::string> warnings;
  std::string version = kToolVersion;
};

/// Throws std::domain_error for zero or constant polynomials.
AnalysisReport analyze(const SparsePolynomial& p);

std::string render_text(const AnalysisReport& report);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const BoundPrediction& prediction);
nlohmann::json to_json(const ScanResult& result);
nlohmann::json to_json(const ScanFit& fit);
nlohmann::json to_json(const TightnessReport& report);
nlohmann::json to_json(const RemezReport& report);
nlohmann::json to_json(const DegenerateScanReport& report);
nlohmann::json to_json(const DecayScanResult& result);
nlohmann::json to_json(const SingularIntegralResult& result);
nlohmann::json to_json(const IntegrabilityScan& scan);
nlohmann::json to_json(const LojaReport& report);
nlohmann::json to_json(const ChebyshevFloorResult& result);

}  // namespace polyvol
