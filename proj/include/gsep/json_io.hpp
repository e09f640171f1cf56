#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gsep/boundsearch.hpp"
#include "gsep/circuit.hpp"
#include "gsep/covariance.hpp"
#include "gsep/lmi.hpp"
#include "gsep/separability.hpp"
#include "gsep/symplectic.hpp"

namespace gsep {

/// All readers throw std::invalid_argument on schema violations (wrong
/// shapes, non-finite numbers, unknown enum strings); nlohmann parse errors
/// propagate unchanged.

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);
nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j);

struct LoadedCovariance {
  CovarianceMatrix gamma;
  std::optional<ModePartition> partition;
};

/// { "n_modes", "ordering": "interleaved", "partition"?: [m, n], "matrix" }
nlohmann::json covariance_to_json(
    const CovarianceMatrix& gamma,
    const std::optional<ModePartition>& partition = std::nullopt);
LoadedCovariance covariance_from_json(const nlohmann::json& j);

/// { "nu", "L", "r", "K_unitary": {"re", "im"} } — the mode-space unitary is
/// the exchange format; its symplectic embedding is derived on load.
nlohmann::json recipe_to_json(const GaussianRecipe& recipe);
GaussianRecipe recipe_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const InfeasibilityCertificate& cert);
InfeasibilityCertificate certificate_from_json(const nlohmann::json& j);

/// { "class", "physical_min_eig", "ppt_min_eig", "lmi_margin", "robustness",
///   "converged", "diagnostic"?, "witness"?, "certificate"? }
/// NaN-valued diagnostics serialize as null.
nlohmann::json classification_to_json(const Classification& result);

nlohmann::json lmi_problem_to_json(const LmiProblem& problem);
LmiProblem lmi_problem_from_json(const nlohmann::json& j);
nlohmann::json feasibility_report_to_json(const FeasibilityReport& report);

nlohmann::json circuit_to_json(const CircuitDescription& circuit);
CircuitDescription circuit_from_json(const nlohmann::json& j);

/// Search configuration; absent keys keep their defaults.
SearchConfig search_config_from_json(const nlohmann::json& j);
nlohmann::json search_config_to_json(const SearchConfig& config);
nlohmann::json search_summary_to_json(const SearchSummary& summary,
                                      const SearchConfig& config);

}  // namespace gsep
