#include "gsep/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace gsep {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& context) {
  if (!j.is_number()) {
    throw std::invalid_argument(context + " must be a number");
  }
  const double value = j.get<double>();
  if (!std::isfinite(value)) {
    throw std::invalid_argument(context + " must be finite");
  }
  return value;
}

int integer_at(const json& j, const std::string& context) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument(context + " must be an integer");
  }
  return j.get<int>();
}

const json& member(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument("missing field '" + key + "'");
  }
  return j.at(key);
}

ModePartition partition_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("partition must be a two-element array");
  }
  return ModePartition{integer_at(j[0], "partition[0]"),
                       integer_at(j[1], "partition[1]")};
}

}  // namespace

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix must be a non-empty array of rows");
  }
  const std::size_t n_rows = j.size();
  if (!j[0].is_array() || j[0].empty()) {
    throw std::invalid_argument("matrix rows must be non-empty arrays");
  }
  const std::size_t n_cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_rows),
                    static_cast<Eigen::Index>(n_cols));
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (!j[r].is_array() || j[r].size() != n_cols) {
      throw std::invalid_argument("matrix rows must have equal length");
    }
    for (std::size_t c = 0; c < n_cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          number_at(j[r][c], "matrix entry");
    }
  }
  return m;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  json values = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) values.push_back(v(i));
  return values;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("vector must be an array");
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], "vector entry");
  }
  return v;
}

nlohmann::json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
  return json{{"re", matrix_to_json(m.real())},
              {"im", matrix_to_json(m.imag())}};
}

Eigen::MatrixXcd complex_matrix_from_json(const nlohmann::json& j) {
  const Eigen::MatrixXd re = matrix_from_json(member(j, "re"));
  const Eigen::MatrixXd im = matrix_from_json(member(j, "im"));
  if (re.rows() != im.rows() || re.cols() != im.cols()) {
    throw std::invalid_argument("re and im parts must have equal shape");
  }
  return re.cast<std::complex<double>>() +
         std::complex<double>(0.0, 1.0) * im;
}

nlohmann::json covariance_to_json(const CovarianceMatrix& gamma,
                                  const std::optional<ModePartition>& partition) {
  json j;
  j["n_modes"] = gamma.n_modes();
  j["ordering"] = "interleaved";
  if (partition) {
    j["partition"] = {partition->modes_a, partition->modes_b};
  }
  j["matrix"] = matrix_to_json(gamma.matrix());
  return j;
}

LoadedCovariance covariance_from_json(const nlohmann::json& j) {
  const int n_modes = integer_at(member(j, "n_modes"), "n_modes");
  const json& ordering = member(j, "ordering");
  if (!ordering.is_string() || ordering.get<std::string>() != "interleaved") {
    throw std::invalid_argument("ordering must be \"interleaved\"");
  }
  const Eigen::MatrixXd m = matrix_from_json(member(j, "matrix"));
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("covariance matrix must be square");
  }
  std::optional<ModePartition> partition;
  if (j.contains("partition")) {
    partition = partition_from_json(j.at("partition"));
  }
  LoadedCovariance loaded{CovarianceMatrix(n_modes, m), partition};
  if (partition) partition->validate_for(loaded.gamma);
  return loaded;
}

nlohmann::json recipe_to_json(const GaussianRecipe& recipe) {
  json j;
  j["nu"] = vector_to_json(recipe.nu);
  j["L"] = matrix_to_json(recipe.L);
  j["r"] = vector_to_json(recipe.r);
  j["K_unitary"] = complex_matrix_to_json(recipe.q_unitary);
  return j;
}

GaussianRecipe recipe_from_json(const nlohmann::json& j) {
  GaussianRecipe recipe;
  recipe.nu = vector_from_json(member(j, "nu"));
  recipe.L = matrix_from_json(member(j, "L"));
  recipe.r = vector_from_json(member(j, "r"));
  recipe.q_unitary = complex_matrix_from_json(member(j, "K_unitary"));
  const auto n = recipe.nu.size();
  if (recipe.r.size() != n || recipe.L.rows() != 2 * n ||
      recipe.L.cols() != 2 * n || recipe.q_unitary.rows() != n ||
      recipe.q_unitary.cols() != n) {
    throw std::invalid_argument("recipe factor shapes are inconsistent");
  }
  return recipe;
}

nlohmann::json certificate_to_json(const InfeasibilityCertificate& cert) {
  json blocks = json::array();
  for (const auto& z : cert.dual_blocks) blocks.push_back(matrix_to_json(z));
  return json{{"dual_blocks", std::move(blocks)},
              {"delta_cert", cert.delta_cert}};
}

InfeasibilityCertificate certificate_from_json(const nlohmann::json& j) {
  const json& blocks = member(j, "dual_blocks");
  if (!blocks.is_array() || blocks.empty()) {
    throw std::invalid_argument("dual_blocks must be a non-empty array");
  }
  InfeasibilityCertificate cert;
  for (const auto& block : blocks) {
    cert.dual_blocks.push_back(matrix_from_json(block));
  }
  cert.delta_cert = number_at(member(j, "delta_cert"), "delta_cert");
  return cert;
}

nlohmann::json classification_to_json(const Classification& result) {
  // stages the decision chain never reached hold NaN; emit those as null
  const auto finite_or_null = [](double value) {
    return std::isfinite(value) ? json(value) : json(nullptr);
  };
  json j;
  j["class"] = to_string(result.state_class);
  j["physical_min_eig"] = result.physical_min_eig;
  j["ppt_min_eig"] = finite_or_null(result.ppt_min_eig);
  j["lmi_margin"] = finite_or_null(result.lmi_margin);
  j["robustness"] = finite_or_null(result.ppt_min_eig);
  j["converged"] = result.solver_converged;
  if (!result.diagnostic.empty()) j["diagnostic"] = result.diagnostic;
  if (result.witness) {
    j["witness"] = json{{"gamma_A", matrix_to_json(result.witness->first)},
                        {"gamma_B", matrix_to_json(result.witness->second)}};
  }
  if (result.certificate) {
    j["certificate"] = certificate_to_json(*result.certificate);
  }
  return j;
}

nlohmann::json lmi_problem_to_json(const LmiProblem& problem) {
  json blocks = json::array();
  for (const auto& block : problem.blocks) {
    json coeffs = json::array();
    for (const auto& coeff : block.coeffs) {
      coeffs.push_back(matrix_to_json(coeff));
    }
    blocks.push_back(json{{"A0", matrix_to_json(block.constant)},
                          {"coeffs", std::move(coeffs)}});
  }
  return json{{"dim_vars", problem.dim_vars},
              {"var_bound", problem.var_bound},
              {"blocks", std::move(blocks)}};
}

LmiProblem lmi_problem_from_json(const nlohmann::json& j) {
  LmiProblem problem;
  problem.dim_vars = integer_at(member(j, "dim_vars"), "dim_vars");
  if (j.contains("var_bound")) {
    problem.var_bound = number_at(j.at("var_bound"), "var_bound");
  }
  const json& blocks = member(j, "blocks");
  if (!blocks.is_array() || blocks.empty()) {
    throw std::invalid_argument("blocks must be a non-empty array");
  }
  for (const auto& block_json : blocks) {
    LmiBlock block;
    block.constant = matrix_from_json(member(block_json, "A0"));
    const json& coeffs = member(block_json, "coeffs");
    if (!coeffs.is_array()) {
      throw std::invalid_argument("coeffs must be an array of matrices");
    }
    for (const auto& coeff : coeffs) {
      block.coeffs.push_back(matrix_from_json(coeff));
    }
    problem.blocks.push_back(std::move(block));
  }
  problem.validate();
  return problem;
}

nlohmann::json feasibility_report_to_json(const FeasibilityReport& report) {
  json j;
  switch (report.verdict) {
    case Feasibility::kFeasible: j["verdict"] = "FEASIBLE"; break;
    case Feasibility::kInfeasible: j["verdict"] = "INFEASIBLE"; break;
    case Feasibility::kMarginal: j["verdict"] = "MARGINAL"; break;
  }
  j["margin"] = report.margin;
  j["iterations"] = report.iterations;
  j["converged"] = report.converged;
  if (!report.diagnostic.empty()) j["diagnostic"] = report.diagnostic;
  if (report.witness) j["witness"] = vector_to_json(*report.witness);
  if (report.certificate) {
    j["certificate"] = certificate_to_json(*report.certificate);
  }
  return j;
}

nlohmann::json circuit_to_json(const CircuitDescription& circuit) {
  auto layer_to_json = [](const std::vector<BeamSplitterOp>& ops) {
    json out = json::array();
    for (const auto& op : ops) {
      out.push_back(json{{"i", op.mode_i},
                         {"j", op.mode_j},
                         {"angle", op.angle},
                         {"phase", op.phase}});
    }
    return out;
  };
  json squeezers = json::array();
  for (const auto& squeezer : circuit.squeezers) {
    squeezers.push_back(json{{"mode", squeezer.mode}, {"r", squeezer.r}});
  }
  return json{{"n_modes", circuit.n_modes},
              {"thermal_inputs", vector_to_json(circuit.thermal_inputs)},
              {"pre_layer", layer_to_json(circuit.pre_layer)},
              {"squeezers", std::move(squeezers)},
              {"phases", vector_to_json(circuit.phases)},
              {"post_layer", layer_to_json(circuit.post_layer)}};
}

CircuitDescription circuit_from_json(const nlohmann::json& j) {
  auto layer_from_json = [](const json& layer, const std::string& name) {
    if (!layer.is_array()) {
      throw std::invalid_argument(name + " must be an array");
    }
    std::vector<BeamSplitterOp> ops;
    for (const auto& op : layer) {
      ops.push_back(BeamSplitterOp{integer_at(member(op, "i"), "op mode"),
                                   integer_at(member(op, "j"), "op mode"),
                                   number_at(member(op, "angle"), "op angle"),
                                   number_at(member(op, "phase"), "op phase")});
    }
    return ops;
  };
  CircuitDescription circuit;
  circuit.n_modes = integer_at(member(j, "n_modes"), "n_modes");
  circuit.thermal_inputs = vector_from_json(member(j, "thermal_inputs"));
  circuit.pre_layer = layer_from_json(member(j, "pre_layer"), "pre_layer");
  const json& squeezers = member(j, "squeezers");
  if (!squeezers.is_array()) {
    throw std::invalid_argument("squeezers must be an array");
  }
  for (const auto& squeezer : squeezers) {
    circuit.squeezers.push_back(
        ModeSqueezer{integer_at(member(squeezer, "mode"), "squeezer mode"),
                     number_at(member(squeezer, "r"), "squeezer r")});
  }
  circuit.phases = vector_from_json(member(j, "phases"));
  circuit.post_layer = layer_from_json(member(j, "post_layer"), "post_layer");
  return circuit;
}

SearchConfig search_config_from_json(const nlohmann::json& j) {
  SearchConfig config;
  if (!j.is_object()) {
    throw std::invalid_argument("search config must be an object");
  }
  if (j.contains("n_modes")) {
    config.n_modes = integer_at(j.at("n_modes"), "n_modes");
  }
  if (j.contains("partition")) {
    config.partition = partition_from_json(j.at("partition"));
  } else if (j.contains("n_modes")) {
    config.partition = ModePartition{config.n_modes / 2,
                                     config.n_modes - config.n_modes / 2};
  }
  auto range_from = [](const json& r, const std::string& name) {
    if (!r.is_array() || r.size() != 2) {
      throw std::invalid_argument(name + " must be a [lo, hi] pair");
    }
    return std::array<double, 2>{number_at(r[0], name), number_at(r[1], name)};
  };
  if (j.contains("nu_range")) {
    config.nu_range = range_from(j.at("nu_range"), "nu_range");
  }
  if (j.contains("r_range")) {
    config.r_range = range_from(j.at("r_range"), "r_range");
  }
  if (j.contains("l_policy")) {
    const std::string policy = j.at("l_policy").get<std::string>();
    if (policy == "IDENTITY") {
      config.l_policy = PassivePolicy::kIdentity;
    } else if (policy == "RANDOM") {
      config.l_policy = PassivePolicy::kRandom;
    } else {
      throw std::invalid_argument("l_policy must be IDENTITY or RANDOM");
    }
  }
  if (j.contains("seed")) {
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("max_candidates")) {
    config.max_candidates =
        integer_at(j.at("max_candidates"), "max_candidates");
  }
  if (j.contains("epsilon")) {
    config.classify_options.epsilon = number_at(j.at("epsilon"), "epsilon");
  }
  if (j.contains("delta_feas")) {
    config.classify_options.delta_feas =
        number_at(j.at("delta_feas"), "delta_feas");
  }
  if (j.contains("fixed_nu")) {
    config.fixed_nu = vector_from_json(j.at("fixed_nu"));
  }
  if (j.contains("fixed_r")) {
    config.fixed_r = vector_from_json(j.at("fixed_r"));
  }
  if (j.contains("fixed_unitary")) {
    config.fixed_unitary = complex_matrix_from_json(j.at("fixed_unitary"));
  }
  config.validate();
  return config;
}

nlohmann::json search_config_to_json(const SearchConfig& config) {
  json j;
  j["n_modes"] = config.n_modes;
  j["partition"] = {config.partition.modes_a, config.partition.modes_b};
  j["nu_range"] = {config.nu_range[0], config.nu_range[1]};
  j["r_range"] = {config.r_range[0], config.r_range[1]};
  j["l_policy"] =
      config.l_policy == PassivePolicy::kRandom ? "RANDOM" : "IDENTITY";
  j["seed"] = config.seed;
  j["max_candidates"] = config.max_candidates;
  j["epsilon"] = config.classify_options.epsilon;
  j["delta_feas"] = config.classify_options.delta_feas;
  if (config.fixed_nu) j["fixed_nu"] = vector_to_json(*config.fixed_nu);
  if (config.fixed_r) j["fixed_r"] = vector_to_json(*config.fixed_r);
  if (config.fixed_unitary) {
    j["fixed_unitary"] = complex_matrix_to_json(*config.fixed_unitary);
  }
  return j;
}

nlohmann::json search_summary_to_json(const SearchSummary& summary,
                                      const SearchConfig& config) {
  json hits = json::array();
  for (const auto& hit : summary.hits) {
    hits.push_back(
        json{{"candidate_index", hit.candidate_index},
             {"class", to_string(hit.classification.state_class)},
             {"robustness", hit.robustness},
             {"lmi_margin", hit.classification.lmi_margin},
             {"recipe", recipe_to_json(hit.recipe)},
             {"covariance", covariance_to_json(hit.gamma, config.partition)}});
  }
  return json{{"seed", config.seed},
              {"n_candidates", summary.n_candidates},
              {"counts", json{{"separable", summary.n_separable},
                              {"npt", summary.n_npt},
                              {"bound", summary.n_bound},
                              {"marginal", summary.n_marginal},
                              {"unphysical", summary.n_unphysical}}},
              {"hits", std::move(hits)}};
}

}  // namespace gsep
