#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsep/boundsearch.hpp"
#include "gsep/circuit.hpp"
#include "gsep/covariance.hpp"
#include "gsep/lmi.hpp"
#include "gsep/rng.hpp"
#include "gsep/separability.hpp"
#include "gsep/symplectic.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian separability toolkit: covariance-matrix physicality, "
            "PPT and LMI-based separability classification, bound-entangled "
            "state construction, and preparation-circuit synthesis";

  py::class_<gsep::CovarianceMatrix>(m, "CovarianceMatrix")
      .def(py::init<int, const Eigen::MatrixXd&>(), py::arg("n_modes"),
           py::arg("entries"))
      .def_static("identity", &gsep::CovarianceMatrix::identity,
                  py::arg("n_modes"))
      .def_property_readonly("n_modes", &gsep::CovarianceMatrix::n_modes)
      .def_property_readonly("dim", &gsep::CovarianceMatrix::dim)
      .def_property_readonly("matrix", &gsep::CovarianceMatrix::matrix)
      .def("__repr__", [](const gsep::CovarianceMatrix& gamma) {
        return "CovarianceMatrix(n_modes=" + std::to_string(gamma.n_modes()) +
               ")";
      });

  py::class_<gsep::ModePartition>(m, "ModePartition")
      .def(py::init([](int modes_a, int modes_b) {
             return gsep::ModePartition{modes_a, modes_b};
           }),
           py::arg("modes_a"), py::arg("modes_b"))
      .def_readwrite("modes_a", &gsep::ModePartition::modes_a)
      .def_readwrite("modes_b", &gsep::ModePartition::modes_b)
      .def("__repr__", [](const gsep::ModePartition& partition) {
        return "ModePartition(" + std::to_string(partition.modes_a) + ", " +
               std::to_string(partition.modes_b) + ")";
      });

  py::class_<gsep::PhysicalityReport>(m, "PhysicalityReport")
      .def_readonly("physical", &gsep::PhysicalityReport::physical)
      .def_readonly("min_eig", &gsep::PhysicalityReport::min_eig);

  py::class_<gsep::PptReport>(m, "PptReport")
      .def_readonly("ppt", &gsep::PptReport::ppt)
      .def_readonly("min_eig", &gsep::PptReport::min_eig);

  m.def("symplectic_form", &gsep::symplectic_form, py::arg("n_modes"));
  m.def("partial_transpose_signs", &gsep::partial_transpose_signs,
        py::arg("partition"));
  m.def("hermitian_embedding", &gsep::hermitian_embedding, py::arg("gamma"),
        py::arg("form"));
  m.def("is_physical", &gsep::is_physical, py::arg("gamma"),
        py::arg("tol") = gsep::kTolPhys);
  m.def("symplectic_eigenvalues", &gsep::symplectic_eigenvalues,
        py::arg("gamma"));
  m.def("partial_transpose", &gsep::partial_transpose, py::arg("gamma"),
        py::arg("partition"));
  m.def("ppt_check", &gsep::ppt_check, py::arg("gamma"), py::arg("partition"),
        py::arg("tol") = gsep::kTolPhys);

  py::class_<gsep::WilliamsonForm>(m, "WilliamsonForm")
      .def_readonly("nu", &gsep::WilliamsonForm::nu)
      .def_readonly("S", &gsep::WilliamsonForm::S);

  py::class_<gsep::EulerForm>(m, "EulerForm")
      .def_readonly("K", &gsep::EulerForm::K)
      .def_readonly("r", &gsep::EulerForm::r)
      .def_readonly("L", &gsep::EulerForm::L);

  py::class_<gsep::GaussianRecipe>(m, "GaussianRecipe")
      .def(py::init<>())
      .def(py::init([](const Eigen::VectorXd& nu, const Eigen::MatrixXd& l,
                       const Eigen::VectorXd& r, const Eigen::MatrixXcd& q) {
             return gsep::GaussianRecipe{nu, l, r, q};
           }),
           py::arg("nu"), py::arg("L"), py::arg("r"), py::arg("q_unitary"))
      .def_readwrite("nu", &gsep::GaussianRecipe::nu)
      .def_readwrite("L", &gsep::GaussianRecipe::L)
      .def_readwrite("r", &gsep::GaussianRecipe::r)
      .def_readwrite("q_unitary", &gsep::GaussianRecipe::q_unitary);

  m.def("reordering_permutation", &gsep::reordering_permutation,
        py::arg("n_modes"));
  m.def("symplectic_residual", &gsep::symplectic_residual, py::arg("s"));
  m.def("is_symplectic", &gsep::is_symplectic, py::arg("s"),
        py::arg("tol") = 1e-8);
  m.def("williamson_decompose", &gsep::williamson_decompose, py::arg("gamma"));
  m.def("euler_decompose", &gsep::euler_decompose, py::arg("s"));
  m.def("squeezer_direct_sum", &gsep::squeezer_direct_sum, py::arg("r"));
  m.def("unitary_to_symplectic", &gsep::unitary_to_symplectic, py::arg("q"));
  m.def("symplectic_to_unitary", &gsep::symplectic_to_unitary, py::arg("k"),
        py::arg("tol") = 1e-8);
  m.def("compose_covariance", &gsep::compose_covariance, py::arg("recipe"));

  py::class_<gsep::LmiBlock>(m, "LmiBlock")
      .def(py::init([](const Eigen::MatrixXd& constant,
                       const std::vector<Eigen::MatrixXd>& coeffs) {
             return gsep::LmiBlock{constant, coeffs};
           }),
           py::arg("constant"), py::arg("coeffs"))
      .def_readwrite("constant", &gsep::LmiBlock::constant)
      .def_readwrite("coeffs", &gsep::LmiBlock::coeffs);

  py::class_<gsep::LmiProblem>(m, "LmiProblem")
      .def(py::init([](int dim_vars, const std::vector<gsep::LmiBlock>& blocks,
                       double var_bound) {
             gsep::LmiProblem problem;
             problem.dim_vars = dim_vars;
             problem.blocks = blocks;
             problem.var_bound = var_bound;
             return problem;
           }),
           py::arg("dim_vars"), py::arg("blocks"), py::arg("var_bound") = 0.0)
      .def_readwrite("dim_vars", &gsep::LmiProblem::dim_vars)
      .def_readwrite("blocks", &gsep::LmiProblem::blocks)
      .def_readwrite("var_bound", &gsep::LmiProblem::var_bound)
      .def("effective_var_bound", &gsep::LmiProblem::effective_var_bound);

  py::enum_<gsep::Feasibility>(m, "Feasibility")
      .value("FEASIBLE", gsep::Feasibility::kFeasible)
      .value("INFEASIBLE", gsep::Feasibility::kInfeasible)
      .value("MARGINAL", gsep::Feasibility::kMarginal);

  py::class_<gsep::SolveOptions>(m, "SolveOptions")
      .def(py::init<>())
      .def_readwrite("epsilon", &gsep::SolveOptions::epsilon)
      .def_readwrite("delta_feas", &gsep::SolveOptions::delta_feas)
      .def_readwrite("gap_target", &gsep::SolveOptions::gap_target)
      .def_readwrite("max_newton", &gsep::SolveOptions::max_newton);

  py::class_<gsep::InfeasibilityCertificate>(m, "InfeasibilityCertificate")
      .def_readonly("dual_blocks", &gsep::InfeasibilityCertificate::dual_blocks)
      .def_readonly("delta_cert", &gsep::InfeasibilityCertificate::delta_cert);

  py::class_<gsep::CertificateCheck>(m, "CertificateCheck")
      .def_readonly("valid", &gsep::CertificateCheck::valid)
      .def_readonly("slack", &gsep::CertificateCheck::slack)
      .def_readonly("min_dual_eig", &gsep::CertificateCheck::min_dual_eig)
      .def_readonly("linear_residual", &gsep::CertificateCheck::linear_residual)
      .def_readonly("trace_residual", &gsep::CertificateCheck::trace_residual);

  py::class_<gsep::FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("verdict", &gsep::FeasibilityReport::verdict)
      .def_readonly("margin", &gsep::FeasibilityReport::margin)
      .def_readonly("witness", &gsep::FeasibilityReport::witness)
      .def_readonly("certificate", &gsep::FeasibilityReport::certificate)
      .def_readonly("iterations", &gsep::FeasibilityReport::iterations)
      .def_readonly("converged", &gsep::FeasibilityReport::converged)
      .def_readonly("diagnostic", &gsep::FeasibilityReport::diagnostic);

  m.def("solve_feasibility", &gsep::solve_feasibility, py::arg("problem"),
        py::arg("options") = gsep::SolveOptions{});
  m.def("eval_constraints", &gsep::eval_constraints, py::arg("problem"),
        py::arg("x"));
  m.def("verify_certificate", &gsep::verify_certificate, py::arg("problem"),
        py::arg("certificate"));

  py::enum_<gsep::StateClass>(m, "StateClass")
      .value("SEPARABLE", gsep::StateClass::kSeparable)
      .value("NPT_ENTANGLED", gsep::StateClass::kNptEntangled)
      .value("BOUND_ENTANGLED", gsep::StateClass::kBoundEntangled)
      .value("MARGINAL", gsep::StateClass::kMarginal)
      .value("UNPHYSICAL", gsep::StateClass::kUnphysical);

  py::class_<gsep::SeparabilityProblem>(m, "SeparabilityProblem")
      .def_readonly("partition", &gsep::SeparabilityProblem::partition)
      .def_readonly("lmi", &gsep::SeparabilityProblem::lmi)
      .def_readonly("dim_a_vars", &gsep::SeparabilityProblem::dim_a_vars)
      .def_readonly("dim_b_vars", &gsep::SeparabilityProblem::dim_b_vars);

  m.def("build_separability_problem", &gsep::build_separability_problem,
        py::arg("gamma"), py::arg("partition"));
  m.def("unpack_witness", &gsep::unpack_witness, py::arg("problem"),
        py::arg("x"));
  m.def("pack_witness", &gsep::pack_witness, py::arg("problem"),
        py::arg("gamma_a"), py::arg("gamma_b"));
  m.def("validate_witness", &gsep::validate_witness, py::arg("gamma"),
        py::arg("partition"), py::arg("gamma_a"), py::arg("gamma_b"),
        py::arg("slack") = 1e-9);

  py::class_<gsep::ClassifyOptions>(m, "ClassifyOptions")
      .def(py::init<>())
      .def_readwrite("epsilon", &gsep::ClassifyOptions::epsilon)
      .def_readwrite("delta_feas", &gsep::ClassifyOptions::delta_feas)
      .def_readwrite("tol_phys", &gsep::ClassifyOptions::tol_phys)
      .def_readwrite("gap_target", &gsep::ClassifyOptions::gap_target)
      .def_readwrite("max_newton", &gsep::ClassifyOptions::max_newton);

  py::class_<gsep::Classification>(m, "Classification")
      .def_readonly("state_class", &gsep::Classification::state_class)
      .def_readonly("physical_min_eig",
                    &gsep::Classification::physical_min_eig)
      .def_readonly("ppt_min_eig", &gsep::Classification::ppt_min_eig)
      .def_readonly("lmi_margin", &gsep::Classification::lmi_margin)
      .def_readonly("witness", &gsep::Classification::witness)
      .def_readonly("certificate", &gsep::Classification::certificate)
      .def_readonly("lmi_iterations", &gsep::Classification::lmi_iterations)
      .def_readonly("solver_converged",
                    &gsep::Classification::solver_converged)
      .def_readonly("diagnostic", &gsep::Classification::diagnostic)
      .def("__repr__", [](const gsep::Classification& result) {
        return "Classification(" + gsep::to_string(result.state_class) + ")";
      });

  m.def("classify", &gsep::classify, py::arg("gamma"), py::arg("partition"),
        py::arg("options") = gsep::ClassifyOptions{});

  py::class_<gsep::rng::Stream>(m, "RandomStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("derive", &gsep::rng::Stream::derive, py::arg("seed"),
                  py::arg("index"))
      .def("uniform",
           static_cast<double (gsep::rng::Stream::*)()>(
               &gsep::rng::Stream::uniform))
      .def("normal", &gsep::rng::Stream::normal);

  py::enum_<gsep::PassivePolicy>(m, "PassivePolicy")
      .value("IDENTITY", gsep::PassivePolicy::kIdentity)
      .value("RANDOM", gsep::PassivePolicy::kRandom);

  py::class_<gsep::SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("n_modes", &gsep::SearchConfig::n_modes)
      .def_readwrite("partition", &gsep::SearchConfig::partition)
      .def_readwrite("nu_range", &gsep::SearchConfig::nu_range)
      .def_readwrite("r_range", &gsep::SearchConfig::r_range)
      .def_readwrite("l_policy", &gsep::SearchConfig::l_policy)
      .def_readwrite("seed", &gsep::SearchConfig::seed)
      .def_readwrite("max_candidates", &gsep::SearchConfig::max_candidates)
      .def_readwrite("classify_options", &gsep::SearchConfig::classify_options)
      .def_readwrite("fixed_nu", &gsep::SearchConfig::fixed_nu)
      .def_readwrite("fixed_r", &gsep::SearchConfig::fixed_r)
      .def_readwrite("fixed_unitary", &gsep::SearchConfig::fixed_unitary);

  py::class_<gsep::SearchHit>(m, "SearchHit")
      .def_readonly("candidate_index", &gsep::SearchHit::candidate_index)
      .def_readonly("recipe", &gsep::SearchHit::recipe)
      .def_readonly("gamma", &gsep::SearchHit::gamma)
      .def_readonly("classification", &gsep::SearchHit::classification)
      .def_readonly("robustness", &gsep::SearchHit::robustness);

  py::class_<gsep::SearchSummary>(m, "SearchSummary")
      .def_readonly("hits", &gsep::SearchSummary::hits)
      .def_readonly("n_candidates", &gsep::SearchSummary::n_candidates)
      .def_readonly("n_separable", &gsep::SearchSummary::n_separable)
      .def_readonly("n_npt", &gsep::SearchSummary::n_npt)
      .def_readonly("n_bound", &gsep::SearchSummary::n_bound)
      .def_readonly("n_marginal", &gsep::SearchSummary::n_marginal)
      .def_readonly("n_unphysical", &gsep::SearchSummary::n_unphysical);

  m.def("reference_unitary", &gsep::reference_unitary,
        py::return_value_policy::copy);
  m.def("reference_recipe", &gsep::reference_recipe);
  m.def("reference_example", &gsep::reference_example);
  m.def("haar_unitary", &gsep::haar_unitary, py::arg("n"), py::arg("stream"));
  m.def("random_candidate", &gsep::random_candidate, py::arg("config"),
        py::arg("index"));
  m.def("search", &gsep::search, py::arg("config"));
  m.def("perturb_recipe", &gsep::perturb_recipe, py::arg("recipe"),
        py::arg("scale"), py::arg("stream"));

  py::class_<gsep::BeamSplitterOp>(m, "BeamSplitterOp")
      .def(py::init([](int mode_i, int mode_j, double angle, double phase) {
             return gsep::BeamSplitterOp{mode_i, mode_j, angle, phase};
           }),
           py::arg("mode_i"), py::arg("mode_j"), py::arg("angle"),
           py::arg("phase") = 0.0)
      .def_readwrite("mode_i", &gsep::BeamSplitterOp::mode_i)
      .def_readwrite("mode_j", &gsep::BeamSplitterOp::mode_j)
      .def_readwrite("angle", &gsep::BeamSplitterOp::angle)
      .def_readwrite("phase", &gsep::BeamSplitterOp::phase);

  py::class_<gsep::PassiveNetwork>(m, "PassiveNetwork")
      .def_readonly("ops", &gsep::PassiveNetwork::ops)
      .def_readonly("residual_phases", &gsep::PassiveNetwork::residual_phases);

  py::class_<gsep::NetworkCheck>(m, "NetworkCheck")
      .def_readonly("match", &gsep::NetworkCheck::match)
      .def_readonly("residual", &gsep::NetworkCheck::residual);

  py::class_<gsep::ModeSqueezer>(m, "ModeSqueezer")
      .def(py::init([](int mode, double r) {
             return gsep::ModeSqueezer{mode, r};
           }),
           py::arg("mode"), py::arg("r"))
      .def_readwrite("mode", &gsep::ModeSqueezer::mode)
      .def_readwrite("r", &gsep::ModeSqueezer::r);

  py::class_<gsep::CircuitDescription>(m, "CircuitDescription")
      .def(py::init<>())
      .def_readwrite("n_modes", &gsep::CircuitDescription::n_modes)
      .def_readwrite("thermal_inputs",
                     &gsep::CircuitDescription::thermal_inputs)
      .def_readwrite("pre_layer", &gsep::CircuitDescription::pre_layer)
      .def_readwrite("squeezers", &gsep::CircuitDescription::squeezers)
      .def_readwrite("phases", &gsep::CircuitDescription::phases)
      .def_readwrite("post_layer", &gsep::CircuitDescription::post_layer);

  m.def("beam_splitter_unitary", &gsep::beam_splitter_unitary, py::arg("op"),
        py::arg("n_modes"));
  m.def("network_unitary", &gsep::network_unitary, py::arg("ops"),
        py::arg("phases"), py::arg("n_modes"));
  m.def("synthesize_passive", &gsep::synthesize_passive, py::arg("q"));
  m.def("verify_network", &gsep::verify_network, py::arg("ops"),
        py::arg("phases"), py::arg("target"), py::arg("tol") = 1e-10);
  m.def("synthesize_circuit", &gsep::synthesize_circuit, py::arg("recipe"));
  m.def("replay_circuit", &gsep::replay_circuit, py::arg("circuit"));

  m.attr("TOL_PHYS") = gsep::kTolPhys;
  m.attr("__version__") = "0.1.0";
}
