#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "gsep/boundsearch.hpp"
#include "gsep/circuit.hpp"
#include "gsep/json_io.hpp"
#include "gsep/separability.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path + "'");
  }
  json j = json::parse(in);
  // Accept wrapped CLI output so commands can be piped via files.
  if (j.is_object() && j.contains("tool_version") && j.contains("result")) {
    return j.at("result");
  }
  return j;
}

gsep::ModePartition parse_partition(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("partition must be of the form m,n");
  }
  try {
    const int a = std::stoi(text.substr(0, comma));
    const int b = std::stoi(text.substr(comma + 1));
    return gsep::ModePartition{a, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("partition must be of the form m,n");
  }
}

gsep::ModePartition resolve_partition(
    const std::string& flag, const std::optional<gsep::ModePartition>& from_file) {
  if (!flag.empty()) return parse_partition(flag);
  if (from_file) return *from_file;
  throw std::invalid_argument(
      "partition required: pass --partition m,n or embed it in the input file");
}

void emit(const std::string& command, const json& payload,
          const std::string& output_path) {
  if (!output_path.empty()) {
    std::ofstream out(output_path);
    if (!out) {
      throw std::invalid_argument("cannot write '" + output_path + "'");
    }
    out << payload.dump(2) << "\n";
  }
  const json wrapper{{"tool_version", kToolVersion},
                     {"command", command},
                     {"result", payload}};
  std::cout << wrapper.dump(2) << "\n";
}

struct CommonFlags {
  std::string input;
  std::string recipe;
  std::string cert;
  std::string config;
  std::string output;
  std::string partition;
  double epsilon = 1e-8;
  double delta_feas = 1e-7;
  std::uint64_t seed = 0;
  int max_candidates = 100;
  bool quiet = false;
};

int run_physical(const CommonFlags& flags) {
  const auto loaded = gsep::covariance_from_json(load_json_file(flags.input));
  const auto report = gsep::is_physical(loaded.gamma);
  emit("physical",
       json{{"physical", report.physical}, {"min_eig", report.min_eig}},
       flags.output);
  return 0;
}

int run_ppt(const CommonFlags& flags) {
  const auto loaded = gsep::covariance_from_json(load_json_file(flags.input));
  const auto partition = resolve_partition(flags.partition, loaded.partition);
  const auto report = gsep::ppt_check(loaded.gamma, partition);
  emit("ppt", json{{"ppt", report.ppt}, {"min_eig", report.min_eig}},
       flags.output);
  return 0;
}

int run_classify(const CommonFlags& flags) {
  const auto loaded = gsep::covariance_from_json(load_json_file(flags.input));
  const auto partition = resolve_partition(flags.partition, loaded.partition);
  gsep::ClassifyOptions options;
  options.epsilon = flags.epsilon;
  options.delta_feas = flags.delta_feas;
  const auto result = gsep::classify(loaded.gamma, partition, options);
  if (!flags.quiet && !result.diagnostic.empty()) {
    std::cerr << "note: " << result.diagnostic << "\n";
  }
  emit("classify", gsep::classification_to_json(result), flags.output);
  return 0;
}

int run_construct(const CommonFlags& flags) {
  const auto recipe = gsep::recipe_from_json(load_json_file(flags.recipe));
  const auto gamma = gsep::compose_covariance(recipe);
  emit("construct", gsep::covariance_to_json(gamma), flags.output);
  return 0;
}

int run_search(const CommonFlags& flags, bool seed_given, bool count_given,
               bool epsilon_given) {
  gsep::SearchConfig config;
  if (!flags.config.empty()) {
    config = gsep::search_config_from_json(load_json_file(flags.config));
  }
  if (seed_given) config.seed = flags.seed;
  if (count_given) config.max_candidates = flags.max_candidates;
  if (epsilon_given) config.classify_options.epsilon = flags.epsilon;
  config.validate();

  const auto summary = gsep::search(config);
  if (!flags.quiet) {
    std::cerr << "search: " << summary.hits.size() << " bound-entangled hit(s) in "
              << summary.n_candidates << " candidate(s)\n";
  }

  if (!flags.output.empty()) {
    std::filesystem::create_directories(flags.output);
    for (std::size_t i = 0; i < summary.hits.size(); ++i) {
      std::ostringstream stem;
      stem << "hit_" << std::setfill('0') << std::setw(3) << i;
      const auto base = std::filesystem::path(flags.output) / stem.str();
      std::ofstream cov(base.string() + "_covariance.json");
      cov << gsep::covariance_to_json(summary.hits[i].gamma, config.partition)
                 .dump(2)
          << "\n";
      std::ofstream rec(base.string() + "_recipe.json");
      rec << gsep::recipe_to_json(summary.hits[i].recipe).dump(2) << "\n";
    }
  }

  const json payload = gsep::search_summary_to_json(summary, config);
  const json wrapper{{"tool_version", kToolVersion},
                     {"command", "search"},
                     {"result", payload}};
  std::cout << wrapper.dump(2) << "\n";
  return 0;
}

int run_synthesize(const CommonFlags& flags) {
  const auto recipe = gsep::recipe_from_json(load_json_file(flags.recipe));
  const auto circuit = gsep::synthesize_circuit(recipe);
  emit("synthesize", gsep::circuit_to_json(circuit), flags.output);
  return 0;
}

int run_replay(const CommonFlags& flags) {
  const auto circuit = gsep::circuit_from_json(load_json_file(flags.input));
  const auto gamma = gsep::replay_circuit(circuit);
  emit("replay", gsep::covariance_to_json(gamma), flags.output);
  return 0;
}

int run_verify_cert(const CommonFlags& flags) {
  const auto loaded = gsep::covariance_from_json(load_json_file(flags.input));
  const auto partition = resolve_partition(flags.partition, loaded.partition);
  json cert_json = load_json_file(flags.cert);
  if (cert_json.is_object() && cert_json.contains("certificate")) {
    cert_json = cert_json.at("certificate");
  }
  const auto cert = gsep::certificate_from_json(cert_json);
  const auto problem = gsep::build_separability_problem(loaded.gamma, partition);
  const auto check = gsep::verify_certificate(problem.lmi, cert);
  emit("verify-cert",
       json{{"valid", check.valid},
            {"slack", check.slack},
            {"min_dual_eig", check.min_dual_eig},
            {"linear_residual", check.linear_residual},
            {"trace_residual", check.trace_residual}},
       flags.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian separability toolkit: decide whether covariance "
               "matrices are separable, NPT, or bound entangled, and build "
               "bound-entangled states with preparation circuits"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto* physical = app.add_subcommand(
      "physical", "Check the uncertainty relation for a covariance matrix");
  physical->add_option("--input", flags.input, "covariance JSON file")
      ->required();
  physical->add_option("--output", flags.output, "write the result JSON here");
  physical->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* ppt = app.add_subcommand(
      "ppt", "Apply the positive-partial-transpose criterion");
  ppt->add_option("--input", flags.input, "covariance JSON file")->required();
  ppt->add_option("--partition", flags.partition, "mode split m,n");
  ppt->add_option("--output", flags.output, "write the result JSON here");
  ppt->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* classify = app.add_subcommand(
      "classify", "Full separability classification of a covariance matrix");
  classify->add_option("--input", flags.input, "covariance JSON file")
      ->required();
  classify->add_option("--partition", flags.partition, "mode split m,n");
  classify->add_option("--epsilon", flags.epsilon,
                       "infeasibility threshold (default 1e-8)");
  classify->add_option("--delta-feas", flags.delta_feas,
                       "strict-feasibility threshold (default 1e-7)");
  classify->add_option("--output", flags.output, "write the result JSON here");
  classify->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* construct = app.add_subcommand(
      "construct", "Compose a covariance matrix from a recipe");
  construct->add_option("--recipe", flags.recipe, "recipe JSON file")
      ->required();
  construct->add_option("--output", flags.output,
                        "write the covariance JSON here");
  construct->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* search = app.add_subcommand(
      "search", "Sample random recipes and collect bound-entangled states");
  search->add_option("--config", flags.config, "search config JSON file");
  auto* seed_opt = search->add_option("--seed", flags.seed, "sampling seed");
  auto* count_opt = search->add_option("--max-candidates", flags.max_candidates,
                                       "number of candidates");
  auto* eps_opt = search->add_option("--epsilon", flags.epsilon,
                                     "infeasibility threshold");
  search->add_option("--output", flags.output,
                     "directory for per-hit covariance/recipe files");
  search->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* synthesize = app.add_subcommand(
      "synthesize", "Synthesize a preparation circuit from a recipe");
  synthesize->add_option("--recipe", flags.recipe, "recipe JSON file")
      ->required();
  synthesize->add_option("--output", flags.output,
                         "write the circuit JSON here");
  synthesize->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* replay = app.add_subcommand(
      "replay", "Propagate thermal inputs through a circuit");
  replay->add_option("--input", flags.input, "circuit JSON file")->required();
  replay->add_option("--output", flags.output,
                     "write the covariance JSON here");
  replay->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  auto* verify_cert = app.add_subcommand(
      "verify-cert", "Re-check an infeasibility certificate against a state");
  verify_cert->add_option("--input", flags.input, "covariance JSON file")
      ->required();
  verify_cert->add_option("--partition", flags.partition, "mode split m,n");
  verify_cert
      ->add_option("--cert", flags.cert,
                   "certificate JSON (or classify output containing one)")
      ->required();
  verify_cert->add_option("--output", flags.output,
                          "write the result JSON here");
  verify_cert->add_flag("--quiet", flags.quiet, "suppress notes on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(physical)) return run_physical(flags);
    if (app.got_subcommand(ppt)) return run_ppt(flags);
    if (app.got_subcommand(classify)) return run_classify(flags);
    if (app.got_subcommand(construct)) return run_construct(flags);
    if (app.got_subcommand(search)) {
      return run_search(flags, seed_opt->count() > 0, count_opt->count() > 0,
                        eps_opt->count() > 0);
    }
    if (app.got_subcommand(synthesize)) return run_synthesize(flags);
    if (app.got_subcommand(replay)) return run_replay(flags);
    if (app.got_subcommand(verify_cert)) return run_verify_cert(flags);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
