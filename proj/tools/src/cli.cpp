// Copyright 2026 The gaussmax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gaussmax_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#ifdef GAUSSMAX_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "gaussmax/capacity.hpp"
#include "gaussmax/duality.hpp"
#include "gaussmax/errors.hpp"
#include "gaussmax/json_codec.hpp"
#include "gaussmax/sampler.hpp"
#include "gaussmax/verify.hpp"
#include "gaussmax/version.hpp"
#include "gaussmax/waterfill.hpp"

namespace gaussmax::cli {

namespace {

using nlohmann::json;
using gaussmax::json::decode_hermitian;
using gaussmax::json::decode_matrix;
using gaussmax::json::decode_reals;
using gaussmax::json::encode;
using gaussmax::json::require;

// Raised for verification failures so the document is still emitted.
struct VerifyFailed {
  json output;
  json diagnostics;
};

struct Outcome {
  json output;
  json diagnostics = json::object();
};

struct Context {
  const RunConfig& config;
  const json& input;

  double info(double nats) const { return config.units == Units::kBits ? nats / std::numbers::ln2 : nats; }
  std::string key(const std::string& base) const {
    return base + (config.units == Units::kBits ? "_bits" : "_nats");
  }
  const json& field(std::string_view name) const { return require(input, name, "input"); }
  bool has(std::string_view name) const { return input.is_object() && input.contains(std::string(name)); }
};

std::string read_text(const std::string& path) {
  if (!std::filesystem::exists(path)) throw InvalidInput("input file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool looks_inline(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

json parse_input(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << column << ": " << e.what();
    throw InvalidInput(os.str());
  }
}

GaussianObservable observable_from(const Context& ctx, std::string_view noise_key) {
  const HermitianMatrix noise =
      ctx.has(noise_key) ? decode_hermitian(ctx.field(noise_key), noise_key) : HermitianMatrix();
  const int dim = ctx.has(noise_key) ? noise.dim() : decode_hermitian(ctx.field("sigma"), "sigma").dim();
  const HermitianMatrix n = ctx.has(noise_key) ? noise : HermitianMatrix::zero(dim);
  if (ctx.has("rescale")) return GaussianObservable(decode_matrix(ctx.field("rescale"), "rescale"), n);
  return GaussianObservable(n);
}

Outcome cmd_capacity(const Context& ctx) {
  const HermitianMatrix sigma = decode_hermitian(ctx.field("sigma"), "sigma");
  const GaussianObservable obs = observable_from(ctx, "noise");
  const ChiCapacity chi = chi_capacity(obs, sigma);
  Outcome out;
  out.output[ctx.key("capacity")] = ctx.info(chi.value);
  out.output[ctx.key("min_output_entropy")] = ctx.info(min_output_entropy(obs));
  out.output[ctx.key("max_output_entropy")] = ctx.info(max_output_entropy(obs, sigma));
  out.output["optimal_prior_cov"] = encode(chi.optimal_prior_cov);
  out.output["optimal_ensemble"] = "coherent";
  out.diagnostics["log_abs_det_rescale"] = obs.log_abs_det_rescale();
  return out;
}

json waterfill_json(const Context& ctx, const WaterfillResult& r) {
  json j;
  j["water_level"] = r.water_level;
  j["allocations"] = r.allocations;
  j["active"] = r.active;
  j[ctx.key("capacity")] = ctx.info(r.capacity);
  return j;
}

Outcome cmd_waterfill(const Context& ctx) {
  const double budget = ctx.field("budget").get<double>();
  Outcome out;
  if (ctx.has("hamiltonian")) {
    const HermitianMatrix eps = decode_hermitian(ctx.field("hamiltonian"), "hamiltonian");
    const HermitianMatrix noise = decode_hermitian(ctx.field("noise"), "noise");
    const EnergyConstraint constraint(eps, budget);
    const ConstrainedCapacity c = constrained_capacity(constraint, noise);
    out.output[ctx.key("capacity")] = ctx.info(c.capacity);
    out.output["optimal_cov"] = encode(c.optimal_cov);
    out.output["closed_form"] = c.closed_form;
    if (c.closed_form) out.output["waterfill"] = waterfill_json(ctx, c.waterfill);
    out.diagnostics["energy"] = constraint.energy(c.optimal_cov);
    out.diagnostics["iterations"] = c.iterations;
    return out;
  }
  const std::vector<double> freqs = decode_reals(ctx.field("frequencies"), "frequencies");
  const std::vector<double> noise = decode_reals(ctx.field("noise"), "noise");
  const WaterfillResult r = waterfill_diagonal(freqs, noise, budget);
  out.output = waterfill_json(ctx, r);
  double spent = 0.0;
  for (std::size_t j = 0; j < freqs.size(); ++j) spent += freqs[j] * r.allocations[j];
  out.diagnostics["energy"] = spent;
  return out;
}

Outcome cmd_dual(const Context& ctx) {
  const GaussianEnsemble ens(decode_hermitian(ctx.field("sigma"), "sigma"),
                             decode_hermitian(ctx.field("noise"), "noise"));
  const DualGaussianResult dual = dual_gaussian_observable(ens);
  const CapacityIdentityCheck check = verify_capacity_identity(ens);
  Outcome out;
  out.output["sigma_tilde"] = encode(dual.sigma_tilde);
  out.output["dual_noise"] = encode(dual.dual_noise);
  out.output["rescale"] = encode(dual.rescale);
  out.output[ctx.key("accessible_information")] = ctx.info(accessible_information(ens).value);
  out.diagnostics["identity_lhs"] = check.lhs;
  out.diagnostics["identity_rhs"] = check.rhs;
  out.diagnostics["identity_residual"] = check.residual;
  out.diagnostics["similarity_residual"] = check.similarity_residual;
  return out;
}

std::vector<CMatrix> decode_matrices(const json& j, std::string_view field) {
  if (!j.is_array()) throw InvalidInput("field '" + std::string(field) + "' must be an array of matrices");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(decode_matrix(j[i], std::string(field) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Outcome cmd_dual_finite(const Context& ctx) {
  const json& ens_j = ctx.field("ensemble");
  const json& povm_j = ctx.field("povm");
  const DiscreteEnsemble ens(decode_reals(require(ens_j, "probs", "ensemble"), "ensemble.probs"),
                             decode_matrices(require(ens_j, "states", "ensemble"), "ensemble.states"));
  std::vector<CMatrix> elements = decode_matrices(require(povm_j, "elements", "povm"), "povm.elements");
  std::vector<double> weights = povm_j.contains("weights") ? decode_reals(povm_j["weights"], "povm.weights")
                                                           : std::vector<double>(elements.size(), 1.0);
  const DiscretePOVM povm(std::move(elements), std::move(weights));
  const DualPair dual = dual_pair_finite(ens, povm);

  const JointDistribution p = joint_distribution(ens, povm);
  const JointDistribution q = joint_distribution(dual.ensemble, dual.povm);
  double joint_gap = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t k = 0; k < dual.kept_outcomes.size(); ++k) {
      const double a = p.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(dual.kept_outcomes[k]));
      const double b = q.matrix()(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
      joint_gap = std::max(joint_gap, std::abs(a - b));
    }
  }

  Outcome out;
  json states = json::array();
  for (const CMatrix& rho : dual.ensemble.states()) states.push_back(encode(rho));
  json dual_elements = json::array();
  for (const CMatrix& m : dual.povm.elements()) dual_elements.push_back(encode(m));
  out.output["dual_ensemble"] = {{"probs", dual.ensemble.probs()}, {"states", states}};
  out.output["dual_povm"] = {{"elements", dual_elements}, {"weights", dual.povm.weights()}};
  out.output["kept_outcomes"] = dual.kept_outcomes;
  out.output["dropped_outcomes"] = dual.dropped_outcomes;
  out.output[ctx.key("mutual_information")] = ctx.info(mutual_information_discrete(p));
  out.diagnostics[ctx.key("dual_mutual_information")] = ctx.info(mutual_information_discrete(q));
  out.diagnostics["joint_max_gap"] = joint_gap;
  out.diagnostics["average_state_gap"] =
      (dual.ensemble.average_state().matrix() - ens.average_state().matrix()).norm();
  out.diagnostics["dual_completeness_defect"] = dual.povm.completeness_defect();
  out.diagnostics["kernel_dim"] = dual.kernel_dim;
  return out;
}

Outcome cmd_verify(const Context& ctx) {
  SuiteOptions options;
  if (ctx.config.seed) options.seed = *ctx.config.seed;
  if (ctx.config.n) options.n = static_cast<int>(std::min<std::uint64_t>(*ctx.config.n, 1u << 30));
  options.thresholds = ctx.config.tolerances;
  std::vector<std::string> names;
  if (ctx.config.suite == "all") {
    for (const SuiteInfo& s : suite_catalog()) names.push_back(s.name);
  } else {
    names.push_back(resolve_suite(ctx.config.suite));
  }
  Outcome out;
  out.output["suites"] = json::array();
  bool all_pass = true;
  for (const std::string& name : names) {
    const SuiteReport report = run_suite(name, options);
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
      checks.push_back({{"check_name", c.name},
                        {"residual", c.residual},
                        {"threshold", c.threshold},
                        {"pass", c.pass},
                        {"detail", c.detail}});
    }
    out.output["suites"].push_back(
        {{"suite", report.suite}, {"pass", report.pass()}, {"seconds", report.seconds}, {"checks", checks}});
    all_pass = all_pass && report.pass();
  }
  out.output["pass"] = all_pass;
  if (!all_pass) throw VerifyFailed{out.output, out.diagnostics};
  return out;
}

struct SamplingInput {
  GaussianEnsemble ensemble;
  GaussianObservable observable;
};

SamplingInput sampling_input(const Context& ctx) {
  GaussianEnsemble ens(decode_hermitian(ctx.field("sigma"), "sigma"),
                       decode_hermitian(ctx.field("noise_state"), "noise_state"));
  return {ens, observable_from(ctx, "noise_meas")};
}

Outcome cmd_sample(const Context& ctx) {
  const SamplingInput in = sampling_input(ctx);
  const std::uint64_t n = ctx.config.n.value_or(1000);
  const std::uint64_t seed = ctx.config.seed.value_or(0);
  const std::vector<SamplePair> pairs = sample_pairs(in.ensemble, in.observable, n, seed);
  const int s = in.ensemble.dim();
  CMatrix input_cov = CMatrix::Zero(s, s);
  CMatrix outcome_cov = CMatrix::Zero(s, s);
  for (const SamplePair& p : pairs) {
    input_cov += p.input * p.input.adjoint();
    outcome_cov += p.outcome * p.outcome.adjoint();
  }
  input_cov /= static_cast<double>(n);
  outcome_cov /= static_cast<double>(n);
  if (!ctx.config.csv_path.empty()) {
    std::ofstream csv(ctx.config.csv_path);
    if (!csv) throw InvalidInput("cannot write CSV file: " + ctx.config.csv_path);
    csv.precision(17);
    for (int k = 0; k < s; ++k) csv << (k ? "," : "") << "input_re_" << k << ",input_im_" << k;
    for (int k = 0; k < s; ++k) csv << ",outcome_re_" << k << ",outcome_im_" << k;
    csv << '\n';
    for (const SamplePair& p : pairs) {
      for (int k = 0; k < s; ++k) csv << (k ? "," : "") << p.input(k).real() << ',' << p.input(k).imag();
      for (int k = 0; k < s; ++k) csv << ',' << p.outcome(k).real() << ',' << p.outcome(k).imag();
      csv << '\n';
    }
  }
  Outcome out;
  out.output["n"] = n;
  out.output["seed"] = seed;
  out.output["input_second_moment"] = encode(input_cov);
  out.output["outcome_second_moment"] = encode(outcome_cov);
  if (!ctx.config.csv_path.empty()) out.diagnostics["csv"] = ctx.config.csv_path;
  return out;
}

Outcome cmd_info_mc(const Context& ctx) {
  const SamplingInput in = sampling_input(ctx);
  const std::uint64_t n = ctx.config.n.value_or(100000);
  const std::uint64_t seed = ctx.config.seed.value_or(0);
  const MCEstimate est = mi_monte_carlo(in.ensemble, in.observable, n, seed);
  const double exact = gaussian_ensemble_information(in.ensemble, in.observable);
  Outcome out;
  out.output["value"] = ctx.info(est.value);
  out.output["stderr"] = ctx.info(est.std_error);
  out.output["n"] = est.n_samples;
  out.output["seed"] = est.seed;
  out.output["units"] = ctx.config.units == Units::kBits ? "bits" : "nats";
  out.diagnostics["analytic"] = ctx.info(exact);
  out.diagnostics["z_score"] = (est.value - exact) / est.std_error;
  return out;
}

using Command = std::function<Outcome(const Context&)>;

const std::vector<std::pair<std::string, Command>>& commands() {
  static const std::vector<std::pair<std::string, Command>> table = {
      {"capacity", cmd_capacity}, {"waterfill", cmd_waterfill}, {"dual", cmd_dual},
      {"dual-finite", cmd_dual_finite}, {"verify", cmd_verify}, {"sample", cmd_sample},
      {"info-mc", cmd_info_mc},
  };
  return table;
}

std::string unknown_command_message(const std::string& name) {
  std::ostringstream os;
  os << "unknown command '" << name << "'; valid commands:";
  for (const std::string& c : command_names()) os << ' ' << c;
  return os.str();
}

json base_document(const RunConfig& config, const json& input) {
  return {{"toolkit", "gaussmax"}, {"version", kVersion}, {"command", config.command}, {"input", input}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : commands()) out.push_back(name);
    return out;
  }();
  return names;
}

RunResult run(const RunConfig& config) {
  RunResult result;
  const auto it = std::find_if(commands().begin(), commands().end(),
                               [&](const auto& entry) { return entry.first == config.command; });
  if (it == commands().end()) {
    result.exit_code = kExitInvalid;
    result.error = unknown_command_message(config.command);
    return result;
  }
  json input;
  try {
    if (!config.input.empty()) input = parse_input(looks_inline(config.input) ? config.input : read_text(config.input));
    else if (config.command != "verify") throw InvalidInput("command '" + config.command + "' needs --input");
    const Context ctx{config, input};
    const Outcome outcome = it->second(ctx);
    result.document = base_document(config, input);
    result.document["output"] = outcome.output;
    result.document["diagnostics"] = outcome.diagnostics;
  } catch (const VerifyFailed& failed) {
    result.exit_code = kExitVerifyFailed;
    result.document = base_document(config, input);
    result.document["output"] = failed.output;
    result.document["diagnostics"] = failed.diagnostics;
    result.error = "verification failed";
  } catch (const NumericalFailure& e) {
    result.exit_code = kExitNumerical;
    result.error = e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = kExitInvalid;
    result.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    result.exit_code = kExitInvalid;
    result.error = std::string("invalid input value: ") + e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitNumerical;
    result.error = e.what();
  }
  return result;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gaussmax: capacities and duality of Gaussian observables"};
  RunConfig config;
  std::string units = "nats";
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<std::string> tolerances;
  std::ostringstream commands_help;
  for (const std::string& c : command_names()) commands_help << (commands_help.tellp() > 0 ? ", " : "") << c;
  app.add_option("command", config.command, "One of: " + commands_help.str())->required();
  app.add_option("-i,--input", config.input, "Input JSON file path or inline JSON object");
  app.add_option("-o,--output", config.output_path, "Write the result document to this file");
  app.add_option("--units", units, "Information units")->check(CLI::IsMember({"nats", "bits"}));
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* n_opt = app.add_option("--n", n, "Sample or instance count");
  app.add_option("--suite", config.suite, "Verification suite name, or 'all'");
  app.add_option("--csv", config.csv_path, "CSV file for sampled pairs");
  app.add_option("--tol", tolerances, "Threshold override for verify, as check_name=value");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }
  config.units = units == "bits" ? Units::kBits : Units::kNats;
  if (seed_opt->count() > 0) config.seed = seed;
  if (n_opt->count() > 0) config.n = n;
  for (const std::string& t : tolerances) {
    const auto eq = t.find('=');
    double value = 0.0;
    try {
      if (eq == std::string::npos) throw std::invalid_argument(t);
      value = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      err << "error: --tol expects check_name=value, got '" << t << "'\n";
      return kExitInvalid;
    }
    config.tolerances[t.substr(0, eq)] = value;
  }

  const RunResult result = run(config);
  if (!result.document.is_null()) {
    const std::string text = result.document.dump(2) + "\n";
    if (config.output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(config.output_path);
      if (!file) {
        err << "error: cannot write " << config.output_path << "\n";
        return kExitInvalid;
      }
      file << text;
    }
  }
  if (!result.error.empty()) err << "error: " << result.error << "\n";
  return result.exit_code;
}

}  // namespace gaussmax::cli
