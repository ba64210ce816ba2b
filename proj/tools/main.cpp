// Command-line front end: curve/compare emit CSV sweeps over the
// entanglement grid, simulate/locc/round run seeded protocol executions and
// emit JSON. Exit codes: 0 ok, 1 usage or validation error, 2 statistical
// consistency failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecsim/ecp.hpp"
#include "ecsim/locc.hpp"
#include "ecsim/montecarlo.hpp"
#include "ecsim/rng.hpp"

namespace {

using ecsim::ProbeModel;
using ecsim::SchmidtCoefficients;

constexpr int kStatisticalFailure = 2;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct GridOptions {
  std::vector<double> explicit_values;
  double start = 0.01;
  double stop = 0.99;
  double step = 0.01;
};

void add_grid_options(CLI::App* cmd, GridOptions& grid) {
  cmd->add_option("--E", grid.explicit_values,
                  "Explicit entanglement values in (0, 1]");
  cmd->add_option("--grid-start", grid.start, "Grid start (default 0.01)");
  cmd->add_option("--grid-stop", grid.stop, "Grid stop (default 0.99)");
  cmd->add_option("--grid-step", grid.step, "Grid step (default 0.01)");
}

std::vector<double> build_grid(const GridOptions& grid) {
  std::vector<double> values = grid.explicit_values;
  if (values.empty()) {
    if (!(grid.step > 0.0) || grid.stop < grid.start) {
      throw std::invalid_argument("grid bounds must satisfy start <= stop, step > 0");
    }
    const int count =
        static_cast<int>(std::floor((grid.stop - grid.start) / grid.step + 0.5)) + 1;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) values.push_back(grid.start + i * grid.step);
  }
  for (double e : values) {
    if (!(e > 0.0 && e <= 1.0)) {
      throw std::invalid_argument("entanglement values must lie in (0, 1]");
    }
  }
  return values;
}

// Coefficient inputs: --alpha-sq, --entanglement, or an explicit signed
// (a, b) pair that must already be normalized to within 1e-9.
struct CoefficientOptions {
  std::optional<double> alpha_sq;
  std::optional<double> entanglement;
  std::vector<double> pair;
};

void add_coefficient_options(CLI::App* cmd, CoefficientOptions& opts) {
  auto* a2 = cmd->add_option("--alpha-sq", opts.alpha_sq,
                             "Squared first Schmidt coefficient in [0, 1]");
  auto* ent = cmd->add_option("--entanglement", opts.entanglement,
                              "Entanglement E in (0, 1]; a = sqrt(E/2)");
  auto* pair = cmd->add_option("--coeffs", opts.pair,
                               "Signed coefficients a b with a^2 + b^2 = 1")
                   ->expected(2);
  a2->excludes(ent)->excludes(pair);
  ent->excludes(pair);
}

SchmidtCoefficients resolve_coefficients(const CoefficientOptions& opts) {
  if (opts.alpha_sq) {
    if (!(*opts.alpha_sq >= 0.0 && *opts.alpha_sq <= 1.0)) {
      throw std::invalid_argument("--alpha-sq must lie in [0, 1]");
    }
    return SchmidtCoefficients::from_alpha_sq(*opts.alpha_sq);
  }
  if (opts.entanglement) {
    if (!(*opts.entanglement > 0.0 && *opts.entanglement <= 1.0)) {
      throw std::invalid_argument("--entanglement must lie in (0, 1]");
    }
    return SchmidtCoefficients::from_entanglement(*opts.entanglement);
  }
  if (opts.pair.size() == 2) {
    const double n2 = opts.pair[0] * opts.pair[0] + opts.pair[1] * opts.pair[1];
    if (std::abs(n2 - 1.0) > 1e-9) {
      throw std::invalid_argument("--coeffs must satisfy a^2 + b^2 = 1 within 1e-9");
    }
    return {opts.pair[0], opts.pair[1]};
  }
  throw std::invalid_argument(
      "one of --alpha-sq, --entanglement, or --coeffs is required");
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 1;
  }
  file << text;
  return file.good() ? 0 : 1;
}

int run_curve(const GridOptions& grid, const std::vector<int>& rounds_list,
              const std::string& out_path) {
  for (int n : rounds_list) {
    if (n < 1 || n > 40) {
      throw std::invalid_argument("iteration counts must lie in [1, 40]");
    }
  }
  std::string csv = "E";
  for (int n : rounds_list) csv += ",P_" + std::to_string(n);
  csv += "\n";
  for (double e : build_grid(grid)) {
    const auto c = SchmidtCoefficients::from_entanglement(e);
    csv += fmt12(e);
    for (int n : rounds_list) {
      csv += "," + fmt12(ecsim::total_success_probability(c, n));
    }
    csv += "\n";
  }
  return write_output(csv, out_path);
}

int run_compare(const GridOptions& grid, int rounds,
                const std::string& out_path) {
  if (rounds < 1 || rounds > 40) {
    throw std::invalid_argument("iteration count must lie in [1, 40]");
  }
  std::string csv = "E,P_O,P_Z,P_S,P_B\n";
  for (double e : build_grid(grid)) {
    const auto c = SchmidtCoefficients::from_entanglement(e);
    const auto point = ecsim::comparison_curves(c, rounds);
    csv += fmt12(e) + "," + fmt12(point.p_iterated) + "," +
           fmt12(point.p_single_pair) + "," + fmt12(point.p_recycled_pair) +
           "," + fmt12(point.p_collective) + "\n";
  }
  return write_output(csv, out_path);
}

int run_simulate(const CoefficientOptions& coeff_opts, int rounds,
                 std::uint64_t trials, std::uint64_t seed,
                 const ProbeModel& model, const std::string& out_path) {
  const SchmidtCoefficients c = resolve_coefficients(coeff_opts);
  if (trials < 1) throw std::invalid_argument("--trials must be at least 1");

  const ecsim::EnsembleStats stats =
      ecsim::estimate_success(c, rounds, trials, seed, model);
  const double analytic = ecsim::total_success_probability(c, rounds);
  // z against the null standard error, so a zero-variance analytic point
  // (a in {0, 1}) yields z = 0 exactly when the estimate matches.
  const double null_se =
      std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(trials));
  const double diff = stats.estimate - analytic;
  double z = 0.0;
  if (null_se > 0.0) {
    z = diff / null_se;
  } else if (diff != 0.0) {
    z = diff > 0.0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
  }

  nlohmann::json report = {
      {"coefficients", {{"a", c.a}, {"b", c.b}}},
      {"alpha_sq", c.alpha_sq()},
      {"entanglement", ecsim::entanglement(c)},
      {"rounds", rounds},
      {"theta", model.theta},
      {"epsilon", model.misclassification_probability},
      {"seed", stats.seed},
      {"trials", stats.trials},
      {"successes", stats.successes},
      {"estimate", stats.estimate},
      {"standard_error", stats.standard_error},
      {"analytic", analytic},
      {"z", z},
  };
  const int rc = write_output(report.dump(2) + "\n", out_path);
  if (rc != 0) return rc;
  return std::abs(z) > 4.0 ? kStatisticalFailure : 0;
}

int run_locc(const CoefficientOptions& coeff_opts, int parties, int rounds,
             std::uint64_t seed, const ProbeModel& model,
             const std::string& latency_spec, const std::string& order_spec,
             bool verbose_messages, const std::string& out_path) {
  ecsim::locc::RunConfig config;
  config.coefficients = resolve_coefficients(coeff_opts);
  config.n_parties = parties;
  config.max_rounds = rounds;
  config.model = model;
  config.seed = seed;
  config.verbose_messages = verbose_messages;

  if (!latency_spec.empty()) {
    std::vector<double> args;
    std::string kind;
    std::size_t pos = 0;
    while (pos <= latency_spec.size()) {
      const std::size_t next = latency_spec.find(':', pos);
      const std::string token =
          latency_spec.substr(pos, next == std::string::npos ? next : next - pos);
      if (kind.empty()) {
        kind = token;
      } else {
        args.push_back(std::stod(token));
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (kind == "fixed" && args.size() == 1) {
      config.channel.latency = ecsim::locc::LatencyModel::fixed(args[0]);
    } else if (kind == "uniform" && args.size() == 2) {
      config.channel.latency =
          ecsim::locc::LatencyModel::uniform(args[0], args[1]);
    } else if (kind == "exp" && args.size() == 1) {
      config.channel.latency = ecsim::locc::LatencyModel::exponential(args[0]);
    } else {
      throw std::invalid_argument(
          "--latency must be fixed:<us>, uniform:<lo>:<hi>, or exp:<mean>");
    }
  }
  if (order_spec == "fifo") {
    config.channel.order = ecsim::locc::TieBreak::SeqAscending;
  } else if (order_spec == "reverse") {
    config.channel.order = ecsim::locc::TieBreak::SeqDescending;
  } else {
    throw std::invalid_argument("--order must be fifo or reverse");
  }

  const ecsim::locc::Transcript transcript = ecsim::locc::run_protocol(config);
  return write_output(transcript.to_jsonl(), out_path);
}

int run_round(const CoefficientOptions& coeff_opts, int photons,
              std::uint64_t seed, const ProbeModel& model,
              const std::string& out_path) {
  const SchmidtCoefficients c = resolve_coefficients(coeff_opts);
  if (photons < 2 || photons + 1 > ecsim::kMaxPhotons) {
    throw std::invalid_argument("--photons must lie in [2, " +
                                std::to_string(ecsim::kMaxPhotons - 1) + "]");
  }
  ecsim::CounterRng rng(seed, 0);
  const ecsim::PureState state = ecsim::ghz_state(photons, c);
  const ecsim::RoundResult result =
      ecsim::round_statevector(state, 0, c, model, rng);

  nlohmann::json report = {
      {"photons", photons},
      {"coefficients", {{"a", c.a}, {"b", c.b}}},
      {"seed", seed},
      {"theta", model.theta},
      {"epsilon", model.misclassification_probability},
      {"parity", result.record.parity.parity == ecsim::Parity::Even ? "even"
                                                                    : "odd"},
      {"parity_probability", result.record.parity_probability},
      {"bit_flip_applied", result.record.bit_flip_applied},
      {"projection", result.record.projection == ecsim::BasisBranch::VPerp
                         ? "v_perp"
                         : "v"},
      {"projection_probability", result.record.projection_probability},
      {"verdict", result.outcome.verdict == ecsim::Verdict::Success
                      ? "success"
                      : "failure"},
      {"success_probability", result.outcome.success_probability},
  };
  if (result.outcome.verdict == ecsim::Verdict::Success) {
    report["fidelity_vs_target"] =
        ecsim::fidelity(result.post_state, ecsim::ghz_target(photons));
  } else {
    const auto& f = *result.outcome.failure_coefficients;
    report["failure_coefficients"] = {{"a", f.a}, {"b", f.b}};
  }
  return write_output(report.dump(2) + "\n", out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement concentration protocol simulator"};
  app.require_subcommand(1);

  // curve
  auto* curve = app.add_subcommand(
      "curve", "Success probability P_n over an entanglement grid (CSV)");
  GridOptions curve_grid;
  std::vector<int> curve_rounds = {1, 2, 3, 6};
  std::string curve_out;
  add_grid_options(curve, curve_grid);
  curve->add_option("--n", curve_rounds, "Iteration counts (default 1 2 3 6)");
  curve->add_option("--out", curve_out, "Output file (default stdout)");

  // compare
  auto* compare = app.add_subcommand(
      "compare", "Baseline comparison P_O, P_Z, P_S, P_B over a grid (CSV)");
  GridOptions compare_grid;
  int compare_rounds = 6;
  std::string compare_out;
  add_grid_options(compare, compare_grid);
  compare->add_option("--n", compare_rounds, "Iteration count (default 6)");
  compare->add_option("--out", compare_out, "Output file (default stdout)");

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimate vs the analytic value (JSON)");
  CoefficientOptions simulate_coeffs;
  int simulate_rounds = 1;
  std::uint64_t simulate_trials = 100000;
  std::uint64_t simulate_seed = 1;
  ProbeModel simulate_model;
  std::string simulate_out;
  add_coefficient_options(simulate, simulate_coeffs);
  simulate->add_option("--n", simulate_rounds, "Iteration count (default 1)");
  simulate->add_option("--trials", simulate_trials, "Trajectories (default 1e5)");
  simulate->add_option("--seed", simulate_seed, "RNG seed (default 1)");
  simulate->add_option("--theta", simulate_model.theta, "Probe phase");
  simulate->add_option("--epsilon", simulate_model.misclassification_probability,
                       "Parity misclassification probability");
  simulate->add_option("--out", simulate_out, "Output file (default stdout)");

  // locc
  auto* locc = app.add_subcommand(
      "locc", "Multi-party protocol run; JSON-lines transcript");
  CoefficientOptions locc_coeffs;
  int locc_parties = 2;
  int locc_rounds = 6;
  std::uint64_t locc_seed = 1;
  ProbeModel locc_model;
  std::string locc_latency;
  std::string locc_order = "fifo";
  bool locc_verbose = false;
  std::string locc_out;
  add_coefficient_options(locc, locc_coeffs);
  locc->add_option("--parties", locc_parties, "Number of parties (>= 2)")
      ->required();
  locc->add_option("--rounds", locc_rounds, "Maximum rounds (default 6)");
  locc->add_option("--seed", locc_seed, "RNG seed (default 1)");
  locc->add_option("--theta", locc_model.theta, "Probe phase");
  locc->add_option("--epsilon", locc_model.misclassification_probability,
                   "Parity misclassification probability");
  locc->add_option("--latency", locc_latency,
                   "Channel latency: fixed:<us>, uniform:<lo>:<hi>, exp:<mean>");
  locc->add_option("--order", locc_order,
                   "Equal-time delivery order: fifo or reverse");
  locc->add_flag("--verbose-messages", locc_verbose,
                 "Also broadcast parity and projection notices");
  locc->add_option("--out", locc_out, "Output file (default stdout)");

  // round
  auto* round = app.add_subcommand(
      "round", "Single statevector concentration round (JSON)");
  CoefficientOptions round_coeffs;
  int round_photons = 2;
  std::uint64_t round_seed = 1;
  ProbeModel round_model;
  std::string round_out;
  add_coefficient_options(round, round_coeffs);
  round->add_option("--photons", round_photons, "Photon count (default 2)");
  round->add_option("--seed", round_seed, "RNG seed (default 1)");
  round->add_option("--theta", round_model.theta, "Probe phase");
  round->add_option("--epsilon", round_model.misclassification_probability,
                    "Parity misclassification probability");
  round->add_option("--out", round_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (curve->parsed()) return run_curve(curve_grid, curve_rounds, curve_out);
    if (compare->parsed()) {
      return run_compare(compare_grid, compare_rounds, compare_out);
    }
    if (simulate->parsed()) {
      return run_simulate(simulate_coeffs, simulate_rounds, simulate_trials,
                          simulate_seed, simulate_model, simulate_out);
    }
    if (locc->parsed()) {
      return run_locc(locc_coeffs, locc_parties, locc_rounds, locc_seed,
                      locc_model, locc_latency, locc_order, locc_verbose,
                      locc_out);
    }
    if (round->parsed()) {
      return run_round(round_coeffs, round_photons, round_seed, round_model,
                       round_out);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
