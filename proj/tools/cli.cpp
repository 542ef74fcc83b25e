// Copyright 2026 The avgfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avgfid/bounds.hpp"
#include "avgfid/ensemble_io.hpp"
#include "avgfid/errors.hpp"
#include "avgfid/experiments.hpp"
#include "avgfid/tomography.hpp"

namespace avgfid::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kStateMeasure = "Ginibre (Hilbert-Schmidt) random density matrices, full rank";

struct SolveArgs {
  std::string ensemble;
  std::string method = "omega";
  double tol = 1e-5;
  long max_iters = 100000;
  std::string init = "commuting";
  std::optional<double> auto_depolarize;
  std::string out;
};

struct BenchFpArgs {
  std::string dims = "2";
  std::string ns = "2..20";
  std::string methods = "lambda,omega";
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  double tol = 1e-5;
  long max_iters = 100000;
  unsigned threads = 1;
  std::string out = "bench_fp.csv";
};

struct TomoArgs {
  int d = 2;
  std::size_t n = 20;
  std::string lambdas = "0:1:11";
  std::size_t trials = 50;
  std::string estimators = "bayes,commuting,mean";
  double depolarize = 1e-6;
  std::uint64_t seed = 1;
  double tol = 1e-5;
  long max_iters = 100000;
  std::string init = "commuting";
  unsigned threads = 1;
  std::string out = "tomo.csv";
};

struct BoundsArgs {
  std::string ensemble;
  std::string dims = "2,4,8,16";
  std::string ns = "10";
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  bool commuting = false;
  double tol = 1e-5;
  long max_iters = 100000;
  std::optional<double> auto_depolarize;
  unsigned threads = 1;
  // Empty: bounds.csv for a sweep, stdout only for a single ensemble.
  std::string out;
};

struct RandomArgs {
  int d = 2;
  std::size_t n = 5;
  std::optional<int> rank;
  std::uint64_t seed = 1;
  bool commuting = false;
  std::optional<double> depolarize;
  std::string out = "ensemble.json";
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(',', pos);
    items.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return items;
}

void require_writable(const std::string& path) {
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  if (!fs::is_directory(parent)) throw OutOfRange("output directory does not exist: " + parent.string());
}

fs::path summary_path(const std::string& out) {
  fs::path p(out);
  const fs::path ext = p.has_extension() ? p.extension() : fs::path(".csv");
  return p.replace_filename(p.stem().string() + "_summary" + ext.string());
}

std::string num(double x) { return json_format::number(x); }

void write_metadata(const std::string& out, const std::string& command, std::uint64_t seed, json config,
                    const std::vector<std::string>& outputs) {
  json meta;
  meta["tool"] = "avgfid";
  meta["version"] = AVGFID_VERSION;
  meta["command"] = command;
  meta["seed"] = seed;
  meta["config"] = std::move(config);
  meta["random_state_measure"] = kStateMeasure;
  meta["outputs"] = outputs;
  write_text_file(out + ".meta.json", meta.dump(2) + "\n");
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  if (!a.out.empty()) require_writable(a.out);
  const Ensemble e = read_ensemble(a.ensemble);
  SolveResult result = [&] {
    if (a.method == "commuting" || a.method == "mean") return closed_form(e, a.method);
    SolveConfig cfg;
    cfg.method = parse_method(a.method);
    cfg.tol = a.tol;
    cfg.max_iters = a.max_iters;
    cfg.init = parse_init(a.init);
    cfg.auto_depolarize = a.auto_depolarize;
    return solve(e, cfg);
  }();
  if (!a.out.empty()) write_text_file(a.out, solve_result_to_json(result));
  out << "value " << num(result.value) << "\n"
      << "iterations " << result.iterations << "\n"
      << "converged " << (result.converged ? "true" : "false") << "\n";
  if (result.depolarized_by > 0.0) out << "depolarized " << num(result.depolarized_by) << "\n";
  return result.converged ? kOk : kNotConverged;
}

int cmd_bench_fp(const BenchFpArgs& a, std::ostream& out) {
  require_writable(a.out);
  BenchFpConfig cfg;
  cfg.dims = parse_int_list(a.dims);
  cfg.ns = parse_int_list(a.ns);
  cfg.methods.clear();
  for (const auto& m : split_list(a.methods)) cfg.methods.push_back(parse_method(m));
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.tol = a.tol;
  cfg.max_iters = a.max_iters;
  cfg.threads = a.threads;
  const auto rows = bench_fp(cfg);

  std::string csv = "d,n,method,trial,wall_time_s,iterations,value\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::string(to_string(r.method)) + "," +
           std::to_string(r.trial) + "," + num(r.wall_time_s) + "," + std::to_string(r.iterations) + "," +
           num(r.value) + "\n";
  }
  std::string summary =
      "d,n,method,trials,median_wall_time_s,q1_wall_time_s,q3_wall_time_s,median_iterations,median_value,"
      "not_converged\n";
  for (std::size_t start = 0; start < rows.size(); start += cfg.trials) {
    std::vector<double> times, iters, values;
    std::size_t failures = 0;
    for (std::size_t k = start; k < start + cfg.trials; ++k) {
      times.push_back(rows[k].wall_time_s);
      iters.push_back(static_cast<double>(rows[k].iterations));
      values.push_back(rows[k].value);
      failures += rows[k].converged ? 0 : 1;
    }
    const Quartiles t = quartiles(times);
    const auto& r = rows[start];
    summary += std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::string(to_string(r.method)) + "," +
               std::to_string(cfg.trials) + "," + num(t.median) + "," + num(t.q1) + "," + num(t.q3) + "," +
               num(quartiles(iters).median) + "," + num(quartiles(values).median) + "," +
               std::to_string(failures) + "\n";
  }
  write_text_file(a.out, csv);
  write_text_file(summary_path(a.out), summary);
  write_metadata(a.out, "bench-fp", a.seed,
                 {{"d", cfg.dims}, {"n", cfg.ns}, {"methods", split_list(a.methods)}, {"trials", a.trials},
                  {"tol", a.tol}, {"max_iters", a.max_iters}, {"threads", a.threads}},
                 {a.out, summary_path(a.out).string()});
  out << "wrote " << rows.size() << " rows to " << a.out << "\n";
  return kOk;
}

int cmd_tomo(const TomoArgs& a, std::ostream& out) {
  require_writable(a.out);
  SweepConfig cfg;
  cfg.d = a.d;
  cfg.n = a.n;
  cfg.lambdas = parse_real_grid(a.lambdas);
  cfg.trials = a.trials;
  cfg.estimators.clear();
  for (const auto& e : split_list(a.estimators)) cfg.estimators.push_back(parse_estimator(e));
  cfg.depolarize_eps = a.depolarize;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.solve.tol = a.tol;
  cfg.solve.max_iters = a.max_iters;
  cfg.solve.init = parse_init(a.init);
  const auto records = run_sweep(cfg);

  std::string csv = "lambda,trial,estimator,infidelity,solve_iterations,wall_time_s\n";
  for (const auto& r : records) {
    csv += num(r.lambda) + "," + std::to_string(r.trial) + "," + std::string(to_string(r.estimator)) + "," +
           num(r.infidelity) + "," + std::to_string(r.solve_iterations) + "," + num(r.wall_time_s) + "\n";
  }
  std::string summary = "lambda,estimator,median_infidelity,q1_infidelity,q3_infidelity\n";
  for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
    for (Estimator which : cfg.estimators) {
      std::vector<double> values;
      for (const auto& r : records) {
        if (r.lambda_index == li && r.estimator == which) values.push_back(r.infidelity);
      }
      const Quartiles q = quartiles(values);
      summary += num(cfg.lambdas[li]) + "," + std::string(to_string(which)) + "," + num(q.median) + "," +
                 num(q.q1) + "," + num(q.q3) + "\n";
    }
  }
  write_text_file(a.out, csv);
  write_text_file(summary_path(a.out), summary);
  write_metadata(a.out, "tomo", a.seed,
                 {{"d", a.d}, {"n", a.n}, {"lambdas", cfg.lambdas}, {"trials", a.trials},
                  {"estimators", split_list(a.estimators)}, {"depolarize", a.depolarize}, {"tol", a.tol},
                  {"max_iters", a.max_iters}, {"init", a.init}, {"threads", a.threads},
                  {"particle_measure", "rho_T and rho_i' full-rank Ginibre; weights F(rho_i, rho_T) normalized"}},
                 {a.out, summary_path(a.out).string()});
  out << "wrote " << records.size() << " records to " << a.out << "\n";
  return kOk;
}

int cmd_bounds_single(const BoundsArgs& a, std::ostream& out) {
  const Ensemble e = read_ensemble(a.ensemble);
  SolveConfig cfg;
  cfg.tol = a.tol;
  cfg.max_iters = a.max_iters;
  cfg.auto_depolarize = a.auto_depolarize;
  const BoundsReport report = bounds_report(e, true, cfg);
  const std::string text = bounds_report_to_json(report);
  if (!a.out.empty()) write_text_file(a.out, text);
  out << text;
  return kOk;
}

int cmd_bounds(BoundsArgs a, std::ostream& out) {
  if (!a.out.empty()) require_writable(a.out);
  if (!a.ensemble.empty()) return cmd_bounds_single(a, out);
  if (a.out.empty()) a.out = "bounds.csv";
  BoundGapConfig cfg;
  cfg.dims = parse_int_list(a.dims);
  cfg.ns = parse_int_list(a.ns);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.commuting = a.commuting;
  cfg.threads = a.threads;
  cfg.solve.tol = a.tol;
  cfg.solve.max_iters = a.max_iters;
  const auto rows = bound_gaps(cfg);

  std::string csv = "d,n,trial,quantity,g,optimal,gap\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.trial) + "," +
           std::string(to_string(r.quantity)) + "," + num(r.g) + "," + num(r.optimal) + "," + num(r.gap) + "\n";
  }
  std::string summary = "d,n,quantity,median_gap,q1_gap,q3_gap\n";
  constexpr std::size_t kQuantities = 4;
  const std::size_t block = cfg.trials * kQuantities;
  for (std::size_t start = 0; start < rows.size(); start += block) {
    for (std::size_t q = 0; q < kQuantities; ++q) {
      std::vector<double> gaps;
      for (std::size_t t = 0; t < cfg.trials; ++t) gaps.push_back(rows[start + t * kQuantities + q].gap);
      const Quartiles s = quartiles(gaps);
      summary += std::to_string(rows[start].d) + "," + std::to_string(rows[start].n) + "," +
                 std::string(to_string(static_cast<BoundQuantity>(q))) + "," + num(s.median) + "," + num(s.q1) +
                 "," + num(s.q3) + "\n";
    }
  }
  write_text_file(a.out, csv);
  write_text_file(summary_path(a.out), summary);
  write_metadata(a.out, "bounds", a.seed,
                 {{"d", cfg.dims}, {"n", cfg.ns}, {"trials", a.trials}, {"commuting", a.commuting},
                  {"tol", a.tol}, {"max_iters", a.max_iters}, {"threads", a.threads}},
                 {a.out, summary_path(a.out).string()});
  out << "wrote " << rows.size() << " rows to " << a.out << "\n";
  return kOk;
}

int cmd_random(const RandomArgs& a, std::ostream& out) {
  require_writable(a.out);
  const int rank = a.rank.value_or(a.d);
  Rng rng = make_rng(a.seed);
  Ensemble e = a.commuting ? random_commuting_ensemble(a.d, a.n, true, rng) : random_ensemble(a.d, a.n, rank, rng);
  if (a.depolarize) e = depolarize(e, *a.depolarize);
  write_ensemble(e, a.out);
  out << "wrote ensemble (d=" << e.dim() << ", n=" << e.size() << ") to " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal average-fidelity states: solver, bounds and benchmark sweeps", "avgfid"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Find the state maximizing average fidelity over an ensemble");
  solve_cmd->add_option("--ensemble", solve_args.ensemble, "Ensemble JSON file")->required();
  solve_cmd->add_option("--method", solve_args.method, "Estimator")
      ->check(CLI::IsMember({"omega", "lambda", "commuting", "mean"}));
  solve_cmd->add_option("--tol", solve_args.tol, "Stopping tolerance (spectral norm of the step)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--init", solve_args.init, "Initial state")
      ->check(CLI::IsMember({"commuting", "mean", "mixed"}));
  solve_cmd->add_option("--auto-depolarize", solve_args.auto_depolarize,
                        "Depolarize rank-deficient ensembles by this strength before solving")
      ->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--out", solve_args.out, "Result JSON path");

  BenchFpArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench-fp", "Runtime of the fixed-point maps over random ensembles");
  bench_cmd->add_option("--d", bench_args.dims, "Dimensions, e.g. 2 or 2,8,32");
  bench_cmd->add_option("--n", bench_args.ns, "State counts, e.g. 2..20");
  bench_cmd->add_option("--method", bench_args.methods, "Comma-separated subset of lambda,omega");
  bench_cmd->add_option("--trials", bench_args.trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_args.seed);
  bench_cmd->add_option("--tol", bench_args.tol)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-iters", bench_args.max_iters)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench_args.threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_args.out, "Raw CSV path");

  TomoArgs tomo_args;
  auto* tomo_cmd = app.add_subcommand("tomo", "Simulated Bayesian tomography sweep over lambda");
  tomo_cmd->add_option("--d", tomo_args.d)->check(CLI::Range(2, 1 << 12));
  tomo_cmd->add_option("--n", tomo_args.n)->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--lambdas", tomo_args.lambdas, "Grid a:b:k (k points, inclusive)");
  tomo_cmd->add_option("--trials", tomo_args.trials)->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--estimators", tomo_args.estimators, "Comma-separated subset of bayes,commuting,mean");
  tomo_cmd->add_option("--depolarize", tomo_args.depolarize, "Particle depolarization before estimating")
      ->check(CLI::Range(0.0, 1.0));
  tomo_cmd->add_option("--seed", tomo_args.seed);
  tomo_cmd->add_option("--tol", tomo_args.tol)->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--max-iters", tomo_args.max_iters)->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--init", tomo_args.init)->check(CLI::IsMember({"commuting", "mean", "mixed"}));
  tomo_cmd->add_option("--threads", tomo_args.threads)->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--out", tomo_args.out, "Raw CSV path");

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Bound tightness sweep, or the bounds of one ensemble");
  bounds_cmd->add_option("--ensemble", bounds_args.ensemble, "Report bounds for this ensemble JSON instead");
  bounds_cmd->add_option("--d", bounds_args.dims, "Dimensions, e.g. 2,4,8,16");
  bounds_cmd->add_option("--n", bounds_args.ns, "State counts, e.g. 1..20");
  bounds_cmd->add_option("--trials", bounds_args.trials)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--seed", bounds_args.seed);
  bounds_cmd->add_flag("--commuting", bounds_args.commuting, "Draw pairwise-commuting ensembles");
  bounds_cmd->add_option("--tol", bounds_args.tol)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--max-iters", bounds_args.max_iters)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--auto-depolarize", bounds_args.auto_depolarize)->check(CLI::Range(0.0, 1.0));
  bounds_cmd->add_option("--threads", bounds_args.threads)->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--out", bounds_args.out, "Raw CSV path, default bounds.csv (JSON report with --ensemble)");

  RandomArgs random_args;
  auto* random_cmd = app.add_subcommand("random-ensemble", "Write a random ensemble JSON file");
  random_cmd->add_option("--d", random_args.d)->check(CLI::PositiveNumber);
  random_cmd->add_option("--n", random_args.n)->check(CLI::PositiveNumber);
  random_cmd->add_option("--rank", random_args.rank, "State rank (default d)")->check(CLI::PositiveNumber);
  random_cmd->add_option("--seed", random_args.seed);
  random_cmd->add_flag("--commuting", random_args.commuting, "Pairwise-commuting states");
  random_cmd->add_option("--depolarize", random_args.depolarize)->check(CLI::Range(0.0, 1.0));
  random_cmd->add_option("--out", random_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*bench_cmd) return cmd_bench_fp(bench_args, out);
    if (*tomo_cmd) return cmd_tomo(tomo_args, out);
    if (*bounds_cmd) return cmd_bounds(bounds_args, out);
    if (*random_cmd) return cmd_random(random_args, out);
  } catch (const SingularState& e) {
    err << "error: " << e.what() << "\n";
    return kSingularState;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace avgfid::cli
