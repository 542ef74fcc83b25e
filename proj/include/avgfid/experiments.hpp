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

#pragma once

// Benchmark sweeps behind the command-line tool: fixed-point runtime
// comparison and bound tightness, plus the grid parsing and order statistics
// the tool reports.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "avgfid/estimators.hpp"

namespace avgfid {

/// `a:b:k` is k evenly spaced points from a to b inclusive; a bare number is
/// a one-point grid. Throws OutOfRange on malformed input.
std::vector<double> parse_real_grid(std::string_view spec);

/// Comma-separated integers and inclusive ranges `lo..hi`, e.g. "2,4,8" or
/// "2..20". Throws OutOfRange on malformed input.
std::vector<int> parse_int_list(std::string_view spec);

/// Median and first/third quartiles with linear interpolation between order
/// statistics (positions p * (m - 1)).
struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};
Quartiles quartiles(std::vector<double> values);

struct BenchFpConfig {
  std::vector<int> dims{2};
  std::vector<int> ns{2};
  std::vector<Method> methods{Method::lambda, Method::omega};
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  double tol = 1e-5;
  long max_iters = 100000;
  unsigned threads = 1;
};

struct BenchFpRow {
  int d = 0;
  int n = 0;
  Method method = Method::omega;
  std::size_t trial = 0;
  double wall_time_s = 0.0;
  long iterations = 0;
  double value = 0.0;
  bool converged = false;
};

/// Every method solves the same full-rank random ensemble for a given
/// (d, n, trial), drawn from make_rng(seed, {d, n, trial}). Rows are ordered
/// by d, n, method, trial.
std::vector<BenchFpRow> bench_fp(const BenchFpConfig& cfg);

/// Quantities compared against the optimum in the bound-tightness sweep.
enum class BoundQuantity { average_bound, product_bound, commuting, mean };
std::string_view to_string(BoundQuantity q);

struct BoundGapConfig {
  std::vector<int> dims{2};
  std::vector<int> ns{10};
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  /// Draw pairwise-commuting ensembles (random common eigenbasis).
  bool commuting = false;
  unsigned threads = 1;
  SolveConfig solve;
};

struct BoundGapRow {
  int d = 0;
  int n = 0;
  std::size_t trial = 0;
  BoundQuantity quantity = BoundQuantity::product_bound;
  double g = 0.0;
  double optimal = 0.0;
  /// |f(sigma_opt) - g|.
  double gap = 0.0;
};

/// Rows ordered by d, n, trial, then quantity in enum order.
std::vector<BoundGapRow> bound_gaps(const BoundGapConfig& cfg);

}  // namespace avgfid
