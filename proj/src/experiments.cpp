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

#include "avgfid/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "avgfid/bounds.hpp"
#include "avgfid/errors.hpp"
#include "avgfid/parallel.hpp"

namespace avgfid {
namespace {

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + sep.size();
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view token, std::string_view context) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw OutOfRange("cannot parse '" + std::string(token) + "' in '" + std::string(context) + "'");
  }
  return value;
}

double interpolated(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

void require_positive(const std::vector<int>& values, const char* what) {
  if (values.empty()) throw OutOfRange(std::string(what) + " grid is empty");
  for (int v : values) {
    if (v < 1) throw OutOfRange(std::string(what) + " values must be >= 1");
  }
}

}  // namespace

std::vector<double> parse_real_grid(std::string_view spec) {
  const auto parts = split(spec, ":");
  if (parts.size() == 1) return {parse_number<double>(parts[0], spec)};
  if (parts.size() != 3) throw OutOfRange("grid '" + std::string(spec) + "' must be a:b:k");
  const double a = parse_number<double>(parts[0], spec);
  const double b = parse_number<double>(parts[1], spec);
  const long k = parse_number<long>(parts[2], spec);
  if (k < 1) throw OutOfRange("grid point count must be >= 1");
  if (k == 1) return {a};
  std::vector<double> grid(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) grid[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
  grid.back() = b;
  return grid;
}

std::vector<int> parse_int_list(std::string_view spec) {
  std::vector<int> out;
  for (std::string_view item : split(spec, ",")) {
    const auto range = split(item, "..");
    if (range.size() == 1) {
      out.push_back(parse_number<int>(item, spec));
    } else if (range.size() == 2) {
      const int lo = parse_number<int>(range[0], spec);
      const int hi = parse_number<int>(range[1], spec);
      if (hi < lo) throw OutOfRange("empty range '" + std::string(item) + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      throw OutOfRange("malformed range '" + std::string(item) + "'");
    }
  }
  return out;
}

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw OutOfRange("quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  return {interpolated(values, 0.25), interpolated(values, 0.5), interpolated(values, 0.75)};
}

std::vector<BenchFpRow> bench_fp(const BenchFpConfig& cfg) {
  require_positive(cfg.dims, "dimension");
  require_positive(cfg.ns, "state count");
  if (cfg.methods.empty()) throw OutOfRange("no methods selected");
  if (cfg.trials < 1) throw OutOfRange("trials must be >= 1");

  const std::size_t nd = cfg.dims.size(), nn = cfg.ns.size(), nm = cfg.methods.size(), nt = cfg.trials;
  std::vector<BenchFpRow> rows(nd * nn * nm * nt);
  parallel_for(nd * nn * nt, cfg.threads, [&](std::size_t job) {
    const std::size_t t = job % nt;
    const std::size_t ni = (job / nt) % nn;
    const std::size_t di = job / (nt * nn);
    const int d = cfg.dims[di];
    const int n = cfg.ns[ni];
    Rng rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n), t});
    const Ensemble e = random_ensemble(d, static_cast<std::size_t>(n), d, rng);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      SolveConfig sc;
      sc.method = cfg.methods[mi];
      sc.tol = cfg.tol;
      sc.max_iters = cfg.max_iters;
      const SolveResult r = solve(e, sc);
      rows[((di * nn + ni) * nm + mi) * nt + t] =
          BenchFpRow{d, n, sc.method, t, r.wall_time_s, r.iterations, r.value, r.converged};
    }
  });
  return rows;
}

std::string_view to_string(BoundQuantity q) {
  switch (q) {
    case BoundQuantity::average_bound: return "average_bound";
    case BoundQuantity::product_bound: return "product_bound";
    case BoundQuantity::commuting: return "commuting";
    case BoundQuantity::mean: return "mean";
  }
  return "unknown";
}

std::vector<BoundGapRow> bound_gaps(const BoundGapConfig& cfg) {
  require_positive(cfg.dims, "dimension");
  require_positive(cfg.ns, "state count");
  if (cfg.trials < 1) throw OutOfRange("trials must be >= 1");

  constexpr std::size_t kQuantities = 4;
  const std::size_t nd = cfg.dims.size(), nn = cfg.ns.size(), nt = cfg.trials;
  std::vector<BoundGapRow> rows(nd * nn * nt * kQuantities);
  parallel_for(nd * nn * nt, cfg.threads, [&](std::size_t job) {
    const std::size_t t = job % nt;
    const std::size_t ni = (job / nt) % nn;
    const std::size_t di = job / (nt * nn);
    const int d = cfg.dims[di];
    const int n = cfg.ns[ni];
    Rng rng = make_rng(cfg.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n), t});
    const auto count = static_cast<std::size_t>(n);
    const Ensemble e = cfg.commuting ? random_commuting_ensemble(d, count, true, rng)
                                     : random_ensemble(d, count, d, rng);
    const BoundsReport report = bounds_report(e, true, cfg.solve);
    const double opt = *report.optimal_value;
    const double g[kQuantities] = {report.average_bound, report.product_bound, report.commuting_lower,
                                   report.mean_lower};
    for (std::size_t q = 0; q < kQuantities; ++q) {
      rows[job * kQuantities + q] =
          BoundGapRow{d, n, t, static_cast<BoundQuantity>(q), g[q], opt, std::abs(opt - g[q])};
    }
  });
  return rows;
}

}  // namespace avgfid
