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

#include <cmath>

#include "gtest/gtest.h"

#include "avgfid/errors.hpp"

using namespace avgfid;

TEST(parse_real_grid, inclusive_points) {
  const std::vector<double> g = parse_real_grid("0:1:11");
  ASSERT_EQ(g.size(), 11u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], 0.1 * static_cast<double>(i), 1e-15);
  EXPECT_EQ(parse_real_grid("0.25"), std::vector<double>{0.25});
  EXPECT_EQ(parse_real_grid("0.3:0.9:1"), std::vector<double>{0.3});
  EXPECT_EQ(parse_real_grid("1:0:3"), (std::vector<double>{1.0, 0.5, 0.0}));
}

TEST(parse_real_grid, malformed) {
  for (const char* bad : {"", "a", "0:1", "0:1:0", "0:1:2:3", "0:1:x", "0:1:2.5", "0.5x"}) {
    EXPECT_THROW(parse_real_grid(bad), OutOfRange) << bad;
  }
}

TEST(parse_int_list, lists_and_ranges) {
  EXPECT_EQ(parse_int_list("2,4,8"), (std::vector<int>{2, 4, 8}));
  EXPECT_EQ(parse_int_list("2..20").size(), 19u);
  EXPECT_EQ(parse_int_list("1,3..5,9"), (std::vector<int>{1, 3, 4, 5, 9}));
  EXPECT_EQ(parse_int_list("7"), std::vector<int>{7});
  for (const char* bad : {"", "2,", "5..2", "1..2..3", "x", "2.5"}) {
    EXPECT_THROW(parse_int_list(bad), OutOfRange) << bad;
  }
}

TEST(quartiles, interpolates) {
  const Quartiles q = quartiles({4, 1, 3, 2, 5});
  EXPECT_EQ(q.q1, 2.0);
  EXPECT_EQ(q.median, 3.0);
  EXPECT_EQ(q.q3, 4.0);
  const Quartiles even = quartiles({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(even.q1, 1.75);
  EXPECT_DOUBLE_EQ(even.median, 2.5);
  EXPECT_DOUBLE_EQ(even.q3, 3.25);
  EXPECT_EQ(quartiles({7}).median, 7.0);
  EXPECT_THROW(quartiles({}), OutOfRange);
}

TEST(bench_fp, rows_ordered_and_shared_ensembles) {
  BenchFpConfig cfg;
  cfg.dims = {2, 3};
  cfg.ns = {2, 4, 5};
  cfg.trials = 3;
  const std::vector<BenchFpRow> rows = bench_fp(cfg);
  ASSERT_EQ(rows.size(), 2u * 3u * 2u * 3u);
  std::size_t k = 0;
  for (int d : cfg.dims) {
    for (int n : cfg.ns) {
      for (Method m : cfg.methods) {
        for (std::size_t t = 0; t < cfg.trials; ++t, ++k) {
          EXPECT_EQ(rows[k].d, d);
          EXPECT_EQ(rows[k].n, n);
          EXPECT_EQ(rows[k].method, m);
          EXPECT_EQ(rows[k].trial, t);
          EXPECT_TRUE(rows[k].converged);
          EXPECT_GT(rows[k].iterations, 0);
        }
      }
    }
  }
  // Lambda and Omega rows for the same trial solve the same ensemble.
  for (std::size_t block = 0; block < rows.size(); block += 2 * cfg.trials) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      EXPECT_NEAR(rows[block + t].value, rows[block + cfg.trials + t].value, 1e-6);
    }
  }
}

TEST(bench_fp, deterministic_across_threads) {
  BenchFpConfig cfg;
  cfg.dims = {2, 4};
  cfg.ns = {3, 6};
  cfg.trials = 4;
  cfg.seed = 11;
  const std::vector<BenchFpRow> a = bench_fp(cfg);
  cfg.threads = 4;
  const std::vector<BenchFpRow> b = bench_fp(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].value, b[k].value);
    EXPECT_EQ(a[k].iterations, b[k].iterations);
  }
  cfg.seed = 12;
  EXPECT_NE(bench_fp(cfg)[0].value, a[0].value);
}

TEST(bench_fp, validation) {
  BenchFpConfig cfg;
  cfg.dims = {};
  EXPECT_THROW(bench_fp(cfg), OutOfRange);
  cfg.dims = {2};
  cfg.ns = {0};
  EXPECT_THROW(bench_fp(cfg), OutOfRange);
  cfg.ns = {2};
  cfg.methods = {};
  EXPECT_THROW(bench_fp(cfg), OutOfRange);
  cfg.methods = {Method::omega};
  cfg.trials = 0;
  EXPECT_THROW(bench_fp(cfg), OutOfRange);
}

TEST(bound_gaps, rows_and_ordering) {
  BoundGapConfig cfg;
  cfg.dims = {2, 4};
  cfg.ns = {1, 6};
  cfg.trials = 3;
  const std::vector<BoundGapRow> rows = bound_gaps(cfg);
  ASSERT_EQ(rows.size(), 2u * 2u * 3u * 4u);
  const BoundQuantity order[] = {BoundQuantity::average_bound, BoundQuantity::product_bound,
                                 BoundQuantity::commuting, BoundQuantity::mean};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const BoundGapRow& r = rows[k];
    EXPECT_EQ(r.quantity, order[k % 4]);
    EXPECT_EQ(r.trial, (k / 4) % 3);
    EXPECT_DOUBLE_EQ(r.gap, std::abs(r.optimal - r.g));
    if (r.n == 1) EXPECT_LE(r.gap, 1e-8);
  }
}

TEST(bound_gaps, commuting_mode_saturates) {
  BoundGapConfig cfg;
  cfg.dims = {2, 3, 5};
  cfg.ns = {4, 7};
  cfg.trials = 3;
  cfg.commuting = true;
  for (const BoundGapRow& r : bound_gaps(cfg)) {
    if (r.quantity == BoundQuantity::product_bound || r.quantity == BoundQuantity::commuting) {
      EXPECT_LE(r.gap, 1e-6) << to_string(r.quantity) << " d=" << r.d << " n=" << r.n;
    }
  }
}

TEST(bound_gaps, deterministic_across_threads) {
  BoundGapConfig cfg;
  cfg.dims = {3};
  cfg.ns = {5};
  cfg.trials = 4;
  const std::vector<BoundGapRow> a = bound_gaps(cfg);
  cfg.threads = 2;
  const std::vector<BoundGapRow> b = bound_gaps(cfg);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].g, b[k].g);
    EXPECT_EQ(a[k].optimal, b[k].optimal);
  }
}
