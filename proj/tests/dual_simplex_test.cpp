// Copyright 2026 The fogsplit Authors
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

#include "fogsplit/dual_simplex.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace {

using fogsplit::lp::DualSimplex;
using fogsplit::lp::RowSense;
using fogsplit::lp::Status;
using fogsplit::lp::Term;

TEST(DualSimplex, BoxedKnapsackRelaxation) {
  DualSimplex lp;
  const int x = lp.add_column(-1.0, 0.0, 1.0);
  const int y = lp.add_column(-2.0, 0.0, 1.0);
  const Term row[] = {{x, 1.0}, {y, 1.0}};
  lp.add_row(row, RowSense::LessEqual, 1.5);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_NEAR(lp.objective(), -2.5, 1e-12);
  EXPECT_NEAR(lp.value(x), 0.5, 1e-12);
  EXPECT_NEAR(lp.value(y), 1.0, 1e-12);
}

TEST(DualSimplex, EqualityAndGreaterEqualRows) {
  DualSimplex lp;
  const int x = lp.add_column(1.0, 0.0, 4.0);
  const int y = lp.add_column(2.0, 0.0, 4.0);
  const Term eq[] = {{x, 1.0}, {y, 1.0}};
  lp.add_row(eq, RowSense::Equal, 3.0);
  const Term ge[] = {{y, 1.0}};
  lp.add_row(ge, RowSense::GreaterEqual, 0.5);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_NEAR(lp.value(x), 2.5, 1e-12);
  EXPECT_NEAR(lp.value(y), 0.5, 1e-12);
  EXPECT_NEAR(lp.objective(), 3.5, 1e-12);
}

TEST(DualSimplex, DetectsInfeasibility) {
  DualSimplex lp;
  const int x = lp.add_column(1.0, 0.0, 1.0);
  const int y = lp.add_column(1.0, 0.0, 1.0);
  const Term row[] = {{x, 1.0}, {y, 1.0}};
  lp.add_row(row, RowSense::GreaterEqual, 3.0);
  EXPECT_EQ(lp.solve(), Status::Infeasible);
}

TEST(DualSimplex, WarmStartAfterBoundChanges) {
  DualSimplex lp;
  const int x = lp.add_column(-3.0, 0.0, 1.0);
  const int y = lp.add_column(-2.0, 0.0, 1.0);
  const int z = lp.add_column(-1.0, 0.0, 1.0);
  const Term row[] = {{x, 2.0}, {y, 1.0}, {z, 1.0}};
  lp.add_row(row, RowSense::LessEqual, 2.0);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  const double root = lp.objective();

  lp.set_bounds(x, 0.0, 0.0);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_NEAR(lp.objective(), -3.0, 1e-12);  // y = z = 1

  lp.set_bounds(x, 1.0, 1.0);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_NEAR(lp.objective(), -3.0, 1e-12);

  lp.set_bounds(x, 0.0, 1.0);
  ASSERT_EQ(lp.solve(), Status::Optimal);
  EXPECT_NEAR(lp.objective(), root, 1e-12);
}

// Vertex enumeration oracle for min c.x, A x <= b, lo <= x <= hi.
std::optional<double> brute_force_lp(const std::vector<double>& c,
                                     const std::vector<std::vector<double>>& a,
                                     const std::vector<double>& b, const std::vector<double>& lo,
                                     const std::vector<double>& hi) {
  const std::size_t n = c.size();
  // Candidate hyperplanes: rows, then lower bounds, then upper bounds.
  std::vector<std::vector<double>> planes;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    planes.push_back(a[i]);
    rhs.push_back(b[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    planes.push_back(e);
    rhs.push_back(lo[j]);
    planes.push_back(e);
    rhs.push_back(hi[j]);
  }
  std::optional<double> best;
  const std::size_t k = planes.size();
  std::vector<std::size_t> pick(n);
  auto solve_pick = [&]() -> std::optional<std::vector<double>> {
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < n; ++j) m[r][j] = planes[pick[r]][j];
      m[r][n] = rhs[pick[r]];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::abs(m[r][col]) > std::abs(m[p][col])) p = r;
      }
      if (std::abs(m[p][col]) < 1e-10) return std::nullopt;
      std::swap(m[p], m[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = m[r][col] / m[col][col];
        for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = m[j][n] / m[j][j];
    return x;
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      auto x = solve_pick();
      if (!x) return;
      for (std::size_t j = 0; j < n; ++j) {
        if ((*x)[j] < lo[j] - 1e-9 || (*x)[j] > hi[j] + 1e-9) return;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i][j] * (*x)[j];
        if (s > b[i] + 1e-9) return;
      }
      double obj = 0.0;
      for (std::size_t j = 0; j < n; ++j) obj += c[j] * (*x)[j];
      if (!best || obj < *best) best = obj;
      return;
    }
    for (std::size_t p = from; p < k; ++p) {
      pick[depth] = p;
      rec(depth + 1, p + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST(DualSimplex, MatchesVertexEnumerationOnRandomBoxedLps) {
  std::mt19937 rng(20190612);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> dims(1, 4);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = dims(rng);
    const std::size_t m = dims(rng) - 1;
    std::vector<double> c(n), lo(n), hi(n), b(m);
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    DualSimplex lp;
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = coef(rng);
      lo[j] = std::floor(coef(rng));
      hi[j] = lo[j] + 1.0 + std::abs(coef(rng));
      lp.add_column(c[j], lo[j], hi[j]);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = coef(rng);
        terms.push_back({static_cast<int>(j), a[i][j]});
      }
      b[i] = coef(rng);
      lp.add_row(terms, RowSense::LessEqual, b[i]);
    }
    const auto expected = brute_force_lp(c, a, b, lo, hi);
    const Status status = lp.solve();
    if (!expected) {
      EXPECT_EQ(status, Status::Infeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(status, Status::Optimal) << "trial " << trial;
    EXPECT_NEAR(lp.objective(), *expected, 1e-7) << "trial " << trial;
    ++optimal;

    // Re-solve after tightening a random column, against a fresh oracle.
    const std::size_t j = rng() % n;
    const double mid = 0.5 * (lo[j] + hi[j]);
    lo[j] = mid;
    lp.set_bounds(static_cast<int>(j), lo[j], hi[j]);
    const auto tightened = brute_force_lp(c, a, b, lo, hi);
    const Status s2 = lp.solve();
    if (!tightened) {
      EXPECT_EQ(s2, Status::Infeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(s2, Status::Optimal) << "trial " << trial;
      EXPECT_NEAR(lp.objective(), *tightened, 1e-7) << "trial " << trial;
    }
  }
  EXPECT_GT(optimal, 100);
}

}  // namespace
