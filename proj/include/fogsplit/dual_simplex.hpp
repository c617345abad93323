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

#ifndef FOGSPLIT_DUAL_SIMPLEX_HPP
#define FOGSPLIT_DUAL_SIMPLEX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fogsplit::lp {

enum class RowSense : std::uint8_t { LessEqual, Equal, GreaterEqual };
enum class Status : std::uint8_t { Optimal, Infeasible, IterationLimit };

struct Term {
  int col;
  double coef;
};

/**
 * \brief Minimization LP over boxed variables, solved by the bounded dual
 *  simplex method on a dense tableau.
 *
 * Every column must have finite bounds; row slacks get finite bounds from the
 * column boxes, so any basis can be made dual feasible by bound flipping.
 * That is what makes warm starts after arbitrary bound changes cheap: the
 * tableau of the previous solve is kept and re-optimized in place.
 */
class DualSimplex {
 public:
  int add_column(double cost, double lower, double upper) {
    if (finalized_) throw std::logic_error("DualSimplex: add_column after solve");
    if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper) {
      throw std::invalid_argument("DualSimplex: column bounds must be finite and ordered");
    }
    cost_.push_back(cost);
    lower_.push_back(lower);
    upper_.push_back(upper);
    return static_cast<int>(cost_.size()) - 1;
  }

  int add_row(std::span<const Term> terms, RowSense sense, double rhs) {
    if (finalized_) throw std::logic_error("DualSimplex: add_row after solve");
    Row row;
    const double sign = sense == RowSense::GreaterEqual ? -1.0 : 1.0;
    for (const Term& t : terms) {
      if (t.col < 0 || t.col >= static_cast<int>(cost_.size())) {
        throw std::out_of_range("DualSimplex: row references unknown column");
      }
      if (t.coef != 0.0) row.terms.push_back({t.col, sign * t.coef});
    }
    row.rhs = sign * rhs;
    row.equality = sense == RowSense::Equal;
    rows_.push_back(std::move(row));
    return static_cast<int>(rows_.size()) - 1;
  }

  std::size_t column_count() const { return cost_.size(); }
  std::size_t row_count() const { return rows_.size(); }

  double lower(int col) const { return lower_.at(col); }
  double upper(int col) const { return upper_.at(col); }

  void set_bounds(int col, double lower, double upper) {
    if (lower > upper) throw std::invalid_argument("DualSimplex: empty bound interval");
    lower_.at(col) = lower;
    upper_.at(col) = upper;
    if (!finalized_) return;
    const auto j = static_cast<std::size_t>(col);
    if (pos_[j] >= 0) return;  // basic: the next solve repairs primal feasibility
    place_nonbasic(j);
  }

  Status solve() {
    if (!finalized_) finalize();
    fix_dual_infeasibilities();
    std::size_t since_check = 0;
    bool restarted = false;
    for (;;) {
      if (pivots_since_refactor_ >= refactor_interval()) refactor();

      const int r = select_leaving_row();
      if (r < 0) {
        if (!verify_and_repair()) continue;
        status_ = Status::Optimal;
        return status_;
      }
      const int q = select_entering_column(static_cast<std::size_t>(r));
      if (q < 0) {
        // Confirm before declaring infeasibility: the row must also prove it
        // against the original constraints, or it is redone on a fresh
        // factorization.
        if (pivots_since_refactor_ > 0 && !proves_infeasible(static_cast<std::size_t>(r))) {
          refactor();
          continue;
        }
        status_ = Status::Infeasible;
        return status_;
      }
      pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(q));
      ++iterations_;
      if (++since_check > iteration_limit_) {
        if (restarted) {
          status_ = Status::IterationLimit;
          return status_;
        }
        // A warm start can stall on degenerate vertices; retry from the
        // slack basis before giving up.
        restarted = true;
        since_check = 0;
        cold_start();
        fix_dual_infeasibilities();
      }
    }
  }

  Status status() const { return status_; }

  double value(int col) const { return x_.at(col); }

  /// Objective at the current point under the unperturbed costs.
  double objective() const {
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    return obj;
  }

  /// Valid lower bound on the true LP optimum after an Optimal solve. The
  /// solver minimizes slightly perturbed costs; this removes the largest
  /// effect the perturbation can have over the current boxes.
  double dual_bound() const {
    double bound = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      bound += work_cost_[j] * x_[j];
      const double shift = work_cost_[j] - (j < n_ ? cost_[j] : 0.0);
      bound -= std::max(shift * lower_[j], shift * upper_[j]);
    }
    return bound;
  }

  std::uint64_t iterations() const { return iterations_; }

  /// Reduced cost of a column under the perturbed costs; zero when basic.
  /// Valid after an Optimal solve.
  double reduced_cost(int col) const { return d_.at(col); }
  bool is_basic(int col) const { return pos_.at(col) >= 0; }

  void set_iteration_limit(std::size_t limit) { iteration_limit_ = limit; }

  /// Drop the warm basis; the next solve starts from the slack basis.
  void reset_basis() {
    if (finalized_) cold_start();
  }

 private:
  struct Row {
    std::vector<Term> terms;
    double rhs = 0.0;
    bool equality = false;
  };

  static constexpr double kPrimalTol = 1e-9;
  static constexpr double kDualTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kPerturbation = 1e-7;

  std::size_t refactor_interval() const { return std::max<std::size_t>(200, 4 * m_); }

  double* row_ptr(std::size_t i) { return tableau_.data() + i * width_; }
  const double* row_ptr(std::size_t i) const { return tableau_.data() + i * width_; }

  void finalize() {
    n_ = cost_.size();
    m_ = rows_.size();
    width_ = n_ + m_;
    // Slack columns n_ + i with bounds derived from the column boxes.
    for (std::size_t i = 0; i < m_; ++i) {
      const Row& row = rows_[i];
      double min_activity = 0.0;
      for (const Term& t : row.terms) {
        min_activity += t.coef > 0 ? t.coef * lower_[t.col] : t.coef * upper_[t.col];
      }
      cost_.push_back(0.0);
      lower_.push_back(0.0);
      upper_.push_back(row.equality ? 0.0 : std::max(row.rhs - min_activity, 0.0) + 1.0);
    }
    // Deterministic positive cost shifts keep the dual nondegenerate.
    work_cost_.assign(width_, 0.0);
    for (std::size_t j = 0; j < width_; ++j) {
      const double base = j < n_ ? cost_[j] : 0.0;
      const double jitter = static_cast<double>((j * 2654435761u) % 1000u) / 1000.0;
      work_cost_[j] = base + kPerturbation * (1.0 + std::abs(base)) * (1.0 + jitter);
    }
    x_.assign(width_, 0.0);
    d_.assign(width_, 0.0);
    pos_.assign(width_, -1);
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      pos_[n_ + i] = static_cast<int>(i);
    }
    for (std::size_t j = 0; j < width_; ++j) d_[j] = work_cost_[j];
    for (std::size_t j = 0; j < n_; ++j) x_[j] = d_[j] >= 0 ? lower_[j] : upper_[j];
    for (std::size_t i = 0; i < m_; ++i) x_[n_ + i] = lower_[n_ + i];
    tableau_.assign(m_ * width_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double* t = row_ptr(i);
      for (const Term& term : rows_[i].terms) t[term.col] += term.coef;
      t[n_ + i] = 1.0;
    }
    recompute_basic_values();
    finalized_ = true;
  }

  // Put nonbasic column j on the bound its reduced cost prefers and push the
  // value change into the basic variables.
  void place_nonbasic(std::size_t j) {
    const double target = (lower_[j] == upper_[j] || d_[j] >= 0) ? lower_[j] : upper_[j];
    const double delta = target - x_[j];
    if (delta == 0.0) return;
    x_[j] = target;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = row_ptr(i)[j];
      if (a != 0.0) x_[basis_[i]] -= a * delta;
    }
  }

  void fix_dual_infeasibilities() {
    for (std::size_t j = 0; j < width_; ++j) {
      if (pos_[j] >= 0 || lower_[j] == upper_[j]) {
        if (pos_[j] < 0 && x_[j] != lower_[j]) place_nonbasic(j);
        continue;
      }
      const bool at_lower = x_[j] == lower_[j];
      const bool at_upper = x_[j] == upper_[j];
      if ((at_lower && d_[j] < -kDualTol) || (at_upper && d_[j] > kDualTol) ||
          (!at_lower && !at_upper)) {
        place_nonbasic(j);
      }
    }
  }

  int select_leaving_row() const {
    int best = -1;
    double worst = kPrimalTol;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t b = basis_[i];
      const double v = x_[b];
      const double viol = std::max(lower_[b] - v, v - upper_[b]);
      if (viol > worst) {
        worst = viol;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  // Harris two-pass ratio test on row r.
  int select_entering_column(std::size_t r) const {
    const std::size_t b = basis_[r];
    const bool to_lower = x_[b] < lower_[b];
    const double* t = row_ptr(r);
    auto eligible = [&](std::size_t j, double alpha) {
      if (pos_[j] >= 0 || lower_[j] == upper_[j]) return false;
      const bool at_lower = x_[j] == lower_[j];
      if (to_lower) return at_lower ? alpha < -kPivotTol : alpha > kPivotTol;
      return at_lower ? alpha > kPivotTol : alpha < -kPivotTol;
    };
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < width_; ++j) {
      const double alpha = t[j];
      if (alpha == 0.0 || !eligible(j, alpha)) continue;
      bound = std::min(bound, (std::abs(d_[j]) + kDualTol) / std::abs(alpha));
    }
    if (!std::isfinite(bound)) return -1;
    int best = -1;
    double best_alpha = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      const double alpha = t[j];
      if (alpha == 0.0 || !eligible(j, alpha)) continue;
      if (std::abs(d_[j]) / std::abs(alpha) <= bound && std::abs(alpha) > best_alpha) {
        best_alpha = std::abs(alpha);
        best = static_cast<int>(j);
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t q) {
    const std::size_t leaving = basis_[r];
    const double target = x_[leaving] < lower_[leaving] ? lower_[leaving] : upper_[leaving];
    double* pr = row_ptr(r);
    const double alpha = pr[q];
    const double theta = (x_[leaving] - target) / alpha;

    for (std::size_t i = 0; i < m_; ++i) {
      const double a = row_ptr(i)[q];
      if (a != 0.0) x_[basis_[i]] -= theta * a;
    }
    x_[q] += theta;
    x_[leaving] = target;

    const double inv = 1.0 / alpha;
    nz_.clear();
    for (std::size_t j = 0; j < width_; ++j) {
      if (pr[j] != 0.0) {
        pr[j] *= inv;
        nz_.push_back(j);
      }
    }
    pr[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = row_ptr(i);
      const double f = pi[q];
      if (f == 0.0) continue;
      for (const std::size_t j : nz_) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
    const double dq = d_[q];
    if (dq != 0.0) {
      for (const std::size_t j : nz_) d_[j] -= dq * pr[j];
    }
    d_[q] = 0.0;

    basis_[r] = q;
    pos_[q] = static_cast<int>(r);
    pos_[leaving] = -1;

    // Harris may leave tiny wrong-signed reduced costs; flip those columns.
    for (const std::size_t j : nz_) {
      if (pos_[j] >= 0 || lower_[j] == upper_[j]) continue;
      const bool at_lower = x_[j] == lower_[j];
      if ((at_lower && d_[j] < -kDualTol) || (!at_lower && d_[j] > kDualTol)) place_nonbasic(j);
    }
    ++pivots_since_refactor_;
  }

  void recompute_basic_values() {
    // Basic values from B^{-1} (b - N x_N); B^{-1} is the slack block.
    std::vector<double> rhs(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double v = rows_[i].rhs;
      for (const Term& t : rows_[i].terms) {
        if (pos_[t.col] < 0) v -= t.coef * x_[t.col];
      }
      if (pos_[n_ + i] < 0) v -= x_[n_ + i];
      rhs[i] = v;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const double* t = row_ptr(i) + n_;
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += t[k] * rhs[k];
      x_[basis_[i]] = v;
    }
  }

  // Rebuild the tableau from the original rows and the current basis.
  void refactor() {
    pivots_since_refactor_ = 0;
    // Dense basis matrix, column k = column basis_[k] of [A I].
    std::vector<double> bmat(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const Term& t : rows_[i].terms) {
        const int p = pos_[t.col];
        if (p >= 0) bmat[i * m_ + p] = t.coef;
      }
      const int p = pos_[n_ + i];
      if (p >= 0) bmat[i * m_ + p] = 1.0;
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    // Gauss-Jordan with partial pivoting: rows of bmat indexed by
    // constraint, columns by basis position. Result: inv = B^{-1} with
    // rows indexed by basis position.
    std::vector<std::size_t> perm(m_);
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = c;
      double best = std::abs(bmat[c * m_ + c]);
      for (std::size_t i = c + 1; i < m_; ++i) {
        const double v = std::abs(bmat[i * m_ + c]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best < 1e-12) {
        cold_start();
        return;
      }
      if (piv != c) {
        std::swap_ranges(bmat.begin() + c * m_, bmat.begin() + (c + 1) * m_, bmat.begin() + piv * m_);
        std::swap_ranges(inv.begin() + c * m_, inv.begin() + (c + 1) * m_, inv.begin() + piv * m_);
      }
      const double f = 1.0 / bmat[c * m_ + c];
      for (std::size_t j = 0; j < m_; ++j) {
        bmat[c * m_ + j] *= f;
        inv[c * m_ + j] *= f;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == c) continue;
        const double g = bmat[i * m_ + c];
        if (g == 0.0) continue;
        for (std::size_t j = 0; j < m_; ++j) {
          bmat[i * m_ + j] -= g * bmat[c * m_ + j];
          inv[i * m_ + j] -= g * inv[c * m_ + j];
        }
      }
    }
    // After elimination row c of inv corresponds to basis position c.
    std::fill(tableau_.begin(), tableau_.end(), 0.0);
    for (std::size_t p = 0; p < m_; ++p) {
      double* t = row_ptr(p);
      const double* bi = inv.data() + p * m_;
      for (std::size_t i = 0; i < m_; ++i) {
        const double f = bi[i];
        if (f == 0.0) continue;
        for (const Term& term : rows_[i].terms) t[term.col] += f * term.coef;
        t[n_ + i] += f;
      }
    }
    for (std::size_t p = 0; p < m_; ++p) {
      double* t = row_ptr(p);
      for (std::size_t j = 0; j < width_; ++j) {
        if (pos_[j] >= 0) t[j] = (static_cast<std::size_t>(pos_[j]) == p) ? 1.0 : 0.0;
      }
    }
    recompute_reduced_costs();
    recompute_basic_values();
    fix_dual_infeasibilities();
  }

  void recompute_reduced_costs() {
    for (std::size_t j = 0; j < width_; ++j) d_[j] = work_cost_[j];
    for (std::size_t p = 0; p < m_; ++p) {
      const double cb = work_cost_[basis_[p]];
      if (cb == 0.0) continue;
      const double* t = row_ptr(p);
      for (std::size_t j = 0; j < width_; ++j) d_[j] -= cb * t[j];
    }
    for (std::size_t p = 0; p < m_; ++p) d_[basis_[p]] = 0.0;
  }

  void cold_start() {
    for (std::size_t j = 0; j < width_; ++j) pos_[j] = -1;
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      pos_[n_ + i] = static_cast<int>(i);
    }
    std::fill(tableau_.begin(), tableau_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double* t = row_ptr(i);
      for (const Term& term : rows_[i].terms) t[term.col] += term.coef;
      t[n_ + i] = 1.0;
    }
    for (std::size_t j = 0; j < width_; ++j) d_[j] = work_cost_[j];
    for (std::size_t p = 0; p < m_; ++p) d_[basis_[p]] = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      if (pos_[j] < 0) x_[j] = (lower_[j] == upper_[j] || d_[j] >= 0) ? lower_[j] : upper_[j];
    }
    recompute_basic_values();
    pivots_since_refactor_ = 0;
  }

  // Farkas check: the multipliers y in the slack block of tableau row r
  // combine the original rows into y'[A I] x = y'b, which no point of the
  // column boxes can satisfy.
  bool proves_infeasible(std::size_t r) const {
    const double* y = row_ptr(r) + n_;
    std::vector<double> coef(width_, 0.0);
    double rhs = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (y[i] == 0.0) continue;
      for (const Term& t : rows_[i].terms) coef[t.col] += y[i] * t.coef;
      coef[n_ + i] += y[i];
      rhs += y[i] * rows_[i].rhs;
      scale = std::max(scale, std::abs(y[i]) * (1.0 + std::abs(rows_[i].rhs)));
    }
    double lo = 0.0, hi = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      const double c = coef[j];
      if (c == 0.0) continue;
      lo += c > 0 ? c * lower_[j] : c * upper_[j];
      hi += c > 0 ? c * upper_[j] : c * lower_[j];
      scale = std::max(scale, std::abs(c) * std::max(std::abs(lower_[j]), std::abs(upper_[j])));
    }
    const double tol = 1e-7 * (1.0 + scale);
    return rhs < lo - tol || rhs > hi + tol;
  }

  // Row residuals against the original constraints; refactor on drift.
  bool verify_and_repair() {
    double worst = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      double v = x_[n_ + i] - rows_[i].rhs;
      for (const Term& t : rows_[i].terms) v += t.coef * x_[t.col];
      worst = std::max(worst, std::abs(v));
    }
    if (worst <= 1e-8 || pivots_since_refactor_ == 0) return true;
    refactor();
    return false;
  }

  // Problem data; the first n_ entries of cost_/lower_/upper_ are structural.
  std::vector<double> cost_, lower_, upper_;
  std::vector<double> work_cost_;  // perturbed costs, slacks included
  std::vector<Row> rows_;
  bool finalized_ = false;

  std::size_t n_ = 0, m_ = 0, width_ = 0;
  std::vector<double> tableau_;  // m_ x width_, B^{-1} [A I]
  std::vector<double> x_;        // all columns, basic ones included
  std::vector<double> d_;        // reduced costs
  std::vector<int> pos_;         // basis row of a column, or -1
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;  // pivot row support
  std::size_t pivots_since_refactor_ = 0;
  std::size_t iteration_limit_ = 1'000'000;
  std::uint64_t iterations_ = 0;
  Status status_ = Status::Optimal;
};

}  // namespace fogsplit::lp

#endif  // FOGSPLIT_DUAL_SIMPLEX_HPP
