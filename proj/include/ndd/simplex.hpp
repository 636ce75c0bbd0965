// Copyright 2026 The Authors.
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

// Bounded-variable primal revised simplex for
//
//   maximize  c^T x + constant
//   s.t.      A x <= b,  lower <= x <= upper,
//
// where the all-lower-bounds point must satisfy A x <= b (true for every
// coverage model built in lp.hpp, whose origin is feasible).
//
// The basis is factorized as a unit part plus a small kernel: every basic
// column with a single nonzero (slacks, coverage indicator columns) pins its
// row, and only the remaining rows/columns form a dense kernel matrix that is
// LU-factorized. Between refactorizations the basis inverse is updated in
// product form.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ndd/errors.hpp"

namespace ndd::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Column-major sparse LP in "<= rows" form.
class LinearProgram {
 public:
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_cols() const { return static_cast<int>(cost_.size()); }

  int add_row(double rhs) {
    rhs_.push_back(rhs);
    return num_rows() - 1;
  }
  int add_col(double cost, double lower, double upper, std::span<const int> rows,
              std::span<const double> vals) {
    if (rows.size() != vals.size()) throw InvalidInput("column entry size mismatch");
    if (!(lower <= upper) || !std::isfinite(lower)) {
      throw InvalidInput("column bounds must satisfy finite lower <= upper");
    }
    cost_.push_back(cost);
    lower_.push_back(lower);
    upper_.push_back(upper);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (vals[k] == 0.0) continue;
      row_index_.push_back(rows[k]);
      value_.push_back(vals[k]);
    }
    col_start_.push_back(static_cast<int>(row_index_.size()));
    return num_cols() - 1;
  }

  double cost(int j) const { return cost_[j]; }
  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  double rhs(int r) const { return rhs_[r]; }
  double constant() const { return constant_; }

  void set_cost(int j, double c) { cost_[j] = c; }
  void set_bounds(int j, double lo, double up) {
    lower_[j] = lo;
    upper_[j] = up;
  }
  void set_rhs(int r, double b) { rhs_[r] = b; }
  void set_constant(double c) { constant_ = c; }
  void scale_objective(double s) {
    for (double& c : cost_) c *= s;
    constant_ *= s;
  }

  std::span<const int> col_rows(int j) const {
    return {row_index_.data() + col_start_[j], row_index_.data() + col_start_[j + 1]};
  }
  std::span<const double> col_vals(int j) const {
    return {value_.data() + col_start_[j], value_.data() + col_start_[j + 1]};
  }

  // Max violation of rows and bounds at x.
  double max_residual(std::span<const double> x) const {
    std::vector<double> act(rhs_.size(), 0.0);
    double worst = 0.0;
    for (int j = 0; j < num_cols(); ++j) {
      worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
      const auto rows = col_rows(j);
      const auto vals = col_vals(j);
      for (std::size_t k = 0; k < rows.size(); ++k) act[rows[k]] += vals[k] * x[j];
    }
    for (std::size_t r = 0; r < rhs_.size(); ++r) worst = std::max(worst, act[r] - rhs_[r]);
    return worst;
  }

  double objective_at(std::span<const double> x) const {
    double v = constant_;
    for (int j = 0; j < num_cols(); ++j) v += cost_[j] * x[j];
    return v;
  }

 private:
  std::vector<double> cost_, lower_, upper_, rhs_;
  std::vector<int> col_start_{0};
  std::vector<int> row_index_;
  std::vector<double> value_;
  double constant_ = 0.0;
};

enum class Status { kOptimal, kTimeLimit, kIterationLimit, kUnbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kTimeLimit: return "time-limit";
    case Status::kIterationLimit: return "iteration-limit";
    case Status::kUnbounded: return "unbounded";
  }
  return "?";
}

enum class VarStatus : std::int8_t { kBasic, kAtLower, kAtUpper };

// Statuses of structural columns followed by row slacks.
using Basis = std::vector<VarStatus>;

struct SimplexOptions {
  double time_limit_s = kInf;
  long long max_iterations = -1;  // negative: automatic
  const Basis* warm_start = nullptr;
};

struct SimplexResult {
  Status status = Status::kOptimal;
  double objective = 0.0;
  std::vector<double> x;     // structural values
  std::vector<double> duals; // row prices
  Basis basis;
  long long iterations = 0;
};

namespace detail {

class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp),
        opt_(opt),
        n_(lp.num_cols()),
        m_(lp.num_rows()),
        total_(n_ + m_),
        lo_(total_),
        up_(total_),
        cost_(total_),
        x_(total_, 0.0),
        status_(total_, VarStatus::kAtLower),
        head_(m_),
        pos_(total_, -1),
        unit_row_(m_, -1),
        unit_coef_(m_, 1.0),
        row_owner_(m_, -1),
        row_in_kernel_(m_, -1),
        pos_in_kernel_(m_, -1),
        scratch_(m_, 0.0) {
    cost_scale_ = 1.0;
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower(j);
      up_[j] = lp.upper(j);
      cost_[j] = lp.cost(j);
      cost_scale_ = std::max(cost_scale_, std::abs(cost_[j]));
    }
    for (int r = 0; r < m_; ++r) {
      lo_[n_ + r] = 0.0;
      up_[n_ + r] = kInf;
      cost_[n_ + r] = 0.0;
    }
    col_norm_.resize(total_, 1.0);
    for (int j = 0; j < n_; ++j) {
      double s = 1.0;
      for (double v : lp.col_vals(j)) s += v * v;
      col_norm_[j] = std::sqrt(s);
    }
    dual_tol_ = 1e-9 * cost_scale_;
  }

  SimplexResult run() {
    start_ = std::chrono::steady_clock::now();
    if (!(opt_.warm_start && try_warm_start(*opt_.warm_start))) cold_start();
    const long long max_iter =
        opt_.max_iterations >= 0 ? opt_.max_iterations : 200LL * (total_ + 10);
    SimplexResult res;
    Status status = Status::kOptimal;
    std::vector<double> cb(m_), pi(m_), w(m_);
    int degenerate_run = 0;
    bool bland = false;
    long long it = 0;
    for (;; ++it) {
      if (it >= max_iter) {
        status = Status::kIterationLimit;
        break;
      }
      if ((it & 31) == 0 && elapsed() > opt_.time_limit_s) {
        status = Status::kTimeLimit;
        break;
      }
      for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
      btran(cb, pi);
      const int q = choose_entering(pi, bland);
      if (q < 0) break;
      const double dir = status_[q] == VarStatus::kAtLower ? 1.0 : -1.0;
      column_dense(q, scratch_);
      ftran(scratch_, w);
      const auto [r, theta] = ratio_test(q, dir, w, bland);
      if (r == -2) {
        status = Status::kUnbounded;
        break;
      }
      if (theta <= 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      for (int p = 0; p < m_; ++p) {
        if (w[p] != 0.0) x_[head_[p]] -= theta * dir * w[p];
      }
      x_[q] += theta * dir;
      if (r < 0) {
        // bound flip
        status_[q] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
        x_[q] = dir > 0 ? up_[q] : lo_[q];
        continue;
      }
      const int leaving = head_[r];
      const bool to_upper = dir * w[r] < 0.0;
      status_[leaving] = to_upper ? VarStatus::kAtUpper : VarStatus::kAtLower;
      x_[leaving] = to_upper ? up_[leaving] : lo_[leaving];
      pos_[leaving] = -1;
      head_[r] = q;
      pos_[q] = r;
      status_[q] = VarStatus::kBasic;
      push_eta(r, w);
      if (etas_.size() >= kRefactorPeriod || eta_nnz_ > 40 * static_cast<std::size_t>(m_ + 100)) {
        refactor();
        recompute_basic_values();
      }
    }
    res.status = status;
    res.iterations = it;
    res.x.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) res.x[j] = std::clamp(res.x[j], lo_[j], up_[j]);
    for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
    btran(cb, pi);
    res.duals = pi;
    res.basis = status_;
    res.objective = lp_.objective_at(res.x);
    return res;
  }

 private:
  static constexpr std::size_t kRefactorPeriod = 64;

  struct Eta {
    int pivot = 0;
    std::vector<int> idx;
    std::vector<double> val;  // includes the pivot entry
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool is_singleton(int j) const { return j >= n_ || lp_.col_rows(j).size() == 1; }
  int singleton_row(int j) const { return j >= n_ ? j - n_ : lp_.col_rows(j)[0]; }
  double singleton_coef(int j) const { return j >= n_ ? 1.0 : lp_.col_vals(j)[0]; }

  template <typename F>
  void for_col(int j, F&& f) const {
    if (j >= n_) {
      f(j - n_, 1.0);
      return;
    }
    const auto rows = lp_.col_rows(j);
    const auto vals = lp_.col_vals(j);
    for (std::size_t k = 0; k < rows.size(); ++k) f(rows[k], vals[k]);
  }

  void column_dense(int j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for_col(j, [&](int r, double v) { out[r] += v; });
  }

  void set_nonbasic_values() {
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kAtLower) x_[j] = lo_[j];
      if (status_[j] == VarStatus::kAtUpper) x_[j] = up_[j];
    }
  }

  void cold_start() {
    std::fill(status_.begin(), status_.end(), VarStatus::kAtLower);
    std::fill(pos_.begin(), pos_.end(), -1);
    set_nonbasic_values();
    std::vector<double> slack(m_);
    for (int r = 0; r < m_; ++r) slack[r] = lp_.rhs(r);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] != 0.0) for_col(j, [&](int r, double v) { slack[r] -= v * x_[j]; });
    }
    for (int r = 0; r < m_; ++r) {
      if (slack[r] < -1e-9) {
        throw InternalError("simplex start point violates row " + std::to_string(r));
      }
    }
    for (int r = 0; r < m_; ++r) head_[r] = n_ + r;
    // Crash: a profitable singleton column replaces its row slack when the
    // resulting value stays within bounds.
    std::vector<char> taken(m_, 0);
    for (int j = 0; j < n_; ++j) {
      if (lp_.col_rows(j).size() != 1 || cost_[j] <= 0.0) continue;
      const int r = singleton_row(j);
      const double a = singleton_coef(j);
      if (taken[r] || a <= 0.0) continue;
      const double v = lo_[j] + std::max(0.0, slack[r]) / a;
      if (v > up_[j]) continue;
      taken[r] = 1;
      head_[r] = j;
    }
    for (int r = 0; r < m_; ++r) {
      status_[head_[r]] = VarStatus::kBasic;
      pos_[head_[r]] = r;
    }
    refactor();
    recompute_basic_values();
  }

  bool try_warm_start(const Basis& basis) {
    if (static_cast<int>(basis.size()) != total_) return false;
    int nb = 0;
    for (int j = 0; j < total_; ++j) {
      if (basis[j] == VarStatus::kBasic) ++nb;
      if (basis[j] == VarStatus::kAtUpper && !std::isfinite(up_[j])) return false;
    }
    if (nb != m_) return false;
    status_ = basis;
    std::fill(pos_.begin(), pos_.end(), -1);
    int p = 0;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic) {
        head_[p] = j;
        pos_[j] = p++;
      }
    }
    set_nonbasic_values();
    if (!refactor(false)) return false;
    recompute_basic_values();
    for (int q = 0; q < m_; ++q) {
      const int j = head_[q];
      if (x_[j] < lo_[j] - 1e-7 || x_[j] > up_[j] + 1e-7) return false;
    }
    return true;
  }

  // Returns false if the basis is singular and repair is disabled.
  bool refactor(bool repair = true) {
    etas_.clear();
    eta_nnz_ = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::fill(row_owner_.begin(), row_owner_.end(), -1);
      std::fill(row_in_kernel_.begin(), row_in_kernel_.end(), -1);
      std::fill(pos_in_kernel_.begin(), pos_in_kernel_.end(), -1);
      std::fill(unit_row_.begin(), unit_row_.end(), -1);
      kernel_pos_.clear();
      kernel_rows_.clear();
      for (int p = 0; p < m_; ++p) {
        const int j = head_[p];
        if (is_singleton(j)) {
          const int r = singleton_row(j);
          if (row_owner_[r] < 0) {
            row_owner_[r] = p;
            unit_row_[p] = r;
            unit_coef_[p] = singleton_coef(j);
            continue;
          }
        }
        pos_in_kernel_[p] = static_cast<int>(kernel_pos_.size());
        kernel_pos_.push_back(p);
      }
      for (int r = 0; r < m_; ++r) {
        if (row_owner_[r] < 0) {
          row_in_kernel_[r] = static_cast<int>(kernel_rows_.size());
          kernel_rows_.push_back(r);
        }
      }
      base_head_ = head_;
      const int k = static_cast<int>(kernel_pos_.size());
      if (static_cast<int>(kernel_rows_.size()) != k) {
        throw InternalError("kernel dimension mismatch");
      }
      if (k == 0) return true;
      Eigen::MatrixXd kmat = Eigen::MatrixXd::Zero(k, k);
      for (int c = 0; c < k; ++c) {
        for_col(head_[kernel_pos_[c]], [&](int r, double v) {
          if (row_in_kernel_[r] >= 0) kmat(row_in_kernel_[r], c) += v;
        });
      }
      lu_.compute(kmat);
      const auto diag = lu_.matrixLU().diagonal().cwiseAbs();
      const double scale = std::max(1.0, kmat.cwiseAbs().maxCoeff());
      if (diag.minCoeff() > 1e-11 * scale) return true;
      if (!repair) return false;
      repair_singular(kmat);
    }
    throw InternalError("could not obtain a nonsingular basis");
  }

  // Swaps dependent kernel columns for slacks of uncovered kernel rows.
  void repair_singular(const Eigen::MatrixXd& kmat) {
    Eigen::FullPivLU<Eigen::MatrixXd> full(kmat);
    full.setThreshold(1e-10);
    const int rank = static_cast<int>(full.rank());
    const int k = static_cast<int>(kmat.rows());
    const auto& pr = full.permutationP().indices();
    const auto& qc = full.permutationQ().indices();
    // Rows P^{-1} beyond rank are not spanned.
    std::vector<int> row_of_perm(k);
    for (int i = 0; i < k; ++i) row_of_perm[pr[i]] = i;
    for (int s = rank; s < k; ++s) {
      const int pos = kernel_pos_[qc[s]];
      const int row = kernel_rows_[row_of_perm[s]];
      const int out = head_[pos];
      const int slack = n_ + row;
      status_[out] = (std::isfinite(up_[out]) && x_[out] > 0.5 * (lo_[out] + up_[out]))
                         ? VarStatus::kAtUpper
                         : VarStatus::kAtLower;
      x_[out] = status_[out] == VarStatus::kAtUpper ? up_[out] : lo_[out];
      pos_[out] = -1;
      head_[pos] = slack;
      pos_[slack] = pos;
      status_[slack] = VarStatus::kBasic;
    }
  }

  void recompute_basic_values() {
    std::vector<double> b(m_);
    for (int r = 0; r < m_; ++r) b[r] = lp_.rhs(r);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      for_col(j, [&](int r, double v) { b[r] -= v * x_[j]; });
    }
    std::vector<double> xb(m_);
    ftran(b, xb);
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      double v = xb[p];
      // absorb round-off drift
      if (v < lo_[j] && v > lo_[j] - 1e-7) v = lo_[j];
      if (v > up_[j] && v < up_[j] + 1e-7) v = up_[j];
      x_[j] = v;
    }
  }

  // w = B^{-1} b (b row-indexed, w position-indexed).
  void ftran(const std::vector<double>& b, std::vector<double>& w) {
    const int k = static_cast<int>(kernel_pos_.size());
    if (k > 0) {
      Eigen::VectorXd rhs(k);
      for (int i = 0; i < k; ++i) rhs[i] = b[kernel_rows_[i]];
      const Eigen::VectorXd sol = lu_.solve(rhs);
      for (int c = 0; c < k; ++c) w[kernel_pos_[c]] = sol[c];
    }
    acc_.assign(m_, 0.0);
    for (int c = 0; c < k; ++c) {
      const double wc = w[kernel_pos_[c]];
      if (wc == 0.0) continue;
      for_col(base_head_[kernel_pos_[c]], [&](int r, double v) {
        if (row_in_kernel_[r] < 0) acc_[r] += v * wc;
      });
    }
    for (int p = 0; p < m_; ++p) {
      const int r = unit_row_[p];
      if (r >= 0) w[p] = (b[r] - acc_[r]) / unit_coef_[p];
    }
    for (const Eta& e : etas_) {
      const double xr = w[e.pivot];
      if (xr == 0.0) continue;
      for (std::size_t t = 0; t < e.idx.size(); ++t) {
        if (e.idx[t] == e.pivot) continue;
        w[e.idx[t]] += e.val[t] * xr;
      }
      w[e.pivot] = 0.0;
      for (std::size_t t = 0; t < e.idx.size(); ++t) {
        if (e.idx[t] == e.pivot) w[e.pivot] = e.val[t] * xr;
      }
    }
  }

  // pi^T = y^T B^{-1} (y position-indexed, pi row-indexed).
  void btran(const std::vector<double>& y_in, std::vector<double>& pi) {
    std::vector<double>& y = btran_work_;
    y = y_in;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = 0.0;
      for (std::size_t t = 0; t < it->idx.size(); ++t) s += y[it->idx[t]] * it->val[t];
      y[it->pivot] = s;
    }
    for (int p = 0; p < m_; ++p) {
      const int r = unit_row_[p];
      if (r >= 0) pi[r] = y[p] / unit_coef_[p];
    }
    const int k = static_cast<int>(kernel_pos_.size());
    if (k > 0) {
      Eigen::VectorXd rhs(k);
      for (int c = 0; c < k; ++c) {
        const int p = kernel_pos_[c];
        double v = y[p];
        for_col(base_head_[p], [&](int r, double a) {
          if (row_in_kernel_[r] < 0) v -= a * pi[r];
        });
        rhs[c] = v;
      }
      const Eigen::VectorXd sol = lu_.transpose().solve(rhs);
      for (int i = 0; i < k; ++i) pi[kernel_rows_[i]] = sol[i];
    }
  }

  void push_eta(int r, const std::vector<double>& w) {
    Eta e;
    e.pivot = r;
    const double inv = 1.0 / w[r];
    for (int p = 0; p < m_; ++p) {
      if (p == r) {
        e.idx.push_back(p);
        e.val.push_back(inv);
      } else if (std::abs(w[p]) > 1e-13) {
        e.idx.push_back(p);
        e.val.push_back(-w[p] * inv);
      }
    }
    eta_nnz_ += e.idx.size();
    etas_.push_back(std::move(e));
  }

  double reduced_cost(int j, const std::vector<double>& pi) const {
    double d = cost_[j];
    for_col(j, [&](int r, double v) { d -= v * pi[r]; });
    return d;
  }

  int choose_entering(const std::vector<double>& pi, bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < total_; ++j) {
      const VarStatus s = status_[j];
      if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
      const double d = reduced_cost(j, pi);
      double gain = 0.0;
      if (s == VarStatus::kAtLower && d > dual_tol_) gain = d;
      if (s == VarStatus::kAtUpper && d < -dual_tol_) gain = -d;
      if (gain == 0.0) continue;
      if (bland) return j;
      const double score = gain / col_norm_[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Returns (leaving position, step); position -1 means a bound flip of the
  // entering column and -2 an unbounded ray.
  std::pair<int, double> ratio_test(int q, double dir, const std::vector<double>& w,
                                    bool bland) const {
    constexpr double kPivTol = 1e-9;
    constexpr double kFeasTol = 1e-9;
    const double flip = up_[q] - lo_[q];
    // Harris pass 1: largest step keeping every basic variable within its
    // bound relaxed by kFeasTol.
    double bound = flip;
    for (int p = 0; p < m_; ++p) {
      const double a = dir * w[p];
      if (std::abs(a) <= kPivTol) continue;
      const int j = head_[p];
      if (a > 0) {
        bound = std::min(bound, (x_[j] - lo_[j] + kFeasTol) / a);
      } else if (std::isfinite(up_[j])) {
        bound = std::min(bound, (up_[j] - x_[j] + kFeasTol) / -a);
      }
    }
    if (!std::isfinite(bound)) return {-2, kInf};
    int leave = -1;
    double best_piv = 0.0;
    double step = flip;
    for (int p = 0; p < m_; ++p) {
      const double a = dir * w[p];
      if (std::abs(a) <= kPivTol) continue;
      const int j = head_[p];
      double ratio;
      if (a > 0) {
        ratio = (x_[j] - lo_[j]) / a;
      } else if (std::isfinite(up_[j])) {
        ratio = (up_[j] - x_[j]) / -a;
      } else {
        continue;
      }
      if (ratio > bound) continue;
      const bool better = bland ? (leave < 0 || head_[p] < head_[leave])
                                : std::abs(a) > best_piv;
      if (better) {
        best_piv = std::abs(a);
        leave = p;
        step = std::max(0.0, ratio);
      }
    }
    if (leave < 0 || step >= flip) {
      if (std::isfinite(flip)) return {-1, flip};
      if (leave < 0) return {-2, kInf};
    }
    return {leave, step};
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int n_, m_, total_;
  std::vector<double> lo_, up_, cost_, x_, col_norm_;
  std::vector<VarStatus> status_;
  std::vector<int> head_, pos_;
  std::vector<int> base_head_;  // basis at the last factorization
  std::vector<int> unit_row_;
  std::vector<double> unit_coef_;
  std::vector<int> row_owner_, row_in_kernel_, pos_in_kernel_;
  std::vector<int> kernel_pos_, kernel_rows_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  std::vector<Eta> etas_;
  std::size_t eta_nnz_ = 0;
  std::vector<double> scratch_, acc_, btran_work_;
  double cost_scale_ = 1.0;
  double dual_tol_ = 1e-9;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline SimplexResult solve(const LinearProgram& lp, const SimplexOptions& opt = {}) {
  if (lp.num_cols() == 0) {
    SimplexResult r;
    r.objective = lp.constant();
    r.duals.assign(lp.num_rows(), 0.0);
    r.basis.assign(lp.num_rows(), VarStatus::kBasic);
    return r;
  }
  return detail::RevisedSimplex(lp, opt).run();
}

}  // namespace ndd::lp
