// Copyright 2026 The Coalition Authors
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

#include "coalition/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "coalition/error.hpp"
#include "coalition/kernels.hpp"

namespace coalition {
namespace {

class Tableau {
 public:
  // Columns: structural [0, n), slacks [n, n + m), optional auxiliary, rhs.
  Tableau(const LinearProgram& lp, bool with_auxiliary)
      : m_(lp.rows),
        n_(lp.cols),
        auxiliary_(with_auxiliary ? n_ + m_ : kNone),
        width_(n_ + m_ + (with_auxiliary ? 1 : 0) + 1),
        cells_((m_ + 1) * width_, 0.0),
        basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      std::span<double> r = row(i);
      std::copy_n(lp.a.begin() + i * n_, n_, r.begin());
      r[n_ + i] = 1.0;
      if (with_auxiliary) r[auxiliary_] = -1.0;
      r[rhs()] = lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  std::span<double> row(std::size_t i) {
    return std::span<double>(cells_).subspan(i * width_, width_);
  }
  std::span<double> objective() { return row(m_); }
  std::size_t rhs() const { return width_ - 1; }
  std::size_t auxiliary() const { return auxiliary_; }
  std::size_t rows() const { return m_; }
  std::size_t structural() const { return n_; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }

  void pivot(std::size_t r, std::size_t col) {
    std::span<double> pr = row(r);
    const double inv = 1.0 / pr[col];
    for (double& x : pr) x *= inv;
    pr[col] = 1.0;
    for (std::size_t k = 0; k <= m_; ++k) {
      if (k == r) continue;
      std::span<double> target = row(k);
      const double factor = target[col];
      if (factor == 0.0) continue;
      kernels::subtract_scaled(target, pr, factor);
      target[col] = 0.0;
    }
    basis_[r] = col;
  }

  // Bland: lowest-index improving column; lowest-index basic variable among
  // tied ratios.
  enum class Step { kPivoted, kOptimal, kUnbounded };

  Step step(double tol, std::size_t excluded) {
    std::span<double> obj = objective();
    std::size_t enter = kNone;
    for (std::size_t j = 0; j < rhs(); ++j) {
      if (j != excluded && obj[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == kNone) return Step::kOptimal;

    std::size_t leave = kNone;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = row(i)[enter];
      if (a <= tol) continue;
      const double ratio = row(i)[rhs()] / a;
      if (leave == kNone) {
        best = ratio;
        leave = i;
        continue;
      }
      const double slack = 1e-12 * (1.0 + std::abs(best));
      if (ratio < best - slack) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
        best = std::min(best, ratio);
        leave = i;
      }
    }
    if (leave == kNone) return Step::kUnbounded;
    pivot(leave, enter);
    return Step::kPivoted;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t auxiliary_;
  std::size_t width_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows ||
      lp.c.size() != lp.cols) {
    throw Error(ErrorCode::kLengthMismatch, "linear program dimensions disagree");
  }
  const double tol = options.tolerance;
  const std::size_t cap = options.max_iterations != 0
                              ? options.max_iterations
                              : 10 * (lp.rows + lp.cols);
  LpSolution out;

  auto run = [&](Tableau& t, std::size_t excluded) {
    for (;;) {
      if (out.iterations >= cap) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex exceeded " + std::to_string(cap) + " pivots");
      }
      const Tableau::Step s = t.step(tol, excluded);
      if (s != Tableau::Step::kPivoted) return s;
      ++out.iterations;
    }
  };

  std::size_t most_negative = Tableau::kNone;
  for (std::size_t i = 0; i < lp.rows; ++i) {
    if (lp.b[i] < -tol &&
        (most_negative == Tableau::kNone || lp.b[i] < lp.b[most_negative])) {
      most_negative = i;
    }
  }
  const bool phase_one = most_negative != Tableau::kNone;
  Tableau t(lp, phase_one);

  if (phase_one) {
    // maximize -x0; the first pivot makes every right-hand side non-negative.
    t.objective()[t.auxiliary()] = 1.0;
    t.pivot(most_negative, t.auxiliary());
    ++out.iterations;
    run(t, Tableau::kNone);
    if (t.objective()[t.rhs()] < -tol) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basic(i) != t.auxiliary()) continue;
      std::span<double> r = t.row(i);
      for (std::size_t j = 0; j < t.auxiliary(); ++j) {
        if (std::abs(r[j]) > tol) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  std::span<double> obj = t.objective();
  std::fill(obj.begin(), obj.end(), 0.0);
  for (std::size_t j = 0; j < lp.cols; ++j) obj[j] = -lp.c[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const std::size_t bv = t.basic(i);
    if (bv < lp.cols && lp.c[bv] != 0.0) {
      kernels::subtract_scaled(obj, t.row(i), -lp.c[bv]);
      obj[bv] = 0.0;
    }
  }

  if (run(t, t.auxiliary()) == Tableau::Step::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }

  out.status = LpStatus::kOptimal;
  out.objective = t.objective()[t.rhs()];
  out.primal.assign(lp.cols, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.basic(i) < lp.cols) out.primal[t.basic(i)] = t.row(i)[t.rhs()];
  }
  out.dual.resize(lp.rows);
  for (std::size_t i = 0; i < lp.rows; ++i) {
    out.dual[i] = t.objective()[lp.cols + i];
  }
  return out;
}

}  // namespace coalition
