// Copyright 2026 The condmaj Authors
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

#include "condmaj/lp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "condmaj/error.hpp"

namespace condmaj::lp {

Instance build_instance(const JointDistribution& p, const JointDistribution& q) {
  if (p.rows() != q.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "P and Q must have the same number of rows");
  }
  Instance inst;
  inst.n = p.rows();
  inst.l = p.cols();
  inst.m = q.cols();
  const auto n = inst.n, l = inst.l, m = inst.m;
  const Matrix lp = lower_ones(n) * p.matrix();
  const Matrix lq = lower_ones(n) * q.matrix();

  inst.gamma = Matrix::Zero(n * m + l, l * m);
  inst.b = Vector::Zero(n * m + l);
  for (Eigen::Index w = 0; w < m; ++w) {
    inst.gamma.block(w * n, w * l, n, l) = -lp;
    inst.b.segment(w * n, n) = -lq.col(w);
    inst.gamma.block(n * m, w * l, l, l) = Matrix::Identity(l, l);
  }
  inst.b.tail(l).setOnes();
  return inst;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-11;

// Tableau over columns [x (nx) | slack (rows) | artificial (k)] plus the
// right-hand side. Row `rows` holds the reduced costs and minus the objective.
class Tableau {
 public:
  Tableau(const Matrix& g, const Vector& b) : rows_(g.rows()), nx_(g.cols()) {
    std::vector<Eigen::Index> negated;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (b(i) < 0.0) negated.push_back(i);
    }
    nart_ = static_cast<Eigen::Index>(negated.size());
    cols_ = nx_ + rows_ + nart_;
    t_ = Matrix::Zero(rows_ + 1, cols_ + 1);
    basis_.resize(static_cast<std::size_t>(rows_));
    sign_ = Vector::Ones(rows_);
    Eigen::Index next_art = 0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double s = b(i) < 0.0 ? -1.0 : 1.0;
      sign_(i) = s;
      t_.row(i).head(nx_) = s * g.row(i);
      t_(i, nx_ + i) = s;
      t_(i, cols_) = s * b(i);
      if (s < 0.0) {
        const Eigen::Index a = nx_ + rows_ + next_art++;
        t_(i, a) = 1.0;
        basis_[static_cast<std::size_t>(i)] = a;
      } else {
        basis_[static_cast<std::size_t>(i)] = nx_ + i;
      }
    }
    // Reduced costs of the Phase-I objective (cost 1 on artificials).
    for (Eigen::Index a = nx_ + rows_; a < cols_; ++a) t_(rows_, a) = 1.0;
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (sign_(i) < 0.0) t_.row(rows_) -= t_.row(i);
    }
  }

  // Returns false when optimal.
  bool step() {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      if (t_(rows_, j) < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double a = t_(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = t_(i, cols_) / a;
      if (ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
           basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      // Phase-I is bounded below by zero, so an unbounded ray signals breakdown.
      throw Error(ErrorCode::NumericalFailure, "Phase-I simplex found an unbounded direction");
    }
    pivot(leave, enter);
    return true;
  }

  double objective() const { return -t_(rows_, cols_); }

  Vector primal() const {
    Vector x = Vector::Zero(nx_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const auto v = basis_[static_cast<std::size_t>(i)];
      if (v < nx_) x(v) = std::max(0.0, t_(i, cols_));
    }
    return x;
  }

  // Reduced cost of each slack column equals the Farkas multiplier on the
  // corresponding original row.
  Vector dual() const {
    Vector s(rows_);
    for (Eigen::Index i = 0; i < rows_; ++i) s(i) = std::max(0.0, t_(rows_, nx_ + i));
    return s;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
      // Degenerate vertices leave rounding noise in the right-hand side; a
      // negative entry would make the next ratio test pick a wrong row.
      if (i < rows_ && t_(i, cols_) < 0.0 && t_(i, cols_) > -1e-11) t_(i, cols_) = 0.0;
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  Eigen::Index rows_, nx_, nart_ = 0, cols_ = 0;
  Matrix t_;
  Vector sign_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

Result solve_feasibility(const Matrix& g, const Vector& b, int max_iterations) {
  if (g.rows() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "constraint matrix and right-hand side disagree");
  }
  if (max_iterations <= 0) {
    max_iterations = 10000 + 50 * static_cast<int>(g.rows() + g.cols());
  }
  Tableau tab(g, b);
  Result res;
  while (tab.step()) {
    if (++res.iterations > max_iterations) {
      throw Error(ErrorCode::NumericalFailure,
                  "simplex exceeded " + std::to_string(max_iterations) + " iterations");
    }
  }
  res.objective = tab.objective();
  if (res.objective < -1e-9) {
    throw Error(ErrorCode::NumericalFailure, "Phase-I objective went negative; the tableau lost accuracy");
  }
  res.feasible = res.objective <= kEpsLp;
  if (res.feasible) {
    res.x = tab.primal();
  } else {
    res.dual = tab.dual();
  }
  return res;
}

}  // namespace condmaj::lp
