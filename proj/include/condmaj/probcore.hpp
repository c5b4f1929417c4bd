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

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "condmaj/tolerances.hpp"

// Probability vectors, joint-distribution matrices, vector majorization and
// the canonical (standard) form of a joint distribution.
namespace condmaj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// A finite probability distribution. Entries within kEpsProb below zero are
// clamped to zero on construction; the sum must be 1 within kEpsProb.
class ProbVector {
 public:
  explicit ProbVector(Vector entries);
  ProbVector(std::initializer_list<double> entries);

  static ProbVector uniform(std::size_t n);
  static ProbVector point_mass(std::size_t n, std::size_t at = 0);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.size()); }
  double operator[](std::size_t i) const { return entries_(static_cast<Eigen::Index>(i)); }
  const Vector& entries() const noexcept { return entries_; }

  // Entries in non-increasing order, zero padded to `length` when larger.
  Vector sorted_desc(std::size_t length = 0) const;

 private:
  Vector entries_;
};

// An n x l joint distribution p_xy. Rows index the classical register X,
// columns the memory Y.
class JointDistribution {
 public:
  explicit JointDistribution(Matrix m);
  JointDistribution(std::initializer_list<std::initializer_list<double>> rows);

  // Divides by the total; rejects negative entries and a zero total.
  static JointDistribution normalized(Matrix m);
  // A single-column distribution.
  static JointDistribution column(const ProbVector& p);

  Eigen::Index rows() const noexcept { return m_.rows(); }
  Eigen::Index cols() const noexcept { return m_.cols(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index x, Eigen::Index y) const { return m_(x, y); }

  // p_y for every column.
  Vector memory_marginal() const;
  // p_x for every row (the register marginal P e).
  Vector register_marginal() const;
  // p^{|y}; the column must carry positive weight.
  Vector conditional(Eigen::Index y) const;

  // Appends zero rows up to `n`.
  JointDistribution padded_rows(Eigen::Index n) const;

 private:
  Matrix m_;
};

class DoublyStochasticMatrix {
 public:
  explicit DoublyStochasticMatrix(Matrix m, double tol = kEpsProb);
  static DoublyStochasticMatrix identity(Eigen::Index n);
  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

class RowStochasticMatrix {
 public:
  explicit RowStochasticMatrix(Matrix m, double tol = kEpsProb);
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

// A pair of columns whose proportionality score landed near kEpsProp.
struct NearThresholdPair {
  Eigen::Index first;
  Eigen::Index second;
  double score;  // max |u_i v_j - u_j v_i| / max entry, on conditionals
  bool merged;
};

struct StandardFormResult {
  JointDistribution canonical;
  // row_permutations[y][i] = original row index placed at position i of column y.
  std::vector<std::vector<Eigen::Index>> row_permutations;
  // Original column indices merged into each surviving column, in the final order.
  std::vector<std::vector<Eigen::Index>> merge_groups;
  // column_order[w] = index (into the merged matrix of step 2) placed at w.
  std::vector<Eigen::Index> column_order;
  // Zero-weight columns removed before merging.
  std::vector<Eigen::Index> dropped_columns;
  std::vector<NearThresholdPair> near_threshold;
};

// Sorted-prefix-sum dominance, p majorizes q. Shorter inputs are zero padded.
bool majorizes(const ProbVector& p, const ProbVector& q, double tol = kEpsProb);
// The same test on raw non-negative vectors (sums are compared too).
bool majorizes(const Vector& p, const Vector& q, double tol = kEpsProb);

Vector sorted_desc(const Vector& v);
// Prefix sums of v in its given order (L v).
Vector prefix_sums(const Vector& v);
// The n x n lower-triangular all-ones matrix L.
Matrix lower_ones(Eigen::Index n);

// Columns u, v are proportional when their conditionals agree to kEpsProp.
double proportionality_score(const Vector& u, const Vector& v);

StandardFormResult standard_form(const JointDistribution& p);

// A doubly stochastic D with D a = q, built as a product of at most n - 1
// T-transforms. Throws MajorizationViolation when q is not majorized by a.
DoublyStochasticMatrix transfer_matrix(const ProbVector& q, const ProbVector& a);
// Unnormalized variant used for witnesses: q and a are non-negative with equal
// sums up to `tol`, and the prefix-sum test is applied with the same slack.
DoublyStochasticMatrix transfer_matrix(const Vector& q, const Vector& a, double tol);

}  // namespace condmaj
