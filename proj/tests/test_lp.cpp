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

#include <gtest/gtest.h>

#include "condmaj/error.hpp"
#include "condmaj/lp.hpp"
#include "condmaj/random.hpp"

using namespace condmaj;

namespace {

// max over rows of (G x - b); feasible points have this <= 0.
double max_violation(const Matrix& g, const Vector& b, const Vector& x) {
  return (g * x - b).maxCoeff();
}

}  // namespace

TEST(Simplex, FeasibleBoxHasInteriorPoint) {
  // x1 + x2 <= 1, -x1 <= -0.25, -x2 <= -0.25.
  Matrix g(3, 2);
  g << 1, 1, -1, 0, 0, -1;
  const Vector b = (Vector(3) << 1, -0.25, -0.25).finished();
  const auto r = lp::solve_feasibility(g, b);
  ASSERT_TRUE(r.feasible);
  EXPECT_LE(max_violation(g, b, r.x), 1e-12);
  EXPECT_GE(r.x.minCoeff(), 0.0);
}

TEST(Simplex, InfeasibleSystemYieldsFarkasRay) {
  // x1 + x2 <= 1 and -(x1 + x2) <= -2 cannot both hold.
  Matrix g(2, 2);
  g << 1, 1, -1, -1;
  const Vector b = (Vector(2) << 1, -2).finished();
  const auto r = lp::solve_feasibility(g, b);
  ASSERT_FALSE(r.feasible);
  EXPECT_GT(r.objective, 0.5);
  EXPECT_GE(r.dual.minCoeff(), 0.0);
  // s^T G >= 0 while s^T b < 0 proves infeasibility.
  EXPECT_GE((r.dual.transpose() * g).minCoeff(), -1e-12);
  EXPECT_LT(r.dual.dot(b), 0.0);
  EXPECT_NEAR(-r.dual.dot(b), r.objective, 1e-10);
}

TEST(Simplex, NonNegativeRhsIsTriviallyFeasible) {
  const Matrix g = Matrix::Identity(3, 3);
  const Vector b = Vector::Ones(3);
  const auto r = lp::solve_feasibility(g, b);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Simplex, IterationCapRaisesNumericalFailure) {
  Matrix g(3, 2);
  g << 1, 1, -1, 0, 0, -1;
  const Vector b = (Vector(3) << 1, -0.25, -0.25).finished();
  try {
    lp::solve_feasibility(g, b, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NumericalFailure);
  }
}

TEST(Simplex, RandomSystemsAgreeWithRayOrPoint) {
  auto rng = sampling::make_rng(3);
  std::normal_distribution<double> gauss;
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index rows = 2 + trial % 6, cols = 1 + trial % 5;
    Matrix g(rows, cols);
    Vector b(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = gauss(rng);
      b(i) = gauss(rng);
    }
    const auto r = lp::solve_feasibility(g, b);
    if (r.feasible) {
      ++feasible;
      EXPECT_LE(max_violation(g, b, r.x), 1e-7);
      EXPECT_GE(r.x.minCoeff(), -1e-12);
    } else {
      EXPECT_GE((r.dual.transpose() * g).minCoeff(), -1e-9);
      EXPECT_LT(r.dual.dot(b), -1e-9);
    }
  }
  // Both outcomes must be exercised for the test to mean anything.
  EXPECT_GT(feasible, 0);
  EXPECT_LT(feasible, 300);
}

TEST(Instance, BlockLayout) {
  const JointDistribution p{{0.4, 0.3}, {0.2, 0.1}};
  const JointDistribution q{{0.7}, {0.3}};
  const auto inst = lp::build_instance(p, q);
  EXPECT_EQ(inst.gamma.rows(), 2 * 1 + 2);
  EXPECT_EQ(inst.gamma.cols(), 2 * 1);
  // First block: -L P; the prefix sums of column 0 of P are (0.4, 0.6).
  EXPECT_DOUBLE_EQ(inst.gamma(0, 0), -0.4);
  EXPECT_DOUBLE_EQ(inst.gamma(1, 0), -0.6);
  EXPECT_DOUBLE_EQ(inst.gamma(1, 1), -0.4);
  EXPECT_DOUBLE_EQ(inst.b(0), -0.7);
  EXPECT_DOUBLE_EQ(inst.b(1), -1.0);
  // Row-sum block: identity over y for the single w.
  EXPECT_DOUBLE_EQ(inst.gamma(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(inst.gamma(3, 1), 1.0);
  EXPECT_DOUBLE_EQ(inst.b(3), 1.0);
}
