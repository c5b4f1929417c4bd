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

#include <cmath>

#include "condmaj/error.hpp"
#include "condmaj/measures.hpp"
#include "condmaj/quantum.hpp"
#include "condmaj/random.hpp"

using namespace condmaj;

namespace {

CVector ket(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const auto& c : v) out(i++) = c;
  return out;
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CQState pure_pair(const CVector& a, const CVector& b, double q0) {
  return CQState(ProbVector{q0, 1.0 - q0}, {DensityMatrix::pure(a), DensityMatrix::pure(b)});
}

// Builds a two-term decomposition of a qubit state with weights q by
// rotating inside the eigenbasis: sqrt(q_y) u_y = sum_k U_yk sqrt(l_k) e_k
// with U = [[c, s], [-s, c]] and c^2 = (q0 - l1) / (l0 - l1). Returns false
// when no real rotation angle exists or the mixture fails to reproduce sigma.
bool rotation_oracle(const DensityMatrix& sigma, double q0, double q1) {
  if (q0 < q1) std::swap(q0, q1);
  const Vector& l = sigma.eigenvalues();
  const CMatrix& e = sigma.eigenvectors();
  double c2;
  if (l(0) - l(1) < 1e-12) {
    if (std::abs(q0 - l(0)) > 1e-9) return false;
    c2 = 1.0;
  } else {
    c2 = (q0 - l(1)) / (l(0) - l(1));
  }
  if (c2 < -1e-12 || c2 > 1.0 + 1e-12) return false;
  const double c = std::sqrt(std::clamp(c2, 0.0, 1.0));
  const double s = std::sqrt(std::clamp(1.0 - c2, 0.0, 1.0));
  const CVector v0 = c * std::sqrt(l(0)) * e.col(0) + s * std::sqrt(l(1)) * e.col(1);
  const CVector v1 = -s * std::sqrt(l(0)) * e.col(0) + c * std::sqrt(l(1)) * e.col(1);
  if (std::abs(v0.squaredNorm() - q0) > 1e-9 || std::abs(v1.squaredNorm() - q1) > 1e-9) return false;
  const CMatrix rebuilt = v0 * v0.adjoint() + v1 * v1.adjoint();
  return (rebuilt - sigma.matrix()).cwiseAbs().maxCoeff() <= kEpsPsd;
}

}  // namespace

TEST(DensityMatrix, ValidatesInvariants) {
  CMatrix bad(2, 2);
  bad << 0.7, 0.0, 0.0, 0.4;
  EXPECT_THROW(DensityMatrix{bad}, Error);
  bad << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(DensityMatrix{bad}, Error);
  bad << 0.5, 0.3, 0.1, 0.5;
  try {
    DensityMatrix d(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidState);
  }
  const auto p = DensityMatrix::pure(ket({1.0, 1.0}));
  EXPECT_NEAR(p.eigenvalues()(0), 1.0, 1e-12);
  EXPECT_NEAR(p.eigenvalues()(1), 0.0, 1e-12);
  EXPECT_EQ(p.padded(4).dim(), 4);
}

TEST(DecompositionExists, WorkedExamples) {
  CMatrix d(2, 2);
  d << 0.7, 0.0, 0.0, 0.3;
  const DensityMatrix sigma(d);
  EXPECT_TRUE(decomposition_exists(sigma, ProbVector{0.5, 0.5}));
  EXPECT_FALSE(decomposition_exists(sigma, ProbVector{0.8, 0.2}));
  EXPECT_TRUE(decomposition_exists(DensityMatrix::pure(ket({0.6, 0.8})), ProbVector{1.0, 0.0}));
  // Longer weight vectors are compared against the padded spectrum.
  EXPECT_TRUE(decomposition_exists(sigma, ProbVector{0.4, 0.3, 0.3}));
}

TEST(DecompositionExists, AgreesWithRotationOracle) {
  auto rng = sampling::make_rng(17);
  int trues = 0;
  for (int i = 0; i < 500; ++i) {
    const auto sigma = sampling::density(rng, 2, 2);
    const auto q = sampling::prob_vector(rng, 2);
    const bool predicate = decomposition_exists(sigma, q);
    EXPECT_EQ(predicate, rotation_oracle(sigma, q[0], q[1])) << "pair " << i;
    trues += predicate;
  }
  EXPECT_GT(trues, 50);
  EXPECT_LT(trues, 450);
}

TEST(DecompositionExists, DegenerateSpectrumIsBasisIndependent) {
  auto rng = sampling::make_rng(18);
  for (int i = 0; i < 50; ++i) {
    const CMatrix u = sampling::haar_unitary(rng, 3);
    Vector diag(3);
    diag << 0.4, 0.4, 0.2;
    const DensityMatrix rotated(CMatrix(u * diag.cast<Complex>().asDiagonal() * u.adjoint()));
    EXPECT_NEAR(rotated.eigenvalues()(0), 0.4, 1e-12);
    EXPECT_NEAR(rotated.eigenvalues()(1), 0.4, 1e-12);
    EXPECT_TRUE(decomposition_exists(rotated, ProbVector{0.35, 0.35, 0.3}));
    EXPECT_FALSE(decomposition_exists(rotated, ProbVector{0.41, 0.39, 0.2}));
    EXPECT_NO_THROW(Decomposition::eigen(rotated).validate_against(rotated));
  }
}

TEST(Decomposition, ValidationCatchesMismatch) {
  const auto sigma = DensityMatrix::pure(ket({1.0, 0.0}));
  Decomposition d{ProbVector{1.0}, {ket({0.0, 1.0})}};
  EXPECT_THROW(d.validate_against(sigma), Error);
  Decomposition e = Decomposition::eigen(sigma);
  EXPECT_NO_THROW(e.validate_against(sigma));
}

TEST(TqBound, WorkedExamples) {
  const CVector zero = ket({1.0, 0.0}), one = ket({0.0, 1.0});
  const CVector plus = ket({kInvSqrt2, kInvSqrt2});

  const auto orth = tq_bound(pure_pair(zero, one, 0.5), 0, 1);
  EXPECT_EQ(orth.r, 0.0);
  EXPECT_EQ(orth.omega_star, 0.0);
  EXPECT_THROW(orth.psi_of_omega(0.1), Error);

  const auto same = tq_bound(pure_pair(plus, plus, 0.5), 0, 1);
  EXPECT_NEAR(same.r, 1.0, 1e-12);
  EXPECT_NEAR(same.omega_star, 0.5, 1e-12);

  const auto sigma = pure_pair(zero, plus, 0.5);
  const auto qb = tq_bound(sigma, 0, 1);
  EXPECT_NEAR(qb.r, 0.5, 1e-12);
  EXPECT_NEAR(qb.omega_star, 0.5, 1e-12);
  // The pure-state route gives the same vector wherever both apply.
  for (double w : {0.0, 0.1, 0.25, 0.5}) {
    const CVector a = qb.psi_of_omega(w);
    const CVector b = pure_case_bound(sigma, 0, w).psi;
    EXPECT_LT((a - b).norm(), 1e-12) << w;
  }
}

TEST(TqBound, DecompositionChoiceMatters) {
  // The maximally mixed qubit written in two different bases.
  CMatrix half = CMatrix::Identity(2, 2) * 0.5;
  const DensityMatrix mixed(half);
  const CQState sigma(ProbVector{0.5, 0.5}, {mixed, mixed});
  const Decomposition comp{ProbVector{0.5, 0.5}, {ket({1.0, 0.0}), ket({0.0, 1.0})}};
  const Decomposition had{ProbVector{0.5, 0.5}, {ket({kInvSqrt2, kInvSqrt2}), ket({kInvSqrt2, -kInvSqrt2})}};
  const auto aligned = tq_bound(sigma, 0, 1, comp, comp);
  const auto skew = tq_bound(sigma, 0, 1, comp, had);
  EXPECT_NEAR(aligned.r, 1.0, 1e-12);
  EXPECT_NEAR(skew.r, 0.5, 1e-12);
  EXPECT_NEAR(aligned.omega_star, 0.5, 1e-12);
  EXPECT_NEAR(skew.omega_star, 0.5, 1e-12);
  EXPECT_GT(std::abs(aligned.psi_of_omega(0.0)(0)), std::abs(skew.psi_of_omega(0.0)(0)) + 0.1);
  EXPECT_THROW(tq_bound(sigma, 0, 0), Error);
  EXPECT_THROW(tq_bound(sigma, 0, 2), Error);
}

TEST(PureCaseBound, WorkedExamples) {
  const CVector zero = ket({1.0, 0.0}), one = ket({0.0, 1.0});
  const CVector plus = ket({kInvSqrt2, kInvSqrt2});

  const auto a = pure_case_bound(pure_pair(zero, plus, 0.5), 0, 0.0);
  EXPECT_NEAR(pure_overlap_constant(pure_pair(zero, plus, 0.5), 0), 0.5, 1e-15);
  EXPECT_NEAR(a.psi(0).real(), 0.5, 1e-15);
  EXPECT_NEAR(a.psi(1).real(), std::sqrt(0.75), 1e-15);

  const auto b = pure_case_bound(pure_pair(zero, one, 0.3), 1, 0.0);
  EXPECT_NEAR(std::abs(b.psi(0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b.psi(1)), 1.0, 1e-15);
  EXPECT_EQ(b.omega, 0.0);

  const auto c = pure_case_bound(pure_pair(plus, plus, 0.5), 0, 0.5);
  EXPECT_NEAR(std::abs(c.psi(0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.psi(1)), 0.0, 1e-7);
  EXPECT_NEAR(c.psi.norm(), 1.0, 1e-15);

  const CQState omega_state = a.assemble();
  EXPECT_EQ(omega_state.size(), 2u);
  EXPECT_NEAR(omega_state.probs()[0], 0.0, 1e-15);
}

TEST(PureCaseBound, RejectsBadInputs) {
  const CVector zero = ket({1.0, 0.0}), plus = ket({kInvSqrt2, kInvSqrt2});
  EXPECT_THROW(pure_case_bound(pure_pair(zero, plus, 0.5), 0, 0.6), Error);
  CMatrix half = CMatrix::Identity(2, 2) * 0.5;
  const CQState mixed(ProbVector{0.5, 0.5}, {DensityMatrix(half), DensityMatrix::pure(zero)});
  try {
    pure_case_bound(mixed, 1, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPure);
  }
}

TEST(PureCaseBound, RadicandAndNormAcrossRandomInstances) {
  auto rng = sampling::make_rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Index n = 2 + i % 3, d = 2 + (i / 3) % 2;
    const CQState sigma = sampling::cq_state(rng, n, d, true);
    const std::size_t j = static_cast<std::size_t>(i) % sigma.size();
    const double qj = sigma.probs()[j];
    const double c = pure_overlap_constant(sigma, j);
    for (double t : {0.0, 0.5, 1.0, u(rng)}) {
      const double omega = t * qj;
      ASSERT_GE(1.0 - omega - c * c, -kEpsPsd);
      // Unnormalized formula, checked independently of the implementation.
      const double expected0 = c / std::sqrt(1.0 - omega);
      const auto b = pure_case_bound(sigma, j, omega);
      EXPECT_NEAR(b.psi.norm(), 1.0, kEpsPsd);
      EXPECT_NEAR(std::abs(b.psi(0)), expected0, 1e-9);
      EXPECT_NO_THROW(b.assemble());
    }
  }
}

TEST(TqBound, PsiIsUnitNormOnSweep) {
  auto rng = sampling::make_rng(20);
  for (int i = 0; i < 200; ++i) {
    const CQState sigma = sampling::cq_state(rng, 3, 2, i % 2 == 0);
    const auto b = tq_bound(sigma, 0, 1 + static_cast<std::size_t>(i % 2));
    for (int s = 0; s <= 10; ++s) {
      const double w = b.omega_star * s / 10.0;
      if (1.0 - w - b.r * sigma.probs()[1 + static_cast<std::size_t>(i % 2)] < 0) continue;
      EXPECT_NEAR(b.psi_of_omega(w).norm(), 1.0, kEpsPsd);
    }
  }
}

TEST(PureCaseBound, BoundIsConsistentWithMeasure) {
  auto rng = sampling::make_rng(21);
  SearchBudget budget;
  budget.grid = 1024;
  budget.povm_samples = 256;
  const auto phi = PhiFunction::shannon();
  for (int i = 0; i < 15; ++i) {
    const CQState sigma = sampling::cq_state(rng, 2, 2, true);
    const std::size_t j = static_cast<std::size_t>(i % 2);
    const auto b = pure_case_bound(sigma, j, 0.5 * sigma.probs()[j]);
    EXPECT_LE(min_classical_uncertainty(b.assemble(), phi, budget),
              min_classical_uncertainty(sigma, phi, budget) + 1e-3);
  }
}
