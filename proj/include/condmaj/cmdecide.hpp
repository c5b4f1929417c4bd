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

#include <optional>
#include <string_view>
#include <vector>

#include "condmaj/probcore.hpp"

namespace condmaj {

enum class DecisionMethod { LP, SpecialN1, SpecialM1, SpecialL1, SpecialL2 };

std::string_view method_name(DecisionMethod method);

// Q = [D^(1) P T e_1, ..., D^(m) P T e_m] in terms of the canonical forms.
struct Witness {
  RowStochasticMatrix t;
  std::vector<DoublyStochasticMatrix> d;
};

// A = S^T L, columns a_w non-increasing; the inequality
//   sum_y max_w a_w . p_y + gap <= sum_w a_w . q_w
// holds for the canonical joint columns p_y and q_w.
struct FarkasCertificate {
  Matrix a_matrix;
  double gap = 0.0;
};

struct CMDecision {
  bool verdict = false;
  std::optional<Witness> witness;
  std::optional<FarkasCertificate> certificate;
  DecisionMethod method = DecisionMethod::LP;
  JointDistribution canonical_p;
  JointDistribution canonical_q;
};

struct DecideOptions {
  bool force_lp = false;
  // Pad the matrix with fewer rows by zero rows instead of rejecting.
  bool pad_rows = false;
  double witness_tol = kEpsWit;
};

// Decides Q <_c P ("P conditionally majorizes Q").
CMDecision conditionally_majorizes(const JointDistribution& p, const JointDistribution& q,
                                   const DecideOptions& options = {});

// Phi_A(v) = max_k (a_k sorted)^T (v sorted).
double phi_a(const Matrix& a, const Vector& v);

// sum_y p_y Phi_A(p^{|y}); the support function of the set of n x m
// matrices conditionally majorized by P.
double support_function(const JointDistribution& p, const Matrix& a);

// support_function(P, A) - support_function(Q, A). Negative values show that
// Q is not conditionally majorized by P.
double check_phi_certificate(const Matrix& a, const JointDistribution& p,
                             const JointDistribution& q);

// Residual of the certificate inequality: (sum_w a_w.q_w) - (sum_y max_w a_w.p_y) - gap.
// Non-negative (up to rounding) for a valid certificate.
double certificate_slack(const FarkasCertificate& cert, const JointDistribution& canonical_p,
                         const JointDistribution& canonical_q);

// The matrix [D^(w) P T e_w]_w rebuilt from a witness.
Matrix reconstruct(const Witness& witness, const JointDistribution& canonical_p);

}  // namespace condmaj
