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
#include <vector>

#include "condmaj/probcore.hpp"

// Closed-form decision for two-column P, its simplification when the first
// conditional of P majorizes everything else, and the elementary
// constructions used by the uncertainty bounds.
namespace condmaj {

struct L2Workspace {
  double p = 0.0;  // weight of the first canonical column of P
  Vector q;        // column weights q_w of the canonical Q
  Vector mu;       // mu_k = sum_{x<=k} (p_{x|1} - p_{x|2})
  std::vector<Vector> nu;  // nu_k^(w) = sum_{x<=k} (q_{x|w} - p_{x|2})
  std::vector<Eigen::Index> iplus, izero, iminus;
  Vector alpha;
  Vector beta;
  double w_plus = 0.0;
  double w_minus = 0.0;
  double w_zero = 0.0;  // +infinity when I0 is empty
  double w_one = 0.0;
};

struct L2Result {
  bool verdict = false;
  L2Workspace workspace;
};

// P must have exactly two columns (ShapeError otherwise); both inputs are
// brought to standard form first. Throws PreconditionViolated if the two
// columns of P turn out to be proportional. The verdict accepts each W down
// to -tol.
L2Result decide_l2(const JointDistribution& p, const JointDistribution& q, double tol = kEpsWit);

// The 2 x m row-stochastic T realizing a positive decide_l2 verdict.
Matrix l2_transition(const L2Workspace& ws);

// The h_w test. Columns of P keep the caller's order; entries are sorted
// within each column. Throws PreconditionViolated (location names the
// failing column) unless p^{|2} and every q^{|w} are majorized by p^{|1}.
bool decide_gorol(const JointDistribution& p, const JointDistribution& q, double tol = kEpsWit);

struct OmegaBoundClassical {
  double alpha = 0.0;
  ProbVector omega;
  JointDistribution as_matrix;  // columns alpha e_1 and (1 - alpha) omega
};

// Assembles [alpha e_1, (1 - alpha) omega] without any check on Q.
OmegaBoundClassical make_omega_bound(const ProbVector& omega, double alpha);

// Returns the bound when the columns w with q^{|w} majorized by omega carry
// total weight at least 1 - alpha. The result is confirmed with the LP.
std::optional<OmegaBoundClassical> build_omega(const ProbVector& omega, double alpha,
                                               const JointDistribution& q);

struct MarkovTail {
  std::vector<Eigen::Index> columns;  // w with max_x q_{x|w} <= beta
  double mass = 0.0;                  // sum of q_w over those columns
};

MarkovTail markov_tail(const JointDistribution& q, double r, double beta);

}  // namespace condmaj
