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

#include "condmaj/probcore.hpp"

// Dense Phase-I simplex for feasibility of {t : G t <= b, t >= 0}, and the
// block-structured instance that encodes a conditional majorization query.
namespace condmaj::lp {

struct Instance {
  Matrix gamma;  // (n m + l) x (l m)
  Vector b;      // n m + l
  Eigen::Index n = 0, l = 0, m = 0;
};

// P is n x l and Q is n x m, both in standard form with the same n. The
// decision variable stacks the columns of T, so t(w * l + y) = T(y, w).
Instance build_instance(const JointDistribution& p, const JointDistribution& q);

struct Result {
  bool feasible = false;
  Vector x;          // primal point when feasible
  Vector dual;       // s >= 0 with s^T G >= 0 and s^T b = -objective when infeasible
  double objective;  // optimal Phase-I value (sum of artificials)
  int iterations = 0;
};

// Declares feasibility when the Phase-I optimum is at most kEpsLp. Bland's
// rule prevents cycling; exceeding `max_iterations` (0 picks a size-based
// cap) raises NumericalFailure.
Result solve_feasibility(const Matrix& g, const Vector& b, int max_iterations = 0);

}  // namespace condmaj::lp
