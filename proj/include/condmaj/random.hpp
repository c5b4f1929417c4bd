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

#include <cstdint>
#include <random>
#include <vector>

#include "condmaj/probcore.hpp"
#include "condmaj/quantum.hpp"

// Seeded generators for the randomized suites and the search routines.
namespace condmaj::sampling {

using Rng = std::mt19937_64;

// Independent stream `stream` of the generator family `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

// Uniform on the simplex (flat Dirichlet).
ProbVector prob_vector(Rng& rng, Eigen::Index n);
JointDistribution joint(Rng& rng, Eigen::Index n, Eigen::Index l);
// Convex combination of `terms` uniformly random permutation matrices.
DoublyStochasticMatrix doubly_stochastic(Rng& rng, Eigen::Index n, int terms = 3);
RowStochasticMatrix row_stochastic(Rng& rng, Eigen::Index l, Eigen::Index m);

// Q = sum_j D^(j) P R^(j) with random doubly stochastic D^(j) and
// sum_j R^(j) a random row-stochastic l x m matrix.
JointDistribution ccr(Rng& rng, const JointDistribution& p, Eigen::Index m, int terms = 2);

CVector haar_state(Rng& rng, Eigen::Index d);
CMatrix haar_unitary(Rng& rng, Eigen::Index d);
// sum of `rank` Haar pure states with flat Dirichlet weights.
DensityMatrix density(Rng& rng, Eigen::Index d, Eigen::Index rank);
CQState cq_state(Rng& rng, Eigen::Index n, Eigen::Index d, bool pure);

// A quantum-conditioned random relabeling of sigma with `terms` branches,
// each a doubly stochastic relabeling of the register paired with one element
// of a random instrument on the memory (output dimension d_out).
CQState qcr(Rng& rng, const CQState& sigma, Eigen::Index d_out, int terms = 2);

}  // namespace condmaj::sampling
