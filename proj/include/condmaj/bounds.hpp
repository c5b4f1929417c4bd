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
#include <functional>
#include <optional>
#include <vector>

#include "condmaj/closedform.hpp"
#include "condmaj/measures.hpp"
#include "condmaj/quantum.hpp"

namespace condmaj {

class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<CVector> vectors, double tol = kEpsPsd);
  static MeasurementBasis computational(Eigen::Index n);
  // Discrete Fourier basis; the Hadamard basis for n = 2.
  static MeasurementBasis fourier(Eigen::Index n);
  // Columns of a unitary.
  static MeasurementBasis from_unitary(const CMatrix& u);

  const std::vector<CVector>& vectors() const noexcept { return vectors_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(vectors_.size()); }

 private:
  std::vector<CVector> vectors_;
};

double overlap_constant(const MeasurementBasis& b1, const MeasurementBasis& b2);

// eta = (1 + c)^2 / 4 for maximal overlap c.
double eta_closed_form(double c);

struct TripartiteBound {
  double c = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int l = 0;
  OmegaBoundClassical omega_matrix;
  // Set when alpha is outside (eta, 1): the bound is then implied by the
  // point-mass case and carries no information.
  bool trivial = false;
};

// DomainError unless 0 < alpha <= 1.
TripartiteBound tripartite_bound(const MeasurementBasis& b1, const MeasurementBasis& b2,
                                 double alpha);

// q_{(a1,a2),(b,e)} = q_{a1 b} q_{a2 e} for a pure state on A (x) B (x) E
// (index (a * dB + b) * dE + e), Alice measuring b1 or b2 and Bob, Eve
// measuring in bases mb, me.
JointDistribution tripartite_distribution(const CVector& psi_abe, const MeasurementBasis& b1,
                                          const MeasurementBasis& b2, const MeasurementBasis& mb,
                                          const MeasurementBasis& me);

// max over sampled pure states of max_{a1} q_{a1} * max_{a2} q_{a2}, followed
// by a golden-section search along the great circle through the two
// closest basis vectors. A lower bound on eta.
double eta_monte_carlo(const MeasurementBasis& b1, const MeasurementBasis& b2, int samples,
                       std::uint64_t seed);

// p_x and |phi_x> = (1/sqrt p_x) sum_y sqrt(lambda_y) <s_x|y> |y> obtained by
// measuring one half of sum_y sqrt(lambda_y) |y>|y> in `basis`.
struct PureEnsemble {
  ProbVector probs;
  std::vector<CVector> states;
};

PureEnsemble measured_ensemble(const ProbVector& schmidt, const MeasurementBasis& basis);

struct BipartiteBound {
  std::optional<ProbVector> schmidt;  // absent when built from two ensembles
  ProbVector px;
  ProbVector qz;
  std::vector<CVector> phi_states;
  std::vector<CVector> varphi_states;
  Eigen::Index x1 = 0, z1 = 0, x2 = 0, z2 = 0;
  double omega = 0.0;
  CVector psi;  // entry x * n + z

  // The two-branch state over n^2 register outcomes (x * n + z).
  CQState omega_state() const;
  // sigma^{XB1} (x) tau^{ZB2} for the pure state itself.
  CQState product_state() const;
};

BipartiteBound bipartite_bound(const ProbVector& schmidt, const MeasurementBasis& sbasis,
                               const MeasurementBasis& tbasis, Eigen::Index x1, Eigen::Index z1,
                               Eigen::Index x2, Eigen::Index z2, double omega);
// The same construction for sigma and tau given directly as pure ensembles,
// as needed for the cross terms of a mixed state.
BipartiteBound bipartite_bound(const PureEnsemble& sigma, const PureEnsemble& tau,
                               Eigen::Index x1, Eigen::Index z1, Eigen::Index x2,
                               Eigen::Index z2, double omega);

using StateMeasure = std::function<double(const CQState&)>;

// Maximum of measure(Omega) over every ordered pair of distinct index pairs
// and every omega in the grid (33 evenly spaced points of [0, p_x1 q_z1]
// when the grid is empty; explicit grid values are clipped to that range).
double guu_lower_bound(const BipartiteBound& bound, const StateMeasure& measure,
                       const std::vector<double>& omega_grid = {});

// The convex-mixture form: sum_{k,k'} r_k r_k' floor(k, k'). Requires the
// caller to assert joint concavity of the measure (PreconditionViolated
// otherwise). bounds[k * K + k'] is the bound for the pair (k, k').
double guu_lower_bound_mixed(const std::vector<double>& weights,
                             const std::vector<BipartiteBound>& bounds,
                             const StateMeasure& measure, bool jointly_concave,
                             const std::vector<double>& omega_grid = {});

}  // namespace condmaj
