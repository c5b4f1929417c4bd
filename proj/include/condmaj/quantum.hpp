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

#include <complex>
#include <functional>
#include <vector>

#include "condmaj/probcore.hpp"

namespace condmaj {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class DensityMatrix {
 public:
  // Validates Hermiticity, positivity and unit trace, all within `tol`.
  explicit DensityMatrix(CMatrix rho, double tol = kEpsPsd);
  // |v><v| for a vector normalized on the way in.
  static DensityMatrix pure(const CVector& v);

  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const CMatrix& matrix() const noexcept { return rho_; }

  // Eigenvalues in non-increasing order, with matching eigenvector columns.
  // Tiny negative eigenvalues are clamped to zero.
  const Vector& eigenvalues() const noexcept { return evals_; }
  const CMatrix& eigenvectors() const noexcept { return evecs_; }

  // Embeds into a larger space by zero padding.
  DensityMatrix padded(Eigen::Index d) const;

 private:
  CMatrix rho_;
  Vector evals_;
  CMatrix evecs_;
};

// sum_x q_x |x><x| (x) sigma_x.
class CQState {
 public:
  CQState(ProbVector probs, std::vector<DensityMatrix> states);

  const ProbVector& probs() const noexcept { return probs_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  Eigen::Index dim() const noexcept { return states_.front().dim(); }

  // rho_B = sum_x q_x sigma_x.
  CMatrix memory_state() const;
  // The full (n d) x (n d) block-diagonal operator.
  CMatrix block_matrix() const;
  // Same state with every sigma_x zero padded to dimension d.
  CQState padded(Eigen::Index d) const;

 private:
  ProbVector probs_;
  std::vector<DensityMatrix> states_;
};

// sigma = sum_y q_y |u_y><u_y| with unit (not necessarily orthogonal) u_y.
struct Decomposition {
  ProbVector weights;
  std::vector<CVector> vectors;

  static Decomposition eigen(const DensityMatrix& sigma);
  CMatrix reconstruct() const;
  // Throws InvalidState unless each vector is unit norm and the mixture
  // reproduces sigma within kEpsPsd.
  void validate_against(const DensityMatrix& sigma) const;
};

// sigma^B admits a decomposition with weights q iff q is majorized by the
// spectrum of sigma. A q longer than d is compared against the zero-padded
// spectrum.
bool decomposition_exists(const DensityMatrix& sigma, const ProbVector& q);

// Omega = w |0><0| (x) |0><0| + (1 - w) |1><1| (x) |psi><psi|.
struct OmegaBoundQuantum {
  double omega = 0.0;
  CVector flag0_state;
  CVector psi;

  CQState assemble() const;
};

struct TQBound {
  double omega_star = 0.0;
  double r = 0.0;
  Vector r_y;
  std::function<CVector(double)> psi_of_omega;
};

// The sufficient condition along the ordered pair (j, k), evaluated on the
// supplied decompositions of sigma_j and sigma_k (equal lengths required).
TQBound tq_bound(const CQState& sigma, std::size_t j, std::size_t k,
                 const Decomposition& decomp_j, const Decomposition& decomp_k);
// Same, using eigendecompositions.
TQBound tq_bound(const CQState& sigma, std::size_t j, std::size_t k);

// c_j = max_{k != j} |<phi_j|phi_k>| sqrt(q_k) for pure conditionals.
double pure_overlap_constant(const CQState& sigma, std::size_t j);

// The pure-conditional bound. psi lives in dimension max(n, d, 2).
OmegaBoundQuantum pure_case_bound(const CQState& sigma, std::size_t j, double omega);

// Unit vector of a pure DensityMatrix; NotPure when the second eigenvalue
// exceeds kEpsPsd.
CVector pure_vector(const DensityMatrix& rho);

}  // namespace condmaj
