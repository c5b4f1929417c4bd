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
#include <string>
#include <vector>

#include "condmaj/probcore.hpp"
#include "condmaj/quantum.hpp"

namespace condmaj {

// A symmetric concave function on probability vectors.
class PhiFunction {
 public:
  enum class Kind { ShannonEntropy, NegMaxComponent, RenyiEntropy, Custom };
  using Callable = std::function<double(const Vector&)>;

  // Entropy in bits.
  static PhiFunction shannon();
  // 1 - max_x v_x, so that U is one minus the guessing probability.
  static PhiFunction guess();
  // log2(sum v^a) / (1 - a); only orders in (0, 1) are accepted.
  static PhiFunction renyi(double order);
  // The caller vouches for symmetry and concavity.
  static PhiFunction custom(std::string name, Callable fn);
  // "shannon", "guess" or "renyi:<order>".
  static PhiFunction parse(const std::string& spec);

  double operator()(const Vector& v) const;
  Kind kind() const noexcept { return kind_; }
  double order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }

 private:
  PhiFunction(Kind kind, double order, std::string name, Callable fn);
  Kind kind_;
  double order_;
  std::string name_;
  Callable fn_;
};

class POVM {
 public:
  explicit POVM(std::vector<CMatrix> elements, double tol = kEpsPsd);
  // Rank-one elements |m_y><m_y| from unnormalized vectors.
  static POVM from_vectors(const std::vector<CVector>& vectors, double tol = kEpsPsd);

  const std::vector<CMatrix>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  Eigen::Index dim() const noexcept { return elements_.front().rows(); }

 private:
  std::vector<CMatrix> elements_;
};

// sum_y p_y Phi(p^{|y}), skipping columns with zero weight.
double u_phi(const JointDistribution& p, const PhiFunction& phi);

// p_xy = q_x Tr[sigma_x M_y].
JointDistribution measure_joint(const CQState& sigma, const POVM& povm);

struct SearchBudget {
  int grid = 4096;          // projective directions (qubits) or Haar bases
  int povm_samples = 2048;  // random rank-one POVMs with 3 or 4 outcomes
  std::uint64_t seed = 0;
  bool refine = true;       // local hill climb from the best candidates
};

struct MinUncertainty {
  double value = 0.0;
  std::vector<CVector> best_vectors;  // rank-one elements of the best POVM, in the support of rho_B
  int candidates = 0;
  Eigen::Index effective_dim = 0;
};

// Grid minimum of u_phi over rank-one POVMs on the memory; an upper bound on
// the true minimum. The memory is restricted to the support of rho_B first.
// DimensionTooLarge when that support exceeds four dimensions.
MinUncertainty min_classical_uncertainty_search(const CQState& sigma, const PhiFunction& phi,
                                                const SearchBudget& budget = {});
double min_classical_uncertainty(const CQState& sigma, const PhiFunction& phi,
                                 const SearchBudget& budget = {});

using JointMeasure = std::function<double(const JointDistribution&, const JointDistribution&)>;

// Minimum over pairs of rank-one POVMs of jcl(P, Q). Without jcl the sum of
// conditional Shannon entropies is used, which separates into two searches.
double joint_uncertainty(const CQState& sigma, const CQState& gamma,
                         const std::optional<JointMeasure>& jcl = std::nullopt,
                         const SearchBudget& budget = {});

// Von Neumann entropy in bits.
double von_neumann_entropy(const CMatrix& rho);
// S(X|B) = H(X) + sum_x q_x S(sigma_x) - S(rho_B); lower-bounds the Shannon
// classical-conditioned uncertainty by the Holevo bound.
double quantum_conditional_entropy(const CQState& sigma);

}  // namespace condmaj
