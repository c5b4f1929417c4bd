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

#include "condmaj/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "condmaj/error.hpp"

namespace condmaj {

DensityMatrix::DensityMatrix(CMatrix rho, double tol) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
  }
  if (!rho.allFinite()) throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  rho_ = 0.5 * (rho + rho.adjoint());
  if (std::abs(rho_.trace().real() - 1.0) > tol) {
    throw Error(ErrorCode::InvalidState,
                "density matrix has trace " + std::to_string(rho_.trace().real()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_);
  const Eigen::Index d = rho_.rows();
  if (es.eigenvalues()(0) < -tol) {
    throw Error(ErrorCode::InvalidState, "density matrix is not positive semidefinite");
  }
  evals_.resize(d);
  evecs_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    evals_(i) = std::max(0.0, es.eigenvalues()(d - 1 - i));
    evecs_.col(i) = es.eigenvectors().col(d - 1 - i);
  }
}

DensityMatrix DensityMatrix::pure(const CVector& v) {
  const double nv = v.norm();
  if (!(nv > 0.0)) throw Error(ErrorCode::InvalidState, "zero vector has no pure state");
  const CVector u = v / nv;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::padded(Eigen::Index d) const {
  if (d < dim()) throw Error(ErrorCode::DimensionMismatch, "cannot pad to a smaller dimension");
  CMatrix out = CMatrix::Zero(d, d);
  out.topLeftCorner(dim(), dim()) = rho_;
  return DensityMatrix(std::move(out));
}

CQState::CQState(ProbVector probs, std::vector<DensityMatrix> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (states_.empty() || states_.size() != probs_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one state per outcome probability is required");
  }
  for (std::size_t x = 1; x < states_.size(); ++x) {
    if (states_[x].dim() != states_.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch, "all conditional states need one dimension",
                  "state " + std::to_string(x));
    }
  }
}

CMatrix CQState::memory_state() const {
  CMatrix rho = CMatrix::Zero(dim(), dim());
  for (std::size_t x = 0; x < size(); ++x) rho += probs_[x] * states_[x].matrix();
  return rho;
}

CMatrix CQState::block_matrix() const {
  const Eigen::Index d = dim();
  const auto n = static_cast<Eigen::Index>(size());
  CMatrix out = CMatrix::Zero(n * d, n * d);
  for (Eigen::Index x = 0; x < n; ++x) {
    out.block(x * d, x * d, d, d) = probs_[static_cast<std::size_t>(x)] *
                                    states_[static_cast<std::size_t>(x)].matrix();
  }
  return out;
}

CQState CQState::padded(Eigen::Index d) const {
  std::vector<DensityMatrix> out;
  for (const auto& s : states_) out.push_back(s.padded(d));
  return CQState(probs_, std::move(out));
}

Decomposition Decomposition::eigen(const DensityMatrix& sigma) {
  const Vector& ev = sigma.eigenvalues();
  std::vector<CVector> vecs;
  for (Eigen::Index i = 0; i < ev.size(); ++i) vecs.push_back(sigma.eigenvectors().col(i));
  return Decomposition{ProbVector(ev / ev.sum()), std::move(vecs)};
}

CMatrix Decomposition::reconstruct() const {
  const Eigen::Index d = vectors.front().size();
  CMatrix rho = CMatrix::Zero(d, d);
  for (std::size_t y = 0; y < vectors.size(); ++y) rho += weights[y] * vectors[y] * vectors[y].adjoint();
  return rho;
}

void Decomposition::validate_against(const DensityMatrix& sigma) const {
  if (vectors.empty() || vectors.size() != weights.size()) {
    throw Error(ErrorCode::InvalidState, "decomposition needs one vector per weight");
  }
  for (std::size_t y = 0; y < vectors.size(); ++y) {
    if (vectors[y].size() != sigma.dim() || std::abs(vectors[y].norm() - 1.0) > kEpsPsd) {
      throw Error(ErrorCode::InvalidState, "decomposition vectors must be unit vectors",
                  "vector " + std::to_string(y));
    }
  }
  if ((reconstruct() - sigma.matrix()).cwiseAbs().maxCoeff() > kEpsPsd) {
    throw Error(ErrorCode::InvalidState, "decomposition does not reproduce the state");
  }
}

bool decomposition_exists(const DensityMatrix& sigma, const ProbVector& q) {
  const Vector& ev = sigma.eigenvalues();
  const Eigen::Index n = std::max(ev.size(), static_cast<Eigen::Index>(q.size()));
  Vector lam = Vector::Zero(n);
  lam.head(ev.size()) = ev;
  return majorizes(lam, q.entries(), kEpsProb);
}

CQState OmegaBoundQuantum::assemble() const {
  const double w = std::clamp(omega, 0.0, 1.0);
  return CQState(ProbVector{w, 1.0 - w},
                 {DensityMatrix::pure(flag0_state), DensityMatrix::pure(psi)});
}

namespace {

Eigen::Index bound_dim(const CQState& sigma) {
  return std::max<Eigen::Index>({static_cast<Eigen::Index>(sigma.size()), sigma.dim(), 2});
}

// (a|0> + sqrt(rad)|1>) / sqrt(1 - omega), padded to `dim`.
CVector two_level(double a, double rad, double omega, Eigen::Index dim) {
  CVector psi = CVector::Zero(dim);
  if (1.0 - omega <= 1e-15) {
    psi(1) = 1.0;  // the second branch has no weight
    return psi;
  }
  const double s = std::sqrt(1.0 - omega);
  psi(0) = a / s;
  psi(1) = std::sqrt(std::max(0.0, rad)) / s;
  return psi / psi.norm();
}

void check_index(const CQState& sigma, std::size_t j, const char* name) {
  if (j >= sigma.size()) {
    throw Error(ErrorCode::IndexError,
                std::string("index ") + name + " = " + std::to_string(j) + " is out of range");
  }
}

}  // namespace

TQBound tq_bound(const CQState& sigma, std::size_t j, std::size_t k,
                 const Decomposition& decomp_j, const Decomposition& decomp_k) {
  check_index(sigma, j, "j");
  check_index(sigma, k, "k");
  if (j == k) throw Error(ErrorCode::InvalidInput, "tq_bound needs two distinct outcomes");
  decomp_j.validate_against(sigma.states()[j]);
  decomp_k.validate_against(sigma.states()[k]);
  if (decomp_j.vectors.size() != decomp_k.vectors.size()) {
    throw Error(ErrorCode::DimensionMismatch, "decompositions must have equal lengths");
  }
  const auto len = static_cast<Eigen::Index>(decomp_j.vectors.size());
  TQBound out;
  out.r_y = Vector::Zero(len);
  for (Eigen::Index y = 0; y < len; ++y) {
    const auto yy = static_cast<std::size_t>(y);
    out.r_y(y) = decomp_k.weights[yy] * std::norm(decomp_j.vectors[yy].dot(decomp_k.vectors[yy]));
  }
  out.r = out.r_y.sum();
  const double qj = sigma.probs()[j], qk = sigma.probs()[k];
  if (out.r > 0.0) {
    double ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index y = 0; y < len; ++y) {
      if (out.r_y(y) > 1e-15) {
        ratio = std::min(ratio, decomp_j.weights[static_cast<std::size_t>(y)] / out.r_y(y));
      }
    }
    out.omega_star = out.r * qj * ratio;
  }
  const double r = out.r, omega_star = out.omega_star;
  const Eigen::Index dim = bound_dim(sigma);
  out.psi_of_omega = [r, qk, omega_star, dim](double omega) {
    if (omega < -1e-12 || omega > omega_star + 1e-12) {
      throw Error(ErrorCode::DomainError, "omega " + std::to_string(omega) +
                                              " lies outside [0, " + std::to_string(omega_star) + "]");
    }
    const double rad = 1.0 - omega - r * qk;
    if (rad < -kEpsPsd) throw Error(ErrorCode::DomainError, "negative radicand in the bound state");
    return two_level(std::sqrt(qk * r), rad, omega, dim);
  };
  return out;
}

TQBound tq_bound(const CQState& sigma, std::size_t j, std::size_t k) {
  check_index(sigma, j, "j");
  check_index(sigma, k, "k");
  return tq_bound(sigma, j, k, Decomposition::eigen(sigma.states()[j]),
                  Decomposition::eigen(sigma.states()[k]));
}

CVector pure_vector(const DensityMatrix& rho) {
  if (rho.dim() > 1 && rho.eigenvalues()(1) > kEpsPsd) {
    throw Error(ErrorCode::NotPure, "state has rank greater than one");
  }
  return rho.eigenvectors().col(0);
}

double pure_overlap_constant(const CQState& sigma, std::size_t j) {
  check_index(sigma, j, "j");
  const CVector phi_j = pure_vector(sigma.states()[j]);
  double c = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    if (k == j) continue;
    const CVector phi_k = pure_vector(sigma.states()[k]);
    c = std::max(c, std::abs(phi_j.dot(phi_k)) * std::sqrt(sigma.probs()[k]));
  }
  return c;
}

OmegaBoundQuantum pure_case_bound(const CQState& sigma, std::size_t j, double omega) {
  check_index(sigma, j, "j");
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    (void)pure_vector(sigma.states()[x]);
  }
  const double qj = sigma.probs()[j];
  if (omega < -1e-12 || omega > qj + 1e-12) {
    throw Error(ErrorCode::DomainError,
                "omega must lie in [0, q_j] = [0, " + std::to_string(qj) + "]");
  }
  omega = std::clamp(omega, 0.0, qj);
  const double c = pure_overlap_constant(sigma, j);
  const double rad = 1.0 - omega - c * c;
  if (rad < -kEpsPsd) {
    throw Error(ErrorCode::NumericalFailure, "negative radicand in the pure-case bound");
  }
  const Eigen::Index dim = bound_dim(sigma);
  OmegaBoundQuantum out;
  out.omega = omega;
  out.flag0_state = CVector::Zero(dim);
  out.flag0_state(0) = 1.0;
  out.psi = two_level(c, rad, omega, dim);
  return out;
}

}  // namespace condmaj
