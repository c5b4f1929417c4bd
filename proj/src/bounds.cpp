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

#include "condmaj/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "condmaj/error.hpp"
#include "condmaj/random.hpp"

namespace condmaj {

MeasurementBasis::MeasurementBasis(std::vector<CVector> vectors, double tol)
    : vectors_(std::move(vectors)) {
  const auto n = static_cast<Eigen::Index>(vectors_.size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "a basis needs at least one vector");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vectors_[static_cast<std::size_t>(i)].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "basis vectors must have dimension equal to their count",
                  "vector " + std::to_string(i));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const Complex ip = vectors_[static_cast<std::size_t>(i)].dot(vectors_[static_cast<std::size_t>(j)]);
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > tol) {
        throw Error(ErrorCode::InvalidInput, "basis is not orthonormal",
                    "vectors " + std::to_string(j) + "," + std::to_string(i));
      }
    }
  }
}

MeasurementBasis MeasurementBasis::computational(Eigen::Index n) {
  return from_unitary(CMatrix::Identity(n, n));
}

MeasurementBasis MeasurementBasis::fourier(Eigen::Index n) {
  CMatrix f(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                           2.0 * M_PI * static_cast<double>(j * k) / static_cast<double>(n));
    }
  }
  return from_unitary(f);
}

MeasurementBasis MeasurementBasis::from_unitary(const CMatrix& u) {
  std::vector<CVector> cols;
  for (Eigen::Index k = 0; k < u.cols(); ++k) cols.push_back(u.col(k));
  return MeasurementBasis(std::move(cols));
}

double overlap_constant(const MeasurementBasis& b1, const MeasurementBasis& b2) {
  if (b1.dim() != b2.dim()) throw Error(ErrorCode::DimensionMismatch, "bases differ in dimension");
  double c = 0.0;
  for (const auto& u : b1.vectors()) {
    for (const auto& v : b2.vectors()) c = std::max(c, std::abs(u.dot(v)));
  }
  return std::min(c, 1.0);
}

double eta_closed_form(double c) { return 0.25 * (1.0 + c) * (1.0 + c); }

TripartiteBound tripartite_bound(const MeasurementBasis& b1, const MeasurementBasis& b2,
                                 double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::DomainError, "alpha must lie in (0, 1]");
  }
  TripartiteBound out{0.0, 0.0, alpha, 0.0, 0, make_omega_bound(ProbVector{1.0}, alpha), false};
  out.c = overlap_constant(b1, b2);
  out.eta = eta_closed_form(out.c);
  out.beta = out.eta / alpha;
  out.trivial = !(out.eta < alpha && alpha < 1.0);
  const Eigen::Index n = b1.dim() * b2.dim();
  const auto l = static_cast<Eigen::Index>(std::floor(1.0 / out.beta + 1e-12));
  out.l = static_cast<int>(std::min(l, n));
  Vector omega = Vector::Zero(n);
  for (Eigen::Index i = 0; i < out.l; ++i) omega(i) = out.beta;
  if (out.l < n) omega(out.l) = std::max(0.0, 1.0 - out.l * out.beta);
  out.omega_matrix = make_omega_bound(ProbVector(omega / omega.sum()), alpha);
  return out;
}

JointDistribution tripartite_distribution(const CVector& psi_abe, const MeasurementBasis& b1,
                                          const MeasurementBasis& b2, const MeasurementBasis& mb,
                                          const MeasurementBasis& me) {
  const Eigen::Index da = b1.dim(), db = mb.dim(), de = me.dim();
  if (b2.dim() != da || psi_abe.size() != da * db * de) {
    throw Error(ErrorCode::DimensionMismatch, "state and measurement dimensions disagree");
  }
  const CVector psi = psi_abe / psi_abe.norm();
  // Joint outcome distribution of Alice (basis `alice`) and Bob or Eve.
  const auto joint = [&](const MeasurementBasis& alice, bool with_bob) {
    const Eigen::Index dm = with_bob ? db : de;
    Matrix q = Matrix::Zero(da, dm);
    for (Eigen::Index a = 0; a < da; ++a) {
      for (Eigen::Index k = 0; k < dm; ++k) {
        const CVector& va = alice.vectors()[static_cast<std::size_t>(a)];
        const CVector& vk = (with_bob ? mb : me).vectors()[static_cast<std::size_t>(k)];
        // Sum over the unmeasured party of |<a, k| psi>|^2.
        const Eigen::Index dother = with_bob ? de : db;
        double total = 0.0;
        for (Eigen::Index o = 0; o < dother; ++o) {
          Complex amp = 0.0;
          for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < dm; ++j) {
              const Eigen::Index idx = with_bob ? (i * db + j) * de + o : (i * db + o) * de + j;
              amp += std::conj(va(i)) * std::conj(vk(j)) * psi(idx);
            }
          }
          total += std::norm(amp);
        }
        q(a, k) = total;
      }
    }
    return q;
  };
  const Matrix qb = joint(b1, true);
  const Matrix qe = joint(b2, false);
  Matrix q(da * da, db * de);
  for (Eigen::Index a1 = 0; a1 < da; ++a1) {
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      for (Eigen::Index b = 0; b < db; ++b) {
        for (Eigen::Index e = 0; e < de; ++e) q(a1 * da + a2, b * de + e) = qb(a1, b) * qe(a2, e);
      }
    }
  }
  return JointDistribution::normalized(std::move(q));
}

namespace {

double product_guess(const MeasurementBasis& b1, const MeasurementBasis& b2, const CVector& psi) {
  double m1 = 0.0, m2 = 0.0;
  for (const auto& v : b1.vectors()) m1 = std::max(m1, std::norm(v.dot(psi)));
  for (const auto& v : b2.vectors()) m2 = std::max(m2, std::norm(v.dot(psi)));
  return m1 * m2;
}

}  // namespace

double eta_monte_carlo(const MeasurementBasis& b1, const MeasurementBasis& b2, int samples,
                       std::uint64_t seed) {
  if (b1.dim() != b2.dim()) throw Error(ErrorCode::DimensionMismatch, "bases differ in dimension");
  const Eigen::Index d = b1.dim();
  double best = 0.0;
  CVector best_psi = b1.vectors().front();
  for (int i = 0; i < samples; ++i) {
    auto rng = sampling::make_rng(seed, static_cast<std::uint64_t>(i));
    const CVector psi = sampling::haar_state(rng, d);
    const double v = product_guess(b1, b2, psi);
    if (v > best) {
      best = v;
      best_psi = psi;
    }
  }

  // The optimum lies in the plane of the most likely vector of the first
  // basis and its closest partner in the second.
  const CVector* a1 = &b1.vectors().front();
  double top = -1.0;
  for (const auto& v : b1.vectors()) {
    const double p = std::norm(v.dot(best_psi));
    if (p > top) {
      top = p;
      a1 = &v;
    }
  }
  const CVector* a2 = &b2.vectors().front();
  double closest = -1.0;
  for (const auto& v : b2.vectors()) {
    const double o = std::abs(a1->dot(v));
    if (o > closest) {
      closest = o;
      a2 = &v;
    }
  }
  const Complex ip = a1->dot(*a2);
  const double c = std::abs(ip);
  best = std::max(best, product_guess(b1, b2, *a1));
  if (c >= 1.0 - 1e-12) return best;
  const CVector aligned = *a2 * (std::abs(ip) > 0.0 ? std::conj(ip) / c : Complex(1.0));
  const CVector perp = (aligned - c * *a1) / std::sqrt(1.0 - c * c);
  const auto along = [&](double theta) {
    return product_guess(b1, b2, std::cos(theta) * *a1 + std::sin(theta) * perp);
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = std::acos(c);
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = along(x1), f2 = along(x2);
  for (int it = 0; it < 100; ++it) {
    if (f1 > f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = along(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = along(x2);
    }
  }
  return std::max({best, f1, f2});
}

PureEnsemble measured_ensemble(const ProbVector& schmidt, const MeasurementBasis& basis) {
  const auto n = static_cast<Eigen::Index>(schmidt.size());
  if (basis.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "Schmidt vector and basis dimensions differ");
  }
  Vector p(n);
  std::vector<CVector> states;
  for (Eigen::Index x = 0; x < n; ++x) {
    const CVector& s = basis.vectors()[static_cast<std::size_t>(x)];
    CVector u(n);
    for (Eigen::Index y = 0; y < n; ++y) {
      u(y) = std::sqrt(schmidt[static_cast<std::size_t>(y)]) * std::conj(s(y));
    }
    p(x) = u.squaredNorm();
    if (p(x) > 0.0) {
      states.push_back(u / std::sqrt(p(x)));
    } else {
      CVector e = CVector::Zero(n);
      e(0) = 1.0;  // outcome never occurs; any unit vector will do
      states.push_back(e);
    }
  }
  return PureEnsemble{ProbVector(p / p.sum()), std::move(states)};
}

BipartiteBound bipartite_bound(const PureEnsemble& sigma, const PureEnsemble& tau,
                               Eigen::Index x1, Eigen::Index z1, Eigen::Index x2,
                               Eigen::Index z2, double omega) {
  const auto n1 = static_cast<Eigen::Index>(sigma.probs.size());
  const auto n2 = static_cast<Eigen::Index>(tau.probs.size());
  if (x1 < 0 || x2 < 0 || x1 >= n1 || x2 >= n1 || z1 < 0 || z2 < 0 || z1 >= n2 || z2 >= n2) {
    throw Error(ErrorCode::IndexError, "outcome index out of range");
  }
  if (x1 == x2 && z1 == z2) {
    throw Error(ErrorCode::IndexError, "the two index pairs must differ");
  }
  const auto px = [&](Eigen::Index x) { return sigma.probs[static_cast<std::size_t>(x)]; };
  const auto qz = [&](Eigen::Index z) { return tau.probs[static_cast<std::size_t>(z)]; };
  const double top = px(x1) * qz(z1);
  if (!(top > 1e-15)) {
    throw Error(ErrorCode::DegenerateOutcome, "outcome (x1, z1) has zero probability");
  }
  if (omega < -1e-12 || omega > top + 1e-12) {
    throw Error(ErrorCode::DomainError,
                "omega must lie in [0, p_x1 q_z1] = [0, " + std::to_string(top) + "]");
  }
  omega = std::clamp(omega, 0.0, top);

  const double ov = std::abs(sigma.states[static_cast<std::size_t>(x1)].dot(
                                 sigma.states[static_cast<std::size_t>(x2)]) *
                             tau.states[static_cast<std::size_t>(z1)].dot(
                                 tau.states[static_cast<std::size_t>(z2)]));
  const double second = px(x2) * qz(z2);
  CVector psi = CVector::Zero(n1 * n2);
  if (1.0 - omega <= 1e-15) {
    psi(x2 * n2 + z2) = 1.0;
  } else {
    const double s = std::sqrt(1.0 - omega);
    for (Eigen::Index x = 0; x < n1; ++x) {
      for (Eigen::Index z = 0; z < n2; ++z) psi(x * n2 + z) = std::sqrt(px(x) * qz(z)) / s;
    }
    const double rad = top + (1.0 - ov * ov) * second - omega;
    if (rad < -kEpsPsd) throw Error(ErrorCode::NumericalFailure, "negative radicand in the bound state");
    psi(x1 * n2 + z1) = ov * std::sqrt(second) / s;
    psi(x2 * n2 + z2) = std::sqrt(std::max(0.0, rad)) / s;
  }
  return BipartiteBound{std::nullopt, sigma.probs, tau.probs, sigma.states, tau.states,
                        x1, z1, x2, z2, omega, std::move(psi)};
}

BipartiteBound bipartite_bound(const ProbVector& schmidt, const MeasurementBasis& sbasis,
                               const MeasurementBasis& tbasis, Eigen::Index x1, Eigen::Index z1,
                               Eigen::Index x2, Eigen::Index z2, double omega) {
  BipartiteBound b = bipartite_bound(measured_ensemble(schmidt, sbasis),
                                     measured_ensemble(schmidt, tbasis), x1, z1, x2, z2, omega);
  b.schmidt = schmidt;
  return b;
}

CQState BipartiteBound::omega_state() const {
  const auto n1 = static_cast<Eigen::Index>(px.size());
  const auto n2 = static_cast<Eigen::Index>(qz.size());
  const Eigen::Index n = n1 * n2;
  Vector probs = Vector::Zero(n);
  probs(0) = omega;
  probs(1) = 1.0 - omega;
  CVector flag = CVector::Zero(n);
  flag(x1 * n2 + z1) = 1.0;
  std::vector<DensityMatrix> states{DensityMatrix::pure(flag), DensityMatrix::pure(psi)};
  CVector unused = CVector::Zero(n);
  unused(0) = 1.0;
  for (Eigen::Index k = 2; k < n; ++k) states.push_back(DensityMatrix::pure(unused));
  return CQState(ProbVector(probs), std::move(states));
}

CQState BipartiteBound::product_state() const {
  const auto n1 = static_cast<Eigen::Index>(px.size());
  const auto n2 = static_cast<Eigen::Index>(qz.size());
  Vector probs(n1 * n2);
  std::vector<DensityMatrix> states;
  for (Eigen::Index x = 0; x < n1; ++x) {
    for (Eigen::Index z = 0; z < n2; ++z) {
      probs(x * n2 + z) = px[static_cast<std::size_t>(x)] * qz[static_cast<std::size_t>(z)];
      const CVector& a = phi_states[static_cast<std::size_t>(x)];
      const CVector& b = varphi_states[static_cast<std::size_t>(z)];
      CVector v(a.size() * b.size());
      for (Eigen::Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
      states.push_back(DensityMatrix::pure(v));
    }
  }
  return CQState(ProbVector(probs), std::move(states));
}

double guu_lower_bound(const BipartiteBound& bound, const StateMeasure& measure,
                       const std::vector<double>& omega_grid) {
  const PureEnsemble sigma{bound.px, bound.phi_states};
  const PureEnsemble tau{bound.qz, bound.varphi_states};
  const auto n1 = static_cast<Eigen::Index>(bound.px.size());
  const auto n2 = static_cast<Eigen::Index>(bound.qz.size());
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < n1 * n2; ++a) {
    const Eigen::Index x1 = a / n2, z1 = a % n2;
    const double top = bound.px[static_cast<std::size_t>(x1)] * bound.qz[static_cast<std::size_t>(z1)];
    if (!(top > 1e-15)) continue;
    std::vector<double> grid = omega_grid;
    if (grid.empty()) {
      for (int i = 0; i < 33; ++i) grid.push_back(top * i / 32.0);
    }
    for (double& w : grid) w = std::clamp(w, 0.0, top);
    for (Eigen::Index b = 0; b < n1 * n2; ++b) {
      if (b == a) continue;
      for (double w : grid) {
        const BipartiteBound bb = bipartite_bound(sigma, tau, x1, z1, b / n2, b % n2, w);
        best = std::max(best, measure(bb.omega_state()));
      }
    }
  }
  return best;
}

double guu_lower_bound_mixed(const std::vector<double>& weights,
                             const std::vector<BipartiteBound>& bounds,
                             const StateMeasure& measure, bool jointly_concave,
                             const std::vector<double>& omega_grid) {
  if (!jointly_concave) {
    throw Error(ErrorCode::PreconditionViolated,
                "the mixed-state floor holds only for jointly concave measures");
  }
  if (bounds.size() != weights.size() * weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need one bound per ordered pair of mixture terms");
  }
  const std::size_t k = weights.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      total += weights[i] * weights[j] * guu_lower_bound(bounds[i * k + j], measure, omega_grid);
    }
  }
  return total;
}

}  // namespace condmaj
