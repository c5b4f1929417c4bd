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

#include "condmaj/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "condmaj/cmdecide.hpp"
#include "condmaj/error.hpp"

namespace condmaj {

namespace {

// Sign classification of mu_k; ratios nu/mu with |mu| below this are never formed.
constexpr double kMuTol = 1e-12;

void require_two_columns(const JointDistribution& p, const JointDistribution& q) {
  if (p.cols() != 2) {
    throw Error(ErrorCode::ShapeError,
                "P must have exactly two columns, got " + std::to_string(p.cols()));
  }
  if (p.rows() != q.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "P and Q must have the same number of rows");
  }
}

}  // namespace

L2Result decide_l2(const JointDistribution& p_in, const JointDistribution& q_in, double tol) {
  require_two_columns(p_in, q_in);
  const JointDistribution p = standard_form(p_in).canonical;
  const JointDistribution q = standard_form(q_in).canonical;
  if (p.cols() != 2) {
    throw Error(ErrorCode::PreconditionViolated,
                "the columns of P are proportional; the single-column test applies");
  }
  const Eigen::Index n = p.rows(), m = q.cols();

  L2Result res;
  L2Workspace& ws = res.workspace;
  ws.p = p.matrix().col(0).sum();
  ws.q = q.memory_marginal();
  const Vector c2 = p.conditional(1);
  ws.mu = prefix_sums(p.conditional(0) - c2);
  ws.mu(n - 1) = 0.0;
  for (Eigen::Index w = 0; w < m; ++w) {
    Vector nu = prefix_sums(q.conditional(w) - c2);
    nu(n - 1) = 0.0;
    ws.nu.push_back(std::move(nu));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (ws.mu(k) > kMuTol) {
      ws.iplus.push_back(k);
    } else if (ws.mu(k) < -kMuTol) {
      ws.iminus.push_back(k);
    } else {
      ws.izero.push_back(k);
    }
  }

  ws.alpha.resize(m);
  ws.beta.resize(m);
  ws.w_zero = ws.izero.empty() ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
  double w_zero_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index w = 0; w < m; ++w) {
    const Vector& nu = ws.nu[static_cast<std::size_t>(w)];
    double lo = 0.0;
    for (auto k : ws.iplus) lo = std::max(lo, nu(k) / ws.mu(k));
    double hi = 1.0;
    for (auto k : ws.iminus) hi = std::min(hi, nu(k) / ws.mu(k));
    for (auto k : ws.izero) w_zero_max = std::max(w_zero_max, nu(k));
    ws.alpha(w) = ws.q(w) / ws.p * lo;
    ws.beta(w) = ws.q(w) / ws.p * hi;
  }
  if (!ws.izero.empty()) ws.w_zero = -w_zero_max;
  ws.w_plus = 1.0 - ws.alpha.sum();
  ws.w_minus = ws.beta.sum() - 1.0;
  ws.w_one = (ws.beta - ws.alpha).minCoeff();

  const double e = -tol;
  res.verdict = ws.w_zero >= e && ws.w_one >= e && ws.w_plus >= e && ws.w_minus >= e;
  return res;
}

Matrix l2_transition(const L2Workspace& ws) {
  const Eigen::Index m = ws.alpha.size();
  const double sa = ws.alpha.sum(), sb = ws.beta.sum();
  // Any point of the box [alpha, beta] on the simplex works; take the one on
  // the segment between the two corners.
  const double lambda = sb - sa > 1e-15 ? std::clamp((1.0 - sa) / (sb - sa), 0.0, 1.0) : 0.0;
  const Vector first = ws.alpha + lambda * (ws.beta - ws.alpha);
  Matrix t(2, m);
  for (Eigen::Index w = 0; w < m; ++w) {
    t(0, w) = first(w);
    t(1, w) = (ws.q(w) - ws.p * first(w)) / (1.0 - ws.p);
  }
  return t;
}

bool decide_gorol(const JointDistribution& p, const JointDistribution& q, double tol) {
  require_two_columns(p, q);
  const Eigen::Index n = p.rows();
  for (Eigen::Index y = 0; y < 2; ++y) {
    if (!(p.matrix().col(y).sum() > 0.0)) {
      throw Error(ErrorCode::PreconditionViolated, "P has a zero-weight column",
                  "P column " + std::to_string(y));
    }
  }
  const Vector c1 = sorted_desc(p.conditional(0));
  const Vector c2 = sorted_desc(p.conditional(1));
  if (!majorizes(c1, c2, kEpsProb)) {
    throw Error(ErrorCode::PreconditionViolated,
                "the second conditional of P is not majorized by the first", "P column 1");
  }
  const double pw = p.matrix().col(0).sum();
  const bool point_mass = c1(0) >= 1.0 - kMuTol;
  const Vector pi = prefix_sums(c2);
  const Vector mu = prefix_sums(c1 - c2);

  double needed = 0.0;
  for (Eigen::Index w = 0; w < q.cols(); ++w) {
    const double qw = q.matrix().col(w).sum();
    if (!(qw > 0.0)) continue;
    const Vector cq = sorted_desc(q.conditional(w));
    if (!majorizes(c1, cq, kEpsProb)) {
      throw Error(ErrorCode::PreconditionViolated,
                  "a conditional of Q is not majorized by the first conditional of P",
                  "Q column " + std::to_string(w));
    }
    const Vector cum = prefix_sums(cq);
    double h = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (point_mass) {
        if (1.0 - pi(k) > kMuTol) h = std::max(h, (cum(k) - pi(k)) / (1.0 - pi(k)));
      } else if (mu(k) > kMuTol) {
        h = std::max(h, (cum(k) - pi(k)) / mu(k));
      }
    }
    needed += qw * std::max(0.0, h);
  }
  return pw >= needed - tol;
}

OmegaBoundClassical make_omega_bound(const ProbVector& omega, double alpha) {
  const auto n = static_cast<Eigen::Index>(omega.size());
  Matrix m = Matrix::Zero(n, 2);
  m(0, 0) = alpha;
  m.col(1) = (1.0 - alpha) * omega.entries();
  return OmegaBoundClassical{alpha, omega, JointDistribution(std::move(m))};
}

std::optional<OmegaBoundClassical> build_omega(const ProbVector& omega, double alpha,
                                               const JointDistribution& q) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::DomainError, "alpha must lie in [0, 1]");
  }
  for (std::size_t i = 1; i < omega.size(); ++i) {
    if (omega[i] > omega[i - 1] + kEpsProb) {
      throw Error(ErrorCode::PreconditionViolated, "omega must be sorted non-increasingly",
                  "entry " + std::to_string(i));
    }
  }
  const Eigen::Index n = std::max(static_cast<Eigen::Index>(omega.size()), q.rows());
  Vector om = Vector::Zero(n);
  om.head(static_cast<Eigen::Index>(omega.size())) = omega.entries();
  const JointDistribution qp = q.rows() < n ? q.padded_rows(n) : q;

  double mass = 0.0;
  for (Eigen::Index w = 0; w < qp.cols(); ++w) {
    const double qw = qp.matrix().col(w).sum();
    if (qw > 0.0 && majorizes(om, qp.conditional(w), kEpsProb)) mass += qw;
  }
  if (mass < 1.0 - alpha - kEpsProb) return std::nullopt;

  OmegaBoundClassical bound = make_omega_bound(ProbVector(om), alpha);
  DecideOptions opts;
  opts.force_lp = true;
  if (!conditionally_majorizes(bound.as_matrix, qp, opts).verdict) {
    throw Error(ErrorCode::NumericalFailure, "the LP rejects a bound the construction guarantees");
  }
  return bound;
}

MarkovTail markov_tail(const JointDistribution& q, double r, double beta) {
  if (!(r > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::DomainError, "r and beta must be positive");
  }
  MarkovTail out;
  for (Eigen::Index w = 0; w < q.cols(); ++w) {
    const double qw = q.matrix().col(w).sum();
    if (!(qw > 0.0)) continue;
    if (q.conditional(w).maxCoeff() <= beta + kEpsProb) {
      out.columns.push_back(w);
      out.mass += qw;
    }
  }
  return out;
}

}  // namespace condmaj
