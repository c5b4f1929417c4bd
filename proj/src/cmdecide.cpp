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

#include "condmaj/cmdecide.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "condmaj/closedform.hpp"
#include "condmaj/error.hpp"
#include "condmaj/lp.hpp"

namespace condmaj {

std::string_view method_name(DecisionMethod method) {
  switch (method) {
    case DecisionMethod::LP: return "LP";
    case DecisionMethod::SpecialN1: return "SpecialN1";
    case DecisionMethod::SpecialM1: return "SpecialM1";
    case DecisionMethod::SpecialL1: return "SpecialL1";
    case DecisionMethod::SpecialL2: return "SpecialL2";
  }
  return "LP";
}

namespace {

Vector padded_sorted(const Vector& v, Eigen::Index n) {
  Vector out = Vector::Zero(n);
  out.head(v.size()) = v;
  return sorted_desc(out);
}

// Completes a sub-stochastic T to a row-stochastic one.
Matrix complete_rows(Matrix t) {
  t = t.cwiseMax(0.0);
  for (Eigen::Index y = 0; y < t.rows(); ++y) {
    const double s = t.row(y).sum();
    if (s > 1.0) {
      t.row(y) /= s;
    } else {
      t(y, 0) += 1.0 - s;
    }
  }
  return t;
}

std::optional<Witness> build_witness(const JointDistribution& p, const JointDistribution& q,
                                     const Matrix& t_raw, double tol) {
  const Matrix t = complete_rows(t_raw);
  const Matrix pt = p.matrix() * t;
  std::vector<DoublyStochasticMatrix> ds;
  ds.reserve(static_cast<std::size_t>(q.cols()));
  try {
    for (Eigen::Index w = 0; w < q.cols(); ++w) {
      ds.push_back(transfer_matrix(q.matrix().col(w), pt.col(w), tol));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MajorizationViolation) return std::nullopt;
    throw;
  }
  Witness wit{RowStochasticMatrix(t), std::move(ds)};
  const double err = (reconstruct(wit, p) - q.matrix()).cwiseAbs().maxCoeff();
  if (!(err <= tol)) return std::nullopt;
  return wit;
}

FarkasCertificate certificate_from_dual(const lp::Instance& inst, const lp::Result& res) {
  const Matrix l = lower_ones(inst.n);
  FarkasCertificate cert;
  cert.a_matrix = Matrix::Zero(inst.n, inst.m);
  for (Eigen::Index w = 0; w < inst.m; ++w) {
    cert.a_matrix.col(w) = l.transpose() * res.dual.segment(w * inst.n, inst.n);
  }
  cert.gap = -res.dual.dot(inst.b);
  return cert;
}

CMDecision decide_lp(const JointDistribution& p, const JointDistribution& q,
                     const DecideOptions& options) {
  const lp::Instance inst = lp::build_instance(p, q);
  const lp::Result res = lp::solve_feasibility(inst.gamma, inst.b);
  CMDecision out{res.feasible, std::nullopt, std::nullopt, DecisionMethod::LP, p, q};
  if (res.feasible) {
    Matrix t(inst.l, inst.m);
    for (Eigen::Index w = 0; w < inst.m; ++w) {
      for (Eigen::Index y = 0; y < inst.l; ++y) t(y, w) = res.x(w * inst.l + y);
    }
    out.witness = build_witness(p, q, t, options.witness_tol);
    if (!out.witness) {
      throw Error(ErrorCode::NumericalFailure,
                  "LP reported feasibility but the witness does not reproduce Q");
    }
  } else {
    out.certificate = certificate_from_dual(inst, res);
    const double scale = std::max(1.0, out.certificate->a_matrix.maxCoeff());
    if (certificate_slack(*out.certificate, p, q) < -1e-9 * scale ||
        !(out.certificate->gap > 0.0)) {
      throw Error(ErrorCode::NumericalFailure, "dual ray does not certify infeasibility");
    }
  }
  return out;
}

}  // namespace

double phi_a(const Matrix& a, const Vector& v) {
  const Eigen::Index n = std::max(a.rows(), v.size());
  const Vector vs = padded_sorted(v, n);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    best = std::max(best, padded_sorted(a.col(k), n).dot(vs));
  }
  return best;
}

double support_function(const JointDistribution& p, const Matrix& a) {
  double total = 0.0;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    const Vector col = p.matrix().col(y);
    if (col.sum() > 0.0) total += phi_a(a, col);  // Phi_A is positively homogeneous
  }
  return total;
}

double check_phi_certificate(const Matrix& a, const JointDistribution& p,
                             const JointDistribution& q) {
  return support_function(p, a) - support_function(q, a);
}

double certificate_slack(const FarkasCertificate& cert, const JointDistribution& canonical_p,
                         const JointDistribution& canonical_q) {
  const Matrix& a = cert.a_matrix;
  double rhs = 0.0;
  for (Eigen::Index w = 0; w < a.cols(); ++w) rhs += a.col(w).dot(canonical_q.matrix().col(w));
  double lhs = cert.gap;
  for (Eigen::Index y = 0; y < canonical_p.cols(); ++y) {
    lhs += (a.transpose() * canonical_p.matrix().col(y)).maxCoeff();
  }
  return rhs - lhs;
}

Matrix reconstruct(const Witness& witness, const JointDistribution& canonical_p) {
  const Matrix pt = canonical_p.matrix() * witness.t.matrix();
  Matrix out(pt.rows(), pt.cols());
  for (Eigen::Index w = 0; w < pt.cols(); ++w) {
    out.col(w) = witness.d[static_cast<std::size_t>(w)].matrix() * pt.col(w);
  }
  return out;
}

CMDecision conditionally_majorizes(const JointDistribution& p_in, const JointDistribution& q_in,
                                   const DecideOptions& options) {
  JointDistribution p_raw = p_in, q_raw = q_in;
  if (p_raw.rows() != q_raw.rows()) {
    if (!options.pad_rows) {
      throw Error(ErrorCode::DimensionMismatch,
                  "P has " + std::to_string(p_raw.rows()) + " rows but Q has " +
                      std::to_string(q_raw.rows()) + "; enable row padding to compare");
    }
    const auto n = std::max(p_raw.rows(), q_raw.rows());
    p_raw = p_raw.padded_rows(n);
    q_raw = q_raw.padded_rows(n);
  }
  const JointDistribution p = standard_form(p_raw).canonical;
  const JointDistribution q = standard_form(q_raw).canonical;
  if (options.force_lp) return decide_lp(p, q, options);

  const Eigen::Index n = p.rows(), l = p.cols(), m = q.cols();
  bool verdict = false;
  DecisionMethod method = DecisionMethod::LP;
  Matrix t;
  if (n == 1) {
    method = DecisionMethod::SpecialN1;
    verdict = true;
    t = q.memory_marginal().transpose().replicate(l, 1);
  } else if (m == 1) {
    method = DecisionMethod::SpecialM1;
    verdict = majorizes(p.register_marginal(), q.matrix().col(0), kEpsProb);
    t = Matrix::Ones(l, 1);
  } else if (l == 1) {
    method = DecisionMethod::SpecialL1;
    verdict = true;
    for (Eigen::Index w = 0; w < m && verdict; ++w) {
      verdict = majorizes(p.matrix().col(0), q.conditional(w), kEpsProb);
    }
    t = q.memory_marginal().transpose();
  } else if (l == 2) {
    method = DecisionMethod::SpecialL2;
    const L2Result r = decide_l2(p, q, options.witness_tol);
    verdict = r.verdict;
    if (verdict) t = l2_transition(r.workspace);
  } else {
    return decide_lp(p, q, options);
  }

  if (verdict) {
    auto wit = build_witness(p, q, t, options.witness_tol);
    if (wit) return CMDecision{true, std::move(wit), std::nullopt, method, p, q};
    return decide_lp(p, q, options);
  }
  // The closed forms give no certificate; read one off the dual LP. Should the
  // LP disagree at the tolerance boundary, its verdict (with witness) stands.
  CMDecision lp_result = decide_lp(p, q, options);
  if (!lp_result.verdict) lp_result.method = method;
  return lp_result;
}

}  // namespace condmaj
