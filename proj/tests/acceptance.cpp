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

// Acceptance suite. Each criterion prints one PASS or FAIL line with the
// measured quantities; the process exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "condmaj/bounds.hpp"
#include "condmaj/closedform.hpp"
#include "condmaj/cmdecide.hpp"
#include "condmaj/measures.hpp"
#include "condmaj/quantum.hpp"
#include "condmaj/random.hpp"

using namespace condmaj;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

DecideOptions forced_lp() {
  DecideOptions o;
  o.force_lp = true;
  return o;
}

bool lp_verdict(const JointDistribution& p, const JointDistribution& q) {
  return conditionally_majorizes(p, q, forced_lp()).verdict;
}

JointDistribution perturb(sampling::Rng& rng, const JointDistribution& q, double scale) {
  std::uniform_real_distribution<double> u(0.0, scale);
  Matrix m = q.matrix();
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] += u(rng);
  return JointDistribution::normalized(m);
}

// Row and column shuffles plus a proportional split of one column: a matrix
// equivalent to p under conditional majorization.
JointDistribution equivalent_copy(sampling::Rng& rng, const JointDistribution& p) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  Matrix m = p.matrix();
  const Eigen::Index l = m.cols();
  Matrix split(m.rows(), l + 1);
  const double f = u(rng);
  split.leftCols(l) = m;
  split.col(l) = (1 - f) * m.col(0);
  split.col(0) *= f;
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(l + 1));
  std::iota(cols.begin(), cols.end(), Eigen::Index{0});
  std::shuffle(cols.begin(), cols.end(), rng);
  Matrix out(m.rows(), l + 1);
  for (Eigen::Index y = 0; y <= l; ++y) {
    Vector c = split.col(cols[static_cast<std::size_t>(y)]);
    std::shuffle(c.data(), c.data() + c.size(), rng);
    out.col(y) = c;
  }
  return JointDistribution(out);
}

double certificate_violation(const FarkasCertificate& cert, const JointDistribution& cp, const JointDistribution& cq) {
  const Matrix& a = cert.a_matrix;
  double lhs = 0.0;
  for (Eigen::Index w = 0; w < cq.cols(); ++w) lhs += a.col(w).dot(cq.matrix().col(w));
  double rhs = 0.0;
  for (Eigen::Index y = 0; y < cp.cols(); ++y) rhs += (a.transpose() * cp.matrix().col(y)).maxCoeff();
  return lhs - rhs;
}

// Two-term decomposition of a qubit state by a real rotation inside its
// eigenbasis; see the quantum unit tests.
bool rotation_oracle(const DensityMatrix& sigma, double q0, double q1) {
  if (q0 < q1) std::swap(q0, q1);
  const Vector& l = sigma.eigenvalues();
  const CMatrix& e = sigma.eigenvectors();
  double c2;
  if (l(0) - l(1) < 1e-12) {
    if (std::abs(q0 - l(0)) > 1e-9) return false;
    c2 = 1.0;
  } else {
    c2 = (q0 - l(1)) / (l(0) - l(1));
  }
  if (c2 < -1e-12 || c2 > 1.0 + 1e-12) return false;
  const double c = std::sqrt(std::clamp(c2, 0.0, 1.0));
  const double s = std::sqrt(std::clamp(1.0 - c2, 0.0, 1.0));
  const CVector v0 = c * std::sqrt(l(0)) * e.col(0) + s * std::sqrt(l(1)) * e.col(1);
  const CVector v1 = -s * std::sqrt(l(0)) * e.col(0) + c * std::sqrt(l(1)) * e.col(1);
  if (std::abs(v0.squaredNorm() - q0) > 1e-9 || std::abs(v1.squaredNorm() - q1) > 1e-9) return false;
  return ((v0 * v0.adjoint() + v1 * v1.adjoint()) - sigma.matrix()).cwiseAbs().maxCoeff() <= kEpsPsd;
}

void closed_form_vs_lp() {
  const auto t0 = Clock::now();
  auto rng = sampling::make_rng(1001);
  int disagreements = 0, trues = 0, done = 0;
  while (done < 2000) {
    const Eigen::Index n = 2 + done % 4, m = 1 + (done / 4) % 4;
    const auto p = sampling::joint(rng, n, 2);
    if (standard_form(p).canonical.cols() != 2) continue;
    const auto image = sampling::ccr(rng, p, m);
    // Images are always true; perturbed images and fresh draws supply the
    // false side and the instances near the boundary.
    JointDistribution q = image;
    if (done % 4 == 1) q = perturb(rng, image, 0.1);
    if (done % 4 == 2) q = sampling::joint(rng, n, m);
    if (done % 4 == 3) q = perturb(rng, image, 1.0);
    const bool closed = decide_l2(p, q, 1e-7).verdict;
    if (closed != lp_verdict(p, q)) ++disagreements;
    trues += closed;
    ++done;
  }
  const double secs = seconds_since(t0);
  report(1, "two-column closed form vs LP", disagreements == 0 && secs < 60,
         fmt("%d disagreements in %d instances (%d true), %.1f s", disagreements, done, trues, secs));
}

void special_cases_vs_lp() {
  auto rng = sampling::make_rng(1002);
  int m1_bad = 0, l1_bad = 0, m1_true = 0, l1_true = 0;
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Index n = 2 + i % 4, l = 1 + (i / 4) % 3;
    const auto p = sampling::joint(rng, n, l);
    const auto q = i % 2 == 0 ? sampling::ccr(rng, p, 1) : sampling::joint(rng, n, 1);
    // The register marginal of the standard form (sorted columns).
    const Vector pm = standard_form(p).canonical.register_marginal();
    const bool marginal = majorizes(pm, Vector(q.register_marginal()));
    const auto d = conditionally_majorizes(p, q);
    const bool path_ok = d.method == DecisionMethod::SpecialM1;
    if (marginal != lp_verdict(p, q) || d.verdict != marginal || !path_ok) ++m1_bad;
    m1_true += marginal;
  }
  for (int i = 0; i < 1000; ++i) {
    const Eigen::Index n = 2 + i % 4, m = 1 + (i / 4) % 3;
    const auto p = sampling::joint(rng, n, 1);
    const auto q = i % 2 == 0 ? sampling::ccr(rng, p, m) : sampling::joint(rng, n, m);
    bool per_conditional = true;
    for (Eigen::Index w = 0; w < q.cols(); ++w) {
      per_conditional = per_conditional && majorizes(p.conditional(0), q.conditional(w));
    }
    const auto d = conditionally_majorizes(p, q);
    const bool path_ok = d.method == DecisionMethod::SpecialL1 || d.method == DecisionMethod::SpecialM1;
    if (per_conditional != lp_verdict(p, q) || d.verdict != per_conditional || !path_ok) ++l1_bad;
    l1_true += per_conditional;
  }
  report(2, "single-column special cases vs LP", m1_bad == 0 && l1_bad == 0,
         fmt("m=1: %d disagreements (%d true); l=1: %d disagreements (%d true); 1000 each", m1_bad,
             m1_true, l1_bad, l1_true));
}

void witness_and_certificate_soundness() {
  auto rng = sampling::make_rng(1003);
  int trues = 0, falses = 0, bad_witness = 0, bad_cert = 0;
  double worst_residual = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Eigen::Index n = 1 + i % 4, l = 1 + (i / 4) % 3, m = 1 + (i / 12) % 3;
    const auto p = sampling::joint(rng, n, l);
    JointDistribution q = sampling::ccr(rng, p, m);
    if (i % 3 == 1) q = perturb(rng, q, 0.05);
    if (i % 3 == 2) q = sampling::joint(rng, n, m);
    const auto d = conditionally_majorizes(p, q, i % 2 == 0 ? DecideOptions{} : forced_lp());
    if (d.verdict) {
      ++trues;
      if (!d.witness) {
        ++bad_witness;
        continue;
      }
      const double r = (reconstruct(*d.witness, d.canonical_p) - d.canonical_q.matrix()).cwiseAbs().maxCoeff();
      worst_residual = std::max(worst_residual, r);
      if (r > 1e-7) ++bad_witness;
    } else {
      ++falses;
      if (!d.certificate || !(d.certificate->gap > 0)) {
        ++bad_cert;
        continue;
      }
      const double v = certificate_violation(*d.certificate, d.canonical_p, d.canonical_q);
      const double phi = check_phi_certificate(d.certificate->a_matrix, p, q);
      if (v < d.certificate->gap / 2 || phi > -d.certificate->gap / 2) ++bad_cert;
    }
  }
  report(3, "witness and certificate soundness", bad_witness == 0 && bad_cert == 0 && trues > 0 && falses > 0,
         fmt("%d true (worst residual %.2e, %d bad), %d false (%d bad certificates)", trues, worst_residual,
             bad_witness, falses, bad_cert));
}

void partial_order() {
  auto rng = sampling::make_rng(1004);
  int refl = 0, trans = 0, anti = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = sampling::joint(rng, 1 + i % 5, 1 + i % 4);
    refl += conditionally_majorizes(p, p).verdict;
  }
  for (int i = 0; i < 500; ++i) {
    const auto p = sampling::joint(rng, 2 + i % 3, 1 + i % 3);
    const auto q = sampling::ccr(rng, p, 1 + (i / 3) % 3);
    const auto r = sampling::ccr(rng, q, 1 + (i / 9) % 3);
    trans += conditionally_majorizes(p, r).verdict;
  }
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = sampling::joint(rng, 2 + i % 3, 1 + i % 3);
    const auto q = equivalent_copy(rng, p);
    const auto pq = conditionally_majorizes(p, q);
    const auto qp = conditionally_majorizes(q, p);
    if (!(pq.verdict && qp.verdict) || pq.canonical_p.cols() != pq.canonical_q.cols()) continue;
    const double diff = (pq.canonical_p.matrix() - pq.canonical_q.matrix()).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    anti += diff <= 1e-7;
  }
  report(4, "partial order", refl == 500 && trans == 500 && anti == 200,
         fmt("reflexive %d/500, transitive %d/500, antisymmetric %d/200 (max canonical gap %.1e)", refl, trans,
             anti, worst));
}

void measure_monotonicity() {
  auto rng = sampling::make_rng(1005);
  const std::vector<PhiFunction> phis{PhiFunction::shannon(), PhiFunction::guess(), PhiFunction::renyi(0.5)};
  int ccr_bad = 0, lp_bad = 0, lp_pairs = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = sampling::joint(rng, 2 + i % 4, 1 + i % 3);
    const auto q = sampling::ccr(rng, p, 1 + (i / 4) % 3, 1 + i % 3);
    for (const auto& phi : phis) ccr_bad += u_phi(p, phi) > u_phi(q, phi) + 1e-9;
  }
  for (int i = 0; i < 1500; ++i) {
    const auto p = sampling::joint(rng, 2 + i % 3, 1 + i % 3);
    const auto q = i % 2 == 0 ? perturb(rng, sampling::ccr(rng, p, 1 + i % 3), 0.02)
                              : sampling::joint(rng, p.rows(), 1 + i % 2);
    if (!lp_verdict(p, q)) continue;
    ++lp_pairs;
    for (const auto& phi : phis) lp_bad += u_phi(p, phi) > u_phi(q, phi) + 1e-9;
  }
  report(5, "measure monotonicity", ccr_bad == 0 && lp_bad == 0 && lp_pairs > 0,
         fmt("%d violations over 500 CCRs x 3 measures; %d violations over %d LP-verified pairs", ccr_bad, lp_bad,
             lp_pairs));
}

void tripartite_eta() {
  const auto t0 = Clock::now();
  const auto b1 = MeasurementBasis::computational(2), b2 = MeasurementBasis::fourier(2);
  const double eta = eta_closed_form(overlap_constant(b1, b2));
  const double mc = eta_monte_carlo(b1, b2, 100000, 0);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(eta - 0.7285533906) < 5e-11 && mc >= 0.72755 && mc <= 0.72855339 + 1e-9 && secs < 30;
  report(6, "tripartite eta", ok, fmt("closed form %.12f, Monte Carlo %.12f, %.2f s", eta, mc, secs));
}

void tripartite_soundness() {
  const auto t0 = Clock::now();
  auto rng = sampling::make_rng(1007);
  const auto b1 = MeasurementBasis::computational(2), b2 = MeasurementBasis::fourier(2);
  const auto bound = tripartite_bound(b1, b2, 0.9);
  int confirmed = 0;
  for (int i = 0; i < 200; ++i) {
    const CVector psi = sampling::haar_state(rng, 8);
    const auto mb = MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2));
    const auto me = MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2));
    confirmed += lp_verdict(bound.omega_matrix.as_matrix, tripartite_distribution(psi, b1, b2, mb, me));
  }
  const double secs = seconds_since(t0);
  report(7, "tripartite bound soundness", confirmed == 200 && secs < 120,
         fmt("LP confirms %d/200 at alpha 0.9, %.1f s", confirmed, secs));
}

void quantum_bound_consistency() {
  const auto t0 = Clock::now();
  auto rng = sampling::make_rng(1008);
  const auto h = PhiFunction::shannon();
  SearchBudget budget;  // grid 4096
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int consistent = 0;
  double worst_excess = -1.0, worst_norm = 0.0;
  for (int i = 0; i < 200; ++i) {
    const CQState sigma = sampling::cq_state(rng, 2 + i % 2, 2, true);
    const std::size_t j = static_cast<std::size_t>(i) % sigma.size();
    const double qj = sigma.probs()[j];
    for (int s = 0; s <= 20; ++s) {
      worst_norm = std::max(worst_norm, std::abs(pure_case_bound(sigma, j, qj * s / 20.0).psi.norm() - 1.0));
    }
    const auto omega = pure_case_bound(sigma, j, qj * u(rng));
    budget.seed = static_cast<std::uint64_t>(i);
    const double excess =
        min_classical_uncertainty(omega.assemble(), h, budget) - min_classical_uncertainty(sigma, h, budget);
    worst_excess = std::max(worst_excess, excess);
    consistent += excess <= 1e-3;
  }
  const double secs = seconds_since(t0);
  report(8, "pure-state quantum bound", consistent == 200 && worst_norm <= 1e-9,
         fmt("%d/200 consistent (max excess %.2e), max |norm-1| %.1e, %.1f s", consistent, worst_excess, worst_norm,
             secs));
}

void bipartite_bound_checks() {
  const auto t0 = Clock::now();
  const auto comp = MeasurementBasis::computational(2), had = MeasurementBasis::fourier(2);
  const auto bell = bipartite_bound(ProbVector{0.5, 0.5}, comp, had, 0, 0, 1, 1, 0.25);
  const double s = std::sqrt(0.75);
  const Eigen::Vector4cd golden(0.0, 0.5 / s, 0.5 / s, 0.5 / s);
  const double golden_err = (bell.psi - golden).cwiseAbs().maxCoeff();

  auto rng = sampling::make_rng(1009);
  const auto h = PhiFunction::shannon();
  SearchBudget budget;
  budget.grid = 256;
  budget.povm_samples = 128;
  const StateMeasure measure = [&](const CQState& st) { return min_classical_uncertainty(st, h, budget); };
  const std::vector<double> grid{0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0};
  int below = 0;
  double worst = -1.0;
  for (int i = 0; i < 100; ++i) {
    const auto b = bipartite_bound(sampling::prob_vector(rng, 2),
                                   MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2)),
                                   MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2)), 0, 0, 1, 1, 0.0);
    SearchBudget direct = budget;
    direct.grid = 2048;
    direct.povm_samples = 1024;
    const double floor = guu_lower_bound(b, measure, grid);
    const double actual = min_classical_uncertainty(b.product_state(), h, direct);
    worst = std::max(worst, floor - actual);
    below += floor <= actual + 1e-3;
  }
  const double secs = seconds_since(t0);
  report(9, "bipartite bound", golden_err <= 1e-12 && below == 100,
         fmt("golden psi error %.1e; floor below direct measure %d/100 (max excess %.2e), %.1f s", golden_err, below,
             worst, secs));
}

void decomposition_predicate() {
  auto rng = sampling::make_rng(1010);
  int agree = 0, trues = 0;
  for (int i = 0; i < 500; ++i) {
    const auto sigma = sampling::density(rng, 2, 2);
    const auto q = sampling::prob_vector(rng, 2);
    const bool pred = decomposition_exists(sigma, q);
    agree += pred == rotation_oracle(sigma, q[0], q[1]);
    trues += pred;
  }
  report(10, "decomposition predicate vs rotation oracle", agree == 500,
         fmt("%d/500 agree (%d admit a decomposition)", agree, trues));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<std::function<void()>> criteria{
      closed_form_vs_lp,     special_cases_vs_lp,       witness_and_certificate_soundness,
      partial_order,         measure_monotonicity,      tripartite_eta,
      tripartite_soundness,  quantum_bound_consistency, bipartite_bound_checks,
      decomposition_predicate};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL (exception) %s\n", e.what());
      ++g_failures;
    }
  }
  std::printf("%d of %zu criteria failed, %.1f s total\n", g_failures, criteria.size(), seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
