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

#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "condmaj/bounds.hpp"
#include "condmaj/cli.hpp"
#include "condmaj/closedform.hpp"
#include "condmaj/cmdecide.hpp"
#include "condmaj/error.hpp"
#include "condmaj/measures.hpp"
#include "condmaj/random.hpp"

namespace condmaj::cli {

namespace {

DecideOptions lp_only() {
  DecideOptions o;
  o.force_lp = true;
  return o;
}

}  // namespace

int run_selftest(std::ostream& log, unsigned long long seed) {
  int failures = 0;
  const auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = std::string(" (") + e.what() + ")";
    }
    log << (ok ? "PASS " : "FAIL ") << name << detail << "\n";
    if (!ok) ++failures;
  };
  auto rng = sampling::make_rng(seed, 0xc0ffee);

  check("standard form merges proportional columns", [] {
    const auto sf = standard_form(JointDistribution{{0.5, 0.0}, {0.0, 0.5}});
    return sf.canonical.cols() == 1 && std::abs(sf.canonical(0, 0) - 1.0) < 1e-15;
  });

  check("transfer matrix reproduces its target", [&] {
    for (int i = 0; i < 50; ++i) {
      const ProbVector a = sampling::prob_vector(rng, 5);
      const Vector q = sampling::doubly_stochastic(rng, 5).matrix() * a.entries();
      const auto d = transfer_matrix(ProbVector(q), a);
      if ((d.matrix() * a.entries() - q).cwiseAbs().maxCoeff() > kEpsWit) return false;
    }
    return true;
  });

  check("two-column closed form agrees with the LP", [&] {
    for (int i = 0; i < 100; ++i) {
      const auto p = sampling::joint(rng, 3, 2);
      const auto q = i % 2 ? sampling::ccr(rng, p, 3) : sampling::joint(rng, 3, 3);
      const auto d = conditionally_majorizes(p, q);
      if (d.method == DecisionMethod::SpecialL2 &&
          d.verdict != conditionally_majorizes(p, q, lp_only()).verdict) {
        return false;
      }
    }
    return true;
  });

  check("witnesses and certificates are sound", [&] {
    for (int i = 0; i < 60; ++i) {
      const auto p = sampling::joint(rng, 3, 3);
      const auto q = i % 2 ? sampling::ccr(rng, p, 2) : sampling::joint(rng, 3, 2);
      const auto d = conditionally_majorizes(p, q, lp_only());
      if (d.verdict) {
        const double e = (reconstruct(*d.witness, d.canonical_p) - d.canonical_q.matrix()).cwiseAbs().maxCoeff();
        if (e > kEpsWit) return false;
      } else if (check_phi_certificate(d.certificate->a_matrix, p, q) > -d.certificate->gap / 2) {
        return false;
      }
    }
    return true;
  });

  check("entropy never decreases under random relabelings", [&] {
    const PhiFunction phis[] = {PhiFunction::shannon(), PhiFunction::guess(), PhiFunction::renyi(0.5)};
    for (int i = 0; i < 50; ++i) {
      const auto p = sampling::joint(rng, 4, 3);
      const auto q = sampling::ccr(rng, p, 3);
      for (const auto& phi : phis) {
        if (u_phi(p, phi) > u_phi(q, phi) + 1e-9) return false;
      }
    }
    return true;
  });

  check("Monte-Carlo eta stays below the closed form", [&] {
    const auto b1 = MeasurementBasis::computational(2), b2 = MeasurementBasis::fourier(2);
    const double eta = eta_closed_form(overlap_constant(b1, b2));
    const double mc = eta_monte_carlo(b1, b2, 2000, seed);
    return mc <= eta + 1e-9 && mc >= eta - 1e-3;
  });

  check("tripartite bound holds on random states", [&] {
    const auto b1 = MeasurementBasis::computational(2), b2 = MeasurementBasis::fourier(2);
    const auto tb = tripartite_bound(b1, b2, 0.9);
    for (int i = 0; i < 20; ++i) {
      const CVector psi = sampling::haar_state(rng, 8);
      const auto q = tripartite_distribution(psi, b1, b2,
                                             MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2)),
                                             MeasurementBasis::from_unitary(sampling::haar_unitary(rng, 2)));
      if (!conditionally_majorizes(tb.omega_matrix.as_matrix, q, lp_only()).verdict) return false;
    }
    return true;
  });

  check("pure-case quantum bound is consistent with the measure", [&] {
    SearchBudget budget{256, 64, seed, true};
    for (int i = 0; i < 5; ++i) {
      const CQState sigma = sampling::cq_state(rng, 2, 2, true);
      const auto b = pure_case_bound(sigma, 0, 0.5 * sigma.probs()[0]);
      if (min_classical_uncertainty(b.assemble(), PhiFunction::shannon(), budget) >
          min_classical_uncertainty(sigma, PhiFunction::shannon(), budget) + 1e-3) {
        return false;
      }
    }
    return true;
  });

  check("decomposition predicate matches the spectrum test", [&] {
    for (int i = 0; i < 50; ++i) {
      const auto rho = sampling::density(rng, 2, 2);
      const auto q = sampling::prob_vector(rng, 2);
      const bool expect = q.sorted_desc()(0) <= rho.eigenvalues()(0) + kEpsProb;
      if (decomposition_exists(rho, q) != expect) return false;
    }
    return true;
  });

  return failures;
}

}  // namespace condmaj::cli
