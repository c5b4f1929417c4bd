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

#include "condmaj/random.hpp"

#include <algorithm>
#include <numeric>

namespace condmaj::sampling {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace {

Vector flat_dirichlet(Rng& rng, Eigen::Index n) {
  std::exponential_distribution<double> ex(1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = ex(rng);
  return v / v.sum();
}

CMatrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

}  // namespace

ProbVector prob_vector(Rng& rng, Eigen::Index n) { return ProbVector(flat_dirichlet(rng, n)); }

JointDistribution joint(Rng& rng, Eigen::Index n, Eigen::Index l) {
  const Vector v = flat_dirichlet(rng, n * l);
  return JointDistribution(Eigen::Map<const Matrix>(v.data(), n, l));
}

DoublyStochasticMatrix doubly_stochastic(Rng& rng, Eigen::Index n, int terms) {
  const Vector w = flat_dirichlet(rng, terms);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  Matrix d = Matrix::Zero(n, n);
  for (int k = 0; k < terms; ++k) {
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < n; ++i) d(i, perm[static_cast<std::size_t>(i)]) += w(k);
  }
  return DoublyStochasticMatrix(std::move(d));
}

RowStochasticMatrix row_stochastic(Rng& rng, Eigen::Index l, Eigen::Index m) {
  Matrix t(l, m);
  for (Eigen::Index y = 0; y < l; ++y) t.row(y) = flat_dirichlet(rng, m).transpose();
  return RowStochasticMatrix(std::move(t));
}

JointDistribution ccr(Rng& rng, const JointDistribution& p, Eigen::Index m, int terms) {
  const Matrix t = row_stochastic(rng, p.cols(), m).matrix();
  std::vector<Matrix> parts(static_cast<std::size_t>(terms), Matrix::Zero(p.cols(), m));
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    for (Eigen::Index w = 0; w < m; ++w) {
      const Vector split = flat_dirichlet(rng, terms);
      for (int j = 0; j < terms; ++j) parts[static_cast<std::size_t>(j)](y, w) = t(y, w) * split(j);
    }
  }
  Matrix q = Matrix::Zero(p.rows(), m);
  for (int j = 0; j < terms; ++j) {
    q += doubly_stochastic(rng, p.rows()).matrix() * p.matrix() * parts[static_cast<std::size_t>(j)];
  }
  return JointDistribution::normalized(std::move(q));
}

CVector haar_state(Rng& rng, Eigen::Index d) {
  CVector v = ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

CMatrix haar_unitary(Rng& rng, Eigen::Index d) {
  const CMatrix z = ginibre(rng, d, d);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

DensityMatrix density(Rng& rng, Eigen::Index d, Eigen::Index rank) {
  const Vector w = flat_dirichlet(rng, rank);
  CMatrix rho = CMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const CVector v = haar_state(rng, d);
    rho += w(k) * v * v.adjoint();
  }
  return DensityMatrix(std::move(rho));
}

CQState cq_state(Rng& rng, Eigen::Index n, Eigen::Index d, bool pure) {
  ProbVector q = prob_vector(rng, n);
  std::vector<DensityMatrix> states;
  for (Eigen::Index x = 0; x < n; ++x) {
    states.push_back(pure ? DensityMatrix::pure(haar_state(rng, d)) : density(rng, d, d));
  }
  return CQState(std::move(q), std::move(states));
}

CQState qcr(Rng& rng, const CQState& sigma, Eigen::Index d_out, int terms) {
  const Eigen::Index d = sigma.dim();
  const auto n = static_cast<Eigen::Index>(sigma.size());
  // An isometry from C^d into (terms x kraus x d_out) splits into the Kraus
  // operators of a random instrument with `terms` outcomes.
  const Eigen::Index kraus = d;
  const Eigen::Index big = static_cast<Eigen::Index>(terms) * kraus * d_out;
  const CMatrix iso = haar_unitary(rng, std::max(big, d)).leftCols(d).topRows(big);

  std::vector<CMatrix> unnorm(static_cast<std::size_t>(n), CMatrix::Zero(d_out, d_out));
  for (int j = 0; j < terms; ++j) {
    const Matrix dj = doubly_stochastic(rng, n).matrix();
    for (Eigen::Index src = 0; src < n; ++src) {
      CMatrix branch = CMatrix::Zero(d_out, d_out);
      for (Eigen::Index r = 0; r < kraus; ++r) {
        const CMatrix k = iso.block((static_cast<Eigen::Index>(j) * kraus + r) * d_out, 0, d_out, d);
        branch += k * sigma.states()[static_cast<std::size_t>(src)].matrix() * k.adjoint();
      }
      branch *= sigma.probs()[static_cast<std::size_t>(src)];
      for (Eigen::Index x = 0; x < n; ++x) unnorm[static_cast<std::size_t>(x)] += dj(x, src) * branch;
    }
  }
  Vector probs(n);
  std::vector<DensityMatrix> states;
  for (Eigen::Index x = 0; x < n; ++x) {
    CMatrix& rho = unnorm[static_cast<std::size_t>(x)];
    rho = 0.5 * (rho + rho.adjoint()).eval();
    probs(x) = rho.trace().real();
    if (probs(x) > 1e-14) {
      states.emplace_back(rho / probs(x));
    } else {
      probs(x) = 0.0;
      states.emplace_back(CMatrix::Identity(d_out, d_out) / static_cast<double>(d_out));
    }
  }
  return CQState(ProbVector(probs / probs.sum()), std::move(states));
}

}  // namespace condmaj::sampling
