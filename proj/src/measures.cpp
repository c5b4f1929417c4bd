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

#include "condmaj/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "condmaj/error.hpp"
#include "condmaj/random.hpp"

namespace condmaj {

PhiFunction::PhiFunction(Kind kind, double order, std::string name, Callable fn)
    : kind_(kind), order_(order), name_(std::move(name)), fn_(std::move(fn)) {}

PhiFunction PhiFunction::shannon() {
  return PhiFunction(Kind::ShannonEntropy, 1.0, "shannon", [](const Vector& v) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) > 0.0) h -= v(i) * std::log2(v(i));
    }
    return h;
  });
}

PhiFunction PhiFunction::guess() {
  return PhiFunction(Kind::NegMaxComponent, 0.0, "guess",
                     [](const Vector& v) { return 1.0 - v.maxCoeff(); });
}

PhiFunction PhiFunction::renyi(double order) {
  if (!(order > 0.0 && order < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "Renyi entropy is concave only for orders in (0, 1), got " + std::to_string(order));
  }
  return PhiFunction(Kind::RenyiEntropy, order, "renyi:" + std::to_string(order),
                     [order](const Vector& v) {
                       double s = 0.0;
                       for (Eigen::Index i = 0; i < v.size(); ++i) {
                         if (v(i) > 0.0) s += std::pow(v(i), order);
                       }
                       return std::log2(s) / (1.0 - order);
                     });
}

PhiFunction PhiFunction::custom(std::string name, Callable fn) {
  return PhiFunction(Kind::Custom, 0.0, std::move(name), std::move(fn));
}

PhiFunction PhiFunction::parse(const std::string& spec) {
  if (spec == "shannon") return shannon();
  if (spec == "guess") return guess();
  if (spec.rfind("renyi:", 0) == 0) {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(spec.substr(6), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != spec.size() - 6) {
      throw Error(ErrorCode::UsageError, "cannot read the Renyi order in '" + spec + "'");
    }
    return renyi(a);
  }
  throw Error(ErrorCode::UsageError, "unknown measure '" + spec + "'; use shannon, guess or renyi:a");
}

double PhiFunction::operator()(const Vector& v) const { return fn_(v); }

POVM::POVM(std::vector<CMatrix> elements, double tol) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::InvalidInput, "POVM needs at least one element");
  const Eigen::Index d = elements_.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t y = 0; y < elements_.size(); ++y) {
    const CMatrix& e = elements_[y];
    const std::string where = "element " + std::to_string(y);
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "POVM elements differ in shape", where);
    }
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::InvalidInput, "POVM element is not Hermitian", where);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) {
      throw Error(ErrorCode::InvalidInput, "POVM element is not positive semidefinite", where);
    }
    total += e;
  }
  if ((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::InvalidInput, "POVM elements do not sum to the identity");
  }
}

POVM POVM::from_vectors(const std::vector<CVector>& vectors, double tol) {
  std::vector<CMatrix> els;
  for (const auto& v : vectors) els.push_back(v * v.adjoint());
  return POVM(std::move(els), tol);
}

namespace {

double u_phi_matrix(const Matrix& p, const PhiFunction& phi) {
  double total = 0.0;
  for (Eigen::Index y = 0; y < p.cols(); ++y) {
    const double py = p.col(y).sum();
    if (py > 0.0) total += py * phi(p.col(y) / py);
  }
  return total;
}

}  // namespace

double u_phi(const JointDistribution& p, const PhiFunction& phi) {
  return u_phi_matrix(p.matrix(), phi);
}

JointDistribution measure_joint(const CQState& sigma, const POVM& povm) {
  if (povm.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "POVM and memory dimensions differ");
  }
  const auto n = static_cast<Eigen::Index>(sigma.size());
  const auto k = static_cast<Eigen::Index>(povm.size());
  Matrix p(n, k);
  for (Eigen::Index x = 0; x < n; ++x) {
    const CMatrix& s = sigma.states()[static_cast<std::size_t>(x)].matrix();
    for (Eigen::Index y = 0; y < k; ++y) {
      const double v = (s * povm.elements()[static_cast<std::size_t>(y)]).trace().real();
      p(x, y) = std::max(0.0, sigma.probs()[static_cast<std::size_t>(x)] * v);
    }
  }
  return JointDistribution::normalized(std::move(p));
}

namespace {

constexpr std::uint64_t kPovmStream = 1ULL << 32;
constexpr std::uint64_t kRefineStream = 1ULL << 33;
constexpr int kRefineStarts = 3;
constexpr int kRefineIterations = 400;

// The CQ state restricted to the support of rho_B, stored as q_x sigma_x.
struct Compressed {
  std::vector<CMatrix> weighted;
  CMatrix basis;  // d x dim, orthonormal columns
  Eigen::Index dim = 0;
};

Compressed compress(const CQState& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma.memory_state());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 1e-12) keep.push_back(i);
  }
  Compressed c;
  c.dim = static_cast<Eigen::Index>(keep.size());
  c.basis.resize(sigma.dim(), c.dim);
  for (Eigen::Index j = 0; j < c.dim; ++j) {
    c.basis.col(j) = es.eigenvectors().col(keep[static_cast<std::size_t>(j)]);
  }
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    c.weighted.push_back(sigma.probs()[x] * c.basis.adjoint() * sigma.states()[x].matrix() * c.basis);
  }
  return c;
}

Matrix joint_of(const Compressed& c, const CMatrix& m) {
  const auto n = static_cast<Eigen::Index>(c.weighted.size());
  Matrix p(n, m.cols());
  for (Eigen::Index x = 0; x < n; ++x) {
    const CMatrix am = c.weighted[static_cast<std::size_t>(x)] * m;
    for (Eigen::Index y = 0; y < m.cols(); ++y) {
      p(x, y) = std::max(0.0, m.col(y).dot(am.col(y)).real());
    }
  }
  return p;
}

Matrix gaussian(sampling::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix out(rows, 2 * cols);
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = g(rng);
  return out;
}

CMatrix complex_gaussian(sampling::Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  const Matrix r = gaussian(rng, rows, cols);
  CMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = Complex(r(i, 2 * j), r(i, 2 * j + 1));
  }
  return out;
}

// Columns m_y = S^{-1/2} g_y with S = G G^dagger form a rank-one POVM.
bool orthonormalize(const CMatrix& g, CMatrix& out) {
  const CMatrix s = g * g.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  if (es.eigenvalues()(0) < 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())) return false;
  const Vector inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  out = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint() * g;
  return true;
}

// Candidate `index` of the search: grid points first, then random POVMs.
bool candidate(Eigen::Index dim, const SearchBudget& budget, int index, CMatrix& out) {
  if (index < budget.grid) {
    if (dim == 2) {
      const double n = budget.grid;
      const double z = 1.0 - (2.0 * index + 1.0) / n;
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      const double phi = index * std::numbers::pi * (3.0 - std::sqrt(5.0));
      const Complex e(std::cos(phi), std::sin(phi));
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      out.resize(2, 2);
      out << c, -std::conj(e) * s, e * s, c;
      return true;
    }
    auto rng = sampling::make_rng(budget.seed, static_cast<std::uint64_t>(index));
    out = sampling::haar_unitary(rng, dim);
    return true;
  }
  const int j = index - budget.grid;
  auto rng = sampling::make_rng(budget.seed, kPovmStream + static_cast<std::uint64_t>(j));
  const Eigen::Index outcomes = dim + 1 + (j % 2);
  return orthonormalize(complex_gaussian(rng, dim, outcomes), out);
}

struct Scored {
  double value;
  int index;
  CMatrix m;
};

// Random-perturbation hill climb on the POVM generator, deterministic per start.
Scored refine(const Compressed& c, const PhiFunction& phi, Scored start, std::uint64_t stream,
              std::uint64_t seed) {
  auto rng = sampling::make_rng(seed, kRefineStream + stream);
  double step = 0.1;
  for (int it = 0; it < kRefineIterations && step > 1e-9; ++it) {
    CMatrix trial;
    const CMatrix g = start.m + step * complex_gaussian(rng, start.m.rows(), start.m.cols());
    if (!orthonormalize(g, trial)) continue;
    const double v = u_phi_matrix(joint_of(c, trial), phi);
    if (v < start.value) {
      start.value = v;
      start.m = std::move(trial);
      step = std::min(0.5, step * 1.5);
    } else {
      step *= 0.8;
    }
  }
  return start;
}

std::vector<Scored> scan(const Compressed& c, const PhiFunction& phi, const SearchBudget& budget,
                         int keep) {
  std::vector<Scored> best;
  const int total = std::max(0, budget.grid) + std::max(0, budget.povm_samples);
  CMatrix m;
  for (int i = 0; i < total; ++i) {
    if (!candidate(c.dim, budget, i, m)) continue;
    const double v = u_phi_matrix(joint_of(c, m), phi);
    // Keep the `keep` smallest values; ties resolved by index order.
    if (static_cast<int>(best.size()) < keep || v < best.back().value) {
      Scored s{v, i, m};
      auto pos = std::upper_bound(best.begin(), best.end(), s,
                                  [](const Scored& a, const Scored& b) { return a.value < b.value; });
      best.insert(pos, std::move(s));
      if (static_cast<int>(best.size()) > keep) best.pop_back();
    }
  }
  return best;
}

void check_dimension(const Compressed& c) {
  if (c.dim > 4) {
    throw Error(ErrorCode::DimensionTooLarge,
                "memory support has dimension " + std::to_string(c.dim) + "; at most 4 is supported");
  }
}

}  // namespace

MinUncertainty min_classical_uncertainty_search(const CQState& sigma, const PhiFunction& phi,
                                                const SearchBudget& budget) {
  const Compressed c = compress(sigma);
  check_dimension(c);
  MinUncertainty out;
  out.effective_dim = c.dim;
  if (c.dim <= 1) {
    // Every measurement leaves each conditional equal to q.
    out.value = phi(sigma.probs().entries());
    out.best_vectors.push_back(c.dim == 1 ? CVector(c.basis.col(0)) : CVector::Zero(sigma.dim()));
    return out;
  }
  std::vector<Scored> best = scan(c, phi, budget, budget.refine ? kRefineStarts : 1);
  out.candidates = std::max(0, budget.grid) + std::max(0, budget.povm_samples);
  if (best.empty()) {
    throw Error(ErrorCode::InvalidInput, "search budget produced no candidate measurement");
  }
  Scored winner = best.front();
  if (budget.refine) {
    for (std::size_t r = 0; r < best.size(); ++r) {
      Scored s = refine(c, phi, best[r], r, budget.seed);
      if (s.value < winner.value) winner = std::move(s);
    }
  }
  out.value = winner.value;
  for (Eigen::Index y = 0; y < winner.m.cols(); ++y) out.best_vectors.push_back(c.basis * winner.m.col(y));
  return out;
}

double min_classical_uncertainty(const CQState& sigma, const PhiFunction& phi,
                                 const SearchBudget& budget) {
  return min_classical_uncertainty_search(sigma, phi, budget).value;
}

namespace {

constexpr int kJointCandidates = 96;

std::vector<JointDistribution> joint_candidates(const CQState& sigma, const SearchBudget& budget) {
  const Compressed c = compress(sigma);
  check_dimension(c);
  std::vector<JointDistribution> out;
  if (c.dim <= 1) {
    out.push_back(JointDistribution::column(sigma.probs()));
    return out;
  }
  const int total = std::max(0, budget.grid) + std::max(0, budget.povm_samples);
  const int stride = std::max(1, total / kJointCandidates);
  CMatrix m;
  for (int i = 0; i < total; i += stride) {
    if (candidate(c.dim, budget, i, m)) out.push_back(JointDistribution::normalized(joint_of(c, m)));
  }
  const auto best = min_classical_uncertainty_search(sigma, PhiFunction::shannon(), budget);
  CMatrix winner(c.dim, static_cast<Eigen::Index>(best.best_vectors.size()));
  for (Eigen::Index y = 0; y < winner.cols(); ++y) {
    winner.col(y) = c.basis.adjoint() * best.best_vectors[static_cast<std::size_t>(y)];
  }
  out.push_back(JointDistribution::normalized(joint_of(c, winner)));
  return out;
}

}  // namespace

double joint_uncertainty(const CQState& sigma, const CQState& gamma,
                         const std::optional<JointMeasure>& jcl, const SearchBudget& budget) {
  if (!jcl) {
    const auto h = PhiFunction::shannon();
    SearchBudget second = budget;
    second.seed = budget.seed + 1;
    return min_classical_uncertainty(sigma, h, budget) + min_classical_uncertainty(gamma, h, second);
  }
  const auto a = joint_candidates(sigma, budget);
  SearchBudget second = budget;
  second.seed = budget.seed + 1;
  const auto b = joint_candidates(gamma, second);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a) {
    for (const auto& q : b) best = std::min(best, (*jcl)(p, q));
  }
  return best;
}

double von_neumann_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (v > 1e-15) s -= v * std::log2(v);
  }
  return s;
}

double quantum_conditional_entropy(const CQState& sigma) {
  double s = PhiFunction::shannon()(sigma.probs().entries()) - von_neumann_entropy(sigma.memory_state());
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    s += sigma.probs()[x] * von_neumann_entropy(sigma.states()[x].matrix());
  }
  return s;
}

}  // namespace condmaj
