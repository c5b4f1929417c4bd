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

#include "condmaj/probcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "condmaj/error.hpp"

namespace condmaj {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MajorizationViolation: return "MajorizationViolation";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::DegenerateOutcome: return "DegenerateOutcome";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void clamp_nonnegative(double* data, Eigen::Index count, const char* what) {
  for (Eigen::Index i = 0; i < count; ++i) {
    if (!std::isfinite(data[i])) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + " has a non-finite entry",
                  "entry " + std::to_string(i));
    }
    if (data[i] < -kEpsProb) {
      throw Error(ErrorCode::InvalidInput,
                  std::string(what) + " has a negative entry " + std::to_string(data[i]),
                  "entry " + std::to_string(i));
    }
    if (data[i] < 0.0) data[i] = 0.0;
  }
}

void require_unit_sum(double total, const char* what) {
  if (std::abs(total - 1.0) > kEpsProb) {
    throw Error(ErrorCode::InvalidInput,
                std::string(what) + " sums to " + std::to_string(total) + ", expected 1");
  }
}

std::vector<Eigen::Index> descending_order(const Vector& v) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v(a) > v(b); });
  return idx;
}

Vector zero_padded(const Vector& v, Eigen::Index n) {
  Vector out = Vector::Zero(n);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

ProbVector::ProbVector(Vector entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw Error(ErrorCode::InvalidInput, "empty probability vector");
  clamp_nonnegative(entries_.data(), entries_.size(), "probability vector");
  require_unit_sum(entries_.sum(), "probability vector");
}

ProbVector::ProbVector(std::initializer_list<double> entries)
    : ProbVector(Eigen::Map<const Vector>(entries.begin(), static_cast<Eigen::Index>(entries.size()))) {}

ProbVector ProbVector::uniform(std::size_t n) {
  return ProbVector(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

ProbVector ProbVector::point_mass(std::size_t n, std::size_t at) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
  v(static_cast<Eigen::Index>(at)) = 1.0;
  return ProbVector(std::move(v));
}

Vector ProbVector::sorted_desc(std::size_t length) const {
  const auto n = std::max<Eigen::Index>(entries_.size(), static_cast<Eigen::Index>(length));
  return condmaj::sorted_desc(zero_padded(entries_, n));
}

JointDistribution::JointDistribution(Matrix m) : m_(std::move(m)) {
  if (m_.size() == 0) throw Error(ErrorCode::InvalidInput, "empty joint distribution");
  clamp_nonnegative(m_.data(), m_.size(), "joint distribution");
  require_unit_sum(m_.sum(), "joint distribution");
}

JointDistribution::JointDistribution(std::initializer_list<std::initializer_list<double>> rows)
    : JointDistribution([&] {
        const auto r = static_cast<Eigen::Index>(rows.size());
        const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
        Matrix m(r, c);
        Eigen::Index i = 0;
        for (const auto& row : rows) {
          if (static_cast<Eigen::Index>(row.size()) != c) {
            throw Error(ErrorCode::ShapeError, "ragged matrix literal", "row " + std::to_string(i));
          }
          Eigen::Index j = 0;
          for (double v : row) m(i, j++) = v;
          ++i;
        }
        return m;
      }()) {}

JointDistribution JointDistribution::normalized(Matrix m) {
  if (m.size() == 0) throw Error(ErrorCode::InvalidInput, "empty joint distribution");
  clamp_nonnegative(m.data(), m.size(), "joint distribution");
  const double total = m.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidInput, "matrix has zero total sum");
  return JointDistribution(m / total);
}

JointDistribution JointDistribution::column(const ProbVector& p) {
  return JointDistribution(Matrix(p.entries()));
}

Vector JointDistribution::memory_marginal() const { return m_.colwise().sum().transpose(); }

Vector JointDistribution::register_marginal() const { return m_.rowwise().sum(); }

Vector JointDistribution::conditional(Eigen::Index y) const {
  const double py = m_.col(y).sum();
  if (!(py > 0.0)) {
    throw Error(ErrorCode::DomainError, "conditional of a zero-weight column",
                "column " + std::to_string(y));
  }
  return m_.col(y) / py;
}

JointDistribution JointDistribution::padded_rows(Eigen::Index n) const {
  if (n < rows()) throw Error(ErrorCode::DimensionMismatch, "cannot pad to fewer rows");
  Matrix out = Matrix::Zero(n, cols());
  out.topRows(rows()) = m_;
  return JointDistribution(std::move(out));
}

DoublyStochasticMatrix::DoublyStochasticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.size() == 0) {
    throw Error(ErrorCode::ShapeError, "doubly stochastic matrix must be square");
  }
  clamp_nonnegative(m_.data(), m_.size(), "doubly stochastic matrix");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    if (std::abs(m_.row(i).sum() - 1.0) > tol) {
      throw Error(ErrorCode::InvalidInput, "row does not sum to 1", "row " + std::to_string(i));
    }
    if (std::abs(m_.col(i).sum() - 1.0) > tol) {
      throw Error(ErrorCode::InvalidInput, "column does not sum to 1", "column " + std::to_string(i));
    }
  }
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(Eigen::Index n) {
  return DoublyStochasticMatrix(Matrix::Identity(n, n));
}

RowStochasticMatrix::RowStochasticMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.size() == 0) throw Error(ErrorCode::ShapeError, "empty row-stochastic matrix");
  clamp_nonnegative(m_.data(), m_.size(), "row-stochastic matrix");
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    if (std::abs(m_.row(i).sum() - 1.0) > tol) {
      throw Error(ErrorCode::InvalidInput, "row does not sum to 1", "row " + std::to_string(i));
    }
  }
}

Vector sorted_desc(const Vector& v) {
  Vector out = v;
  std::sort(out.data(), out.data() + out.size(), std::greater<>());
  return out;
}

Vector prefix_sums(const Vector& v) {
  Vector out(v.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    acc += v(i);
    out(i) = acc;
  }
  return out;
}

Matrix lower_ones(Eigen::Index n) {
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) l.row(i).head(i + 1).setOnes();
  return l;
}

bool majorizes(const Vector& p, const Vector& q, double tol) {
  const auto n = std::max(p.size(), q.size());
  const Vector ps = prefix_sums(sorted_desc(zero_padded(p, n)));
  const Vector qs = prefix_sums(sorted_desc(zero_padded(q, n)));
  if (n == 0) return true;
  if (std::abs(ps(n - 1) - qs(n - 1)) > tol) return false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (ps(k) < qs(k) - tol) return false;
  }
  return true;
}

bool majorizes(const ProbVector& p, const ProbVector& q, double tol) {
  return majorizes(p.entries(), q.entries(), tol);
}

double proportionality_score(const Vector& u, const Vector& v) {
  const Vector a = u / u.sum();
  const Vector b = v / v.sum();
  const double scale = std::max(a.maxCoeff(), b.maxCoeff());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = i + 1; j < a.size(); ++j) {
      worst = std::max(worst, std::abs(a(i) * b(j) - a(j) * b(i)));
    }
  }
  return worst / scale;
}

StandardFormResult standard_form(const JointDistribution& p) {
  const Matrix& m = p.matrix();
  const Eigen::Index n = m.rows();

  StandardFormResult result{p, {}, {}, {}, {}, {}};

  // Step 1: sort within columns, dropping zero-weight columns.
  std::vector<Eigen::Index> kept;
  std::vector<Vector> sorted_cols;
  result.row_permutations.resize(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    const Vector col = m.col(y);
    const auto order = descending_order(col);
    result.row_permutations[static_cast<std::size_t>(y)] = order;
    if (!(col.sum() > 0.0)) {
      result.dropped_columns.push_back(y);
      continue;
    }
    Vector s(n);
    for (Eigen::Index i = 0; i < n; ++i) s(i) = col(order[static_cast<std::size_t>(i)]);
    kept.push_back(y);
    sorted_cols.push_back(std::move(s));
  }

  // Step 2: merge proportional columns into the first column of their group.
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Vector> merged;
  for (std::size_t c = 0; c < sorted_cols.size(); ++c) {
    bool placed = false;
    for (std::size_t g = 0; g < groups.size() && !placed; ++g) {
      const Vector& rep = sorted_cols[static_cast<std::size_t>(
          std::find(kept.begin(), kept.end(), groups[g].front()) - kept.begin())];
      const double score = proportionality_score(rep, sorted_cols[c]);
      const bool merge = score <= kEpsProp;
      if (score > 1e-2 * kEpsProp && score < 1e2 * kEpsProp) {
        result.near_threshold.push_back({groups[g].front(), kept[c], score, merge});
      }
      if (merge) {
        groups[g].push_back(kept[c]);
        merged[g] += sorted_cols[c];
        placed = true;
      }
    }
    if (!placed) {
      groups.push_back({kept[c]});
      merged.push_back(sorted_cols[c]);
    }
  }

  // Re-add each group in a value-determined order so that the merged column
  // does not depend on the caller's column order, bit for bit.
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2) continue;
    std::vector<const Vector*> members;
    for (auto y : groups[g]) {
      members.push_back(&sorted_cols[static_cast<std::size_t>(std::find(kept.begin(), kept.end(), y) -
                                                              kept.begin())]);
    }
    std::sort(members.begin(), members.end(), [](const Vector* a, const Vector* b) {
      return std::lexicographical_compare(b->data(), b->data() + b->size(), a->data(), a->data() + a->size());
    });
    merged[g].setZero();
    for (const Vector* v : members) merged[g] += *v;
  }

  // Step 3: order by marginal, then by successive partial sums. Keys are
  // snapped to a 1e-12 grid so that the comparison is a strict weak order.
  const auto snap = [](double v) { return std::llround(v * 1e12); };
  std::vector<std::vector<long long>> keys(merged.size());
  for (std::size_t g = 0; g < merged.size(); ++g) {
    const Vector ps = prefix_sums(merged[g]);
    keys[g].push_back(snap(merged[g].sum()));
    for (Eigen::Index i = 0; i < n; ++i) keys[g].push_back(snap(ps(i)));
  }
  std::vector<Eigen::Index> order(merged.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return keys[static_cast<std::size_t>(a)] > keys[static_cast<std::size_t>(b)];
  });
  for (std::size_t w = 1; w < order.size(); ++w) {
    if (keys[static_cast<std::size_t>(order[w])] == keys[static_cast<std::size_t>(order[w - 1])]) {
      throw Error(ErrorCode::NumericalFailure,
                  "standard form left two indistinguishable columns unmerged",
                  "column " + std::to_string(order[w]));
    }
  }

  Matrix canonical(n, static_cast<Eigen::Index>(merged.size()));
  for (std::size_t w = 0; w < order.size(); ++w) {
    const auto g = static_cast<std::size_t>(order[w]);
    canonical.col(static_cast<Eigen::Index>(w)) = merged[g];
    result.merge_groups.push_back(groups[g]);
  }
  result.column_order = std::move(order);
  result.canonical = JointDistribution(std::move(canonical));
  return result;
}

DoublyStochasticMatrix transfer_matrix(const Vector& q, const Vector& a, double tol) {
  const Eigen::Index n = std::max(q.size(), a.size());
  const Vector qp = zero_padded(q, n);
  const Vector ap = zero_padded(a, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (qp(i) < -tol || ap(i) < -tol) {
      throw Error(ErrorCode::InvalidInput, "transfer_matrix needs non-negative vectors",
                  "entry " + std::to_string(i));
    }
  }
  const auto q_order = descending_order(qp);
  const auto a_order = descending_order(ap);
  Vector target(n), x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    target(i) = qp(q_order[static_cast<std::size_t>(i)]);
    x(i) = ap(a_order[static_cast<std::size_t>(i)]);
  }
  if (!majorizes(x, target, tol)) {
    throw Error(ErrorCode::MajorizationViolation, "q is not majorized by a");
  }

  // Each pass equalizes one coordinate, so at most n - 1 transforms apply in
  // exact arithmetic. Rounding can leave a surplus of a few ulps with no
  // deficit after it; such a coordinate is skipped rather than ending the loop.
  constexpr double kResolved = 1e-15;
  Matrix d = Matrix::Identity(n, n);
  for (Eigen::Index step = 0; step < 2 * n; ++step) {
    Eigen::Index j = -1, k = -1;
    for (Eigen::Index i = n - 1; i >= 0 && k < 0; --i) {
      if (x(i) - target(i) <= kResolved) continue;
      for (Eigen::Index c = i + 1; c < n; ++c) {
        if (x(c) - target(c) < -kResolved) {
          j = i;
          k = c;
          break;
        }
      }
    }
    if (k < 0) break;
    const double excess = x(j) - target(j);
    const double shortfall = target(k) - x(k);
    const double delta = std::min(excess, shortfall);
    const double mix = delta / (x(j) - x(k));
    const Vector row_j = d.row(j);
    const Vector row_k = d.row(k);
    d.row(j) = (1.0 - mix) * row_j + mix * row_k;
    d.row(k) = mix * row_j + (1.0 - mix) * row_k;
    if (excess <= shortfall) {
      x(k) += excess;
      x(j) = target(j);
    } else {
      x(j) -= shortfall;
      x(k) = target(k);
    }
  }

  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out(q_order[static_cast<std::size_t>(i)], a_order[static_cast<std::size_t>(c)]) = d(i, c);
    }
  }
  return DoublyStochasticMatrix(std::move(out));
}

DoublyStochasticMatrix transfer_matrix(const ProbVector& q, const ProbVector& a) {
  return transfer_matrix(q.entries(), a.entries(), kEpsProb);
}

}  // namespace condmaj
