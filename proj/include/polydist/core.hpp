#pragma once

// Core primitives for the polytope-distance problem: immutable point sets,
// sparse convex-combination witnesses, and the projection-based
// approximation certificate that everything else is built on.
//
// All functions here are pure and safe to call concurrently; PointSet and
// ConvexCombination are immutable after construction.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polydist {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Norms below this threshold are rejected as zero directions instead of
/// letting NaNs propagate.
inline constexpr double kZeroNormThreshold = 1e-300;

/// Convex-combination weights must sum to 1 within this tolerance before the
/// residual is normalized away.
inline constexpr double kWeightSumTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A direction (witness) with numerically zero norm.
class ZeroDirection : public Error {
 public:
  using Error::Error;
};

/// An input point with numerically zero norm where angles are required.
class ZeroPoint : public Error {
 public:
  using Error::Error;
};

/// Nonpositive optimum norm handed to excentricity.
class DegenerateOptimum : public Error {
 public:
  using Error::Error;
};

/// Weights that are not a valid convex combination, or indices that do not
/// fit the point set they are used with.
class InvalidCombination : public Error {
 public:
  using Error::Error;
};

/// The origin lies on or inside the convex hull; there is no
/// positive-margin solution.
class OriginInsideHull : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle input too large.
class TooManyPoints : public Error {
 public:
  using Error::Error;
};

/// Angular diameter (or an angular bound) exceeds the pi/2 hypothesis.
class WideAngle : public Error {
 public:
  using Error::Error;
};

/// Construction angle outside (0, pi/2].
class BadTheta : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid hardness instance.
class MalformedInstance : public Error {
 public:
  using Error::Error;
};

/// A result paired with a labeled set it was not produced from.
class Mismatch : public Error {
 public:
  using Error::Error;
};

/// Labeled data with no homogeneous positive-margin separator.
class NotSeparable : public Error {
 public:
  using Error::Error;
};

/// Immutable, finite set of d-dimensional points stored as the columns of a
/// d x n matrix. Point indices are 0-based and stable; every other type in
/// the library refers to points by index into one of these.
template <typename Scalar>
class PointSet {
 public:
  using MatrixType = Matrix<Scalar>;

  explicit PointSet(MatrixType points) : points_(std::move(points)) {
    if (points_.rows() < 1 || points_.cols() < 1) {
      throw std::invalid_argument(
          "PointSet: need at least one point of dimension >= 1");
    }
    if (!points_.allFinite()) {
      throw std::invalid_argument("PointSet: coordinates must be finite");
    }
  }

  /// Builds a set from one row per point. All rows must have equal length.
  static PointSet from_points(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty()) {
      throw std::invalid_argument("PointSet: empty point list");
    }
    const Index dim = static_cast<Index>(rows.front().size());
    MatrixType m(dim, static_cast<Index>(rows.size()));
    for (Index j = 0; j < m.cols(); ++j) {
      const auto& row = rows[static_cast<std::size_t>(j)];
      if (static_cast<Index>(row.size()) != dim) {
        throw std::invalid_argument("PointSet: points have mixed dimensions");
      }
      for (Index i = 0; i < dim; ++i) {
        m(i, j) = row[static_cast<std::size_t>(i)];
      }
    }
    return PointSet(std::move(m));
  }

  Index dim() const { return points_.rows(); }
  Index size() const { return points_.cols(); }

  /// Column view of point i; no copy.
  auto point(Index i) const { return points_.col(i); }

  const MatrixType& matrix() const { return points_; }

 private:
  MatrixType points_;
};

using PointSetd = PointSet<double>;

/// Sparse strictly-positive weights over point indices, normalized so they
/// sum to 1. Zero-weight entries are dropped on construction; an input sum
/// farther than kWeightSumTolerance from 1 is rejected rather than silently
/// rescaled.
template <typename Scalar>
class ConvexCombination {
 public:
  ConvexCombination(std::vector<Index> indices, std::vector<Scalar> weights) {
    if (indices.size() != weights.size()) {
      throw InvalidCombination(
          "ConvexCombination: index/weight length mismatch");
    }
    std::vector<std::pair<Index, Scalar>> entries;
    entries.reserve(indices.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const Scalar w = weights[k];
      if (w == Scalar(0)) continue;  // zero entries are removed
      if (!(w > Scalar(0)) || !std::isfinite(static_cast<double>(w))) {
        throw InvalidCombination(
            "ConvexCombination: weights must be strictly positive");
      }
      if (indices[k] < 0) {
        throw InvalidCombination("ConvexCombination: negative index");
      }
      entries.emplace_back(indices[k], w);
    }
    if (entries.empty()) {
      throw InvalidCombination("ConvexCombination: no positive weights");
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < entries.size(); ++k) {
      if (entries[k].first == entries[k - 1].first) {
        throw InvalidCombination("ConvexCombination: duplicate index");
      }
    }
    Scalar sum(0);
    for (const auto& [idx, w] : entries) sum += w;
    if (!(std::abs(static_cast<double>(sum) - 1.0) <= kWeightSumTolerance)) {
      throw InvalidCombination(
          "ConvexCombination: weights sum to " +
          std::to_string(static_cast<double>(sum)) + ", expected 1");
    }
    indices_.reserve(entries.size());
    weights_.reserve(entries.size());
    for (const auto& [idx, w] : entries) {
      indices_.push_back(idx);
      weights_.push_back(w / sum);  // normalize the residual away
    }
  }

  /// Full weight on a single point.
  static ConvexCombination single_point(Index index) {
    return ConvexCombination({index}, {Scalar(1)});
  }

  /// Builds from a dense weight vector, dropping exact zeros. The vector
  /// must already sum to 1 within kWeightSumTolerance.
  static ConvexCombination from_dense(const Vector<Scalar>& dense) {
    std::vector<Index> idx;
    std::vector<Scalar> w;
    idx.reserve(static_cast<std::size_t>(dense.size()));
    w.reserve(static_cast<std::size_t>(dense.size()));
    for (Index i = 0; i < dense.size(); ++i) {
      if (dense[i] != Scalar(0)) {
        idx.push_back(i);
        w.push_back(dense[i]);
      }
    }
    return ConvexCombination(std::move(idx), std::move(w));
  }

  const std::vector<Index>& indices() const { return indices_; }
  const std::vector<Scalar>& weights() const { return weights_; }
  Index support_size() const { return static_cast<Index>(indices_.size()); }
  Index max_index() const { return indices_.back(); }

 private:
  std::vector<Index> indices_;   // strictly increasing
  std::vector<Scalar> weights_;  // strictly positive, sum 1
};

using ConvexCombinationd = ConvexCombination<double>;

/// Result of certifying a witness direction against a point set.
/// epsilon_hat = 1 - (min_p p|x) / ||x||, so (1 - epsilon_hat)||x|| is a
/// certified lower bound on the polytope distance whenever x lies in the
/// hull. For witnesses outside the hull the value is reported as computed
/// and may be negative; it carries no coreset meaning there.
template <typename Scalar>
struct Certificate {
  Scalar epsilon_hat = Scalar(0);
  Index worst_index = 0;  // attains the minimum projection, lowest index wins
  Scalar witness_norm = Scalar(0);
};

using Certificated = Certificate<double>;

/// Signed length of the projection of p onto the direction of x:
/// <p, x> / ||x||. The sign is preserved.
template <typename DerivedP, typename DerivedX>
typename DerivedX::Scalar projection_length(
    const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedX>& x) {
  using Scalar = typename DerivedX::Scalar;
  if (p.size() != x.size()) {
    throw std::invalid_argument("projection_length: dimension mismatch");
  }
  const Scalar norm = x.norm();
  if (!(norm >= Scalar(kZeroNormThreshold))) {
    throw ZeroDirection("projection_length: direction norm below 1e-300");
  }
  return p.dot(x) / norm;
}

/// Certifies an explicit witness vector against every point of the set.
/// Ties in the minimum projection break toward the lowest index.
template <typename Scalar, typename Derived>
Certificate<Scalar> certify_direction(const Eigen::MatrixBase<Derived>& witness,
                                      const PointSet<Scalar>& points) {
  if (witness.size() != points.dim()) {
    throw std::invalid_argument("certify_direction: dimension mismatch");
  }
  const Scalar norm = witness.norm();
  if (!(norm >= Scalar(kZeroNormThreshold))) {
    throw ZeroDirection("certify_direction: witness is numerically zero");
  }
  Index worst = 0;
  Scalar min_projection = points.point(0).dot(witness) / norm;
  for (Index i = 1; i < points.size(); ++i) {
    const Scalar proj = points.point(i).dot(witness) / norm;
    if (proj < min_projection) {
      min_projection = proj;
      worst = i;
    }
  }
  return Certificate<Scalar>{Scalar(1) - min_projection / norm, worst, norm};
}

/// The explicit point sum_i w_i p_i realized by a combination.
template <typename Scalar>
Vector<Scalar> witness_point(const ConvexCombination<Scalar>& combination,
                             const PointSet<Scalar>& points) {
  if (combination.max_index() >= points.size()) {
    throw InvalidCombination("witness_point: index out of range");
  }
  Vector<Scalar> acc = Vector<Scalar>::Zero(points.dim());
  const auto& idx = combination.indices();
  const auto& w = combination.weights();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    acc += w[k] * points.point(idx[k]);
  }
  return acc;
}

/// Evaluates how good an approximation the combination's witness point is
/// for the whole set: epsilon_hat = 1 - min_p p|x / ||x||.
template <typename Scalar>
Certificate<Scalar> epsilon_of(const ConvexCombination<Scalar>& combination,
                               const PointSet<Scalar>& points) {
  const Vector<Scalar> x = witness_point(combination, points);
  return certify_direction(x, points);
}

/// Maximum angle, in radians, between any two points of the set viewed as
/// vectors from the origin. Zero for a singleton. Cosines are clamped to
/// [-1, 1] before acos to absorb floating-point overshoot.
template <typename Scalar>
Scalar angular_diameter(const PointSet<Scalar>& points) {
  const Index n = points.size();
  Vector<Scalar> norms(n);
  for (Index i = 0; i < n; ++i) {
    norms[i] = points.point(i).norm();
    if (!(norms[i] >= Scalar(kZeroNormThreshold))) {
      throw ZeroPoint("angular_diameter: point " + std::to_string(i) +
                      " is numerically zero");
    }
  }
  if (n == 1) return Scalar(0);
  // acos is monotone decreasing, so the maximum angle is attained at the
  // minimum pairwise cosine.
  Scalar min_cos(1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const Scalar c = points.point(i).dot(points.point(j)) / (norms[i] * norms[j]);
      min_cos = std::min(min_cos, c);
    }
  }
  min_cos = std::clamp(min_cos, Scalar(-1), Scalar(1));
  return std::acos(min_cos);
}

/// Squared diameter of the point set (max pairwise squared distance). The
/// hull diameter is attained at vertices, so the pairwise scan suffices.
template <typename Scalar>
Scalar squared_diameter(const PointSet<Scalar>& points) {
  Scalar best(0);
  for (Index i = 0; i < points.size(); ++i) {
    for (Index j = i + 1; j < points.size(); ++j) {
      best = std::max(best, (points.point(i) - points.point(j)).squaredNorm());
    }
  }
  return best;
}

/// Excentricity diam(conv(P))^2 / ||x*||^2 for a known optimum norm.
template <typename Scalar>
Scalar excentricity(const PointSet<Scalar>& points, Scalar optimum_norm) {
  if (!(optimum_norm > Scalar(0))) {
    throw DegenerateOptimum("excentricity: optimum norm must be positive");
  }
  return squared_diameter(points) / (optimum_norm * optimum_norm);
}

/// New set holding the chosen points, in the order given.
template <typename Scalar>
PointSet<Scalar> subset(const PointSet<Scalar>& points,
                        const std::vector<Index>& indices) {
  if (indices.empty()) {
    throw std::invalid_argument("subset: empty index list");
  }
  Matrix<Scalar> m(points.dim(), static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= points.size()) {
      throw std::invalid_argument("subset: index out of range");
    }
    m.col(static_cast<Index>(k)) = points.point(indices[k]);
  }
  return PointSet<Scalar>(std::move(m));
}

/// Concatenation; indices of b are shifted by a.size().
template <typename Scalar>
PointSet<Scalar> concatenate(const PointSet<Scalar>& a, const PointSet<Scalar>& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("concatenate: dimension mismatch");
  }
  Matrix<Scalar> m(a.dim(), a.size() + b.size());
  m.leftCols(a.size()) = a.matrix();
  m.rightCols(b.size()) = b.matrix();
  return PointSet<Scalar>(std::move(m));
}

}  // namespace polydist
