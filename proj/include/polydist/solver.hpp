#pragma once

// Frank-Wolfe (Gilbert-style) polytope-distance solver and the small
// exhaustive oracle used to cross-check it.
//
// The iteration: start at the shortest input point; each step moves toward
// the point with the smallest signed projection onto the current witness,
// with the closed-form line search lambda = <x, x-p> / ||x-p||^2 clamped to
// [0, 1]; stop once (1 - eps)||x|| <= min_p p|x. Support weights are
// tracked explicitly, so the returned coreset is exactly the witness
// support.

#include "polydist/core.hpp"

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>

namespace polydist {

template <typename Scalar>
struct SolverConfig {
  /// Certificate target in (0, 1).
  Scalar epsilon_target = Scalar(1e-6);
  /// Step cap; when unset, 10 * ceil(2 * E_est / epsilon) with E_est taken
  /// from the initial point, floored at 1000.
  std::optional<std::int64_t> max_iterations = std::nullopt;
  // Tie-breaking is not configurable: every argmin in the solver breaks
  // ties toward the lowest point index.
};

using SolverConfigd = SolverConfig<double>;

template <typename Scalar>
struct SolveResult {
  ConvexCombination<Scalar> witness;
  /// Support of the witness, ascending.
  std::vector<Index> coreset_indices;
  /// Recomputing epsilon_of(witness, points) reproduces this bit-for-bit.
  Certificate<Scalar> certificate;
  std::int64_t iterations = 0;
  bool converged = false;
};

using SolveResultd = SolveResult<double>;

/// Called once per solver iteration (including the initial point, at
/// iteration 0) with the current witness norm. Used for monitoring and for
/// descent-monotonicity checks in tests.
template <typename Scalar>
using IterationObserver = std::function<void(std::int64_t, Scalar)>;

namespace detail {

template <typename Scalar>
Index shortest_point_index(const PointSet<Scalar>& points) {
  Index best = 0;
  Scalar best_sq = points.point(0).squaredNorm();
  for (Index i = 1; i < points.size(); ++i) {
    const Scalar sq = points.point(i).squaredNorm();
    if (sq < best_sq) {
      best_sq = sq;
      best = i;
    }
  }
  return best;
}

template <typename Scalar>
std::int64_t default_iteration_limit(const PointSet<Scalar>& points,
                                     Scalar initial_norm, Scalar epsilon) {
  constexpr std::int64_t kFloor = 1000;
  if (!(initial_norm >= Scalar(kZeroNormThreshold))) return kFloor;
  const double e_est = static_cast<double>(squared_diameter(points)) /
                       static_cast<double>(initial_norm * initial_norm);
  const double raw = 10.0 * std::ceil(2.0 * e_est / static_cast<double>(epsilon));
  if (!(raw < 9.0e18)) return std::numeric_limits<std::int64_t>::max() / 2;
  return std::max<std::int64_t>(kFloor, static_cast<std::int64_t>(raw));
}

}  // namespace detail

/// Approximates the polytope-distance optimum of conv(points) and returns
/// the witness, its support (the coreset), and the certificate.
///
/// Throws OriginInsideHull when the iterates collapse toward the origin
/// with nonpositive worst projections: the origin lies on or inside the
/// hull and no positive-margin solution exists. Hitting the iteration cap
/// is not an error; the result is returned with converged = false.
template <typename Scalar>
SolveResult<Scalar> frank_wolfe(const PointSet<Scalar>& points,
                                const SolverConfig<Scalar>& config,
                                const IterationObserver<Scalar>& observer = {}) {
  if (!(config.epsilon_target > Scalar(0)) ||
      !(config.epsilon_target < Scalar(1))) {
    throw std::invalid_argument("frank_wolfe: epsilon_target must be in (0,1)");
  }
  if (config.max_iterations && *config.max_iterations < 1) {
    throw std::invalid_argument("frank_wolfe: max_iterations must be >= 1");
  }

  const Index n = points.size();
  Scalar max_point_norm(0);
  for (Index i = 0; i < n; ++i) {
    max_point_norm = std::max(max_point_norm, points.point(i).norm());
  }
  const Scalar collapse_threshold = Scalar(1e-9) * max_point_norm;

  const Index start = detail::shortest_point_index(points);
  Vector<Scalar> raw = Vector<Scalar>::Zero(n);
  raw[start] = Scalar(1);

  const std::int64_t limit = config.max_iterations.value_or(
      detail::default_iteration_limit(points, points.point(start).norm(),
                                      config.epsilon_target));

  std::int64_t steps = 0;
  bool converged = false;
  Scalar previous_norm = std::numeric_limits<Scalar>::infinity();
  Vector<Scalar> x(points.dim());
  Vector<Scalar> diff(points.dim());

  // Rebuilds the witness from the raw weights with exactly the arithmetic
  // of witness_point(ConvexCombination::from_dense(raw), points): ascending
  // indices, zeros skipped, each weight divided by the sum of the nonzero
  // entries. The convergence decision below is therefore made on values the
  // final epsilon_of recheck reproduces bit-for-bit.
  const auto rebuild_witness = [&]() {
    Scalar sum(0);
    for (Index i = 0; i < n; ++i) {
      if (raw[i] != Scalar(0)) sum += raw[i];
    }
    x.setZero();
    for (Index i = 0; i < n; ++i) {
      if (raw[i] != Scalar(0)) x += (raw[i] / sum) * points.point(i);
    }
  };

  for (;;) {
    rebuild_witness();
    const Scalar norm = x.norm();
    if (!(norm >= Scalar(kZeroNormThreshold))) {
      throw OriginInsideHull("frank_wolfe: witness collapsed to zero");
    }
    const Certificate<Scalar> certificate = certify_direction(x, points);
    if (observer) observer(steps, certificate.witness_norm);

    // Exact line search cannot increase the norm; a violation beyond noise
    // means corrupted input or a bug, so fail loudly.
    if (!(certificate.witness_norm <=
          previous_norm * (Scalar(1) + Scalar(1e-12)))) {
      throw Error("frank_wolfe: witness norm increased across a step");
    }
    previous_norm = certificate.witness_norm;

    if (certificate.epsilon_hat <= config.epsilon_target) {
      converged = true;
      break;
    }
    // epsilon_hat >= 1 is exactly min_p p|x <= 0.
    if (certificate.epsilon_hat >= Scalar(1) && norm <= collapse_threshold) {
      throw OriginInsideHull(
          "frank_wolfe: nonpositive projections with vanishing witness");
    }
    if (steps >= limit) break;

    diff = x - points.point(certificate.worst_index);
    const Scalar denom = diff.squaredNorm();
    if (!(denom > Scalar(0))) break;  // step below fp resolution; stall out
    const Scalar lambda =
        std::clamp(x.dot(diff) / denom, Scalar(0), Scalar(1));
    if (lambda >= Scalar(1)) {
      raw.setZero();
      raw[certificate.worst_index] = Scalar(1);
    } else {
      raw *= (Scalar(1) - lambda);
      raw[certificate.worst_index] += lambda;
    }
    ++steps;
    if (steps % 64 == 0) raw /= raw.sum();  // suppress weight drift
  }

  ConvexCombination<Scalar> combination =
      ConvexCombination<Scalar>::from_dense(raw);
  Certificate<Scalar> certificate = epsilon_of(combination, points);
  std::vector<Index> support = combination.indices();
  return SolveResult<Scalar>{std::move(combination), std::move(support),
                             certificate, steps, converged};
}

template <typename Scalar>
struct BruteForceResult {
  Scalar norm = Scalar(0);
  ConvexCombination<Scalar> combination;
};

namespace detail {

/// Euclidean projection onto the probability simplex.
template <typename Scalar>
Vector<Scalar> project_simplex(Vector<Scalar> v) {
  const Index n = v.size();
  std::vector<Scalar> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<Scalar>());
  Scalar css(0);
  Scalar tau(0);
  for (Index j = 0; j < n; ++j) {
    css += u[static_cast<std::size_t>(j)];
    const Scalar t = (css - Scalar(1)) / Scalar(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > Scalar(0)) tau = t;
  }
  for (Index i = 0; i < n; ++i) {
    v[i] = std::max(v[i] - tau, Scalar(0));
  }
  return v;
}

}  // namespace detail

/// Exhaustive reference for the polytope-distance optimum on tiny inputs:
/// scans a simplex grid of the given resolution, then refines the best grid
/// point by projected gradient descent until the step length drops below
/// 1e-10. The objective ||P w||^2 is convex over the simplex, so the refined
/// point is the global optimum up to the stopping resolution.
template <typename Scalar>
BruteForceResult<Scalar> brute_force_distance(const PointSet<Scalar>& points,
                                              int resolution) {
  if (points.size() > 6) {
    throw TooManyPoints("brute_force_distance: more than 6 points");
  }
  if (resolution < 10) {
    throw std::invalid_argument("brute_force_distance: resolution must be >= 10");
  }
  const Index n = points.size();

  // Grid scan over all compositions k_0 + ... + k_{n-1} = resolution.
  Vector<Scalar> best_w = Vector<Scalar>::Zero(n);
  Scalar best_sq = std::numeric_limits<Scalar>::infinity();
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  k[0] = resolution;
  const auto evaluate = [&](const std::vector<int>& counts) {
    Vector<Scalar> w(n);
    for (Index i = 0; i < n; ++i) {
      w[i] = Scalar(counts[static_cast<std::size_t>(i)]) / Scalar(resolution);
    }
    const Scalar sq = (points.matrix() * w).squaredNorm();
    if (sq < best_sq) {
      best_sq = sq;
      best_w = w;
    }
  };
  // Odometer enumeration, lexicographic; deterministic tie handling via
  // strict improvement.
  for (;;) {
    evaluate(k);
    Index j = n - 1;
    while (j > 0 && k[static_cast<std::size_t>(j - 1)] == 0) --j;
    if (j == 0) break;
    // Move one unit from slot j-1 to slot j, resetting the tail.
    --k[static_cast<std::size_t>(j - 1)];
    int tail = 1;
    for (Index t = j; t < n; ++t) {
      tail += k[static_cast<std::size_t>(t)];
      k[static_cast<std::size_t>(t)] = 0;
    }
    k[static_cast<std::size_t>(j)] = tail;
  }

  // Projected gradient refinement; step 1/L with L = 2 lambda_max(P^T P).
  const Matrix<Scalar> gram = points.matrix().transpose() * points.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(gram);
  const Scalar lipschitz = Scalar(2) * es.eigenvalues().maxCoeff();
  Vector<Scalar> w = best_w;
  if (lipschitz > Scalar(kZeroNormThreshold)) {
    const Scalar step = Scalar(1) / lipschitz;
    for (int iter = 0; iter < 200000; ++iter) {
      const Vector<Scalar> grad = Scalar(2) * (gram * w);
      Vector<Scalar> next = detail::project_simplex<Scalar>(w - step * grad);
      const Scalar moved = (next - w).norm();
      w = std::move(next);
      if (moved < Scalar(1e-10)) break;
    }
  }

  auto combination = ConvexCombination<Scalar>::from_dense(w);
  const Scalar norm = witness_point(combination, points).norm();
  return BruteForceResult<Scalar>{norm, std::move(combination)};
}

}  // namespace polydist
