#pragma once

// Merge-stable coreset maintenance. The shortest-point coreset keeps the
// minimum-norm point and is exact to maintain under merges; the rerun
// strategy re-solves on the union of retained points and can lose accuracy
// against the full stream, which is exactly what the hardness constructions
// in adversarial.hpp exhibit. A streaming harness folds batches left to
// right and measures the achieved error against the full prefix.

#include "polydist/core.hpp"
#include "polydist/solver.hpp"

#include <cmath>
#include <optional>

namespace polydist {

template <typename Scalar>
struct MergeableCoreset {
  /// Retained points, stored by value.
  PointSet<Scalar> points;
  /// Witness over the retained points.
  ConvexCombination<Scalar> witness;
  /// Error the coreset claims for the universe it summarizes. The witness
  /// certifies at most this much on the retained subset itself; whether the
  /// claim transfers to the original universe is what the stream harness
  /// measures.
  Scalar claimed_epsilon = Scalar(0);
};

using MergeableCoresetd = MergeableCoreset<double>;

enum class MergeStrategy { min_norm, rerun, full_recompute };

template <typename Scalar>
struct StreamRecord {
  Index batch = 0;
  MergeStrategy strategy = MergeStrategy::min_norm;
  Index retained_size = 0;
  Scalar claimed_epsilon = Scalar(0);
  /// epsilon_hat of the current witness against the full prefix, clamped at
  /// zero (hull witnesses are nonnegative up to fp noise).
  Scalar measured_epsilon = Scalar(0);
  /// Angular diameter of the full prefix; non-decreasing over the stream.
  Scalar theta_prefix = Scalar(0);
  /// 1 - cos(theta_prefix), the shortest-point guarantee for the prefix.
  Scalar min_norm_bound = Scalar(0);
};

template <typename Scalar>
struct StreamReport {
  MergeStrategy strategy = MergeStrategy::min_norm;
  std::vector<StreamRecord<Scalar>> records;
};

using StreamReportd = StreamReport<double>;

namespace detail {

// Wide-angle checks allow this much absolute slack so that sets whose
// diameter is exactly pi/2 survive the acos round-trip.
inline constexpr double kWideAngleSlack = 1e-12;

template <typename Scalar>
bool lexicographically_less(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  for (Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace detail

/// The minimum-norm point of the set as a single-point coreset, claiming
/// error 1 - cos(angular diameter). Requires the angular diameter to be at
/// most pi/2; ties in the norm break toward the lowest index.
template <typename Scalar>
MergeableCoreset<Scalar> shortest_point_coreset(const PointSet<Scalar>& points) {
  const Scalar theta = angular_diameter(points);
  if (theta > Scalar(M_PI_2) + Scalar(detail::kWideAngleSlack)) {
    throw WideAngle("shortest_point_coreset: angular diameter exceeds pi/2");
  }
  Index best = 0;
  Scalar best_norm = points.point(0).norm();
  for (Index i = 1; i < points.size(); ++i) {
    const Scalar norm = points.point(i).norm();
    if (norm < best_norm) {
      best_norm = norm;
      best = i;
    }
  }
  Matrix<Scalar> retained = points.point(best);
  return MergeableCoreset<Scalar>{
      PointSet<Scalar>(std::move(retained)),
      ConvexCombination<Scalar>::single_point(0),
      Scalar(1) - std::cos(theta)};
}

/// Merges two shortest-point coresets by keeping the shorter retained point.
/// theta_bound is the caller's a-priori bound on the angular diameter of the
/// combined universe; two singletons cannot determine it themselves. Norm
/// ties break toward the lexicographically smaller point so the result
/// depends only on the multiset of inputs.
template <typename Scalar>
MergeableCoreset<Scalar> merge_min_norm(const MergeableCoreset<Scalar>& a,
                                        const MergeableCoreset<Scalar>& b,
                                        Scalar theta_bound) {
  if (a.points.size() != 1 || b.points.size() != 1) {
    throw std::invalid_argument("merge_min_norm: inputs must be singletons");
  }
  if (!(theta_bound >= Scalar(0))) {
    throw std::invalid_argument("merge_min_norm: theta_bound must be >= 0");
  }
  if (theta_bound > Scalar(M_PI_2) + Scalar(detail::kWideAngleSlack)) {
    throw WideAngle("merge_min_norm: theta_bound exceeds pi/2");
  }
  const Vector<Scalar> pa = a.points.point(0);
  const Vector<Scalar> pb = b.points.point(0);
  const Scalar na = pa.norm();
  const Scalar nb = pb.norm();
  bool keep_a = na < nb;
  if (na == nb) keep_a = !detail::lexicographically_less(pb, pa);
  const PointSet<Scalar>& kept = keep_a ? a.points : b.points;
  return MergeableCoreset<Scalar>{kept,
                                  ConvexCombination<Scalar>::single_point(0),
                                  Scalar(1) - std::cos(theta_bound)};
}

/// Solves the set and keeps only the witness support, re-indexed onto the
/// retained subset. claimed_epsilon is the achieved certificate against the
/// solved set.
template <typename Scalar>
MergeableCoreset<Scalar> coreset_from_solve(const PointSet<Scalar>& points,
                                            const SolverConfig<Scalar>& config) {
  SolveResult<Scalar> result = frank_wolfe(points, config);
  PointSet<Scalar> retained = subset(points, result.coreset_indices);
  std::vector<Index> local(result.coreset_indices.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    local[k] = static_cast<Index>(k);
  }
  ConvexCombination<Scalar> witness(std::move(local),
                                    result.witness.weights());
  return MergeableCoreset<Scalar>{std::move(retained), std::move(witness),
                                  result.certificate.epsilon_hat};
}

/// Merges by re-solving on the union of the retained point sets. The claim
/// is relative to that union only; the hardness constructions show it need
/// not transfer to the original universe.
template <typename Scalar>
MergeableCoreset<Scalar> merge_rerun(const MergeableCoreset<Scalar>& a,
                                     const MergeableCoreset<Scalar>& b,
                                     const SolverConfig<Scalar>& config) {
  return coreset_from_solve(concatenate(a.points, b.points), config);
}

/// Left-folds batches into a single coreset under the chosen strategy,
/// recording after each batch the claimed error, the error measured against
/// the full prefix, and the prefix's angular diameter. The full prefix is
/// retained for measurement only.
template <typename Scalar>
StreamReport<Scalar> stream_process(const std::vector<PointSet<Scalar>>& batches,
                                    MergeStrategy strategy,
                                    const SolverConfig<Scalar>& config,
                                    Scalar theta_bound = Scalar(M_PI_2)) {
  if (batches.empty()) {
    throw std::invalid_argument("stream_process: no batches");
  }
  StreamReport<Scalar> report;
  report.strategy = strategy;

  PointSet<Scalar> prefix = batches.front();
  std::optional<MergeableCoreset<Scalar>> acc;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const PointSet<Scalar>& batch = batches[b];
    if (b > 0) prefix = concatenate(prefix, batch);

    const Scalar theta_prefix = angular_diameter(prefix);
    switch (strategy) {
      case MergeStrategy::min_norm: {
        if (theta_prefix > Scalar(M_PI_2) + Scalar(detail::kWideAngleSlack)) {
          throw WideAngle("stream_process: prefix angular diameter exceeds pi/2");
        }
        MergeableCoreset<Scalar> batch_coreset = shortest_point_coreset(batch);
        acc = acc ? merge_min_norm(*acc, batch_coreset, theta_bound)
                  : std::move(batch_coreset);
        break;
      }
      case MergeStrategy::rerun: {
        MergeableCoreset<Scalar> batch_coreset = coreset_from_solve(batch, config);
        acc = acc ? merge_rerun(*acc, batch_coreset, config)
                  : std::move(batch_coreset);
        break;
      }
      case MergeStrategy::full_recompute:
        acc = coreset_from_solve(prefix, config);
        break;
    }

    const Vector<Scalar> w = witness_point(acc->witness, acc->points);
    const Scalar measured =
        std::max(Scalar(0), certify_direction(w, prefix).epsilon_hat);
    report.records.push_back(StreamRecord<Scalar>{
        static_cast<Index>(b), strategy, acc->points.size(),
        acc->claimed_epsilon, measured, theta_prefix,
        Scalar(1) - std::cos(theta_prefix)});
  }
  return report;
}

}  // namespace polydist
