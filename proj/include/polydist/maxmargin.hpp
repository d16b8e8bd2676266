#pragma once

// Reduction from labeled max-margin separation to polytope distance, and
// margin recovery. Only homogeneous (through-origin) separators are solved
// exactly; lift_labeled appends a constant coordinate for callers who want
// an affine separator, with the caveat that the lifted-space margin is not
// the exact affine margin.

#include "polydist/core.hpp"
#include "polydist/solver.hpp"

#include <limits>
#include <string>

namespace polydist {

/// Points with +-1 labels aligned to point indices. Single-class inputs are
/// allowed but can be queried via single_class().
template <typename Scalar>
struct LabeledPointSet {
  PointSet<Scalar> points;
  std::vector<int> labels;

  LabeledPointSet(PointSet<Scalar> pts, std::vector<int> lbls)
      : points(std::move(pts)), labels(std::move(lbls)) {
    if (static_cast<Index>(labels.size()) != points.size()) {
      throw std::invalid_argument("LabeledPointSet: label count mismatch");
    }
    for (int label : labels) {
      if (label != 1 && label != -1) {
        throw std::invalid_argument("LabeledPointSet: labels must be +-1");
      }
    }
  }

  bool single_class() const {
    for (int label : labels) {
      if (label != labels.front()) return false;
    }
    return true;
  }
};

using LabeledPointSetd = LabeledPointSet<double>;

template <typename Scalar>
struct MarginResult {
  /// Unit normal of the separating hyperplane through the origin.
  Vector<Scalar> normal;
  /// min_i y_i <normal, p_i>, recomputed from the raw inputs. At least
  /// (1 - epsilon) times the optimal homogeneous margin on converged runs.
  Scalar margin = Scalar(0);
  /// The solver's epsilon target for this run.
  Scalar epsilon_used = Scalar(0);
  /// Support of the underlying witness.
  std::vector<Index> support_indices;
  /// Witness over reduce_labeled(L); kept so the certificate can be
  /// recomputed later.
  ConvexCombination<Scalar> witness;
  bool converged = false;
};

using MarginResultd = MarginResult<double>;

/// Maps each labeled point to y_i * p_i; index correspondence is preserved.
/// A homogeneous separator with margin gamma for the labels is exactly a
/// direction at distance gamma from the reduced hull.
template <typename Scalar>
PointSet<Scalar> reduce_labeled(const LabeledPointSet<Scalar>& labeled) {
  Matrix<Scalar> m = labeled.points.matrix();
  for (Index i = 0; i < m.cols(); ++i) {
    m.col(i) *= Scalar(labeled.labels[static_cast<std::size_t>(i)]);
  }
  return PointSet<Scalar>(std::move(m));
}

/// Appends a constant lifting coordinate rho to every point, turning an
/// affine separator search into a homogeneous one in d+1 dimensions. The
/// margin measured in the lifted space is not the exact affine margin.
template <typename Scalar>
LabeledPointSet<Scalar> lift_labeled(const LabeledPointSet<Scalar>& labeled,
                                     Scalar rho = Scalar(1)) {
  Matrix<Scalar> m(labeled.points.dim() + 1, labeled.points.size());
  m.topRows(labeled.points.dim()) = labeled.points.matrix();
  m.row(labeled.points.dim()).setConstant(rho);
  return LabeledPointSet<Scalar>(PointSet<Scalar>(std::move(m)),
                                 labeled.labels);
}

/// Solves the reduced polytope-distance problem and recovers the separator:
/// normal = witness / ||witness||, margin recomputed from the raw labeled
/// inputs. Throws NotSeparable when no homogeneous positive-margin
/// separator exists.
template <typename Scalar>
MarginResult<Scalar> solve_margin(const LabeledPointSet<Scalar>& labeled,
                                  const SolverConfig<Scalar>& config) {
  const PointSet<Scalar> reduced = reduce_labeled(labeled);
  SolveResult<Scalar> result = [&] {
    try {
      return frank_wolfe(reduced, config);
    } catch (const OriginInsideHull& e) {
      throw NotSeparable(std::string("solve_margin: ") + e.what());
    }
  }();
  const Vector<Scalar> w = witness_point(result.witness, reduced);
  const Vector<Scalar> normal = w / w.norm();
  Scalar margin = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < labeled.points.size(); ++i) {
    const Scalar signed_dist =
        Scalar(labeled.labels[static_cast<std::size_t>(i)]) *
        normal.dot(labeled.points.point(i));
    margin = std::min(margin, signed_dist);
  }
  return MarginResult<Scalar>{normal,
                              margin,
                              config.epsilon_target,
                              result.coreset_indices,
                              std::move(result.witness),
                              result.converged};
}

/// Re-certifies a margin result against the labeled set it came from:
/// epsilon_of of the stored witness over the reduced set. Throws Mismatch
/// if the witness cannot be a combination over reduce_labeled(labeled).
template <typename Scalar>
Certificate<Scalar> margin_certificate(const MarginResult<Scalar>& result,
                                       const LabeledPointSet<Scalar>& labeled) {
  if (result.witness.max_index() >= labeled.points.size() ||
      result.witness.indices() != result.support_indices ||
      result.normal.size() != labeled.points.dim()) {
    throw Mismatch("margin_certificate: result does not belong to this set");
  }
  return epsilon_of(result.witness, reduce_labeled(labeled));
}

}  // namespace polydist
