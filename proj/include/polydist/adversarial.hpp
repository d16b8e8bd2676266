#pragma once

// Exact three-point constructions on which merging coresets provably loses
// accuracy, plus a verifier for the four clauses each construction makes:
// the parts admit good (or perfect) coresets, the merged selection is a
// good coreset of the union of parts, and yet against the full set the
// selection is pinned at the closed-form error.

#include "polydist/core.hpp"

#include <cmath>

namespace polydist {

enum class Theorem { t2, t3 };

/// A planar universe (p1, p2, p3), its decomposition, the selected
/// coresets, and the closed-form error values the construction attains.
template <typename Scalar>
struct AdversarialInstance {
  PointSet<Scalar> points;            // columns p1, p2, p3 in R^2
  std::vector<Index> partition_p1;    // {1, 2}
  std::vector<Index> partition_p2;    // {0}
  std::vector<Index> s1;              // {1}
  std::vector<Index> s2;              // {0}
  std::vector<Index> s;               // {0}
  Theorem theorem = Theorem::t2;
  Scalar theta = Scalar(0);
  /// Error bound claimed for the per-part coresets: 1 - cos(theta/2) for
  /// the equal-norm construction, exactly 0 for the tangent construction.
  Scalar expected_small_eps = Scalar(0);
  /// Error the merged selection is pinned at against the full set:
  /// 1 - cos(theta), resp. (1 - cos(theta)) / (1 + cos(theta)).
  Scalar expected_final_eps_lower_bound = Scalar(0);
};

using AdversarialInstanced = AdversarialInstance<double>;

template <typename Scalar>
struct ClauseMeasurement {
  bool pass = false;
  Scalar measured_epsilon = Scalar(0);
  Scalar bound = Scalar(0);
};

/// Clause-by-clause verification outcome. Clauses 1-3 check the selection
/// against its part (upper bound); clause 4 checks that the final selection
/// attains its error bound exactly.
template <typename Scalar>
struct ClauseReport {
  ClauseMeasurement<Scalar> clause1;  // s1 against part 1
  ClauseMeasurement<Scalar> clause2;  // s2 against part 2
  ClauseMeasurement<Scalar> clause3;  // s against s1 union s2
  ClauseMeasurement<Scalar> clause4;  // s against the full set
  /// Clause-4 equality within 1e-12; false flags "bound not attained".
  bool bound_attained = false;
  /// The clause-4 worst projection is numerically zero (witness orthogonal
  /// to the worst point), which happens at theta = pi/2.
  bool degenerate_certificate = false;

  bool all_pass() const {
    return clause1.pass && clause2.pass && clause3.pass && clause4.pass;
  }
};

using ClauseReportd = ClauseReport<double>;

namespace detail {

template <typename Scalar>
void check_theta(Scalar theta) {
  if (!(theta > Scalar(0)) || !(theta <= Scalar(M_PI_2))) {
    throw BadTheta("theta must lie in (0, pi/2]");
  }
}

}  // namespace detail

/// Equal-norm construction: three unit points at angles 0, theta/2, theta.
/// Keeping p2 for {p2, p3}, p1 for {p1}, and then p1 for the merged pair is
/// fine at error 1 - cos(theta/2) each, yet against all three points the
/// kept point p1 is exactly a (1 - cos theta)-approximation and no better.
template <typename Scalar>
AdversarialInstance<Scalar> theorem2_instance(Scalar theta) {
  detail::check_theta(theta);
  const Scalar half = theta / Scalar(2);
  Matrix<Scalar> m(2, 3);
  m.col(0) << Scalar(1), Scalar(0);
  m.col(1) << std::cos(half), std::sin(half);
  m.col(2) << std::cos(theta), std::sin(theta);
  return AdversarialInstance<Scalar>{PointSet<Scalar>(std::move(m)),
                                     {1, 2},
                                     {0},
                                     {1},
                                     {0},
                                     {0},
                                     Theorem::t2,
                                     theta,
                                     Scalar(1) - std::cos(half),
                                     Scalar(1) - std::cos(theta)};
}

/// Tangent construction: p1 = (1, 0), p2 = (1, tan(theta/2)) so p2 projects
/// onto p1 with exactly |p1|, and p3 at angle theta with norm 1/cos^2(theta/2)
/// so p3 projects onto p2 with exactly |p2|. Every per-part selection is a
/// perfect (0-error) coreset, yet the merged selection p1 is pinned at
/// (1 - cos theta) / (1 + cos theta) against the full set.
template <typename Scalar>
AdversarialInstance<Scalar> theorem3_instance(Scalar theta) {
  detail::check_theta(theta);
  const Scalar half = theta / Scalar(2);
  const Scalar cos_half = std::cos(half);
  Matrix<Scalar> m(2, 3);
  m.col(0) << Scalar(1), Scalar(0);
  m.col(1) << Scalar(1), std::tan(half);
  m.col(2) << std::cos(theta) / (cos_half * cos_half),
      std::sin(theta) / (cos_half * cos_half);
  const Scalar cos_theta = std::cos(theta);
  return AdversarialInstance<Scalar>{
      PointSet<Scalar>(std::move(m)),
      {1, 2},
      {0},
      {1},
      {0},
      {0},
      Theorem::t3,
      theta,
      Scalar(0),
      (Scalar(1) - cos_theta) / (Scalar(1) + cos_theta)};
}

namespace detail {

template <typename Scalar>
ClauseMeasurement<Scalar> measure_clause(const PointSet<Scalar>& universe,
                                         const std::vector<Index>& selection,
                                         const PointSet<Scalar>& all,
                                         Scalar bound) {
  // Selections in these constructions are singletons; the witness is the
  // selected point itself.
  const Vector<Scalar> w = all.point(selection.front());
  const Scalar measured = certify_direction(w, universe).epsilon_hat;
  const bool pass =
      measured <= bound + Scalar(1e-12) && measured >= Scalar(-1e-12);
  return ClauseMeasurement<Scalar>{pass, measured, bound};
}

}  // namespace detail

/// Checks the four clauses of a constructed instance. Structural problems
/// (wrong sizes, partition, or selections) raise MalformedInstance;
/// geometric deviations -- for example a perturbed point -- do not, they
/// simply show up as failed clauses, with clause 4 reporting the bound as
/// not attained.
template <typename Scalar>
ClauseReport<Scalar> verify_instance(const AdversarialInstance<Scalar>& inst) {
  const auto& P = inst.points;
  if (P.dim() != 2 || P.size() != 3) {
    throw MalformedInstance("verify_instance: expected three points in R^2");
  }
  if (inst.partition_p1 != std::vector<Index>{1, 2} ||
      inst.partition_p2 != std::vector<Index>{0} ||
      inst.s1 != std::vector<Index>{1} || inst.s2 != std::vector<Index>{0} ||
      inst.s != std::vector<Index>{0}) {
    throw MalformedInstance(
        "verify_instance: partition/selection shape does not match the "
        "construction");
  }
  if (!(inst.theta > Scalar(0)) ||
      !(inst.theta <= Scalar(M_PI_2) + Scalar(1e-12))) {
    throw MalformedInstance("verify_instance: theta outside (0, pi/2]");
  }

  const PointSet<Scalar> part1 = subset(P, inst.partition_p1);
  const PointSet<Scalar> part2 = subset(P, inst.partition_p2);
  const PointSet<Scalar> merged_universe = subset(P, {0, 1});  // s1 union s2

  ClauseReport<Scalar> report;
  report.clause1 =
      detail::measure_clause(part1, inst.s1, P, inst.expected_small_eps);
  report.clause2 =
      detail::measure_clause(part2, inst.s2, P, inst.expected_small_eps);
  report.clause3 = detail::measure_clause(merged_universe, inst.s, P,
                                          inst.expected_small_eps);

  // Clause 4 is attainment: the constructions realize their lower bound
  // exactly, so it is verified as equality.
  const Vector<Scalar> w = P.point(inst.s.front());
  const Scalar measured = certify_direction(w, P).epsilon_hat;
  const Scalar bound = inst.expected_final_eps_lower_bound;
  report.bound_attained = std::abs(measured - bound) <= Scalar(1e-12);
  report.clause4 = ClauseMeasurement<Scalar>{report.bound_attained, measured, bound};
  report.degenerate_certificate = measured >= Scalar(1) - Scalar(1e-9);
  return report;
}

}  // namespace polydist
