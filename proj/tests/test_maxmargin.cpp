#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polydist/maxmargin.hpp"
#include "support/generators.hpp"

#include <cmath>

using namespace polydist;

namespace {

LabeledPointSetd symmetric_pair() {
  return LabeledPointSetd(PointSetd::from_points({{0.0, 1.0}, {0.0, -1.0}}),
                          {1, -1});
}

}  // namespace

TEST_CASE("labeled set validation") {
  CHECK_THROWS_AS(
      LabeledPointSetd(PointSetd::from_points({{1.0, 0.0}}), {1, -1}),
      std::invalid_argument);
  CHECK_THROWS_AS(LabeledPointSetd(PointSetd::from_points({{1.0, 0.0}}), {2}),
                  std::invalid_argument);
  CHECK(LabeledPointSetd(PointSetd::from_points({{1.0, 0.0}}), {1}).single_class());
  CHECK_FALSE(symmetric_pair().single_class());
}

TEST_CASE("reduce_labeled flips negative points") {
  const LabeledPointSetd l(PointSetd::from_points({{2.0, 3.0}, {2.0, 3.0}}),
                           {1, -1});
  const auto reduced = reduce_labeled(l);
  CHECK(reduced.point(0)[0] == 2.0);
  CHECK(reduced.point(1)[0] == -2.0);
  CHECK(reduced.point(1)[1] == -3.0);

  // opposite labels on mirrored points collapse to the same reduced point
  const auto mirrored = reduce_labeled(symmetric_pair());
  CHECK((mirrored.point(0) - mirrored.point(1)).norm() == 0.0);
}

TEST_CASE("solve_margin on the symmetric pair") {
  const auto result = solve_margin(symmetric_pair(), SolverConfigd{1e-6, std::nullopt});
  CHECK(result.converged);
  CHECK(result.normal[0] == doctest::Approx(0.0));
  CHECK(result.normal[1] == doctest::Approx(1.0));
  CHECK(result.margin == doctest::Approx(1.0));
  CHECK(result.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_margin on a three-point instance") {
  const LabeledPointSetd l(
      PointSetd::from_points({{1.0, 1.0}, {-1.0, 1.0}, {0.0, -1.0}}),
      {1, 1, -1});
  const auto result = solve_margin(l, SolverConfigd{1e-6, std::nullopt});
  CHECK(result.converged);
  CHECK(result.margin == doctest::Approx(1.0).epsilon(1e-6));
  // oracle on the reduced set confirms the optimum
  const auto oracle = brute_force_distance(reduce_labeled(l), 20);
  CHECK(result.margin >= (1.0 - 1e-6) * oracle.norm - 1e-8);
  CHECK(result.support_indices == std::vector<Index>{2});
}

TEST_CASE("overlapping classes are not separable") {
  const LabeledPointSetd l(PointSetd::from_points({{1.0, 0.0}, {1.0, 0.0}}),
                           {1, -1});
  CHECK_THROWS_AS(solve_margin(l, SolverConfigd{1e-6, std::nullopt}),
                  NotSeparable);
}

TEST_CASE("margin_certificate rechecks the stored witness") {
  const auto l = symmetric_pair();
  const auto result = solve_margin(l, SolverConfigd{0.01, std::nullopt});
  const auto cert = margin_certificate(result, l);
  CHECK(cert.epsilon_hat <= result.epsilon_used);
  CHECK(std::abs(cert.epsilon_hat) <= 1e-15);
}

TEST_CASE("margin_certificate detects mismatched inputs") {
  const LabeledPointSetd big(
      PointSetd::from_points({{1.0, 1.0}, {-1.0, 1.0}, {0.0, -1.0}}),
      {1, 1, -1});
  const auto result = solve_margin(big, SolverConfigd{0.01, std::nullopt});

  const LabeledPointSetd small(PointSetd::from_points({{1.0, 1.0}}), {1});
  CHECK_THROWS_AS(margin_certificate(result, small), Mismatch);

  auto tampered = result;
  tampered.support_indices.push_back(1);
  CHECK_THROWS_AS(margin_certificate(tampered, big), Mismatch);
}

TEST_CASE("non-converged solves stay truthful") {
  // optimum needs all three support points, so one step cannot certify
  const LabeledPointSetd l(
      PointSetd::from_points(
          {{1.0, 0.3, 0.0}, {1.0, -0.2, 0.25}, {1.0, 0.0, -0.3}}),
      {1, 1, 1});
  const auto result = solve_margin(l, SolverConfigd{1e-9, 1});
  CHECK_FALSE(result.converged);
  const auto cert = margin_certificate(result, l);
  CHECK(cert.epsilon_hat > 1e-9);
  CHECK(cert.epsilon_hat == epsilon_of(result.witness, reduce_labeled(l)).epsilon_hat);
}

TEST_CASE("margin functional transports to the reduced set") {
  testing::Rng rng(20240301);
  std::uniform_real_distribution<double> scales(1e-3, 1e3);
  for (int rep = 0; rep < 100; ++rep) {
    const auto l = testing::random_separable_labeled(rng, 5, 3, 0.2);
    const auto reduced = reduce_labeled(l);
    const Vector<double> w = testing::random_unit_vector(rng, 3);
    double margin = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < l.points.size(); ++i) {
      margin = std::min(margin, double(l.labels[std::size_t(i)]) *
                                    w.dot(l.points.point(i)));
    }
    // projections onto a direction are invariant to positive scaling of it
    const double c = scales(rng);
    double min_proj = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < reduced.size(); ++i) {
      min_proj = std::min(
          min_proj, projection_length(reduced.point(i), (c * w).eval()));
    }
    CHECK(margin == doctest::Approx(min_proj).epsilon(1e-12));
  }
}

TEST_CASE("achieved margin meets the approximation guarantee") {
  testing::Rng rng(20240302);
  std::uniform_int_distribution<Index> sizes(2, 5);
  std::uniform_int_distribution<Index> dims(1, 3);
  const double eps = 0.05;
  for (int rep = 0; rep < 100; ++rep) {
    const auto l =
        testing::random_separable_labeled(rng, sizes(rng), dims(rng), 0.2);
    const auto result = solve_margin(l, SolverConfigd{eps, std::nullopt});
    REQUIRE(result.converged);
    const auto oracle = brute_force_distance(reduce_labeled(l), 24);
    CHECK(result.margin >= (1.0 - eps) * oracle.norm - 1e-8);
  }
}

TEST_CASE("label flips negate the separator exactly") {
  testing::Rng rng(20240303);
  for (int rep = 0; rep < 50; ++rep) {
    const auto l = testing::random_separable_labeled(rng, 4, 3, 0.2);
    std::vector<int> flipped;
    for (int y : l.labels) flipped.push_back(-y);
    const LabeledPointSetd neg(l.points, std::move(flipped));
    const SolverConfigd config{0.01, std::nullopt};
    const auto a = solve_margin(l, config);
    const auto b = solve_margin(neg, config);
    CHECK(a.margin == b.margin);
    CHECK((a.normal + b.normal).norm() == 0.0);
  }
}

TEST_CASE("lift_labeled appends the constant coordinate") {
  const auto l = symmetric_pair();
  const auto lifted = lift_labeled(l, 0.5);
  CHECK(lifted.points.dim() == 3);
  CHECK(lifted.points.point(0)[2] == 0.5);
  CHECK(lifted.points.point(1)[2] == 0.5);
  CHECK(lifted.labels == l.labels);

  // affine-only separable data becomes solvable after lifting
  const LabeledPointSetd affine(
      PointSetd::from_points({{2.0}, {1.0}}), {1, -1});
  CHECK_THROWS_AS(solve_margin(affine, SolverConfigd{0.01, std::nullopt}),
                  NotSeparable);
  const auto result =
      solve_margin(lift_labeled(affine, 1.0), SolverConfigd{0.01, std::nullopt});
  CHECK(result.converged);
  CHECK(result.margin > 0.0);
}
