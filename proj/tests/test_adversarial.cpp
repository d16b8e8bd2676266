#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polydist/adversarial.hpp"

#include <cmath>

using namespace polydist;

namespace {

double angle_between(const Vector<double>& a, const Vector<double>& b) {
  return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
}

}  // namespace

TEST_CASE("equal-norm construction satisfies its geometric identities") {
  for (double theta : {0.1, 0.5, M_PI / 3, 1.2, M_PI_2}) {
    const auto inst = theorem2_instance(theta);
    const auto& p = inst.points;
    REQUIRE(p.size() == 3);
    const double n0 = p.point(0).norm();
    CHECK(p.point(1).norm() == doctest::Approx(n0).epsilon(1e-12));
    CHECK(p.point(2).norm() == doctest::Approx(n0).epsilon(1e-12));
    CHECK(angle_between(p.point(0), p.point(1)) ==
          doctest::Approx(theta / 2).epsilon(1e-10));
    CHECK(angle_between(p.point(1), p.point(2)) ==
          doctest::Approx(theta / 2).epsilon(1e-10));
    CHECK(angle_between(p.point(0), p.point(2)) ==
          doctest::Approx(theta).epsilon(1e-10));
    CHECK(std::abs(angular_diameter(p) - theta) <= 1e-12);
  }
}

TEST_CASE("tangent construction satisfies its projection identities") {
  for (double theta : {0.1, 0.5, M_PI / 3, 1.2, M_PI_2}) {
    const auto inst = theorem3_instance(theta);
    const auto& p = inst.points;
    // p2 projects onto p1 with exactly |p1|, p3 onto p2 with exactly |p2|
    CHECK(projection_length(p.point(1), p.point(0)) ==
          doctest::Approx(p.point(0).norm()).epsilon(1e-12));
    CHECK(projection_length(p.point(2), p.point(1)) ==
          doctest::Approx(p.point(1).norm()).epsilon(1e-12));
    CHECK(angle_between(p.point(0), p.point(1)) ==
          doctest::Approx(theta / 2).epsilon(1e-10));
    CHECK(angle_between(p.point(1), p.point(2)) ==
          doctest::Approx(theta / 2).epsilon(1e-10));
    CHECK(std::abs(angular_diameter(p) - theta) <= 1e-12);
  }
}

TEST_CASE("construction rejects theta outside (0, pi/2]") {
  CHECK_THROWS_AS(theorem2_instance(0.0), BadTheta);
  CHECK_THROWS_AS(theorem2_instance(-0.5), BadTheta);
  CHECK_THROWS_AS(theorem2_instance(M_PI_2 * 1.01), BadTheta);
  CHECK_THROWS_AS(theorem3_instance(0.0), BadTheta);
  CHECK_THROWS_AS(theorem3_instance(2.0), BadTheta);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(theorem2_instance(nan), BadTheta);
}

TEST_CASE("equal-norm instance spot values") {
  // at pi/2 the kept point is orthogonal to the far point: error 1
  const auto right = verify_instance(theorem2_instance(M_PI_2));
  CHECK(right.clause4.measured_epsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(right.degenerate_certificate);

  const auto third = verify_instance(theorem2_instance(M_PI / 3));
  CHECK(third.clause4.measured_epsilon == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(third.all_pass());
  CHECK_FALSE(third.degenerate_certificate);

  // small angles: 1 - cos(theta) ~ theta^2 / 2
  const double tiny = 1e-3;
  const auto small = verify_instance(theorem2_instance(tiny));
  CHECK(small.clause4.measured_epsilon ==
        doctest::Approx(tiny * tiny / 2).epsilon(1e-9));
  CHECK(std::abs(small.clause4.measured_epsilon - tiny * tiny / 2) <= 1e-9);
}

TEST_CASE("tangent instance spot values") {
  const auto third = verify_instance(theorem3_instance(M_PI / 3));
  CHECK(third.clause4.measured_epsilon ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(third.all_pass());

  const auto right = verify_instance(theorem3_instance(M_PI_2));
  CHECK(right.clause4.measured_epsilon == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(right.all_pass());
  CHECK(right.degenerate_certificate);

  // the per-part selections are perfect coresets at any theta
  for (double theta : {0.2, 0.9, M_PI / 3, M_PI_2}) {
    const auto report = verify_instance(theorem3_instance(theta));
    CHECK(std::abs(report.clause1.measured_epsilon) <= 1e-12);
    CHECK(std::abs(report.clause2.measured_epsilon) <= 1e-12);
    CHECK(std::abs(report.clause3.measured_epsilon) <= 1e-12);
  }
}

TEST_CASE("all four clauses verify across the theta grid") {
  for (int k = 1; k <= 100; ++k) {
    const double theta = M_PI_2 * k / 100.0;
    const auto t2 = verify_instance(theorem2_instance(theta));
    CHECK(t2.all_pass());
    CHECK(t2.bound_attained);
    CHECK(std::abs(t2.clause4.measured_epsilon - (1.0 - std::cos(theta))) <=
          1e-10);

    const auto t3 = verify_instance(theorem3_instance(theta));
    CHECK(t3.all_pass());
    CHECK(t3.bound_attained);
    const double expected =
        (1.0 - std::cos(theta)) / (1.0 + std::cos(theta));
    CHECK(std::abs(t3.clause4.measured_epsilon - expected) <= 1e-10);
  }
}

TEST_CASE("closed-form bounds are monotone and ordered on the grid") {
  double last_t2 = 0.0;
  double last_t3 = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double theta = M_PI_2 * k / 100.0;
    const double b2 = 1.0 - std::cos(theta);
    const double b3 = (1.0 - std::cos(theta)) / (1.0 + std::cos(theta));
    CHECK(b2 > last_t2);
    CHECK(b3 > last_t3);
    last_t2 = b2;
    last_t3 = b3;
    if (k < 100) CHECK(b3 < b2);  // strict on the open interval
  }
}

TEST_CASE("perturbed instance reports the bound as not attained") {
  auto inst = theorem2_instance(M_PI / 3);
  // nudge p3 toward p1; the structure still verifies, the attainment fails
  Matrix<double> m = inst.points.matrix();
  m.col(2) += 1e-3 * (m.col(0) - m.col(2));
  inst.points = PointSetd(std::move(m));
  const auto report = verify_instance(inst);
  CHECK_FALSE(report.bound_attained);
  CHECK_FALSE(report.clause4.pass);
  CHECK(report.clause4.measured_epsilon < report.clause4.bound);
}

TEST_CASE("verifier rejects structurally malformed instances") {
  auto wrong_partition = theorem2_instance(1.0);
  wrong_partition.partition_p1 = {0, 2};
  wrong_partition.partition_p2 = {1};
  CHECK_THROWS_AS(verify_instance(wrong_partition), MalformedInstance);

  auto wrong_shape = theorem2_instance(1.0);
  wrong_shape.points = PointSetd::from_points({{1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(verify_instance(wrong_shape), MalformedInstance);

  auto wrong_theta = theorem2_instance(1.0);
  wrong_theta.theta = -1.0;
  CHECK_THROWS_AS(verify_instance(wrong_theta), MalformedInstance);
}
