#include "doctest.h"

#include <random>

#include "cuspkit/bounds.hpp"
#include "cuspkit/densities.hpp"

using namespace cuspkit;

namespace {
const double kSqrt5Half = std::sqrt(5.0) / 2.0;
const double kSystole = 2.0 * std::acosh((1.0 + std::sqrt(13.0)) / 4.0);
}  // namespace

TEST_CASE("report relations") {
  const BoundReport le = make_report("x", "y", 1.0, 2.0);
  CHECK(le.verified);
  CHECK(le.slack == 1.0);
  CHECK_FALSE(make_report("x", "y", 2.0, 1.0).verified);
  CHECK(make_report("x", "y", 1.0 + 5e-10, 1.0).verified);
  CHECK(make_report("x", "y", 1.0, 1.0 + 5e-10, "==").verified);
  CHECK_FALSE(make_report("x", "y", 1.0, 1.1, "==").verified);
  CHECK_THROWS_AS(make_report("x", "y", NAN, 1.0), Error);
  CHECK_THROWS_AS(make_report("x", "y", 1.0, INFINITY), Error);
}

TEST_CASE("loxodromic bounds") {
  CHECK(loxodromic_cosh_bound(1.0, 1.0) == doctest::Approx(kSqrt5Half));
  CHECK(loxodromic_cosh_bound(1.0, std::sqrt(3.0)) == doctest::Approx(std::sqrt(7.0) / 2.0));
  const BoundReport g = loxodromic_case_bound(1.0, std::sqrt(3.0), kSystole);
  CHECK(g.verified);
  CHECK(g.lhs == doctest::Approx(1.1513878).epsilon(1e-7));
  CHECK(g.rhs == doctest::Approx(1.3228757).epsilon(1e-7));
  double prev = 0.0;
  for (double b = 1.0; b < 20.0; b *= 2.0) {
    CHECK(loxodromic_cosh_bound(1.0, b) > prev);
    prev = loxodromic_cosh_bound(1.0, b);
  }
  CHECK_THROWS_AS(loxodromic_case_bound(1.0, 0.5, 1.0), Error);
  const BoundReport ratio = loxodromic_ratio_bound(1.0, 1.0, std::sqrt(3.0));
  CHECK(ratio.lhs == doctest::Approx(kSqrt5Half).epsilon(1e-14));
  CHECK(ratio.verified);
}

TEST_CASE("successive minima bound, both readings") {
  const double ch = std::cosh(kSystole / 2.0);
  const auto r = successive_minima_bound(1.0, 2.0 * std::sqrt(3.0), 1.0, ch);
  REQUIRE(r.size() == 2);
  CHECK(r[0].rhs == doctest::Approx(1.0 + std::sqrt(3.0)));
  CHECK(r[1].rhs == doctest::Approx(7.0));
  CHECK(r[0].verified);
  CHECK(r[1].verified);
  CHECK(successive_minima_bound(0.7, 0.7, 0.7, 1.0)[0].rhs == doctest::Approx(1.5));
  CHECK_THROWS_AS(successive_minima_bound(0.5, 1.0, 0.7, 1.0), Error);
}

TEST_CASE("dimension-n theorem") {
  const double lhs = std::cosh(kSystole / 2.0);
  const BoundReport r1 = dim_n_theorem(3, 1, lhs);
  CHECK(r1.rhs == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(r1.verified);
  CHECK(dim_n_theorem(3, 2, lhs).rhs == doctest::Approx(2.0 * r1.rhs));
  CHECK(r1.rhs >= kSqrt5Half);
}

TEST_CASE("parabolic positive case") {
  CHECK(parabolic_positive_case(1.0).lhs == doctest::Approx(0.75));
  const double h0 = parabolic_positive_threshold();
  CHECK((1.0 + 1.0 / (2.0 * h0)) / 2.0 == doctest::Approx(kSqrt5Half));
  CHECK(parabolic_positive_case(0.3).lhs ==
        doctest::Approx((1.0 + 1.0 / 0.6) / (0.5 * (1.0 + 1.0 / (std::sqrt(3.0) * 0.09)))));
  CHECK(parabolic_positive_case(0.3).lhs == doctest::Approx(0.7193).epsilon(1e-4));
  for (int i = 1; i <= 1000; ++i) CHECK(parabolic_positive_case(i / 1000.0).verified);
  CHECK_THROWS_AS(parabolic_positive_case(1.5), Error);
  CHECK_THROWS_AS(parabolic_positive_case(0.0), Error);
}

TEST_CASE("parabolic negative majorant") {
  const double at1 = std::sqrt(4.5) / (std::sqrt(0.4375) + std::sqrt(3.0) / 2.0 + std::sqrt(0.1875));
  CHECK(parabolic_negative_majorant(1.0) == doctest::Approx(at1).epsilon(1e-14));
  CHECK(std::abs(at1 - 1.0821) < 1e-3);
  CHECK(parabolic_negative_majorant(0.5) < at1);
  CHECK_THROWS_AS(parabolic_negative_majorant(0.4), Error);
  CHECK_THROWS_AS(parabolic_negative_case(1.01), Error);

  const MajorantScan s = scan_parabolic_negative();
  CHECK(s.points == 10001);
  CHECK(s.step == doctest::Approx(5e-5));
  CHECK(std::abs(s.argmax - 1.0) <= 1e-4);
  CHECK(s.max_value == doctest::Approx(at1).epsilon(1e-12));
  CHECK(s.max_value <= kSqrt5Half - 0.03);
  // Independent check on a grid ten times finer.
  double best = 0.0, arg = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double h = 0.5 + 0.5 * i / 100000.0;
    const double v = parabolic_negative_majorant(h);
    if (v > best) best = v, arg = h;
  }
  CHECK(arg == 1.0);
  CHECK(best == doctest::Approx(s.max_value).epsilon(1e-14));
  const MajorantScan t = scan_parabolic_negative(10001, 1);
  CHECK(t.max_value == s.max_value);
}

TEST_CASE("parabolic negative with several cusps") {
  for (int i = 1; i <= 1000; ++i) CHECK(parabolic_negative_multi_cusp(i / 1000.0).verified);
  CHECK(parabolic_negative_multi_cusp(1.0).lhs == doctest::Approx(std::sqrt(6.0) / 4.0));
}

TEST_CASE("parabolic negative constraint chain") {
  // Gieseking: h = 1, theta = pi/3, |b| = 1, d = 1.
  const ConstraintChain g = parabolic_negative_constraints(1.0, 1.0, kPi / 3.0);
  CHECK(g.ok);
  CHECK(g.b_abs == doctest::Approx(1.0));
  CHECK(parabolic_negative_constraints(0.8, 0.6, std::acos(1.0 / 1.2)).ok);
  CHECK_FALSE(parabolic_negative_constraints(1.0, 1.0, 1.2).ok);
  CHECK_FALSE(parabolic_negative_constraints(0.4, 0.5, 0.0).ok);
}

TEST_CASE("inradius constant") {
  const BoundReport r = inradius_bound(std::acosh(kSqrt5Half));
  CHECK(r.verified);
  CHECK(std::abs(std::acosh(kSqrt5Half) - 0.4812118) < 1e-7);
  CHECK_FALSE(inradius_bound(0.5).verified);
}
