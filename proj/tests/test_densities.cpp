#include "doctest.h"

#include <random>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cuspkit/densities.hpp"
#include "cuspkit/isom3.hpp"

using namespace cuspkit;

namespace {

// -int_0^theta ln|2 sin t| dt by tanh-sinh quadrature (log singularity at 0).
double lobachevsky_quadrature(double theta) {
  if (theta == 0.0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> q;
  const auto f = [](double t) { return -std::log(std::abs(2.0 * std::sin(t))); };
  // Integrate piecewise between multiples of pi.
  double total = 0.0, lo = 0.0;
  const double sign = theta > 0 ? 1.0 : -1.0;
  const double end = std::abs(theta);
  while (lo < end) {
    const double hi = std::min(end, (std::floor(lo / kPi) + 1.0) * kPi);
    total += q.integrate(f, lo, hi);
    lo = hi;
  }
  return sign * total;
}

// Squared minimum of a random unimodular lattice in dimension k by bounded enumeration.
double random_lattice_minimum(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b(i, j) = n(rng);
    const double det = std::abs(b.determinant());
    if (det < 1e-3) continue;
    b /= std::pow(det, 1.0 / k);
    double best = 1e300;
    for (int j = 0; j < k; ++j) best = std::min(best, b.col(j).squaredNorm());
    const Eigen::MatrixXd inv = b.inverse();
    std::vector<int> range(k);
    double cases = 1.0;
    for (int i = 0; i < k; ++i) {
      range[i] = int(std::ceil(std::sqrt(best) * inv.row(i).norm()));
      cases *= 2.0 * range[i] + 1.0;
    }
    if (cases > 2e5) continue;
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = -range[i];
    for (;;) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(k);
      bool zero = true;
      for (int i = 0; i < k; ++i) {
        v += c[i] * b.col(i);
        zero = zero && c[i] == 0;
      }
      if (!zero) best = std::min(best, v.squaredNorm());
      int i = 0;
      while (i < k && ++c[i] > range[i]) c[i] = -range[i], ++i;
      if (i == k) break;
    }
    return best;
  }
}

}  // namespace

TEST_CASE("Lobachevsky function against quadrature") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-7.0, 7.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    CHECK(lobachevsky(t) == doctest::Approx(lobachevsky_quadrature(t)).epsilon(1e-10).scale(1.0));
  }
  CHECK(lobachevsky(0.0) == 0.0);
  CHECK(std::abs(lobachevsky(kPi / 2.0)) < 1e-14);
  CHECK(std::abs(lobachevsky(kPi)) < 1e-14);
  // Catalan's constant.
  CHECK(clausen2(kPi / 2.0) == doctest::Approx(0.915965594177219015).epsilon(1e-14));
  CHECK(clausen2(1.0 + 2.0 * kPi) == doctest::Approx(clausen2(1.0)).epsilon(1e-13));
  CHECK(clausen2(-0.7) == doctest::Approx(-clausen2(0.7)).epsilon(1e-14));
}

TEST_CASE("Lobachevsky maximum at pi/6") {
  const double top = lobachevsky(kPi / 6.0);
  for (int i = 1; i < 2000; ++i) CHECK(lobachevsky(kPi * i / 2000.0) <= top + 1e-15);
  // The derivative -ln|2 sin t| changes sign at pi/6.
  CHECK(-std::log(2.0 * std::sin(kPi / 6.0 - 1e-3)) > 0.0);
  CHECK(-std::log(2.0 * std::sin(kPi / 6.0 + 1e-3)) < 0.0);
}

TEST_CASE("regular ideal tetrahedron volume") {
  CHECK(nu3() == doctest::Approx(1.0149416064096536).epsilon(1e-14));
  CHECK(std::abs(nu3() - 1.0149416) < 1e-7);
  CHECK(nu3() == doctest::Approx(3.0 * lobachevsky_quadrature(kPi / 3.0)).epsilon(1e-12));
}

TEST_CASE("horoball density forms") {
  CHECK(d_inf_numerator_product(3) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(d_inf_numerator_closed(3) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  const double n4 = (5.0 / 3.0) * 0.5 * (1.0 / 3.0) * std::sqrt(0.5);
  CHECK(d_inf_numerator_product(4) == doctest::Approx(n4).epsilon(1e-14));
  CHECK(d_inf_numerator_closed(4) == doctest::Approx(n4).epsilon(1e-14));
  for (int n = 3; n <= 30; ++n) {
    CHECK(d_inf_numerator_product(n) == doctest::Approx(d_inf_numerator_closed(n)).epsilon(1e-12));
  }
  CHECK(d_inf_closed(3) == doctest::Approx(0.853276).epsilon(1e-5));
  CHECK(d_inf_closed(3) * nu3() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(d_inf_product(3) == doctest::Approx(d_inf_closed(3)).epsilon(1e-14));
  CHECK_THROWS_AS(d_inf_closed(4), Error);
  CHECK_THROWS_AS(d_inf_product(5), Error);
  CHECK(d_inf_asymptotic(3) == doctest::Approx(3.0 / (2.0 * std::exp(1.0))));

  const DensityTable t3 = density_table(3);
  CHECK(t3.density.has_value());
  CHECK(*t3.density > 0.0);
  CHECK(*t3.density <= 1.0);
  CHECK_FALSE(density_table(4).nu.has_value());
}

TEST_CASE("closed form against the asymptotic density") {
  // With the asymptotic simplex volume the ratio is exactly (n+1)/(n-1).
  for (int n = 3; n <= 60; ++n) {
    const double ratio = d_inf_numerator_closed(n) / nu_asymptotic(n) / d_inf_asymptotic(n);
    CHECK(ratio == doctest::Approx(double(n + 1) / (n - 1)).epsilon(1e-10));
  }
  const double at40 = d_inf_numerator_closed(40) / nu_asymptotic(40) / d_inf_asymptotic(40);
  CHECK(at40 > 1.05);
  const double at42 = d_inf_numerator_closed(42) / nu_asymptotic(42) / d_inf_asymptotic(42);
  CHECK(at42 < 1.05);
}

TEST_CASE("Hermite constants") {
  const double powers[8] = {1.0, 4.0 / 3.0, 2.0, 4.0, 8.0, 64.0 / 3.0, 64.0, 256.0};
  for (int k = 1; k <= 8; ++k) {
    const HermiteData h = hermite(k);
    REQUIRE(h.known.has_value());
    CHECK(std::pow(*h.known, k) == doctest::Approx(powers[k - 1]).epsilon(1e-13));
    CHECK(h.lower_asymptotic == doctest::Approx(k / (2.0 * kPi * std::exp(1.0))));
    CHECK(h.upper_asymptotic == doctest::Approx(1.744 * h.lower_asymptotic));
  }
  CHECK(hermite_constant(2) == doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK(*hermite(24).known == 4.0);
  CHECK(hermite(24).lower_asymptotic <= 4.0);
  bool tab = true;
  hermite_constant(12, &tab);
  CHECK_FALSE(tab);
  CHECK(index_bound(3) == 8.0);
  CHECK(index_bound(4) == 48.0);
}

TEST_CASE("random lattices never beat the Hermite table") {
  std::mt19937_64 rng(59);
  for (int k = 2; k <= 4; ++k) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, random_lattice_minimum(k, rng));
    CHECK(worst <= *hermite(k).known + 1e-12);
  }
}

TEST_CASE("systole coefficient") {
  const SystoleCoefficient c3 = systole_coefficient(3, 1);
  CHECK(c3.value == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(c3.hermite_tabulated);
  CHECK(systole_coefficient(7, 2).value == doctest::Approx(2.0 * systole_coefficient(7, 1).value));
  for (int n = 3; n <= 40; ++n) {
    const SystoleCoefficient c = systole_coefficient(n, 3, HermiteSource::asymptotic);
    CHECK(c.normalized <= 25.0);
    CHECK(c.normalized == doctest::Approx(c.value * std::pow(5.0, n - 1) / 3.0));
  }
}
