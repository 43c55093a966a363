#include "cuspkit/densities.hpp"

#include <cmath>

#include "cuspkit/errors.hpp"
#include "cuspkit/isom3.hpp"

namespace cuspkit {

namespace {

void require_dimension(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "dimension must be at least 3");
}

constexpr double kE = 2.71828182845904523536;

// gamma_k^k for k = 1..8.
constexpr double kHermitePowers[] = {1.0, 4.0 / 3.0, 2.0, 4.0, 8.0, 64.0 / 3.0, 64.0, 256.0};

}  // namespace

double clausen2(double x) {
  const double two_pi = 2.0 * kPi;
  x = std::remainder(x, two_pi);  // now in [-pi, pi]
  if (x == 0.0) return 0.0;
  // Cl2(x) = x - x ln|x| + sum_k zeta(2k) / (k (2k+1)) x^{2k+1} / (2 pi)^{2k}
  const double q = (x / two_pi) * (x / two_pi);
  double power = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 60; ++k) {
    power *= q;
    const double term = std::riemann_zeta(2.0 * k) / (k * (2.0 * k + 1.0)) * power;
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
  }
  return x - x * std::log(std::abs(x)) + x * sum;
}

double lobachevsky(double theta) { return 0.5 * clausen2(2.0 * theta); }

double nu3() { return 3.0 * lobachevsky(kPi / 3.0); }

double nu_asymptotic(int n) {
  require_dimension(n);
  return kE * std::sqrt(static_cast<double>(n)) / std::tgamma(n + 1.0);
}

double d_inf_numerator_product(int n) {
  require_dimension(n);
  double v = (n + 1.0) / (n - 1.0) * n / std::pow(2.0, n - 1);
  for (int k = 2; k <= n - 1; ++k) {
    v *= std::pow((k - 1.0) / (k + 1.0), (n - k) / 2.0);
  }
  return v;
}

double d_inf_numerator_closed(int n) {
  require_dimension(n);
  return (n + 1.0) / (n - 1.0) * std::sqrt(static_cast<double>(n)) / std::tgamma(static_cast<double>(n)) *
         std::pow(2.0, -(n - 1) / 2.0);
}

double d_inf_product(int n) {
  if (n != 3) throw Error(ErrorCode::NuUnavailable, "exact nu_n is only available for n = 3");
  return d_inf_numerator_product(3) / nu3();
}

double d_inf_closed(int n) {
  if (n != 3) throw Error(ErrorCode::NuUnavailable, "exact nu_n is only available for n = 3");
  return d_inf_numerator_closed(3) / nu3();
}

double d_inf_asymptotic(int n) {
  require_dimension(n);
  return n / (kE * std::pow(2.0, (n - 1) / 2.0));
}

DensityTable density_table(int n) {
  DensityTable t;
  t.n = n;
  t.numerator_product = d_inf_numerator_product(n);
  t.numerator_closed = d_inf_numerator_closed(n);
  t.asymptotic = d_inf_asymptotic(n);
  if (n == 3) {
    t.nu = nu3();
    t.density = t.numerator_closed / *t.nu;
  }
  return t;
}

HermiteData hermite(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Hermite dimension must be positive");
  HermiteData h;
  h.k = k;
  h.lower_asymptotic = k / (2.0 * kPi * kE);
  h.upper_asymptotic = 1.744 * k / (2.0 * kPi * kE);
  if (k <= 8) h.known = std::pow(kHermitePowers[k - 1], 1.0 / k);
  if (k == 24) h.known = 4.0;
  return h;
}

double hermite_constant(int k, bool* tabulated) {
  const HermiteData h = hermite(k);
  if (tabulated) *tabulated = h.known.has_value();
  return h.known ? *h.known : h.upper_asymptotic;
}

double index_bound(int n) {
  require_dimension(n);
  return std::pow(2.0, n - 1) * std::tgamma(static_cast<double>(n));
}

SystoleCoefficient systole_coefficient(int n, int cusp_index, HermiteSource source) {
  require_dimension(n);
  if (cusp_index < 1) throw Error(ErrorCode::InvalidArgument, "cusp index must be positive");
  SystoleCoefficient c;
  c.n = n;
  c.cusp_index = cusp_index;
  if (source == HermiteSource::asymptotic) {
    c.hermite = hermite(n - 1).upper_asymptotic;
  } else {
    c.hermite = hermite_constant(n - 1, &c.hermite_tabulated);
  }
  // gamma^{n-1} directly from the table when possible, to keep 64/3 etc. exact.
  const double gamma_pow = c.hermite_tabulated && n - 1 <= 8 ? kHermitePowers[n - 2]
                                                             : std::pow(c.hermite, n - 1);
  c.value = 1.5 * std::sqrt(static_cast<double>(n)) * (n + 1.0) / std::tgamma(static_cast<double>(n)) *
            gamma_pow / std::pow(2.0, (n - 1) / 2.0) * cusp_index;
  c.normalized = c.value * std::pow(5.0, n - 1) / cusp_index;
  return c;
}

}  // namespace cuspkit
