#pragma once

// Constants attached to dimension n: the regular ideal simplex volume in
// dimension 3, the simplicial horoball density in three equivalent forms,
// Hermite constant data and the systole coefficient.

#include <optional>
#include <string>

namespace cuspkit {

/// Clausen function Cl2(x) = -int_0^x ln|2 sin(t/2)| dt, any real x.
double clausen2(double x);

/// Lobachevsky function, L(theta) = -int_0^theta ln|2 sin t| dt = Cl2(2 theta)/2.
double lobachevsky(double theta);

/// Volume of the regular ideal tetrahedron, 3 L(pi/3).
double nu3();

/// Milnor's asymptotic e sqrt(n) / n! for the regular ideal n-simplex volume.
double nu_asymptotic(int n);

/// Horoball density numerator (the density times nu_n), product form.
double d_inf_numerator_product(int n);
/// Same numerator, closed form (n+1)/(n-1) sqrt(n)/(n-1)! 2^{-(n-1)/2}.
double d_inf_numerator_closed(int n);

/// Absolute densities; only n = 3 is available (throws NuUnavailable otherwise).
double d_inf_product(int n);
double d_inf_closed(int n);

/// n / (e 2^{(n-1)/2}).
double d_inf_asymptotic(int n);

struct DensityTable {
  int n = 3;
  double numerator_product = 0.0;
  double numerator_closed = 0.0;
  double asymptotic = 0.0;
  std::optional<double> nu;      // exact, n = 3 only
  std::optional<double> density; // exact, n = 3 only
};

DensityTable density_table(int n);

struct HermiteData {
  int k = 1;
  double lower_asymptotic = 0.0;  // k / (2 pi e)
  double upper_asymptotic = 0.0;  // 1.744 k / (2 pi e)
  std::optional<double> known;    // gamma_k for k <= 8 and k = 24
};

HermiteData hermite(int k);

/// gamma_k: the tabulated value when known, else the upper asymptotic band.
/// `tabulated` reports which was used.
double hermite_constant(int k, bool* tabulated = nullptr);

/// 2^{n-1} (n-1)!, the bound on the cusp index in dimension n.
double index_bound(int n);

struct SystoleCoefficient {
  int n = 3;
  int cusp_index = 1;
  double value = 0.0;
  double normalized = 0.0;  // value * 5^{n-1} / cusp_index
  double hermite = 0.0;     // gamma_{n-1} used
  bool hermite_tabulated = false;
};

enum class HermiteSource { tabulated_when_known, asymptotic };

/// (3/2) sqrt(n)(n+1)/(n-1)! (gamma_{n-1}/sqrt 2)^{n-1} * cusp_index.
SystoleCoefficient systole_coefficient(int n, int cusp_index,
                                       HermiteSource source = HermiteSource::tabulated_when_known);

}  // namespace cuspkit
