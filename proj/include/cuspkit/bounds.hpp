#pragma once

// The inequalities of the systole and inradius theorems as evaluable reports.

#include <string>
#include <utility>
#include <vector>

#include "cuspkit/isom3.hpp"

namespace cuspkit {

struct BoundReport {
  std::string name;
  std::string source;
  std::string relation = "<=";  // "<=": lhs <= rhs;  "==": equality case
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tolerance = kDefaultTolerance;
  bool verified = false;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> details;
};

/// Fills slack and verified ("<=": slack >= -tol, "==": |slack| <= tol).
/// DomainError for non-finite sides.
BoundReport make_report(std::string name, std::string source, double lhs, double rhs,
                        std::string relation = "<=", double tol = kDefaultTolerance);

/// sqrt(4h^2 + |b|^2) / (2h), the bound on cosh(l/2) for a loxodromic element
/// exchanging the ball at 0 and {t > h}.
double loxodromic_cosh_bound(double h, double b_abs);

/// cosh(length/2) against loxodromic_cosh_bound.  InvalidArgument unless 0 < h <= |b|.
BoundReport loxodromic_case_bound(double h, double b_abs, double length);

/// (sqrt3/2) h sqrt(4h^2+|b|^2)/covol against sqrt5/2.
BoundReport loxodromic_ratio_bound(double h, double b_abs, double covol);

/// cosh(sys/2) <= 1 + m1 m2 / (2 h^2) with m1, m2 read as plain norms (first
/// report) and as squared norms (second report).  Requires 0 < h <= m1 <= m2.
std::vector<BoundReport> successive_minima_bound(double norm1, double norm2, double h, double cosh_half_systole);

/// lhs = cosh(sys/2)/simplicial volume against the dimension-n coefficient.
BoundReport dim_n_theorem(int n, int cusp_index, double lhs);

/// max(2, (1 + 1/(sqrt3 h^2))/2): lower bound on the simplicial volume with two cusps.
double two_cusp_volume_bound(double h);

/// (1 + 1/(2h)) / two_cusp_volume_bound(h) against sqrt5/2, 0 < h <= 1.
BoundReport parabolic_positive_case(double h);

/// h at which (1 + 1/(2h))/2 = sqrt5/2, i.e. 1/(2(sqrt5 - 1)).
double parabolic_positive_threshold();

/// h sqrt(3h^2 + 3/2) / (sqrt(h/2 - 1/16) + sqrt3/2 + sqrt(h^2/4 - 1/16)).
/// DomainError outside [1/2, 1].
double parabolic_negative_majorant(double h);

/// sqrt(h/2 - 1/16) + sqrt3/2 + sqrt(h^2/4 - 1/16).
double parabolic_negative_covolume_minorant(double h);

BoundReport parabolic_negative_case(double h);

struct MajorantScan {
  std::size_t points = 0;
  double step = 0.0;
  double max_value = 0.0;
  double argmax = 0.0;
  double value_at_one = 0.0;
  double value_at_half = 0.0;
};

/// Uniform grid on [1/2, 1] (at least 2 points), refined around the best grid
/// point by golden-section search.
MajorantScan scan_parabolic_negative(std::size_t points = 10001, int threads = 0);

/// Several cusps: sqrt(4h^2 + 2)/(2h) over two_cusp_volume_bound(h), against sqrt5/2.
BoundReport parabolic_negative_multi_cusp(double h);

struct ConstraintChain {
  double b_abs = 0.0;
  double d = 0.0;
  bool ok = false;
  std::vector<std::pair<std::string, bool>> checks;
};

/// |b| = 2h|cos theta|, |cos theta| >= 1/2, d = 1/(2|cos theta|), |b| = h/d,
/// 1/2 <= d <= h <= 1 and 1 <= |b| <= 2h, for the supplied (h, d, theta).
ConstraintChain parabolic_negative_constraints(double h, double d, double theta, double tol = kDefaultTolerance);

/// cosh R >= sqrt5/2: the constant, checked as an equality against `radius`.
BoundReport inradius_bound(double radius);

}  // namespace cuspkit
