#include "cuspkit/bounds.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <vector>

#include "cuspkit/densities.hpp"
#include "cuspkit/parallel.hpp"

namespace cuspkit {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5Half = std::sqrt(5.0) / 2.0;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
}

}  // namespace

BoundReport make_report(std::string name, std::string source, double lhs, double rhs, std::string relation,
                        double tol) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) throw Error(ErrorCode::DomainError, "non-finite bound in " + name);
  BoundReport r;
  r.name = std::move(name);
  r.source = std::move(source);
  r.relation = std::move(relation);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.tolerance = tol;
  r.verified = r.relation == "==" ? std::abs(r.slack) <= tol : r.slack >= -tol;
  return r;
}

double loxodromic_cosh_bound(double h, double b_abs) {
  require_positive(h, "h");
  if (!(b_abs >= h)) throw Error(ErrorCode::InvalidArgument, "|b| must be at least h");
  return std::sqrt(4.0 * h * h + b_abs * b_abs) / (2.0 * h);
}

BoundReport loxodromic_case_bound(double h, double b_abs, double length) {
  BoundReport r = make_report("loxodromic translation length", "loxodromic length lemma",
                              std::cosh(length / 2.0), loxodromic_cosh_bound(h, b_abs));
  r.inputs = {{"h", h}, {"bAbs", b_abs}, {"length", length}};
  return r;
}

BoundReport loxodromic_ratio_bound(double h, double b_abs, double covol) {
  require_positive(covol, "covolume");
  loxodromic_cosh_bound(h, b_abs);
  const double lhs = kSqrt3 / 2.0 * h * std::sqrt(4.0 * h * h + b_abs * b_abs) / covol;
  BoundReport r = make_report("loxodromic case ratio", "loxodromic case proposition", lhs, kSqrt5Half);
  r.inputs = {{"h", h}, {"bAbs", b_abs}, {"covol", covol}};
  return r;
}

std::vector<BoundReport> successive_minima_bound(double norm1, double norm2, double h, double cosh_half_systole) {
  require_positive(h, "h");
  if (!(h <= norm1 && norm1 <= norm2)) throw Error(ErrorCode::InvalidArgument, "requires h <= m1 <= m2");
  std::vector<BoundReport> out;
  BoundReport plain = make_report("successive minima (plain norms)", "successive minima lemma", cosh_half_systole,
                                  1.0 + norm1 * norm2 / (2.0 * h * h));
  plain.inputs = {{"m1", norm1}, {"m2", norm2}, {"h", h}};
  out.push_back(plain);
  const double s1 = norm1 * norm1, s2 = norm2 * norm2;
  BoundReport squared = make_report("successive minima (squared norms)", "successive minima lemma",
                                    cosh_half_systole, 1.0 + s1 * s2 / (2.0 * h * h));
  squared.inputs = {{"m1", s1}, {"m2", s2}, {"h", h}};
  out.push_back(squared);
  return out;
}

BoundReport dim_n_theorem(int n, int cusp_index, double lhs) {
  const SystoleCoefficient c = systole_coefficient(n, cusp_index);
  BoundReport r = make_report("dimension-n systole theorem", "systole theorem in dimension n", lhs, c.value);
  r.inputs = {{"n", n}, {"iC", cusp_index}};
  r.details = {{"hermite", c.hermite}, {"hermiteTabulated", c.hermite_tabulated ? 1.0 : 0.0},
               {"normalized", c.normalized}};
  return r;
}

double two_cusp_volume_bound(double h) {
  require_positive(h, "h");
  return std::max(2.0, 0.5 * (1.0 + 1.0 / (kSqrt3 * h * h)));
}

BoundReport parabolic_positive_case(double h) {
  require_positive(h, "h");
  if (h > 1.0) throw Error(ErrorCode::DomainError, "h must lie in (0, 1]");
  const double cosh_bound = 1.0 + 1.0 / (2.0 * h);
  BoundReport r = make_report("parabolic positive case", "parabolic positive proposition",
                              cosh_bound / two_cusp_volume_bound(h), kSqrt5Half);
  r.inputs = {{"h", h}};
  r.details = {{"coshBound", cosh_bound},
               {"firstBranch", cosh_bound / 2.0},
               {"secondBranch", cosh_bound / (0.5 * (1.0 + 1.0 / (kSqrt3 * h * h)))},
               {"threshold", parabolic_positive_threshold()}};
  return r;
}

double parabolic_positive_threshold() { return 1.0 / (2.0 * (std::sqrt(5.0) - 1.0)); }

double parabolic_negative_covolume_minorant(double h) {
  if (!(h >= 0.5 && h <= 1.0)) throw Error(ErrorCode::DomainError, "h must lie in [1/2, 1]");
  return std::sqrt(h / 2.0 - 1.0 / 16.0) + kSqrt3 / 2.0 + std::sqrt(h * h / 4.0 - 1.0 / 16.0);
}

double parabolic_negative_majorant(double h) {
  const double denom = parabolic_negative_covolume_minorant(h);
  return h * std::sqrt(3.0 * h * h + 1.5) / denom;
}

BoundReport parabolic_negative_case(double h) {
  BoundReport r = make_report("parabolic negative case, one cusp", "parabolic negative majorant",
                              parabolic_negative_majorant(h), kSqrt5Half);
  r.inputs = {{"h", h}};
  r.details = {{"covolumeMinorant", parabolic_negative_covolume_minorant(h)}};
  return r;
}

MajorantScan scan_parabolic_negative(std::size_t points, int threads) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two grid points");
  MajorantScan s;
  s.points = points;
  s.step = 0.5 / static_cast<double>(points - 1);
  std::vector<double> values(points);
  parallel_for(points, threads, [&](std::size_t i) {
    const double h = i + 1 == points ? 1.0 : 0.5 + s.step * static_cast<double>(i);
    values[i] = parabolic_negative_majorant(h);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < points; ++i) {
    if (values[i] > values[best]) best = i;
  }
  const double hb = best + 1 == points ? 1.0 : 0.5 + s.step * static_cast<double>(best);
  const double lo = std::max(0.5, hb - s.step);
  const double hi = std::min(1.0, hb + s.step);
  const auto refined = boost::math::tools::brent_find_minima(
      [](double h) { return -parabolic_negative_majorant(h); }, lo, hi, 50);
  s.argmax = hb;
  s.max_value = values[best];
  if (-refined.second > s.max_value) {
    s.argmax = refined.first;
    s.max_value = -refined.second;
  }
  s.value_at_one = parabolic_negative_majorant(1.0);
  s.value_at_half = parabolic_negative_majorant(0.5);
  return s;
}

BoundReport parabolic_negative_multi_cusp(double h) {
  require_positive(h, "h");
  if (h > 1.0) throw Error(ErrorCode::DomainError, "h must lie in (0, 1]");
  const double cosh_bound = std::sqrt(4.0 * h * h + 2.0) / (2.0 * h);
  BoundReport r = make_report("parabolic negative case, several cusps", "parabolic negative several-cusp lemma",
                              cosh_bound / two_cusp_volume_bound(h), kSqrt5Half);
  r.inputs = {{"h", h}};
  r.details = {{"coshBound", cosh_bound}};
  return r;
}

ConstraintChain parabolic_negative_constraints(double h, double d, double theta, double tol) {
  ConstraintChain c;
  const double ct = std::abs(std::cos(theta));
  c.b_abs = 2.0 * h * ct;
  c.d = d;
  c.checks = {
      {"|cos theta| >= 1/2", ct >= 0.5 - tol},
      {"d = 1/(2|cos theta|)", ct > 0.0 && std::abs(d - 1.0 / (2.0 * ct)) <= tol},
      {"|b| = h/d", d > 0.0 && std::abs(c.b_abs - h / d) <= tol},
      {"1/2 <= d <= h <= 1", d >= 0.5 - tol && d <= h + tol && h <= 1.0 + tol},
      {"1 <= |b| <= 2h", c.b_abs >= 1.0 - tol && c.b_abs <= 2.0 * h + tol},
  };
  c.ok = true;
  for (const auto& [name, ok] : c.checks) c.ok = c.ok && ok;
  return c;
}

BoundReport inradius_bound(double radius) {
  BoundReport r = make_report("inradius equality", "inradius theorem", std::cosh(radius), kSqrt5Half, "==");
  r.inputs = {{"radius", radius}};
  r.details = {{"constant", std::acosh(kSqrt5Half)}};
  return r;
}

}  // namespace cuspkit
