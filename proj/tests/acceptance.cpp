// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cuspkit/bounds.hpp"
#include "cuspkit/cli.hpp"
#include "cuspkit/densities.hpp"
#include "cuspkit/flatopt.hpp"
#include "cuspkit/gieseking.hpp"
#include "cuspkit/horoball.hpp"
#include "oracles.hpp"
#include "surgery_sampler.hpp"

using namespace cuspkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const double kSystoleClosed = 2.0 * std::acosh((1.0 + std::sqrt(13.0)) / 4.0);
const double kSqrt5Half = std::sqrt(5.0) / 2.0;

void systole() {
  const auto t0 = Clock::now();
  WordSearchOptions o;
  o.max_length = 10;
  o.threads = 4;
  const auto spectrum = length_spectrum(o);
  const double secs = seconds_since(t0);
  const double len = spectrum.front().length;
  const bool ok = std::abs(len - kSystoleClosed) <= 1e-9 && std::abs(len - 1.087) <= 1e-3 && secs < 60.0;
  report(1, ok, fmt("systole %.10f, closed form %.10f, |diff| %.2e, %.2f s at depth 10", len, kSystoleClosed,
                    std::abs(len - kSystoleClosed), secs));
}

void theorem_equality() {
  WordSearchOptions o;
  o.max_length = 10;
  const double len = length_spectrum(o).front().length;
  const double simplicial = nu3() / nu3();
  const double lhs = std::cosh(len / 2.0) / simplicial;
  const double rhs = (1.0 + std::sqrt(13.0)) / 4.0;
  report(2, std::abs(lhs - rhs) <= 1e-9 && std::abs(rhs - 1.1513878) < 1e-7,
         fmt("cosh(sys/2)/vol = %.12f, (1+sqrt13)/4 = %.12f", lhs, rhs));
}

void inradius() {
  const InradiusCertificate c = inradius_certificate();
  const double target = std::acosh(kSqrt5Half);
  const bool ok = std::abs(c.radius - target) <= 1e-9 && std::abs(std::cosh(c.radius) - kSqrt5Half) <= 1e-9 &&
                  kSystoleClosed / 2.0 > c.radius;
  report(3, ok, fmt("R = %.12f (target %.12f), cosh R = %.12f, sys/2 = %.7f", c.radius, target,
                    std::cosh(c.radius), kSystoleClosed / 2.0));
}

void densities() {
  const double d3 = d_inf_closed(3);
  double worst = 0.0;
  for (int n = 3; n <= 30; ++n) {
    worst = std::max(worst, std::abs(d_inf_numerator_product(n) / d_inf_numerator_closed(n) - 1.0));
  }
  const bool ok = std::abs(d3 - std::sqrt(3.0) / (2.0 * nu3())) <= 1e-12 && std::abs(d3 - 0.853276) <= 1e-5 &&
                  std::abs(nu3() - 1.0149416) <= 1e-7 && std::abs(d_inf_product(3) - d3) <= 1e-12 * d3 &&
                  worst <= 1e-12;
  report(4, ok, fmt("d3 = %.9f, nu3 = %.12f, worst product/closed relative gap %.2e (n = 3..30)", d3, nu3(), worst));
}

void cusp() {
  const CuspGroupReport c = cusp_group();
  const CuspVolumeInput in{c.covol_group, c.covol_lattice, c.index, 1.0, 3};
  const VolumeLowerBound vb = volume_lower_bound(in);
  const double density = vb.cusp_volume / nu3();
  const bool ok = std::abs(c.covol_group - std::sqrt(3.0)) <= 1e-9 &&
                  std::abs(vb.cusp_volume - std::sqrt(3.0) / 2.0) <= 1e-9 &&
                  std::abs(density - d_inf_closed(3)) <= 1e-6 && std::abs(vb.bound - nu3()) <= 1e-9;
  report(5, ok, fmt("covol %.12f, cusp volume %.12f, density %.9f, volume bound %.12f", c.covol_group,
                    vb.cusp_volume, density, vb.bound));
}

void flat_packing() {
  const double bound = std::sqrt(5.0) / std::sqrt(3.0);
  const double thue = kPi / std::sqrt(12.0);
  const auto t0 = Clock::now();
  OptimizeOptions o;
  const OptimizeResult r = optimize(o);
  const double secs = seconds_since(t0);
  const double hex = hexagonal_deviation(r.best);
  const auto t1 = Clock::now();
  const SearchSummary s = random_search(1000000, 0);
  const double search_secs = seconds_since(t1);
  const bool ok = r.objective >= bound - 1e-4 && std::abs(r.d_over_h - 1.0) < 1e-3 && hex < 1e-3 && secs < 30.0 &&
                  s.valid == 1000000 && s.max_objective <= bound + 1e-9 && s.max_density <= thue + 1e-9;
  report(6, ok,
         fmt("optimum %.12f (bound %.12f), |d/h-1| %.1e, hex deviation %.1e", r.objective, bound,
             std::abs(r.d_over_h - 1.0), hex) +
             fmt(", %.2f s; 1e6 random: max objective %.6f, max density %.6f, %.1f s", secs, s.max_objective,
                 s.max_density, search_secs));
}

void surgery() {
  std::mt19937_64 rng(0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const SurgeryReport r = surgery_expansion_check(random_admissible_surgery(rng), {1e-4}, 1e-4);
    worst = std::max(worst, r.relative_error);
  }
  report(7, worst < 1e-4, fmt("100 admissible tori, worst relative slope error %.2e at eps = 1e-4", worst));
}

void majorant() {
  const MajorantScan s = scan_parabolic_negative(10001);
  const bool ok = std::abs(s.argmax - 1.0) <= 1e-4 && s.step <= 1e-4 && std::abs(s.max_value - 1.0821) <= 1e-3 &&
                  s.max_value <= kSqrt5Half;
  report(8, ok, fmt("grid max %.10f at h = %.6f (step %.1e), sqrt5/2 = %.6f", s.max_value, s.argmax, s.step,
                    kSqrt5Half));
}

Isometry iso(const oracle::Mat& m, bool negative) {
  return Isometry(m[0], m[1], m[2], m[3], negative ? Orientation::negative : Orientation::positive);
}

void properties() {
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  std::string detail;
  bool ok = true;

  // Translation length against displacement along the axis.
  int cases = 0;
  double worst = 0.0;
  while (cases < 1000) {
    const bool neg = cases % 2;
    const oracle::Mat m = oracle::random_sl2(rng);
    const Isometry g = iso(m, neg);
    if (classify(g).kind != IsometryKind::loxodromic) continue;
    const double len = translation_length(g).length;
    const oracle::Mat sq = neg ? oracle::mul(m, oracle::conj(m)) : m;
    if (len < 1e-3 || len > 8.0 || std::abs(sq[2]) < 1e-6) continue;
    const auto ends = oracle::fixed_points(sq);
    const Complex centre = (ends[0] + ends[1]) / 2.0;
    const double radius = std::abs(ends[0] - ends[1]) / 2.0;
    if (radius > 1e3 || radius < 1e-3) continue;
    const Complex dir = (ends[0] - ends[1]) / (2.0 * radius);
    const double phi = u(rng);
    const Complex z = centre + radius * std::cos(phi) * dir;
    const double t = radius * std::sin(phi);
    const auto [w, s] = oracle::act(m, neg, z, t);
    worst = std::max(worst, std::abs(oracle::dist(z, t, w, s) - len) / len);
    ++cases;
  }
  ok = ok && worst <= 1e-8;
  detail += fmt("axis displacement %.1e", worst);

  // Tr(g^2) >= -2 on the negative coset.
  double lowest = 1e300;
  for (int i = 0; i < 100000; ++i) lowest = std::min(lowest, iso(oracle::random_sl2(rng, 1.0 + i % 5), true).trace_of_square());
  ok = ok && lowest >= -2.0 - 1e-9;
  detail += fmt("; min Tr(g^2) %.4f", lowest);

  // Parabolic product trace law.
  int law_fail = 0, parabolic = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex p(n(rng), n(rng)), q(n(rng), n(rng));
    if (std::abs(p - q) < 1e-2) {
      --i;
      continue;
    }
    const oracle::Mat k = oracle::unimodular({1.0, -q, 1.0, -p});
    const oracle::Mat kinv{k[3], -k[1], -k[2], k[0]};
    const Complex m(n(rng), n(rng));
    const Complex mp = i % 2 ? Complex(n(rng), n(rng)) : -4.0 / m;
    const Isometry alpha = iso(oracle::mul(kinv, oracle::mul({1.0, m, 0.0, 1.0}, k)), false);
    const Isometry beta = iso(oracle::mul(kinv, oracle::mul({1.0, 0.0, mp, 1.0}, k)), false);
    const ProductReport r = parabolic_product_report(alpha, beta);
    const oracle::Mat prod = oracle::mul(alpha.entries(), beta.entries());
    const Complex tr = prod[0] + prod[3];
    const bool trace_ok = std::min(std::abs(r.product_trace - tr), std::abs(r.product_trace + tr)) <=
                          1e-8 * (1.0 + std::abs(tr));
    const bool line_ok = r.product_kind != IsometryKind::parabolic || r.common_invariant_line;
    if (r.product_kind == IsometryKind::parabolic) ++parabolic;
    if (!trace_ok || !line_ok) ++law_fail;
  }
  ok = ok && law_fail == 0 && parabolic >= 400;
  detail += fmt("; product law failures %.0f of 1000 (%.0f parabolic)", law_fail, parabolic);

  // Horoball image functoriality.
  double func = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Isometry g = iso(oracle::random_sl2(rng), i % 2);
    const Isometry h = iso(oracle::random_sl2(rng), i % 3 == 0);
    const Horoball b = i % 4 ? Horoball::finite({n(rng), n(rng)}, std::exp(n(rng)))
                             : Horoball::at_infinity(std::exp(n(rng)));
    const Horoball x = image_horoball(g * h, b), y = image_horoball(g, image_horoball(h, b));
    if (x.center.infinite != y.center.infinite) {
      func = 1e300;
      continue;
    }
    const double scale = std::max(1.0, x.size);
    func = std::max({func, std::abs(x.size - y.size) / scale,
                     x.center.infinite ? 0.0 : std::abs(x.center.z - y.center.z) / std::max(1.0, std::abs(x.center.z))});
  }
  ok = ok && func <= 1e-9;
  detail += fmt("; functoriality %.1e", func);

  // Minkowski bound.
  double mink = 0.0;
  const double gamma2 = 2.0 / std::sqrt(3.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex b1(n(rng), n(rng)), b2(n(rng), n(rng));
    if (std::abs((std::conj(b1) * b2).imag()) < 1e-3) {
      --i;
      continue;
    }
    const Lattice2 l(b1, b2);
    const MinimaReport m = successive_minima(l);
    mink = std::max(mink, m.m1 * m.m2 / (gamma2 * gamma2 * l.covolume() * l.covolume()));
  }
  ok = ok && mink <= 1.0 + 1e-12;
  detail += fmt("; Minkowski ratio max %.6f", mink);
  report(9, ok, detail);
}

void determinism() {
  const char* argv[] = {"cuspkit", "verify", "all", "--json"};
  std::ostringstream a, b, err;
  const int ca = cli::run(4, argv, a, err);
  const int cb = cli::run(4, argv, b, err);
  const bool ok = ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
  report(10, ok, fmt("two runs, exit codes %.0f and %.0f, %.0f bytes, identical: ", ca, cb, double(a.str().size())) +
                     (a.str() == b.str() ? "yes" : "no"));
}

}  // namespace

int main() {
  guarded(1, systole);
  guarded(2, theorem_equality);
  guarded(3, inradius);
  guarded(4, densities);
  guarded(5, cusp);
  guarded(6, flat_packing);
  guarded(7, surgery);
  guarded(8, majorant);
  guarded(9, properties);
  guarded(10, determinism);
  return failures == 0 ? 0 : 1;
}
