#include "cuspkit/flatopt.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "cuspkit/parallel.hpp"

namespace cuspkit {

ObjectiveValue objective(const PackingConfig& cfg, double tol) {
  if (!(cfg.h >= 0.0)) throw Error(ErrorCode::InvalidConfig, "h must be nonnegative");
  const TwoDiskCheck check = two_disk_config_valid(cfg.surface, cfg.c1, cfg.c2, cfg.h, tol);
  if (!check.valid) throw Error(ErrorCode::InvalidConfig, "disks do not embed or overlap");
  ObjectiveValue out;
  out.center_distance = check.center_distance;
  out.area = cfg.surface.area();
  out.value = cfg.h * std::sqrt(4.0 * cfg.h * cfg.h + out.center_distance * out.center_distance) / out.area;
  return out;
}

double max_feasible_height(const FlatSurface& surface, Complex c1, Complex c2) {
  return std::min({2.0 * injectivity_radius(surface, c1), 2.0 * injectivity_radius(surface, c2),
                   quotient_distance(surface, c1, c2)});
}

double two_disk_density(const PackingConfig& cfg) {
  return 2.0 * kPi * cfg.h * cfg.h / 4.0 / cfg.surface.area();
}

namespace {

constexpr int kDim = 4;
using Params = std::array<double, kDim>;

// Torus: lattice <1, tau>, centers 0 and w = x + y tau (fractional coordinates).
// Klein: axis 1, beta_shift 1, alpha_shift a, centers i y1 and x2 + i y2.
PackingConfig decode(SurfaceFamily family, const Params& p) {
  PackingConfig cfg;
  if (family == SurfaceFamily::torus) {
    const Complex tau(p[0], std::max(std::abs(p[1]), 0.05));
    cfg.surface = FlatSurface::torus(Lattice2(1.0, tau));
    cfg.c1 = 0.0;
    cfg.c2 = p[2] + p[3] * tau;
  } else {
    const double a = std::clamp(std::abs(p[0]), 0.02, 50.0);
    cfg.surface = FlatSurface::klein_bottle(KleinGroup(1.0, a, 1.0));
    cfg.c1 = Complex(0.0, p[1]);
    cfg.c2 = Complex(p[2], p[3]);
  }
  cfg.h = max_feasible_height(cfg.surface, cfg.c1, cfg.c2);
  return cfg;
}

double value_at_boundary(const PackingConfig& cfg) {
  const double d = quotient_distance(cfg.surface, cfg.c1, cfg.c2);
  return cfg.h * std::sqrt(4.0 * cfg.h * cfg.h + d * d) / cfg.surface.area();
}

struct SearchContext {
  SurfaceFamily family;
};

double negated_objective(const gsl_vector* x, void* params) {
  const auto* ctx = static_cast<const SearchContext*>(params);
  Params p{};
  for (int i = 0; i < kDim; ++i) p[i] = gsl_vector_get(x, i);
  try {
    return -value_at_boundary(decode(ctx->family, p));
  } catch (const Error&) {
    return 0.0;
  }
}

// Nelder-Mead from `start`, reinitializing the simplex until a full run stops
// improving.
Params local_search(SurfaceFamily family, Params start, double* best_value) {
  SearchContext ctx{family};
  gsl_multimin_function fn{&negated_objective, kDim, &ctx};
  gsl_multimin_fminimizer* state = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim);
  gsl_vector* x = gsl_vector_alloc(kDim);
  gsl_vector* step = gsl_vector_alloc(kDim);
  double best = std::numeric_limits<double>::infinity();
  double scale = 0.1;
  for (int round = 0; round < 40; ++round) {
    for (int i = 0; i < kDim; ++i) gsl_vector_set(x, i, start[i]);
    gsl_vector_set_all(step, scale);
    gsl_multimin_fminimizer_set(state, &fn, x, step);
    for (int iter = 0; iter < 4000; ++iter) {
      if (gsl_multimin_fminimizer_iterate(state) != 0) break;
      if (gsl_multimin_fminimizer_size(state) < 1e-11) break;
    }
    const double value = gsl_multimin_fminimizer_minimum(state);
    const bool improved = value < best - 1e-13;
    if (value < best) {
      best = value;
      for (int i = 0; i < kDim; ++i) start[i] = gsl_vector_get(gsl_multimin_fminimizer_x(state), i);
    }
    if (!improved) {
      scale *= 0.3;
      if (scale < 1e-7) break;
    }
  }
  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(state);
  *best_value = -best;
  return start;
}

Params random_start(SurfaceFamily family, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (family == SurfaceFamily::torus) {
    // tau in the standard fundamental domain, truncated at Im tau = 3.
    double tx = 0.0, ty = 0.0;
    do {
      tx = unit(rng) - 0.5;
      ty = std::sqrt(0.75) + unit(rng) * (3.0 - std::sqrt(0.75));
    } while (tx * tx + ty * ty < 1.0);
    return {tx, ty, unit(rng), unit(rng)};
  }
  return {0.05 + 2.0 * unit(rng), 0.5 * unit(rng), 2.0 * unit(rng), 0.5 * unit(rng)};
}

}  // namespace

OptimizeResult optimize(const OptimizeOptions& options) {
  if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restarts must be at least 1");
  const auto n = static_cast<std::size_t>(options.restarts);
  std::vector<Params> found(n);
  std::vector<double> values(n, 0.0);
  parallel_for(n, options.threads, [&](std::size_t i) {
    std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(i),
                      static_cast<std::uint64_t>(options.family == SurfaceFamily::torus ? 1 : 2)};
    std::mt19937_64 rng(seq);
    found[i] = local_search(options.family, random_start(options.family, rng), &values[i]);
  });
  OptimizeResult result;
  result.restart_objectives = values;
  for (std::size_t i = 0; i < n; ++i) {
    if (result.best_restart < 0 || values[i] > result.objective) {
      result.best_restart = static_cast<int>(i);
      result.objective = values[i];
    }
  }
  result.best = decode(options.family, found[static_cast<std::size_t>(result.best_restart)]);
  const double d = quotient_distance(result.best.surface, result.best.c1, result.best.c2);
  result.d_over_h = d / result.best.h;
  result.objective = objective(result.best).value;
  return result;
}

double hexagonal_deviation(const PackingConfig& cfg) {
  if (cfg.surface.kind != FlatSurface::Kind::torus) {
    throw Error(ErrorCode::InvalidArgument, "hexagonal shape is defined for tori only");
  }
  const Lattice2& lattice = cfg.surface.lattice;
  const Complex w = cfg.c2 - cfg.c1;
  const MinimaReport base = successive_minima(lattice);
  // The two orbits form a lattice only when 2w lies in the lattice.
  const double closure = min_coset_norm(lattice, 2.0 * w) / base.norm1;
  const double radius = base.norm2 * (1.0 + 1e-9);
  std::vector<Complex> pts = lattice_vectors_near(lattice, Complex{}, radius);
  for (const Complex& v : lattice_vectors_near(lattice, w, radius)) pts.push_back(w + v);
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) { return std::norm(a) < std::norm(b); });
  Complex v1{}, v2{};
  bool have1 = false, have2 = false;
  for (const Complex& p : pts) {
    if (std::abs(p) < 1e-12 * base.norm1) continue;
    if (!have1) {
      v1 = p;
      have1 = true;
    } else if (std::abs((std::conj(v1) * p).imag()) > 1e-9 * std::norm(v1)) {
      v2 = p;
      have2 = true;
      break;
    }
  }
  if (!have2) return std::numeric_limits<double>::infinity();
  const double ratio = std::abs(v2) / std::abs(v1);
  const double cosine = (std::conj(v1) * v2).real() / (std::abs(v1) * std::abs(v2));
  return std::max({closure, std::abs(ratio - 1.0), std::abs(std::abs(cosine) - 0.5)});
}

SearchSummary random_search(std::uint64_t samples, std::uint64_t seed, int threads) {
  if (threads <= 0) threads = worker_count();
  const std::size_t chunks = 64;
  std::vector<SearchSummary> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(c), std::uint64_t{7}};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SearchSummary& out = partial[c];
    const std::uint64_t begin = samples * c / chunks;
    const std::uint64_t end = samples * (c + 1) / chunks;
    for (std::uint64_t k = begin; k < end; ++k) {
      const SurfaceFamily family = k % 2 == 0 ? SurfaceFamily::torus : SurfaceFamily::klein;
      const Params p = random_start(family, rng);
      PackingConfig cfg = decode(family, p);
      // Random scale and rotation exercise the invariance of the objective.
      const Complex g = std::polar(0.2 + 3.0 * unit(rng), 2.0 * kPi * unit(rng));
      if (family == SurfaceFamily::torus) {
        cfg.surface = FlatSurface::torus(Lattice2(g * cfg.surface.lattice.b1, g * cfg.surface.lattice.b2));
      } else {
        const KleinGroup& k0 = cfg.surface.klein;
        cfg.surface = FlatSurface::klein_bottle(
            KleinGroup(g / std::abs(g) * k0.axis, std::abs(g) * k0.alpha_shift, std::abs(g) * k0.beta_shift));
      }
      cfg.c1 *= g;
      cfg.c2 *= g;
      const double hmax = max_feasible_height(cfg.surface, cfg.c1, cfg.c2);
      cfg.h = unit(rng) < 0.5 ? hmax : hmax * unit(rng);
      ++out.samples;
      const TwoDiskCheck check = two_disk_config_valid(cfg.surface, cfg.c1, cfg.c2, cfg.h, 0.0);
      if (!check.valid) continue;
      ++out.valid;
      const double value =
          cfg.h * std::sqrt(4.0 * cfg.h * cfg.h + check.center_distance * check.center_distance) / cfg.surface.area();
      if (value > out.max_objective) {
        out.max_objective = value;
        out.argmax = cfg;
      }
      out.max_density = std::max(out.max_density, two_disk_density(cfg));
    }
  });
  SearchSummary total;
  for (const SearchSummary& s : partial) {
    total.samples += s.samples;
    total.valid += s.valid;
    if (s.max_objective > total.max_objective) {
      total.max_objective = s.max_objective;
      total.argmax = s.argmax;
    }
    total.max_density = std::max(total.max_density, s.max_density);
  }
  return total;
}

namespace {

struct SurgeryGeometry {
  FlatSurface surface;
  Complex c2;
};

SurgeryGeometry cut(const SurgeryInput& in, double band_height, double eps) {
  const double v = in.c2.imag();
  const Complex c2 = v > band_height ? in.c2 - Complex(0.0, eps) : in.c2;
  return {FlatSurface::torus(Lattice2(in.a, Complex(in.s, in.b - eps))), c2};
}

double default_band_height(const SurgeryInput& in) {
  return in.c2.imag() > 0.0 ? in.c2.imag() / 2.0 : in.b / 2.0;
}

}  // namespace

double surgery_objective(const SurgeryInput& in, double band_height, double eps) {
  const SurgeryGeometry g = cut(in, band_height, eps);
  const double d = quotient_distance(g.surface, 0.0, g.c2);
  return in.h * std::sqrt(4.0 * in.h * in.h + d * d) / g.surface.area();
}

std::string surgery_inadmissible_reason(const SurgeryInput& in) {
  if (!(in.a > 0.0) || !(in.b > 0.0) || !(in.h > 0.0)) return "a, b and h must be positive";
  const double v = in.c2.imag();
  if (v < 0.0 || v >= in.b) return "second center must lie in the strip 0 <= Im < b";
  const FlatSurface torus = FlatSurface::torus(Lattice2(in.a, Complex(in.s, in.b)));
  const double d = std::abs(in.c2);
  const double d_quot = quotient_distance(torus, 0.0, in.c2);
  if (d > d_quot * (1.0 + 1e-12)) return "the straight segment 0 -> c2 is not minimizing";
  double second = std::numeric_limits<double>::infinity();
  for (const Complex& lam : lattice_vectors_near(torus.lattice, in.c2, d * 2.0 + 1.0)) {
    if (std::abs(lam) > 0.0) second = std::min(second, std::abs(in.c2 + lam));
  }
  if (second < d + 1e-2) return "minimizing segment is not unique with margin";
  if (d < in.h + 1e-3) return "requires d > h with margin";
  if (flat_systole(torus) < in.h + 1e-3) return "requires h below the systole with margin";
  const double slope = 1.0 / in.b - v / (4.0 * in.h * in.h + d * d);
  if (std::abs(slope) < 1e-2) return "first-order slope too small for a relative comparison";
  return {};
}

SurgeryReport surgery_expansion_check(const SurgeryInput& in, const std::vector<double>& epsilons,
                                      double fd_step, double band_height) {
  if (band_height < 0.0) band_height = default_band_height(in);
  const FlatSurface torus = FlatSurface::torus(Lattice2(in.a, Complex(in.s, in.b)));
  const double sys = flat_systole(torus);
  double max_eps = std::abs(fd_step);
  for (double e : epsilons) max_eps = std::max(max_eps, std::abs(e));
  if (std::abs(in.h - sys) <= kDefaultTolerance * std::max(1.0, sys)) {
    const MinimaReport m = successive_minima(torus.lattice);
    if (std::abs(m.v1.imag()) > kDefaultTolerance) {
      throw Error(ErrorCode::BandIntersectsCriticalSet, "a systole loop of length h crosses the band");
    }
  }
  const double v = in.c2.imag();
  for (double line : {0.0, v, in.b}) {
    if (std::abs(band_height - line) <= max_eps) {
      throw Error(ErrorCode::BandIntersectsCriticalSet, "band meets the horizontal line of a center");
    }
  }
  if (!(band_height > 0.0 && band_height < in.b)) throw Error(ErrorCode::InvalidConfig, "band outside the torus");

  SurgeryReport r;
  r.band_height = band_height;
  r.center_distance = quotient_distance(torus, 0.0, in.c2);
  if (r.center_distance <= in.h) throw Error(ErrorCode::InvalidConfig, "requires d > h");
  if (in.h >= sys + kDefaultTolerance) throw Error(ErrorCode::InvalidConfig, "disks do not embed");
  r.vertical_offset = v > band_height ? v : 0.0;
  const double q = 4.0 * in.h * in.h + r.center_distance * r.center_distance;
  r.predicted_slope = 1.0 / in.b - r.vertical_offset / q;
  r.objective = surgery_objective(in, band_height, 0.0);
  const double up = surgery_objective(in, band_height, fd_step);
  const double down = surgery_objective(in, band_height, -fd_step);
  r.finite_difference_slope = (up - down) / (2.0 * fd_step) / r.objective;
  r.relative_error = std::abs(r.finite_difference_slope - r.predicted_slope) /
                     std::max(std::abs(r.predicted_slope), std::numeric_limits<double>::min());
  for (double eps : epsilons) {
    SurgeryPoint p;
    p.epsilon = eps;
    p.ratio = surgery_objective(in, band_height, eps) / r.objective;
    p.predicted = 1.0 + eps / in.b - r.vertical_offset * eps / q;
    p.remainder = std::abs(p.ratio - p.predicted) / (eps * eps);
    r.max_remainder = std::max(r.max_remainder, p.remainder);
    r.points.push_back(p);
  }
  return r;
}

}  // namespace cuspkit
