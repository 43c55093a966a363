#include "cuspkit/euclat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cuspkit {

Lattice2::Lattice2(Complex b1_, Complex b2_) : b1(b1_), b2(b2_) {
  const double scale = std::abs(b1) * std::abs(b2);
  if (!(covolume() > 1e-12 * scale) || !(scale > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lattice basis is degenerate");
  }
}

Lattice2 gauss_reduce(const Lattice2& lattice) {
  Complex u = lattice.b1;
  Complex v = lattice.b2;
  if (std::norm(u) > std::norm(v)) std::swap(u, v);
  for (int iter = 0; iter < 1000; ++iter) {
    const double mu = std::round((v * std::conj(u)).real() / std::norm(u));
    v -= mu * u;
    if (std::norm(v) >= std::norm(u)) break;
    std::swap(u, v);
  }
  return Lattice2(u, v);
}

std::vector<Complex> lattice_vectors_near(const Lattice2& lattice, Complex w, double radius) {
  const Lattice2 r = gauss_reduce(lattice);
  const double covol = r.covolume();
  // Coordinates of -w in the reduced basis.
  const double det = (std::conj(r.b1) * r.b2).imag();
  const double x = -(std::conj(w) * r.b2).imag() / det;
  const double y = -(std::conj(r.b1) * w).imag() / det;
  const double kx = radius * std::abs(r.b2) / covol;
  const double ky = radius * std::abs(r.b1) / covol;
  std::vector<Complex> out;
  for (long k = static_cast<long>(std::floor(x - kx)); k <= static_cast<long>(std::ceil(x + kx)); ++k) {
    for (long l = static_cast<long>(std::floor(y - ky)); l <= static_cast<long>(std::ceil(y + ky)); ++l) {
      const Complex v = static_cast<double>(k) * r.b1 + static_cast<double>(l) * r.b2;
      if (std::abs(w + v) <= radius) out.push_back(v);
    }
  }
  return out;
}

double min_coset_norm(const Lattice2& lattice, Complex w, bool exclude_zero) {
  const Lattice2 r = gauss_reduce(lattice);
  const double det = (std::conj(r.b1) * r.b2).imag();
  const double x = -(std::conj(w) * r.b2).imag() / det;
  const double y = -(std::conj(r.b1) * w).imag() / det;
  // Any lattice vector gives an upper bound; enumerate everything below it.
  const double kx = std::round(x), ky = std::round(y);
  double bound = std::abs(w + kx * r.b1 + ky * r.b2);
  if (exclude_zero && kx == 0.0 && ky == 0.0) bound = std::abs(w + r.b1);
  const double covol = r.covolume();
  const double rx = bound * std::abs(r.b2) / covol * (1.0 + 1e-12);
  const double ry = bound * std::abs(r.b1) / covol * (1.0 + 1e-12);
  double best = std::numeric_limits<double>::infinity();
  for (double k = std::floor(x - rx); k <= std::ceil(x + rx); k += 1.0) {
    for (double l = std::floor(y - ry); l <= std::ceil(y + ry); l += 1.0) {
      if (exclude_zero && k == 0.0 && l == 0.0) continue;
      best = std::min(best, std::abs(w + k * r.b1 + l * r.b2));
    }
  }
  return best;
}

MinimaReport successive_minima(const Lattice2& lattice) {
  const Lattice2 r = gauss_reduce(lattice);
  // For a Gauss-reduced basis the first two minima are attained by b1, b2;
  // confirm by enumeration over a box that contains every shorter vector.
  MinimaReport m;
  const double radius = std::abs(r.b2) * (1.0 + 1e-12);
  auto vectors = lattice_vectors_near(r, Complex{}, radius);
  std::sort(vectors.begin(), vectors.end(), [](Complex a, Complex b) {
    if (std::norm(a) != std::norm(b)) return std::norm(a) < std::norm(b);
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  bool have_first = false;
  for (const Complex& v : vectors) {
    if (std::abs(v) == 0.0) continue;
    if (!have_first) {
      m.v1 = v;
      have_first = true;
      continue;
    }
    if (std::abs((std::conj(m.v1) * v).imag()) > 1e-12 * std::norm(m.v1) * (1.0 + std::abs(v))) {
      m.v2 = v;
      break;
    }
  }
  m.m1 = std::norm(m.v1);
  m.m2 = std::norm(m.v2);
  m.norm1 = std::abs(m.v1);
  m.norm2 = std::abs(m.v2);
  return m;
}

PlaneIsometry compose(const PlaneIsometry& g1, const PlaneIsometry& g2) {
  PlaneIsometry out;
  out.reflect = g1.reflect != g2.reflect;
  const Complex r2 = g1.reflect ? std::conj(g2.rotation) : g2.rotation;
  const Complex s2 = g1.reflect ? std::conj(g2.shift) : g2.shift;
  out.rotation = g1.rotation * r2;
  out.shift = g1.rotation * s2 + g1.shift;
  return out;
}

KleinGroup::KleinGroup(Complex axis_, double alpha_shift_, double beta_shift_)
    : axis(axis_ / std::abs(axis_)), alpha_shift(alpha_shift_), beta_shift(beta_shift_) {
  if (!(std::abs(axis_) > 0.0) || !(alpha_shift_ > 0.0) || !(beta_shift_ > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Klein group needs a nonzero axis and positive shifts");
  }
}

PlaneIsometry KleinGroup::alpha() const { return {axis * axis, true, alpha_shift * axis}; }

PlaneIsometry KleinGroup::beta() const { return {Complex{1.0, 0.0}, false, beta_shift * Complex{0.0, 1.0} * axis}; }

Lattice2 KleinGroup::translations() const {
  return Lattice2(2.0 * alpha_shift * axis, beta_shift * Complex{0.0, 1.0} * axis);
}

double KleinGroup::axis_offset(Complex z) const { return (z * std::conj(axis)).imag(); }

FlatSurface FlatSurface::torus(const Lattice2& lattice) {
  FlatSurface s;
  s.kind = Kind::torus;
  s.lattice = lattice;
  return s;
}

FlatSurface FlatSurface::klein_bottle(const KleinGroup& group) {
  FlatSurface s;
  s.kind = Kind::klein;
  s.klein = group;
  s.lattice = group.translations();
  return s;
}

double FlatSurface::area() const {
  return kind == Kind::torus ? lattice.covolume() : lattice.covolume() / 2.0;
}

double flat_systole(const FlatSurface& surface) {
  const double translations = successive_minima(surface.lattice).norm1;
  if (surface.kind == FlatSurface::Kind::torus) return translations;
  // One-sided geodesics along the two glide axes have length alpha_shift.
  return std::min(translations, surface.klein.alpha_shift);
}

double klein_injectivity_radius(const KleinGroup& group, double y) {
  const double a = group.alpha_shift;
  const double b = group.beta_shift;
  if (!(y >= 0.0) || y > b / 2.0) throw Error(ErrorCode::PointOutOfRange, "y must lie in [0, beta_shift/2]");
  const double yp = b / 2.0 - y;
  return 0.5 * std::min({std::sqrt(a * a + 4.0 * y * y), std::sqrt(a * a + 4.0 * yp * yp), 2.0 * a, b});
}

double injectivity_radius(const FlatSurface& surface, Complex p) {
  double best = min_coset_norm(surface.lattice, Complex{}, true);
  if (surface.kind == FlatSurface::Kind::klein) {
    const PlaneIsometry alpha = surface.klein.alpha();
    best = std::min(best, min_coset_norm(surface.lattice, alpha.apply(p) - p));
  }
  return best / 2.0;
}

double quotient_distance(const FlatSurface& surface, Complex p, Complex q) {
  double best = min_coset_norm(surface.lattice, q - p);
  if (surface.kind == FlatSurface::Kind::klein) {
    const PlaneIsometry alpha = surface.klein.alpha();
    best = std::min(best, min_coset_norm(surface.lattice, alpha.apply(q) - p));
  }
  return best;
}

TwoDiskCheck two_disk_config_valid(const FlatSurface& surface, Complex c1, Complex c2, double h, double tol) {
  TwoDiskCheck out;
  out.center_distance = quotient_distance(surface, c1, c2);
  out.injectivity1 = injectivity_radius(surface, c1);
  out.injectivity2 = injectivity_radius(surface, c2);
  if (!(h >= 0.0)) return out;
  out.valid = h / 2.0 <= out.injectivity1 + tol && h / 2.0 <= out.injectivity2 + tol &&
              out.center_distance >= h - tol;
  return out;
}

}  // namespace cuspkit
