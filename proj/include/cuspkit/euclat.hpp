#pragma once

// Rank-2 Euclidean lattices and closed flat surfaces (tori and Klein bottles).

#include <vector>

#include "cuspkit/isom3.hpp"

namespace cuspkit {

struct Lattice2 {
  Complex b1;
  Complex b2;

  Lattice2() = default;
  /// Throws InvalidArgument for a degenerate basis.
  Lattice2(Complex b1_, Complex b2_);

  double covolume() const { return std::abs((std::conj(b1) * b2).imag()); }
};

/// Lagrange-Gauss reduced basis: |b1| <= |b2| and |Re(b2 conj b1)| <= |b1|^2 / 2.
Lattice2 gauss_reduce(const Lattice2& lattice);

/// Squared norms m1 <= m2 and the plain norms, realized by v1, v2.
struct MinimaReport {
  double m1 = 0.0;
  double m2 = 0.0;
  double norm1 = 0.0;
  double norm2 = 0.0;
  Complex v1;
  Complex v2;
};

MinimaReport successive_minima(const Lattice2& lattice);

/// Every lattice vector v with |w + v| <= radius.
std::vector<Complex> lattice_vectors_near(const Lattice2& lattice, Complex w, double radius);

/// min over lattice vectors v (v != 0 when exclude_zero) of |w + v|.
double min_coset_norm(const Lattice2& lattice, Complex w, bool exclude_zero = false);

/// z -> rotation * (z or conj z) + shift, |rotation| = 1.
struct PlaneIsometry {
  Complex rotation{1.0, 0.0};
  bool reflect = false;
  Complex shift{};

  Complex apply(Complex z) const { return rotation * (reflect ? std::conj(z) : z) + shift; }
};

PlaneIsometry compose(const PlaneIsometry& g1, const PlaneIsometry& g2);

/// Klein bottle group in normal form: with u the unit axis direction,
///   alpha(z) = u^2 conj(z) + alpha_shift * u   (glide along the axis R u)
///   beta(z)  = z + beta_shift * i u
/// whose translation subgroup is spanned by 2 alpha_shift u and beta_shift i u.
struct KleinGroup {
  Complex axis{1.0, 0.0};
  double alpha_shift = 1.0;
  double beta_shift = 1.0;

  KleinGroup() = default;
  KleinGroup(Complex axis_, double alpha_shift_, double beta_shift_);

  PlaneIsometry alpha() const;
  PlaneIsometry beta() const;
  Lattice2 translations() const;
  /// Signed distance of z to the axis of alpha.
  double axis_offset(Complex z) const;
};

struct FlatSurface {
  enum class Kind { torus, klein };
  Kind kind = Kind::torus;
  Lattice2 lattice;  // translation subgroup (the orientation cover for a Klein bottle)
  KleinGroup klein;  // meaningful only for Kind::klein

  static FlatSurface torus(const Lattice2& lattice);
  static FlatSurface klein_bottle(const KleinGroup& group);

  double area() const;
};

/// Shortest closed geodesic.
double flat_systole(const FlatSurface& surface);

/// Injectivity radius of a Klein bottle at a point at distance y from the alpha
/// axis: half the minimum of sqrt(a^2+4y^2), sqrt(a^2+4(b/2-y)^2), 2a and b.
/// PointOutOfRange unless 0 <= y <= beta_shift / 2.
double klein_injectivity_radius(const KleinGroup& group, double y);

/// Injectivity radius at p by enumeration of the deck group.
double injectivity_radius(const FlatSurface& surface, Complex p);

/// Distance in the quotient between the images of p and q.
double quotient_distance(const FlatSurface& surface, Complex p, Complex q);

struct TwoDiskCheck {
  bool valid = false;
  double center_distance = 0.0;
  double injectivity1 = 0.0;
  double injectivity2 = 0.0;
};

/// Both closed disks of diameter h embed (h/2 <= injectivity radius) and they
/// have disjoint interiors (d >= h).
TwoDiskCheck two_disk_config_valid(const FlatSurface& surface, Complex c1, Complex c2, double h,
                                   double tol = kDefaultTolerance);

}  // namespace cuspkit
