#pragma once

// Isometries of hyperbolic 3-space in the upper half-space model, including the
// orientation-reversing coset.  An isometry is a unit-determinant complex 2x2
// matrix together with an orientation sign:
//
//   positive:  z -> (a z + b) / (c z + d)
//   negative:  z -> (a conj(z) + b) / (c conj(z) + d)
//
// The group law is that of PSL(2,C) x| Z/2, where the negative sign acts on the
// matrix factor by complex conjugation.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "cuspkit/errors.hpp"

namespace cuspkit {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultTolerance = 1e-9;

/// omega = exp(i pi / 3), the primitive sixth root of unity used throughout.
Complex omega();

enum class Orientation : int { positive = 1, negative = -1 };

inline Orientation operator*(Orientation a, Orientation b) {
  return static_cast<int>(a) == static_cast<int>(b) ? Orientation::positive : Orientation::negative;
}

/// A point of the sphere at infinity C u {oo}.
struct BoundaryPoint {
  Complex z{};
  bool infinite = false;

  static BoundaryPoint at_infinity() { return {Complex{}, true}; }
  static BoundaryPoint finite(Complex z) { return {z, false}; }
};

bool approx_equal(const BoundaryPoint& p, const BoundaryPoint& q, double tol = kDefaultTolerance);

/// A point (z, t) of upper half-space, t > 0.
struct H3Point {
  Complex z{};
  double t = 1.0;

  H3Point() = default;
  H3Point(Complex z_, double t_);
};

/// Hyperbolic distance in the upper half-space model.
double dist_h3(const H3Point& p, const H3Point& q);

/// Geodesic midpoint of two points, computed in the hyperboloid model.
H3Point midpoint_h3(const H3Point& p, const H3Point& q);

/// Hyperboloid-model coordinates (x0; x1, x2, x3) with -x0^2 + |x|^2 = -1.
std::array<double, 4> to_hyperboloid(const H3Point& p);
H3Point from_hyperboloid(const std::array<double, 4>& x);

class Isometry {
 public:
  /// Builds the normalized representative: entries are divided by a square
  /// root of the determinant, then the global sign is fixed so that the first
  /// nonzero entry (row-major) has argument in (-pi/2, pi/2].
  Isometry(Complex a, Complex b, Complex c, Complex d,
           Orientation orientation = Orientation::positive);

  static Isometry identity();
  static Isometry translation(Complex v);
  /// z -> conj(z)
  static Isometry complex_conjugation();

  Complex a() const { return m_[0]; }
  Complex b() const { return m_[1]; }
  Complex c() const { return m_[2]; }
  Complex d() const { return m_[3]; }
  const std::array<Complex, 4>& entries() const { return m_; }
  Orientation orientation() const { return orientation_; }
  bool is_negative() const { return orientation_ == Orientation::negative; }

  Isometry inverse() const;

  BoundaryPoint apply(const BoundaryPoint& p) const;
  H3Point apply(const H3Point& p) const;

  /// |ad - bc - 1| of the stored representative.
  double det_error() const;
  /// Largest entry modulus.
  double max_entry() const;

  /// Trace of the matrix factor (sign-ambiguous; meaningful for positive elements).
  Complex trace() const { return m_[0] + m_[3]; }
  /// Tr(g^2).  Real for negative elements: |a|^2 + |d|^2 + 2 Re(b conj(c)).
  /// For positive elements the real part of Tr(A)^2 - 2 is returned; use
  /// trace() for the full complex value.
  double trace_of_square() const;

 private:
  Isometry(const std::array<Complex, 4>& m, Orientation o, bool normalize);

  std::array<Complex, 4> m_;
  Orientation orientation_;
};

/// g1 o g2 (apply g2 first).  When g1 is negative the matrix of g2 is
/// conjugated before multiplication.
Isometry compose(const Isometry& g1, const Isometry& g2);
inline Isometry operator*(const Isometry& g1, const Isometry& g2) { return compose(g1, g2); }

/// Equality in Isom(H^3): same orientation and matrices equal up to global sign.
bool approx_equal(const Isometry& g, const Isometry& h, double tol = kDefaultTolerance);

/// The positive element sending p to oo and q to 0 (p != q).
Isometry mobius_sending_to_infinity_and_zero(const BoundaryPoint& p, const BoundaryPoint& q);

enum class IsometryKind { identity, elliptic, parabolic, loxodromic };
const char* to_string(IsometryKind kind) noexcept;

struct ClassifyOptions {
  double tolerance = kDefaultTolerance;
  /// Raise AmbiguousClassification when the parabolic discriminant lies inside
  /// the tolerance band without being numerically exact.
  bool strict = false;
};

struct ClassificationReport {
  IsometryKind kind = IsometryKind::identity;
  Orientation orientation = Orientation::positive;
  std::optional<Complex> trace;           // positive elements
  std::optional<double> trace_of_square;  // negative elements
  std::optional<double> translation_length;
  std::optional<double> rotation_angle;   // positive loxodromic, in (-pi, pi]
  std::vector<BoundaryPoint> fixed_points;
};

ClassificationReport classify(const Isometry& g, const ClassifyOptions& options = {});

struct TranslationData {
  double length = 0.0;
  std::optional<double> rotation_angle;
};

/// Translation length along the axis:
///   positive: 2 cosh(l/2) = |Tr/2 - 1| + |Tr/2 + 1|
///   negative: 2 cosh(l/2) = sqrt(Tr(g^2) + 2)
/// The rotation angle (positive only) is 2 arg(lambda) for the eigenvalue
/// lambda of modulus > 1, i.e. measured at the repelling fixed point.
TranslationData translation_length(const Isometry& g, double tolerance = kDefaultTolerance);

/// Fixed point of a parabolic element via the double-root formula; for a
/// negative element this is the fixed point of g^2.
BoundaryPoint parabolic_fixed_point(const Isometry& g);

struct ProductReport {
  IsometryKind product_kind = IsometryKind::identity;
  bool common_invariant_line = false;
  Complex m{};        // translation of alpha after conjugating its fixed point to oo
  Complex m_prime{};  // lower-left entry of beta after conjugating its fixed point to 0
  Complex product_trace{};  // 2 + m m'
};

/// Product of two purely parabolic positive elements with distinct fixed
/// points.  The product is parabolic only when alpha and beta share an
/// invariant circle, which happens exactly when m m' is real.
ProductReport parabolic_product_report(const Isometry& alpha, const Isometry& beta,
                                       double tolerance = kDefaultTolerance);

/// Minimal displacement of an element fixing oo on the horosphere {t = h},
/// measured in the induced Euclidean metric.
double horospherical_translation(const Isometry& tau, double horosphere_height,
                                 double tolerance = kDefaultTolerance);

/// The element sending the diameter-h horoball at 0 to {t > h} and {t > h} to
/// the diameter-h horoball at b:  z -> b - h^2 e^{-2 i theta} / z  (or / conj z).
Isometry normalize_b0_to_binf(Complex b, double h, double theta,
                              Orientation orientation = Orientation::positive);

/// Closed form (b/2) e^{i theta} / cos(theta) for the fixed point of the
/// parabolic-negative normal form.
Complex normal_form_parabolic_fixed_point(Complex b, double theta);

}  // namespace cuspkit
