#include "cuspkit/isom3.hpp"

#include <algorithm>
#include <cmath>

namespace cuspkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::AmbiguousClassification: return "AmbiguousClassification";
    case ErrorCode::NotLoxodromic: return "NotLoxodromic";
    case ErrorCode::SharedFixedPoint: return "SharedFixedPoint";
    case ErrorCode::DoesNotStabilizeInfinity: return "DoesNotStabilizeInfinity";
    case ErrorCode::OverlappingHoroballs: return "OverlappingHoroballs";
    case ErrorCode::FewerThanTwoLifts: return "FewerThanTwoLifts";
    case ErrorCode::NuUnavailable: return "NuUnavailable";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ConstructionMismatch: return "ConstructionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BandIntersectsCriticalSet: return "BandIntersectsCriticalSet";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* to_string(IsometryKind kind) noexcept {
  switch (kind) {
    case IsometryKind::identity: return "identity";
    case IsometryKind::elliptic: return "elliptic";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::loxodromic: return "loxodromic";
  }
  return "unknown";
}

Complex omega() { return std::polar(1.0, kPi / 3.0); }

namespace {

using Mat = std::array<Complex, 4>;

Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat conj(const Mat& x) {
  return {std::conj(x[0]), std::conj(x[1]), std::conj(x[2]), std::conj(x[3])};
}

double max_abs(const Mat& m) {
  double s = 0.0;
  for (const auto& x : m) s = std::max(s, std::abs(x));
  return s;
}

// Argument in (-pi/2, pi/2], robust to rounding noise on the real part.
bool in_right_half_plane(Complex x) {
  const double r = std::abs(x);
  if (std::abs(x.real()) <= 1e-14 * r) return x.imag() > 0.0;
  return x.real() > 0.0;
}

// Distance of a matrix to +-I (projectively).
double distance_to_identity(const Mat& m) {
  const Complex s = std::abs(m[0] - 1.0) <= std::abs(m[0] + 1.0) ? 1.0 : -1.0;
  return std::max({std::abs(m[0] - s), std::abs(m[1]), std::abs(m[2]), std::abs(m[3] - s)});
}

Complex sqrt_discriminant(Complex tr) { return std::sqrt(tr * tr - 4.0); }

void keep_fixed(const Isometry& g, std::vector<BoundaryPoint>& pts, double tol) {
  std::vector<BoundaryPoint> out;
  for (const auto& p : pts) {
    if (approx_equal(g.apply(p), p, tol)) out.push_back(p);
  }
  pts = std::move(out);
}

// Fixed points of the positive matrix m on the Riemann sphere.
std::vector<BoundaryPoint> matrix_fixed_points(const Mat& m, bool parabolic, double tol) {
  const Complex a = m[0], b = m[1], c = m[2], d = m[3];
  const double scale = std::max(1.0, max_abs(m));
  std::vector<BoundaryPoint> pts;
  if (std::abs(c) <= tol * scale) {
    pts.push_back(BoundaryPoint::at_infinity());
    if (!parabolic && std::abs(a - d) > tol * scale) pts.push_back(BoundaryPoint::finite(b / (d - a)));
    return pts;
  }
  if (parabolic) {
    pts.push_back(BoundaryPoint::finite((a - d) / (2.0 * c)));
    return pts;
  }
  const Complex root = sqrt_discriminant(a + d);
  pts.push_back(BoundaryPoint::finite((a - d + root) / (2.0 * c)));
  pts.push_back(BoundaryPoint::finite((a - d - root) / (2.0 * c)));
  return pts;
}

}  // namespace

bool approx_equal(const BoundaryPoint& p, const BoundaryPoint& q, double tol) {
  if (p.infinite || q.infinite) return p.infinite && q.infinite;
  return std::abs(p.z - q.z) <= tol * std::max(1.0, std::abs(p.z));
}

H3Point::H3Point(Complex z_, double t_) : z(z_), t(t_) {
  if (!(t_ > 0.0) || !std::isfinite(t_) || !std::isfinite(z_.real()) || !std::isfinite(z_.imag())) {
    throw Error(ErrorCode::InvalidArgument, "H3Point requires finite z and t > 0");
  }
}

double dist_h3(const H3Point& p, const H3Point& q) {
  // cosh d = 1 + (|dz|^2 + dt^2) / (2 t1 t2), written through sinh(d/2) to keep
  // precision for nearby points.
  const double dz2 = std::norm(p.z - q.z);
  const double dt = p.t - q.t;
  const double s = std::sqrt(dz2 + dt * dt) / (2.0 * std::sqrt(p.t * q.t));
  return 2.0 * std::asinh(s);
}

std::array<double, 4> to_hyperboloid(const H3Point& p) {
  const double s = std::norm(p.z) + p.t * p.t;
  return {(s + 1.0) / (2.0 * p.t), (s - 1.0) / (2.0 * p.t), p.z.real() / p.t, p.z.imag() / p.t};
}

H3Point from_hyperboloid(const std::array<double, 4>& x) {
  const double t = 1.0 / (x[0] - x[1]);
  return H3Point(Complex(x[2] * t, x[3] * t), t);
}

H3Point midpoint_h3(const H3Point& p, const H3Point& q) {
  const auto x = to_hyperboloid(p);
  const auto y = to_hyperboloid(q);
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = x[i] + y[i];
  const double norm2 = s[0] * s[0] - s[1] * s[1] - s[2] * s[2] - s[3] * s[3];
  const double k = 1.0 / std::sqrt(norm2);
  for (auto& v : s) v *= k;
  return from_hyperboloid(s);
}

Isometry::Isometry(Complex a, Complex b, Complex c, Complex d, Orientation orientation)
    : Isometry(Mat{a, b, c, d}, orientation, true) {}

Isometry::Isometry(const Mat& m, Orientation o, bool normalize) : m_(m), orientation_(o) {
  for (const auto& x : m_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw Error(ErrorCode::InvalidArgument, "isometry entries must be finite");
    }
  }
  if (!normalize) return;
  const Complex det = m_[0] * m_[3] - m_[1] * m_[2];
  if (std::abs(det) <= 1e-300) throw Error(ErrorCode::InvalidArgument, "singular matrix");
  const Complex k = 1.0 / std::sqrt(det);
  for (auto& x : m_) x *= k;
  const double scale = max_abs(m_);
  for (const auto& x : m_) {
    if (std::abs(x) > 1e-12 * scale) {
      if (!in_right_half_plane(x)) {
        for (auto& y : m_) y = -y;
      }
      break;
    }
  }
}

Isometry Isometry::identity() { return Isometry(1.0, 0.0, 0.0, 1.0); }

Isometry Isometry::translation(Complex v) { return Isometry(1.0, v, 0.0, 1.0); }

Isometry Isometry::complex_conjugation() {
  return Isometry(1.0, 0.0, 0.0, 1.0, Orientation::negative);
}

Isometry Isometry::inverse() const {
  const Mat inv{m_[3], -m_[1], -m_[2], m_[0]};
  // (A,-1)^{-1} = (conj(A^{-1}), -1)
  return Isometry(is_negative() ? conj(inv) : inv, orientation_, true);
}

BoundaryPoint Isometry::apply(const BoundaryPoint& p) const {
  const Complex a = m_[0], b = m_[1], c = m_[2], d = m_[3];
  if (p.infinite) {
    if (std::abs(c) <= 1e-12 * max_abs(m_)) return BoundaryPoint::at_infinity();
    return BoundaryPoint::finite(a / c);
  }
  const Complex w = is_negative() ? std::conj(p.z) : p.z;
  const Complex num = a * w + b;
  const Complex den = c * w + d;
  if (std::abs(den) <= 1e-12 * max_abs(m_) * (1.0 + std::abs(w))) return BoundaryPoint::at_infinity();
  return BoundaryPoint::finite(num / den);
}

H3Point Isometry::apply(const H3Point& p) const {
  // Quaternion action q -> (a q + b)(c q + d)^{-1} with q = z + t j.
  const Complex a = m_[0], b = m_[1], c = m_[2], d = m_[3];
  const Complex z = is_negative() ? std::conj(p.z) : p.z;
  const double t2 = p.t * p.t;
  const Complex cz_d = c * z + d;
  const double den = std::norm(cz_d) + std::norm(c) * t2;
  const Complex zn = ((a * z + b) * std::conj(cz_d) + a * std::conj(c) * t2) / den;
  return H3Point(zn, p.t / den);
}

double Isometry::det_error() const { return std::abs(m_[0] * m_[3] - m_[1] * m_[2] - 1.0); }

double Isometry::max_entry() const { return max_abs(m_); }

double Isometry::trace_of_square() const {
  if (is_negative()) {
    return std::norm(m_[0]) + std::norm(m_[3]) + 2.0 * (m_[1] * std::conj(m_[2])).real();
  }
  const Complex tr = trace();
  return (tr * tr).real() - 2.0;
}

Isometry compose(const Isometry& g1, const Isometry& g2) {
  const Mat right = g1.is_negative() ? conj(g2.entries()) : g2.entries();
  const Mat prod = mul(g1.entries(), right);
  return Isometry(prod[0], prod[1], prod[2], prod[3], g1.orientation() * g2.orientation());
}

bool approx_equal(const Isometry& g, const Isometry& h, double tol) {
  if (g.orientation() != h.orientation()) return false;
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i < 4; ++i) {
    plus = std::max(plus, std::abs(g.entries()[i] - h.entries()[i]));
    minus = std::max(minus, std::abs(g.entries()[i] + h.entries()[i]));
  }
  return std::min(plus, minus) <= tol * std::max(1.0, g.max_entry());
}

Isometry mobius_sending_to_infinity_and_zero(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (approx_equal(p, q, 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "points must be distinct");
  }
  if (p.infinite) return Isometry(1.0, -q.z, 0.0, 1.0);
  if (q.infinite) return Isometry(0.0, 1.0, 1.0, -p.z);
  return Isometry(1.0, -q.z, 1.0, -p.z);
}

ClassificationReport classify(const Isometry& g, const ClassifyOptions& options) {
  const double tol = options.tolerance;
  ClassificationReport report;
  report.orientation = g.orientation();
  const double scale = std::max(1.0, g.max_entry() * g.max_entry());
  const double exact_band = 1e-12 * scale;

  auto check_ambiguous = [&](double delta) {
    if (options.strict && delta > exact_band && delta <= tol) {
      throw Error(ErrorCode::AmbiguousClassification,
                  "parabolic discriminant inside the tolerance band");
    }
  };

  if (!g.is_negative()) {
    const Complex tr = g.trace();
    report.trace = tr;
    const Complex tr2 = tr * tr;
    const double delta = std::abs(tr2 - 4.0);
    if (delta <= tol) {
      check_ambiguous(delta);
      if (distance_to_identity(g.entries()) <= tol) {
        report.kind = IsometryKind::identity;
        return report;
      }
      report.kind = IsometryKind::parabolic;
      report.fixed_points = matrix_fixed_points(g.entries(), true, tol);
      return report;
    }
    if (std::abs(tr2.imag()) <= tol && tr2.real() < 4.0 && tr2.real() >= -tol) {
      report.kind = IsometryKind::elliptic;
      report.fixed_points = matrix_fixed_points(g.entries(), false, tol);
      return report;
    }
    report.kind = IsometryKind::loxodromic;
    const auto data = translation_length(g, tol);
    report.translation_length = data.length;
    report.rotation_angle = data.rotation_angle;
    report.fixed_points = matrix_fixed_points(g.entries(), false, tol);
    return report;
  }

  const double s = g.trace_of_square();
  report.trace_of_square = s;
  const Isometry sq = compose(g, g);
  const double delta = std::abs(s - 2.0);
  if (delta <= tol) {
    check_ambiguous(delta);
    if (distance_to_identity(sq.entries()) <= tol) {
      // Orientation-reversing involution (reflection type): fixes a circle.
      report.kind = IsometryKind::elliptic;
      return report;
    }
    report.kind = IsometryKind::parabolic;
    report.fixed_points = {parabolic_fixed_point(g)};
    return report;
  }
  if (s < 2.0) {
    report.kind = IsometryKind::elliptic;
    report.fixed_points = matrix_fixed_points(sq.entries(), false, tol);
    keep_fixed(g, report.fixed_points, 1e-7);
    return report;
  }
  report.kind = IsometryKind::loxodromic;
  report.translation_length = translation_length(g, tol).length;
  report.fixed_points = matrix_fixed_points(sq.entries(), false, tol);
  return report;
}

TranslationData translation_length(const Isometry& g, double tolerance) {
  TranslationData out;
  if (g.is_negative()) {
    const double s = g.trace_of_square();
    if (!(s > 2.0 + tolerance)) {
      throw Error(ErrorCode::NotLoxodromic, "Tr(g^2) <= 2 for a negative element");
    }
    out.length = 2.0 * std::acosh(std::sqrt(s + 2.0) / 2.0);
    return out;
  }
  const Complex tr = g.trace();
  const Complex tr2 = tr * tr;
  if (std::abs(tr2 - 4.0) <= tolerance ||
      (std::abs(tr2.imag()) <= tolerance && tr2.real() < 4.0 && tr2.real() >= -tolerance)) {
    throw Error(ErrorCode::NotLoxodromic, "positive element is not loxodromic");
  }
  const double two_cosh = std::abs(tr / 2.0 - 1.0) + std::abs(tr / 2.0 + 1.0);
  out.length = 2.0 * std::acosh(two_cosh / 2.0);
  const Complex root = sqrt_discriminant(tr);
  Complex lambda = (tr + root) / 2.0;
  const Complex other = (tr - root) / 2.0;
  if (std::abs(other) > std::abs(lambda)) lambda = other;
  double theta = 2.0 * std::arg(lambda);
  while (theta <= -kPi) theta += 2.0 * kPi;
  while (theta > kPi) theta -= 2.0 * kPi;
  out.rotation_angle = theta;
  return out;
}

BoundaryPoint parabolic_fixed_point(const Isometry& g) {
  const Isometry m = g.is_negative() ? compose(g, g) : g;
  const double scale = std::max(1.0, m.max_entry());
  if (std::abs(m.c()) <= 1e-12 * scale) return BoundaryPoint::at_infinity();
  return BoundaryPoint::finite((m.a() - m.d()) / (2.0 * m.c()));
}

ProductReport parabolic_product_report(const Isometry& alpha, const Isometry& beta, double tolerance) {
  const auto ca = classify(alpha, {tolerance, false});
  const auto cb = classify(beta, {tolerance, false});
  if (alpha.is_negative() || beta.is_negative() || ca.kind != IsometryKind::parabolic ||
      cb.kind != IsometryKind::parabolic) {
    throw Error(ErrorCode::InvalidArgument, "expected two positive parabolic elements");
  }
  const BoundaryPoint pa = ca.fixed_points.front();
  const BoundaryPoint pb = cb.fixed_points.front();
  if (approx_equal(pa, pb, tolerance)) {
    throw Error(ErrorCode::SharedFixedPoint, "alpha and beta have the same fixed point");
  }
  const Isometry u = mobius_sending_to_infinity_and_zero(pa, pb);
  const Isometry uinv = u.inverse();
  const Isometry a_conj = u * alpha * uinv;  // fixes oo: [[s, m], [0, s]]
  const Isometry b_conj = u * beta * uinv;   // fixes 0:  [[s, 0], [m', s]]

  ProductReport report;
  const Complex sa = a_conj.a().real() >= 0.0 ? 1.0 : -1.0;
  const Complex sb = b_conj.a().real() >= 0.0 ? 1.0 : -1.0;
  report.m = a_conj.b() * sa;
  report.m_prime = b_conj.c() * sb;
  const Complex mm = report.m * report.m_prime;
  report.product_trace = 2.0 + mm;
  report.product_kind = classify(alpha * beta, {tolerance, false}).kind;
  report.common_invariant_line = std::abs(mm.imag()) <= tolerance * std::max(1.0, std::abs(mm));
  return report;
}

double horospherical_translation(const Isometry& tau, double horosphere_height, double tolerance) {
  if (!(horosphere_height > 0.0)) throw Error(ErrorCode::InvalidArgument, "height must be positive");
  const double scale = std::max(1.0, tau.max_entry());
  if (std::abs(tau.c()) > tolerance * scale) {
    throw Error(ErrorCode::DoesNotStabilizeInfinity, "lower-left entry is nonzero");
  }
  // z -> lambda z + beta  or  z -> lambda conj(z) + beta
  const Complex lambda = tau.a() / tau.d();
  const Complex beta = tau.b() / tau.d();
  if (std::abs(std::abs(lambda) - 1.0) > tolerance) {
    throw Error(ErrorCode::DoesNotStabilizeInfinity, "element dilates the horospheres at oo");
  }
  if (!tau.is_negative()) {
    if (std::abs(lambda - 1.0) > tolerance) return 0.0;  // rotation about a vertical axis
    return std::abs(beta) / horosphere_height;
  }
  // Glide reflection: mirror direction u with u^2 = lambda, glide = Re(beta conj u).
  const Complex u = std::sqrt(lambda);
  return std::abs((beta * std::conj(u)).real()) / horosphere_height;
}

Isometry normalize_b0_to_binf(Complex b, double h, double theta, Orientation orientation) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "h must be positive");
  const Complex c = std::polar(1.0, theta) / h;
  return Isometry(c * b, -1.0 / c, c, 0.0, orientation);
}

Complex normal_form_parabolic_fixed_point(Complex b, double theta) {
  return (b / 2.0) * std::polar(1.0, theta) / std::cos(theta);
}

}  // namespace cuspkit
