#include "cuspkit/horoball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspkit/densities.hpp"

namespace cuspkit {

Horoball Horoball::at_infinity(double height) {
  if (!(height > 0.0)) throw Error(ErrorCode::InvalidArgument, "horoball height must be positive");
  return {BoundaryPoint::at_infinity(), height};
}

Horoball Horoball::finite(Complex z, double diameter) {
  if (!(diameter > 0.0)) throw Error(ErrorCode::InvalidArgument, "horoball diameter must be positive");
  return {BoundaryPoint::finite(z), diameter};
}

bool approx_equal(const Horoball& a, const Horoball& b, double tol) {
  return approx_equal(a.center, b.center, tol) &&
         std::abs(a.size - b.size) <= tol * std::max(1.0, a.size);
}

Horoball image_horoball(const Isometry& g, const Horoball& b) {
  // A point on the boundary horosphere; its image together with the image of
  // the center determines the image horoball.
  const H3Point on_sphere = b.center.infinite ? H3Point(Complex{}, b.size) : H3Point(b.center.z, b.size);
  const H3Point p = g.apply(on_sphere);
  const BoundaryPoint c = g.apply(b.center);
  if (c.infinite) return Horoball::at_infinity(p.t);
  const double diameter = (std::norm(p.z - c.z) + p.t * p.t) / p.t;
  return Horoball::finite(c.z, diameter);
}

namespace {

// Signed tangency defect: > 0 apart, 0 tangent, < 0 overlapping (relative).
double tangency_defect(const Horoball& b1, const Horoball& b2) {
  if (b1.center.infinite && b2.center.infinite) return -1.0;
  if (b1.center.infinite || b2.center.infinite) {
    const Horoball& top = b1.center.infinite ? b1 : b2;
    const Horoball& ball = b1.center.infinite ? b2 : b1;
    return (top.size - ball.size) / std::max(top.size, ball.size);
  }
  const double gap = std::norm(b1.center.z - b2.center.z);
  const double prod = b1.size * b2.size;
  return (gap - prod) / std::max(gap, prod);
}

}  // namespace

bool are_tangent(const Horoball& b1, const Horoball& b2, double tol) {
  const double defect = tangency_defect(b1, b2);
  if (defect < -tol) throw Error(ErrorCode::OverlappingHoroballs, "horoball interiors intersect");
  return defect <= tol;
}

H3Point tangency_point(const Horoball& b1, const Horoball& b2, double tol) {
  if (!are_tangent(b1, b2, tol)) throw Error(ErrorCode::InvalidArgument, "horoballs are not tangent");
  if (b1.center.infinite || b2.center.infinite) {
    const Horoball& ball = b1.center.infinite ? b2 : b1;
    return H3Point(ball.center.z, ball.size);
  }
  // Along the segment joining the Euclidean sphere centers.
  const double r1 = b1.size / 2.0;
  const double r2 = b2.size / 2.0;
  const double s = r1 / (r1 + r2);
  return H3Point(b1.center.z + s * (b2.center.z - b1.center.z), 2.0 * r1 * r2 / (r1 + r2));
}

void CuspVolumeInput::validate(double tol) const {
  if (!(covol_cusp_group > 0.0) || !(covol_lattice > 0.0) || index < 1 || !(height > 0.0) || n < 3) {
    throw Error(ErrorCode::InvalidArgument, "cusp volume input out of range");
  }
  if (std::abs(covol_lattice - index * covol_cusp_group) > tol * std::max(1.0, covol_lattice)) {
    throw Error(ErrorCode::InvalidArgument, "lattice covolume must equal index times group covolume");
  }
}

double cusp_volume(const CuspVolumeInput& in) {
  in.validate();
  return in.covol_cusp_group / ((in.n - 1) * std::pow(in.height, in.n - 1));
}

VolumeLowerBound volume_lower_bound(const CuspVolumeInput& in, double density) {
  if (!(density > 0.0) || density > 1.0) throw Error(ErrorCode::InvalidArgument, "density must lie in (0, 1]");
  VolumeLowerBound out;
  out.cusp_volume = cusp_volume(in);
  out.density_limit = density;
  out.bound = out.cusp_volume / density;
  out.density_at_bound = out.cusp_volume / out.bound;
  return out;
}

VolumeLowerBound volume_lower_bound(const CuspVolumeInput& in) {
  if (in.n != 3) throw Error(ErrorCode::NuUnavailable, "exact density only in dimension 3");
  return volume_lower_bound(in, d_inf_closed(3));
}

InradiusWitness tangency_orbit_injectivity(const std::vector<H3Point>& lifts) {
  if (lifts.size() < 2) throw Error(ErrorCode::FewerThanTwoLifts, "need at least two lifts");
  InradiusWitness best;
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    for (std::size_t j = i + 1; j < lifts.size(); ++j) {
      const double d = dist_h3(lifts[i], lifts[j]);
      if (d < min_dist) {
        min_dist = d;
        best.first = lifts[i];
        best.second = lifts[j];
      }
    }
  }
  if (!(min_dist > 0.0)) throw Error(ErrorCode::InvalidArgument, "lifts must be pairwise distinct");
  best.radius = min_dist / 2.0;
  return best;
}

double dist_to_vertical_geodesic(Complex z, double x0) {
  return std::asinh(std::abs(z.real() - x0) / z.imag());
}

double dist_to_circle_geodesic(Complex z, double c, double r) {
  return std::asinh(std::abs(std::norm(z - c) - r * r) / (2.0 * r * z.imag()));
}

std::array<double, 4> cone_side_distances() {
  const Complex i{0.0, 1.0};
  // The arc from 0 to e^{i pi/3} lies on |w - 1| = 1, the other on |w + 1| = 1.
  return {dist_to_circle_geodesic(i, 1.0, 1.0), dist_to_vertical_geodesic(i, 0.5),
          dist_to_vertical_geodesic(i, -0.5), dist_to_circle_geodesic(i, -1.0, 1.0)};
}

double cone_inradius_2d() {
  const auto d = cone_side_distances();
  return *std::min_element(d.begin(), d.end());
}

}  // namespace cuspkit
