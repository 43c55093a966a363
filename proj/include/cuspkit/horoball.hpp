#pragma once

// Horoballs in the upper half-space model, tangency, cusp volumes and the
// tangency-orbit injectivity radius.

#include <array>
#include <vector>

#include "cuspkit/isom3.hpp"

namespace cuspkit {

/// A horoball.  `size` is the Euclidean diameter for a finite center and the
/// height h of {t > h} for the center at infinity.
struct Horoball {
  BoundaryPoint center;
  double size = 1.0;

  static Horoball at_infinity(double height);
  static Horoball finite(Complex z, double diameter);
};

bool approx_equal(const Horoball& a, const Horoball& b, double tol = kDefaultTolerance);

Horoball image_horoball(const Isometry& g, const Horoball& b);

/// True iff the boundary horospheres touch (relative tolerance `tol`); false
/// when they are strictly apart.  Throws OverlappingHoroballs when interiors
/// intersect beyond the tolerance.
bool are_tangent(const Horoball& b1, const Horoball& b2, double tol = kDefaultTolerance);

/// The common point of two tangent horoballs (InvalidArgument if not tangent).
H3Point tangency_point(const Horoball& b1, const Horoball& b2, double tol = kDefaultTolerance);

struct CuspVolumeInput {
  double covol_cusp_group = 0.0;  // covolume of the full cusp stabilizer
  double covol_lattice = 0.0;     // covolume of its translation subgroup
  int index = 1;                  // [lattice-stabilizer : translations]
  double height = 1.0;
  int n = 3;

  /// Throws InvalidArgument unless covol_lattice = index * covol_cusp_group.
  void validate(double tol = kDefaultTolerance) const;
};

/// covol / ((n-1) h^{n-1}).
double cusp_volume(const CuspVolumeInput& in);

struct VolumeLowerBound {
  double bound = 0.0;          // covol / ((n-1) d_n h^{n-1})
  double cusp_volume = 0.0;
  double density_limit = 0.0;  // d_n(oo)
  double density_at_bound = 0.0;  // cusp_volume / bound, equals d_n(oo)
};

/// Volume lower bound from the simplicial horoball density.  Dimension 3
/// uses the exact density; other dimensions require `density` explicitly.
VolumeLowerBound volume_lower_bound(const CuspVolumeInput& in);
VolumeLowerBound volume_lower_bound(const CuspVolumeInput& in, double density);

struct InradiusWitness {
  double radius = 0.0;
  H3Point first;
  H3Point second;
};

/// Half the minimal pairwise distance of a set of lifts of one point.  An
/// upper bound on the injectivity radius there, equal to it when the lifts
/// contain every orbit point within twice the result of one of them.
InradiusWitness tangency_orbit_injectivity(const std::vector<H3Point>& lifts);

/// Distances from i to the four sides of the quadrilateral (0, e^{i pi/3}, oo,
/// e^{2 i pi/3}) in the upper half-plane, in that order: arc [0, e^{i pi/3}],
/// line Re = 1/2, line Re = -1/2, arc [e^{2 i pi/3}, 0].
std::array<double, 4> cone_side_distances();
double cone_inradius_2d();

/// Distance in the upper half-plane from z to the vertical geodesic Re = x0.
double dist_to_vertical_geodesic(Complex z, double x0);
/// Distance in the upper half-plane from z to the semicircle geodesic |w - c| = r.
double dist_to_circle_geodesic(Complex z, double c, double r);

}  // namespace cuspkit
