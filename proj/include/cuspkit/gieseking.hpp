#pragma once

// The Gieseking group <f, g>: generators, bounded word enumeration, length
// spectrum, cusp stabilizer, horoball packing and the certified invariants.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuspkit/euclat.hpp"
#include "cuspkit/horoball.hpp"
#include "cuspkit/isom3.hpp"

namespace cuspkit {

/// f: z -> (conj z - 1)/(-omega)      g: z -> omega conj z/(conj z + omega)
Isometry gieseking_f();
Isometry gieseking_g();

/// Words are strings over "fFgG" with F = f^{-1}, G = g^{-1}; the leftmost
/// letter is applied last.
Isometry evaluate_word(const std::string& word);

/// g^{-1} f^{-1} g^2 f^2, which is the identity.
Isometry relator();

struct WordSearchOptions {
  int max_length = 10;
  double prune_entry = 1e3;  // skip extensions once an entry exceeds this (<= 0: no pruning)
  int threads = 0;
};

inline constexpr int kMaxWordLength = 16;

/// Visits every freely reduced nonempty word up to max_length (subject to
/// pruning).  The callback may run concurrently on different threads.
/// ResourceLimit when max_length exceeds kMaxWordLength.
void for_each_word(const WordSearchOptions& options,
                   const std::function<void(const std::string&, const Isometry&)>& visit);

struct SpectrumEntry {
  double length = 0.0;
  Orientation orientation = Orientation::positive;
  std::string word;
};

/// Distinct translation lengths (rounded to 1e-9, per orientation), ascending.
/// ConstructionMismatch if an elliptic element or a determinant defect is met.
std::vector<SpectrumEntry> length_spectrum(const WordSearchOptions& options);

/// A translation or glide reflection of C, as the boundary action of an
/// element fixing oo.
struct GlideData {
  bool reflection = false;
  Complex translation;     // translation vector along the axis
  Complex axis_point;      // a point of the axis (glides only)
  Complex axis_direction;  // unit direction (glides only)
  std::optional<double> real_intercept;
};

/// DoesNotStabilizeInfinity unless g fixes oo and acts isometrically on C.
GlideData glide_data(const Isometry& g, double tol = kDefaultTolerance);

struct CuspGroupReport {
  Isometry f = Isometry::identity();
  Isometry f_prime = Isometry::identity();  // (f g^2)^{-1} g (f g^2)
  GlideData f_glide;
  GlideData f_prime_glide;
  Complex f_squared_translation;
  Lattice2 lattice;  // orthogonal basis of the translation subgroup
  KleinGroup klein;
  double axis_separation = 0.0;
  double covol_group = 0.0;
  double covol_lattice = 0.0;
  int index = 2;
};

/// ConstructionMismatch if any derived quantity is inconsistent beyond 1e-9.
CuspGroupReport cusp_group();

struct OrbitBall {
  Horoball ball;
  int orbit = 0;  // 0: orbit of the ball at 0, 1: orbit of the ball at omega^2
  std::string word;
};

struct HoroballOrbit {
  double min_diameter = 1.0;
  Lattice2 lattice;
  std::vector<OrbitBall> classes;  // one ball per translation class, centers reduced
  int depth_used = 0;

  /// Orbit label of the ball at `center` (the class must be present).
  int orbit_of(Complex center) const;
  /// Every ball of the packing with center within `radius` of `center`.
  std::vector<OrbitBall> balls_near(Complex center, double radius) const;
};

/// Images of {t > 1} of diameter >= min_diameter, up to translations, with
/// their cusp-stabilizer orbit.  Depth grows until two consecutive depths add
/// nothing.  ResourceLimit when min_diameter is outside (0, 1] or the depth
/// bound is reached while still finding new balls.
HoroballOrbit horoball_orbit(double min_diameter, int threads = 0);

struct InradiusCertificate {
  double radius = 0.0;
  H3Point base;
  H3Point witness;
  std::size_t lifts = 0;           // tangency points inside the certified ball
  std::size_t nearest = 0;         // lifts realizing the minimum
  double certified_radius = 0.0;   // all lifts within this distance were enumerated
};

/// ConstructionMismatch if a tangency point inside the certified ball is not
/// in the group orbit of the base point, or the enumeration window is too small.
InradiusCertificate inradius_certificate(double min_diameter = 0.3, double window = 3.0, int threads = 0);

struct PolyhedronMetrics {
  H3Point inball_center;
  double inball_radius = 0.0;
  std::vector<H3Point> face_feet;
  std::vector<H3Point> s_vertices;
  std::vector<H3Point> t_vertices;
  double s_vertex_distance = 0.0;  // from the in-ball center
  double t_vertex_distance = 0.0;  // from the tangency point (0, 1)
  double s_edge = 0.0;             // shortest distance between S vertices
  double t_edge = 0.0;             // shortest distance between T vertices
};

/// ConstructionMismatch if the vertex sets are not equidistant within 1e-8.
PolyhedronMetrics polyhedron_metrics();

/// Data of an element sending the diameter-h ball at 0 to {t > h}.
struct NormalFormCheck {
  double h = 0.0;
  double theta = 0.0;
  Complex b;
  double trace_of_square = 0.0;
  double trace_of_square_formula = 0.0;  // |b|^2/h^2 - 2 cos 2 theta
  bool parabolic_negative = false;
  double cos_theta = 0.0;
  Complex fixed_point;
  Complex closed_form_fixed_point;
};

/// InvalidArgument unless gamma sends 0 to oo with image {t > h}.
NormalFormCheck normal_form_check(const Isometry& gamma, double h = 1.0);

}  // namespace cuspkit
