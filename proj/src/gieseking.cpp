#include "cuspkit/gieseking.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "cuspkit/parallel.hpp"

namespace cuspkit {

Isometry gieseking_f() { return Isometry(1.0, -1.0, 0.0, -omega(), Orientation::negative); }

Isometry gieseking_g() { return Isometry(omega(), 0.0, 1.0, omega(), Orientation::negative); }

namespace {

constexpr char kLetters[4] = {'f', 'F', 'g', 'G'};
constexpr int kInverse[4] = {1, 0, 3, 2};

const std::array<Isometry, 4>& generators() {
  static const std::array<Isometry, 4> gens = [] {
    const Isometry f = gieseking_f();
    const Isometry g = gieseking_g();
    return std::array<Isometry, 4>{f, f.inverse(), g, g.inverse()};
  }();
  return gens;
}

int letter_index(char c) {
  for (int i = 0; i < 4; ++i) {
    if (kLetters[i] == c) return i;
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown letter in word: ") + c);
}

struct Prefix {
  std::string word;
  Isometry iso;
  int last;
};

using Visitor = std::function<void(std::size_t slot, const std::string&, const Isometry&)>;

void extend(std::size_t slot, std::string& word, const Isometry& iso, int last, int remaining, double prune,
            const Visitor& visit) {
  if (remaining == 0) return;
  const auto& gens = generators();
  for (int s = 0; s < 4; ++s) {
    if (s == kInverse[last]) continue;
    const Isometry next = iso * gens[s];
    if (prune > 0.0 && next.max_entry() > prune) continue;
    word.push_back(kLetters[s]);
    visit(slot, word, next);
    extend(slot, word, next, s, remaining - 1, prune, visit);
    word.pop_back();
  }
}

// Words of length <= 2 are visited in slot 0; longer words are grouped by
// their length-3 prefix, one slot per prefix (slots 1..36).
constexpr std::size_t kSlots = 37;

void enumerate(const WordSearchOptions& options, const Visitor& visit) {
  if (options.max_length > kMaxWordLength) {
    throw Error(ErrorCode::ResourceLimit, "word length above " + std::to_string(kMaxWordLength));
  }
  if (options.max_length < 1) return;
  const auto& gens = generators();
  const double prune = options.prune_entry;
  std::vector<Prefix> prefixes;
  for (int a = 0; a < 4; ++a) {
    const std::string w1(1, kLetters[a]);
    visit(0, w1, gens[a]);
    if (options.max_length < 2) continue;
    for (int b = 0; b < 4; ++b) {
      if (b == kInverse[a]) continue;
      const Isometry i2 = gens[a] * gens[b];
      if (prune > 0.0 && i2.max_entry() > prune) continue;
      const std::string w2 = w1 + kLetters[b];
      visit(0, w2, i2);
      if (options.max_length < 3) continue;
      for (int c = 0; c < 4; ++c) {
        if (c == kInverse[b]) continue;
        const Isometry i3 = i2 * gens[c];
        if (prune > 0.0 && i3.max_entry() > prune) continue;
        prefixes.push_back({w2 + kLetters[c], i3, c});
      }
    }
  }
  parallel_for(prefixes.size(), options.threads, [&](std::size_t i) {
    const Prefix& p = prefixes[i];
    visit(i + 1, p.word, p.iso);
    std::string word = p.word;
    extend(i + 1, word, p.iso, p.last, options.max_length - 3, prune, visit);
  });
}

bool word_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Isometry evaluate_word(const std::string& word) {
  Isometry out = Isometry::identity();
  for (char c : word) out = out * generators()[letter_index(c)];
  return out;
}

Isometry relator() { return evaluate_word("GFggff"); }

void for_each_word(const WordSearchOptions& options,
                   const std::function<void(const std::string&, const Isometry&)>& visit) {
  enumerate(options, [&](std::size_t, const std::string& w, const Isometry& g) { visit(w, g); });
}

std::vector<SpectrumEntry> length_spectrum(const WordSearchOptions& options) {
  using Key = std::pair<long long, int>;
  std::vector<std::map<Key, SpectrumEntry>> found(kSlots);
  enumerate(options, [&](std::size_t slot, const std::string& w, const Isometry& g) {
    if (g.det_error() > 1e-10) {
      throw Error(ErrorCode::ConstructionMismatch, "determinant defect in word " + w);
    }
    const ClassificationReport c = classify(g);
    if (c.kind == IsometryKind::elliptic) {
      throw Error(ErrorCode::ConstructionMismatch, "elliptic element from word " + w);
    }
    if (c.kind != IsometryKind::loxodromic) return;
    const double len = *c.translation_length;
    const Key key{std::llround(len * 1e9), static_cast<int>(g.orientation())};
    auto& bucket = found[slot];
    auto it = bucket.find(key);
    if (it == bucket.end()) {
      bucket.emplace(key, SpectrumEntry{len, g.orientation(), w});
    } else if (word_less(w, it->second.word)) {
      it->second = SpectrumEntry{len, g.orientation(), w};
    }
  });
  std::map<Key, SpectrumEntry> merged;
  for (const auto& bucket : found) {
    for (const auto& [key, entry] : bucket) {
      auto it = merged.find(key);
      if (it == merged.end()) {
        merged.emplace(key, entry);
      } else if (word_less(entry.word, it->second.word)) {
        it->second = entry;
      }
    }
  }
  std::vector<SpectrumEntry> out;
  out.reserve(merged.size());
  for (const auto& [key, entry] : merged) out.push_back(entry);
  std::sort(out.begin(), out.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.length != b.length) return a.length < b.length;
    return static_cast<int>(a.orientation) > static_cast<int>(b.orientation);
  });
  return out;
}

GlideData glide_data(const Isometry& g, double tol) {
  if (std::abs(g.c()) > tol * std::max(1.0, g.max_entry())) {
    throw Error(ErrorCode::DoesNotStabilizeInfinity, "element does not fix oo");
  }
  const Complex lambda = g.a() / g.d();
  const Complex beta = g.b() / g.d();
  if (std::abs(std::abs(lambda) - 1.0) > tol) {
    throw Error(ErrorCode::DoesNotStabilizeInfinity, "element is not an isometry of C");
  }
  GlideData out;
  out.reflection = g.is_negative();
  if (!out.reflection) {
    if (std::abs(lambda - 1.0) > tol) throw Error(ErrorCode::InvalidArgument, "rotation, not a translation");
    out.translation = beta;
    return out;
  }
  const Complex u = std::sqrt(lambda);
  out.axis_direction = u;
  out.translation = (beta * std::conj(u)).real() * u;
  out.axis_point = (beta - out.translation) / 2.0;
  if (std::abs(u.imag()) > tol) {
    out.real_intercept = out.axis_point.real() - out.axis_point.imag() / u.imag() * u.real();
  }
  return out;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::ConstructionMismatch, what);
}

bool near(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

CuspGroupReport cusp_group() {
  CuspGroupReport r;
  r.f = gieseking_f();
  const Isometry g = gieseking_g();
  const Isometry fg2 = r.f * g * g;
  r.f_prime = fg2.inverse() * g * fg2;
  r.f_glide = glide_data(r.f);
  r.f_prime_glide = glide_data(r.f_prime);
  require(r.f_glide.reflection && r.f_prime_glide.reflection, "cusp generators must be glide reflections");

  const Isometry f2 = r.f * r.f;
  r.f_squared_translation = glide_data(f2).translation;
  require(near(r.f_squared_translation, -omega()), "f^2 must translate by -omega");

  // Parallel axes; their separation and the glide length fix the Klein normal form.
  const Complex u = r.f_glide.axis_direction;
  require(std::abs((r.f_prime_glide.axis_direction * std::conj(u)).imag()) <= 1e-9, "axes are not parallel");
  r.axis_separation = std::abs(((r.f_prime_glide.axis_point - r.f_glide.axis_point) * std::conj(u)).imag());
  const double glide = std::abs(r.f_glide.translation);
  require(std::abs(std::abs(r.f_prime_glide.translation) - glide) <= 1e-9, "glide lengths differ");

  // Orthogonal basis: f^2 and the translation of f' f, stripped of its
  // component along the axis.
  const Complex v1 = r.f_squared_translation;
  Complex v2 = glide_data(r.f_prime * r.f).translation;
  v2 -= std::round((v2 * std::conj(v1)).real() / std::norm(v1)) * v1;
  r.lattice = Lattice2(v1, v2);
  r.covol_lattice = r.lattice.covolume();
  r.covol_group = r.covol_lattice / r.index;
  require(std::abs((v2 * std::conj(v1)).real()) <= 1e-9, "lattice basis is not orthogonal");
  require(std::abs(r.covol_lattice - 2.0 * glide * 2.0 * r.axis_separation) <= 1e-9,
          "covolume disagrees with the axis data");

  r.klein = KleinGroup(u, glide, 2.0 * r.axis_separation);
  const Lattice2 kl = r.klein.translations();
  require(min_coset_norm(r.lattice, kl.b1) <= 1e-9 && min_coset_norm(r.lattice, kl.b2) <= 1e-9 &&
              std::abs(kl.covolume() - r.covol_lattice) <= 1e-9,
          "Klein normal form does not reproduce the translation lattice");
  return r;
}

namespace {

// Reduce z into the half-open fundamental parallelogram of the lattice.
Complex reduce_mod(const Lattice2& lattice, Complex z) {
  const double det = (std::conj(lattice.b1) * lattice.b2).imag();
  double x = (std::conj(z) * lattice.b2).imag() / det;
  double y = (std::conj(lattice.b1) * z).imag() / det;
  x -= std::floor(x);
  y -= std::floor(y);
  if (x > 1.0 - 1e-9) x = 0.0;
  if (y > 1.0 - 1e-9) y = 0.0;
  const Complex r = x * lattice.b1 + y * lattice.b2;
  return {std::abs(r.real()) < 1e-12 ? 0.0 : r.real(), std::abs(r.imag()) < 1e-12 ? 0.0 : r.imag()};
}

}  // namespace

int HoroballOrbit::orbit_of(Complex center) const {
  for (const OrbitBall& b : classes) {
    if (min_coset_norm(lattice, center - b.ball.center.z) <= 1e-7) return b.orbit;
  }
  throw Error(ErrorCode::InvalidArgument, "no enumerated ball at that center");
}

std::vector<OrbitBall> HoroballOrbit::balls_near(Complex center, double radius) const {
  std::vector<OrbitBall> out;
  for (const OrbitBall& b : classes) {
    for (const Complex& v : lattice_vectors_near(lattice, b.ball.center.z - center, radius)) {
      OrbitBall copy = b;
      copy.ball.center.z = b.ball.center.z + v;
      out.push_back(copy);
    }
  }
  std::sort(out.begin(), out.end(), [](const OrbitBall& a, const OrbitBall& b) {
    if (a.ball.center.z.real() != b.ball.center.z.real()) return a.ball.center.z.real() < b.ball.center.z.real();
    return a.ball.center.z.imag() < b.ball.center.z.imag();
  });
  return out;
}

HoroballOrbit horoball_orbit(double min_diameter, int threads) {
  if (!(min_diameter > 0.0) || min_diameter > 1.0) {
    throw Error(ErrorCode::ResourceLimit, "min_diameter must lie in (0, 1]");
  }
  const CuspGroupReport cusp = cusp_group();
  HoroballOrbit out;
  out.min_diameter = min_diameter;
  out.lattice = cusp.lattice;
  const Horoball top = Horoball::at_infinity(1.0);

  std::mutex mutex;
  std::vector<OrbitBall> classes;
  std::vector<std::size_t> first_length;
  int depth = 6;
  for (;;) {
    classes.clear();
    first_length.clear();
    WordSearchOptions opts;
    opts.max_length = depth;
    opts.threads = threads;
    for_each_word(opts, [&](const std::string& w, const Isometry& g) {
      const double c2 = std::norm(g.c());
      if (c2 * min_diameter > 1.0 + 1e-12 || c2 == 0.0) return;
      const Horoball image = image_horoball(g, top);
      if (image.center.infinite || image.size < min_diameter * (1.0 - 1e-12)) return;
      const Complex z = reduce_mod(out.lattice, image.center.z);
      std::lock_guard<std::mutex> lock(mutex);
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (min_coset_norm(out.lattice, z - classes[i].ball.center.z) <= 1e-7) {
          if (word_less(w, classes[i].word)) {
            classes[i].ball = Horoball::finite(z, image.size);
            classes[i].word = w;
            first_length[i] = w.size();
          }
          return;
        }
      }
      classes.push_back({Horoball::finite(z, image.size), -1, w});
      first_length.push_back(w.size());
    });
    std::size_t deepest = 0;
    for (std::size_t len : first_length) deepest = std::max(deepest, len);
    if (static_cast<int>(deepest) + 2 <= depth) {
      out.depth_used = static_cast<int>(deepest);
      break;
    }
    depth += 2;
    if (depth > kMaxWordLength) throw Error(ErrorCode::ResourceLimit, "horoball enumeration did not stabilize");
  }

  std::sort(classes.begin(), classes.end(), [](const OrbitBall& a, const OrbitBall& b) {
    if (std::abs(a.ball.size - b.ball.size) > 1e-9) return a.ball.size > b.ball.size;
    const Complex za = a.ball.center.z, zb = b.ball.center.z;
    if (std::abs(za.real() - zb.real()) > 1e-9) return za.real() < zb.real();
    return za.imag() < zb.imag();
  });
  for (OrbitBall& b : classes) {
    if (std::abs(b.ball.size - 1.0) <= 1e-9) b.ball.size = 1.0;
  }
  out.classes = classes;

  // The cusp stabilizer is the translations together with f times them, so
  // its orbits on translation classes are the pairs {x, f(x)}.
  auto class_of = [&](Complex z) -> int {
    for (std::size_t i = 0; i < out.classes.size(); ++i) {
      if (min_coset_norm(out.lattice, z - out.classes[i].ball.center.z) <= 1e-7) return static_cast<int>(i);
    }
    return -1;
  };
  const int c0 = class_of(0.0);
  const int cw2 = class_of(omega() * omega());
  require(c0 >= 0 && cw2 >= 0, "balls at 0 and omega^2 were not found");
  int next_label = 2;
  for (std::size_t i = 0; i < out.classes.size(); ++i) {
    if (out.classes[i].orbit >= 0) continue;
    const BoundaryPoint image = cusp.f.apply(BoundaryPoint::finite(out.classes[i].ball.center.z));
    const int j = class_of(image.z);
    require(j >= 0, "cusp stabilizer image of a ball is missing");
    int label = next_label;
    if (static_cast<int>(i) == c0 || j == c0) label = 0;
    else if (static_cast<int>(i) == cw2 || j == cw2) label = 1;
    else ++next_label;
    out.classes[i].orbit = label;
    out.classes[static_cast<std::size_t>(j)].orbit = label;
  }
  require(out.classes[static_cast<std::size_t>(c0)].orbit != out.classes[static_cast<std::size_t>(cw2)].orbit,
          "the balls at 0 and omega^2 must lie in different orbits");
  return out;
}

InradiusCertificate inradius_certificate(double min_diameter, double window, int threads) {
  const HoroballOrbit orbit = horoball_orbit(min_diameter, threads);
  const Horoball top = Horoball::at_infinity(1.0);
  std::vector<Horoball> balls;
  for (const OrbitBall& b : orbit.balls_near(0.0, window)) balls.push_back(b.ball);

  std::vector<H3Point> tangencies;
  for (const Horoball& b : balls) {
    if (are_tangent(top, b)) tangencies.push_back(tangency_point(top, b));
  }
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      if (are_tangent(balls[i], balls[j])) tangencies.push_back(tangency_point(balls[i], balls[j]));
    }
  }

  InradiusCertificate cert;
  cert.base = H3Point(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (const H3Point& p : tangencies) {
    const double d = dist_h3(cert.base, p);
    if (d < 1e-9) continue;
    best = std::min(best, d);
  }
  require(std::isfinite(best), "no tangency point besides the base point");
  cert.radius = best / 2.0;

  // Every lift within this ball must have been enumerated: its height is at
  // least exp(-rho) and its horizontal offset at most sinh(rho).
  const double rho = best * (1.0 + 1e-6) + 1e-6;
  cert.certified_radius = rho;
  require(min_diameter <= std::exp(-rho), "minimum diameter too large for the certified ball");
  require(window >= std::sinh(rho) + 1.0, "window too small for the certified ball");

  // Orbit check: each lift in the ball is an image of the base point.
  std::vector<H3Point> images;
  std::mutex mutex;
  WordSearchOptions opts;
  opts.max_length = 8;
  opts.threads = threads;
  images.push_back(cert.base);
  for_each_word(opts, [&](const std::string&, const Isometry& g) {
    const H3Point p = g.apply(cert.base);
    if (dist_h3(cert.base, p) <= rho + 0.5) {
      std::lock_guard<std::mutex> lock(mutex);
      images.push_back(p);
    }
  });

  std::vector<H3Point> inside;
  for (const H3Point& p : tangencies) {
    const double d = dist_h3(cert.base, p);
    if (d > rho) continue;
    bool in_orbit = false;
    for (const H3Point& q : images) {
      if (dist_h3(p, q) <= 1e-8) {
        in_orbit = true;
        break;
      }
    }
    require(in_orbit, "tangency point outside the orbit of the base point");
    inside.push_back(p);
  }
  cert.lifts = inside.size();

  // Witness: among the nearest lifts, highest first, then smallest argument.
  std::vector<H3Point> nearest;
  for (const H3Point& p : inside) {
    const double d = dist_h3(cert.base, p);
    if (d > 1e-9 && std::abs(d - best) <= 1e-9) nearest.push_back(p);
  }
  cert.nearest = nearest.size();
  auto angle = [](Complex z) {
    const double a = std::atan2(std::abs(z.imag()) < 1e-12 ? 0.0 : z.imag(), z.real());
    return a < 0.0 ? a + 2.0 * kPi : a;
  };
  std::sort(nearest.begin(), nearest.end(), [&](const H3Point& a, const H3Point& b) {
    if (std::abs(a.t - b.t) > 1e-9) return a.t > b.t;
    return angle(a.z) < angle(b.z);
  });
  cert.witness = nearest.front();

  const InradiusWitness check = tangency_orbit_injectivity(inside);
  require(std::abs(check.radius - cert.radius) <= 1e-12, "pairwise minimum disagrees with the base minimum");
  return cert;
}

namespace {

H3Point foot_on_vertical_plane(const H3Point& v, Complex p, Complex q) {
  const Complex dir = q - p;
  const Complex foot = p + (((v.z - p) * std::conj(dir)).real() / std::norm(dir)) * dir;
  return H3Point(foot, std::sqrt(std::norm(v.z - foot) + v.t * v.t));
}

double min_pairwise(const std::vector<H3Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, dist_h3(pts[i], pts[j]));
  }
  return best;
}

double common_distance(const H3Point& from, const std::vector<H3Point>& pts, const char* what) {
  const double d0 = dist_h3(from, pts.front());
  for (const H3Point& p : pts) {
    if (std::abs(dist_h3(from, p) - d0) > 1e-8) {
      throw Error(ErrorCode::ConstructionMismatch, std::string(what) + " are not equidistant");
    }
  }
  return d0;
}

}  // namespace

PolyhedronMetrics polyhedron_metrics() {
  const Complex w = omega();
  const Complex centroid = (1.0 + w) / 3.0;
  PolyhedronMetrics m;
  m.inball_center = H3Point(centroid, std::sqrt(2.0 / 3.0));

  // Feet of the perpendiculars to the four faces of the ideal simplex (0, 1, omega, oo).
  m.face_feet = {foot_on_vertical_plane(m.inball_center, 0.0, 1.0),
                 foot_on_vertical_plane(m.inball_center, 1.0, w),
                 foot_on_vertical_plane(m.inball_center, w, 0.0), H3Point(centroid, 1.0 / std::sqrt(3.0))};
  m.inball_radius = common_distance(m.inball_center, m.face_feet, "face feet");

  // Tangency points of the four horoballs, one per edge.
  const H3Point e01(0.5, 0.5), e0w(w / 2.0, 0.5), e1w((1.0 + w) / 2.0, 0.5);
  const H3Point e0i(0.0, 1.0), e1i(1.0, 1.0), ewi(w, 1.0);
  const std::array<std::array<H3Point, 3>, 4> faces{{{e01, e0w, e1w}, {e01, e0i, e1i}, {e0w, e0i, ewi}, {e1w, e1i, ewi}}};
  for (const auto& face : faces) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) m.s_vertices.push_back(midpoint_h3(face[i], face[j]));
    }
  }
  m.s_vertex_distance = common_distance(m.inball_center, m.s_vertices, "S vertices");
  m.s_edge = min_pairwise(m.s_vertices);

  // Midpoints between (0, 1) and its twelve nearest tangency points.
  const H3Point base(0.0, 1.0);
  for (int k = 0; k < 6; ++k) {
    const Complex x = std::polar(1.0, k * kPi / 3.0);
    m.t_vertices.push_back(midpoint_h3(base, H3Point(x, 1.0)));
    m.t_vertices.push_back(midpoint_h3(base, H3Point(x / 2.0, 0.5)));
  }
  m.t_vertex_distance = common_distance(base, m.t_vertices, "T vertices");
  m.t_edge = min_pairwise(m.t_vertices);
  return m;
}

NormalFormCheck normal_form_check(const Isometry& gamma, double h) {
  const BoundaryPoint image_of_zero = gamma.apply(BoundaryPoint::finite(0.0));
  if (!image_of_zero.infinite) throw Error(ErrorCode::InvalidArgument, "element must send 0 to oo");
  const Horoball image = image_horoball(gamma, Horoball::finite(0.0, h));
  if (std::abs(image.size - h) > 1e-9 * std::max(1.0, h)) {
    throw Error(ErrorCode::InvalidArgument, "element must send the ball at 0 onto {t > h}");
  }
  NormalFormCheck out;
  out.h = h;
  const Complex c = gamma.c();
  // The matrix is [[c b, -1/c], [c, 0]] up to sign; fold theta into (-pi/2, pi/2].
  Complex cc = c;
  if (cc.real() < 0.0 || (cc.real() == 0.0 && cc.imag() < 0.0)) cc = -cc;
  out.theta = std::arg(cc);
  out.b = gamma.a() / c;
  out.cos_theta = std::cos(out.theta);
  out.trace_of_square = gamma.trace_of_square();
  out.trace_of_square_formula = std::norm(out.b) / (h * h) - 2.0 * std::cos(2.0 * out.theta);
  const ClassificationReport report = classify(gamma);
  out.parabolic_negative = gamma.is_negative() && report.kind == IsometryKind::parabolic;
  if (out.parabolic_negative) {
    out.fixed_point = report.fixed_points.front().z;
    out.closed_form_fixed_point = normal_form_parabolic_fixed_point(out.b, out.theta);
  }
  return out;
}

}  // namespace cuspkit
