#include "cuspkit/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cuspkit/bounds.hpp"
#include "cuspkit/densities.hpp"
#include "cuspkit/flatopt.hpp"
#include "cuspkit/gieseking.hpp"
#include "cuspkit/horoball.hpp"
#include "cuspkit/report.hpp"

namespace cuspkit::cli {

namespace {

struct Settings {
  std::string format = "json";
  bool json = false;
  std::string output;
  double tolerance = kDefaultTolerance;
  int threads = 0;
};

struct Output {
  std::vector<Json> rows;
  bool all_verified = true;

  void add(const Json& row) {
    if (row.contains("verified") && !row["verified"].get<bool>()) all_verified = false;
    rows.push_back(row);
  }
  void add(const BoundReport& r) { add(to_json(r)); }
};

Json certificate(const std::string& claim, const std::string& source, double lhs, double rhs,
                 const std::string& relation, double tol, Json witness) {
  BoundReport r = make_report(claim, source, lhs, rhs, relation, tol);
  Json j = to_json(r);
  j["witness"] = std::move(witness);
  return j;
}

Json point_json(const H3Point& p) { return Json::array({p.z.real(), p.z.imag(), p.t}); }

double systole_closed_form() { return 2.0 * std::acosh((1.0 + std::sqrt(13.0)) / 4.0); }

// --- constants -------------------------------------------------------------

void constants(int max_dim, Output& out) {
  if (max_dim < 3) throw Error(ErrorCode::InvalidArgument, "--max-dim must be at least 3");
  for (int n = 3; n <= max_dim; ++n) {
    Json row;
    row["n"] = n;
    row["dInfClosedNumerator"] = d_inf_numerator_closed(n);
    row["dInfAsymptotic"] = d_inf_asymptotic(n);
    row["cN"] = systole_coefficient(n, 1).value;
    out.add(row);
  }
}

// --- gieseking -------------------------------------------------------------

struct SystoleResult {
  SpectrumEntry shortest;
  std::size_t entries = 0;
};

SystoleResult systole(int depth, int threads) {
  WordSearchOptions opts;
  opts.max_length = depth;
  opts.threads = threads;
  const auto spectrum = length_spectrum(opts);
  if (spectrum.empty()) throw Error(ErrorCode::ConstructionMismatch, "no loxodromic word found");
  return {spectrum.front(), spectrum.size()};
}

void gieseking_systole(int depth, double tol, int threads, Output& out) {
  const SystoleResult s = systole(depth, threads);
  Json w;
  w["word"] = s.shortest.word;
  w["orientation"] = static_cast<int>(s.shortest.orientation);
  w["depth"] = depth;
  w["distinctLengths"] = s.entries;
  out.add(certificate("Gieseking systole equals 2 arccosh((1+sqrt13)/4)", "explicit Gieseking group",
                      s.shortest.length, systole_closed_form(), "==", tol, w));
  out.add(certificate("Gieseking systole agrees with the SnapPea value 1.087", "SnapPea approximation",
                      s.shortest.length, 1.087, "==", 1e-3, w));
}

void gieseking_spectrum(int depth, int limit, int threads, Output& out) {
  WordSearchOptions opts;
  opts.max_length = depth;
  opts.threads = threads;
  const auto spectrum = length_spectrum(opts);
  int k = 0;
  for (const SpectrumEntry& e : spectrum) {
    if (limit > 0 && k++ >= limit) break;
    Json row;
    row["length"] = e.length;
    row["orientation"] = static_cast<int>(e.orientation);
    row["word"] = e.word;
    out.add(row);
  }
}

void gieseking_cusp(double tol, Output& out) {
  const CuspGroupReport c = cusp_group();
  Json w;
  w["fTranslation"] = to_json(c.f_glide.translation);
  w["fAxisIntercept"] = c.f_glide.real_intercept.value_or(NAN);
  w["fPrimeTranslation"] = to_json(c.f_prime_glide.translation);
  w["fPrimeAxisIntercept"] = c.f_prime_glide.real_intercept.value_or(NAN);
  w["latticeBasis"] = Json::array({to_json(c.lattice.b1), to_json(c.lattice.b2)});
  w["alphaShift"] = c.klein.alpha_shift;
  w["betaShift"] = c.klein.beta_shift;
  w["index"] = c.index;
  out.add(certificate("cusp group covolume equals sqrt3", "Gieseking cusp stabilizer", c.covol_group,
                      std::sqrt(3.0), "==", tol, w));
  out.add(certificate("translation lattice covolume equals 2 sqrt3", "Gieseking cusp stabilizer",
                      c.covol_lattice, 2.0 * std::sqrt(3.0), "==", tol, Json::object()));
  CuspVolumeInput in{c.covol_group, c.covol_lattice, c.index, 1.0, 3};
  const VolumeLowerBound vb = volume_lower_bound(in);
  out.add(certificate("cusp volume equals sqrt3/2", "cusp volume formula", vb.cusp_volume, std::sqrt(3.0) / 2.0,
                      "==", tol, Json::object()));
  out.add(certificate("cusp density equals d3", "simplicial horoball density", vb.cusp_volume / nu3(),
                      d_inf_closed(3), "==", 1e-6, Json::object()));
  out.add(certificate("volume lower bound equals nu3", "density volume bound", vb.bound, nu3(), "==", tol,
                      Json::object()));
}

void gieseking_inradius(double min_diameter, double window, double tol, int threads, Output& out) {
  const InradiusCertificate c = inradius_certificate(min_diameter, window, threads);
  Json w;
  w["base"] = point_json(c.base);
  w["witness"] = point_json(c.witness);
  w["liftsInBall"] = c.lifts;
  w["nearestLifts"] = c.nearest;
  w["certifiedRadius"] = c.certified_radius;
  out.add(certificate("Gieseking inradius equals arccosh(sqrt5/2)", "tangency orbit certificate", c.radius,
                      std::acosh(std::sqrt(5.0) / 2.0), "==", tol, w));
  out.add(inradius_bound(c.radius));
  const PolyhedronMetrics pm = polyhedron_metrics();
  out.add(certificate("simplex in-ball radius is below the inradius", "ideal simplex in-ball",
                      pm.inball_radius, c.radius, "<=", tol, Json::object()));
}

void gieseking_polyhedra(double tol, Output& out) {
  const PolyhedronMetrics m = polyhedron_metrics();
  out.add(certificate("simplex in-ball radius equals arccosh(3/(2 sqrt2))", "ideal simplex in-ball",
                      m.inball_radius, std::acosh(3.0 / (2.0 * std::sqrt(2.0))), "==", tol,
                      Json{{"center", point_json(m.inball_center)}}));
  out.add(certificate("S vertices at distance arccosh(sqrt(6/5))", "polyhedron S", m.s_vertex_distance,
                      std::acosh(std::sqrt(1.2)), "==", tol, Json{{"vertices", m.s_vertices.size()}}));
  out.add(certificate("T vertices at distance arccosh(sqrt5/2)", "polyhedron T", m.t_vertex_distance,
                      std::acosh(std::sqrt(5.0) / 2.0), "==", tol, Json{{"vertices", m.t_vertices.size()}}));
  out.add(certificate("S edges of length arccosh(11/10)", "polyhedron S", m.s_edge, std::acosh(1.1), "==", tol,
                      Json::object()));
  out.add(certificate("T edges of length arccosh(11/10)", "polyhedron T", m.t_edge, std::acosh(1.1), "==", tol,
                      Json::object()));
}

// --- flatpack --------------------------------------------------------------

Json surface_json(const FlatSurface& s) {
  Json j;
  if (s.kind == FlatSurface::Kind::torus) {
    j["kind"] = "torus";
    j["b1"] = to_json(s.lattice.b1);
    j["b2"] = to_json(s.lattice.b2);
  } else {
    j["kind"] = "klein";
    j["axis"] = to_json(s.klein.axis);
    j["alphaShift"] = s.klein.alpha_shift;
    j["betaShift"] = s.klein.beta_shift;
  }
  return j;
}

Json config_json(const PackingConfig& cfg) {
  Json j;
  j["surface"] = surface_json(cfg.surface);
  j["c1"] = to_json(cfg.c1);
  j["c2"] = to_json(cfg.c2);
  j["h"] = cfg.h;
  return j;
}

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidArgument, "points are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

PackingConfig config_from(const Json& j) {
  PackingConfig cfg;
  const Json& s = j.at("surface");
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "torus") {
    cfg.surface = FlatSurface::torus(Lattice2(complex_from(s.at("b1")), complex_from(s.at("b2"))));
  } else if (kind == "klein") {
    const Complex axis = s.contains("axis") ? complex_from(s.at("axis")) : Complex(1.0, 0.0);
    cfg.surface = FlatSurface::klein_bottle(
        KleinGroup(axis, s.at("alphaShift").get<double>(), s.at("betaShift").get<double>()));
  } else {
    throw Error(ErrorCode::InvalidArgument, "surface kind must be torus or klein");
  }
  cfg.c1 = complex_from(j.at("c1"));
  cfg.c2 = complex_from(j.at("c2"));
  cfg.h = j.at("h").get<double>();
  return cfg;
}

const double kFlatBound = std::sqrt(5.0) / std::sqrt(3.0);

void flatpack_optimize(const std::string& family, int restarts, std::uint64_t seed, double tol, int threads,
                       Output& out) {
  OptimizeOptions o;
  if (family == "torus") {
    o.family = SurfaceFamily::torus;
  } else if (family == "klein") {
    o.family = SurfaceFamily::klein;
  } else {
    throw Error(ErrorCode::InvalidArgument, "--family must be torus or klein");
  }
  o.restarts = restarts;
  o.seed = seed;
  o.threads = threads;
  const OptimizeResult r = optimize(o);
  Json w;
  w["config"] = config_json(r.best);
  w["dOverH"] = r.d_over_h;
  w["bestRestart"] = r.best_restart;
  w["density"] = two_disk_density(r.best);
  if (o.family == SurfaceFamily::torus) w["hexagonalDeviation"] = hexagonal_deviation(r.best);
  out.add(certificate(family + " two-disk objective stays below sqrt5/sqrt3", "flat surface proposition",
                      r.objective, kFlatBound, "<=", tol, w));
  if (o.family == SurfaceFamily::torus) {
    out.add(certificate("torus optimizer reaches sqrt5/sqrt3", "flat surface equality case", r.objective,
                        kFlatBound, "==", 1e-4, Json::object()));
  }
}

void flatpack_check(const std::string& path, double tol, Output& out) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config is not valid JSON: ") + e.what());
  }
  const PackingConfig cfg = config_from(j);
  const TwoDiskCheck check = two_disk_config_valid(cfg.surface, cfg.c1, cfg.c2, cfg.h, tol);
  Json row;
  row["claim"] = "two-disk configuration";
  row["valid"] = check.valid;
  row["centerDistance"] = check.center_distance;
  row["injectivityRadius1"] = check.injectivity1;
  row["injectivityRadius2"] = check.injectivity2;
  row["area"] = cfg.surface.area();
  if (check.valid) {
    const ObjectiveValue v = objective(cfg, tol);
    row["objective"] = v.value;
    row["density"] = two_disk_density(cfg);
    row["verified"] = v.value <= kFlatBound + tol;
  } else {
    row["verified"] = false;
  }
  out.add(row);
}

// --- bounds ----------------------------------------------------------------

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& raw : items) {
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "parameters are key=value: " + item);
      try {
        std::size_t used = 0;
        const std::string value = item.substr(eq + 1);
        out[item.substr(0, eq)] = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "not a number: " + item);
      }
    }
  }
  return out;
}

double param(const std::map<std::string, double>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw Error(ErrorCode::InvalidArgument, "missing parameter " + key);
  return it->second;
}

void bounds_dim3(const std::string& which, const std::vector<std::string>& raw, int threads, Output& out) {
  const auto p = parse_params(raw);
  if (which == "loxodromic") {
    const double h = param(p, "h"), b = param(p, "b");
    if (p.count("length")) out.add(loxodromic_case_bound(h, b, p.at("length")));
    if (p.count("covol")) out.add(loxodromic_ratio_bound(h, b, p.at("covol")));
    if (!p.count("length") && !p.count("covol")) {
      Json row;
      row["claim"] = "loxodromic cosh(l/2) bound";
      row["rhs"] = loxodromic_cosh_bound(h, b);
      out.add(row);
    }
  } else if (which == "para-pos") {
    out.add(parabolic_positive_case(param(p, "h")));
  } else if (which == "para-neg") {
    if (p.count("h")) {
      const double h = p.at("h");
      if (p.count("several")) {
        out.add(parabolic_negative_multi_cusp(h));
      } else {
        out.add(parabolic_negative_case(h));
      }
      if (p.count("d") && p.count("theta")) {
        const ConstraintChain c = parabolic_negative_constraints(h, p.at("d"), p.at("theta"));
        Json row;
        row["claim"] = "parabolic negative constraint chain";
        row["bAbs"] = c.b_abs;
        Json checks = Json::object();
        for (const auto& [name, ok] : c.checks) checks[name] = ok;
        row["checks"] = checks;
        row["verified"] = c.ok;
        out.add(row);
      }
    } else {
      const MajorantScan s = scan_parabolic_negative(static_cast<std::size_t>(p.count("points") ? p.at("points") : 10001),
                                                     threads);
      Json w;
      w["argmax"] = s.argmax;
      w["points"] = s.points;
      w["step"] = s.step;
      w["valueAtHalf"] = s.value_at_half;
      w["valueAtOne"] = s.value_at_one;
      out.add(certificate("parabolic negative majorant stays below sqrt5/2", "parabolic negative majorant",
                          s.max_value, std::sqrt(5.0) / 2.0, "<=", kDefaultTolerance, w));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "--case must be loxodromic, para-pos or para-neg");
  }
}

void bounds_dimn(int n, int ic, double lhs, Output& out) {
  if (std::isnan(lhs)) {
    const SystoleCoefficient c = systole_coefficient(n, ic);
    Json row;
    row["n"] = n;
    row["iC"] = ic;
    row["coefficient"] = c.value;
    row["normalized"] = c.normalized;
    row["hermite"] = c.hermite;
    row["hermiteTabulated"] = c.hermite_tabulated;
    row["indexBound"] = index_bound(n);
    out.add(row);
  } else {
    out.add(dim_n_theorem(n, ic, lhs));
  }
}

// --- verify all ------------------------------------------------------------

void verify_all(int depth, int restarts, std::uint64_t seed, double tol, int threads, Output& out) {
  // Systole and the equality case of the systole theorem.
  const SystoleResult s = systole(depth, threads);
  gieseking_systole(depth, tol, threads, out);
  const double vol_simplicial = nu3() / nu3();
  out.add(certificate("systole theorem equality: cosh(sys/2)/vol equals (1+sqrt13)/4",
                      "systole theorem equality case", std::cosh(s.shortest.length / 2.0) / vol_simplicial,
                      (1.0 + std::sqrt(13.0)) / 4.0, "==", tol, Json{{"simplicialVolume", vol_simplicial}}));

  // Inradius.
  gieseking_inradius(0.3, 3.0, tol, threads, out);
  const InradiusCertificate ic = inradius_certificate(0.3, 3.0, threads);
  out.add(certificate("half systole exceeds the inradius", "Gieseking remark", ic.radius, s.shortest.length / 2.0,
                      "<=", tol, Json::object()));
  gieseking_polyhedra(tol, out);

  // Densities.
  out.add(certificate("nu3 equals 3 L(pi/3)", "Lobachevsky series", nu3(), 1.0149416064096536, "==", tol,
                      Json::object()));
  out.add(certificate("d3 equals sqrt3/(2 nu3)", "simplicial horoball density", d_inf_product(3),
                      std::sqrt(3.0) / (2.0 * nu3()), "==", 1e-12, Json::object()));
  double worst = 0.0;
  for (int n = 3; n <= 30; ++n) {
    const double a = d_inf_numerator_product(n), b = d_inf_numerator_closed(n);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  out.add(certificate("product and closed density forms agree for 3 <= n <= 30", "density simplification", worst,
                      0.0, "==", 1e-12, Json::object()));

  // Cusp.
  gieseking_cusp(tol, out);

  // Normal form of the parabolic negative elements sending B0 to B_oo.
  const Isometry g_inv = gieseking_g().inverse();
  const Isometry t_plus = Isometry::translation(omega());
  const Isometry t_minus = Isometry::translation(-omega());
  const std::vector<std::pair<std::string, Isometry>> candidates{{"g^-1 t_w", g_inv * t_plus},
                                                                 {"t_-w g^-1 t_w", t_minus * g_inv * t_plus}};
  for (const auto& [name, gamma] : candidates) {
    const NormalFormCheck nf = normal_form_check(gamma);
    Json w;
    w["element"] = name;
    w["parabolicNegative"] = nf.parabolic_negative;
    w["b"] = to_json(nf.b);
    w["theta"] = nf.theta;
    w["fixedPoint"] = to_json(nf.fixed_point);
    w["closedFormFixedPoint"] = to_json(nf.closed_form_fixed_point);
    const bool ok = nf.parabolic_negative && std::abs(nf.cos_theta) >= 0.5 - tol &&
                    std::abs(nf.fixed_point - nf.closed_form_fixed_point) <= 1e-9;
    Json row = certificate("normal form |b| = 2h|cos theta| (" + name + ")", "parabolic negative normal form",
                           std::abs(nf.b), 2.0 * nf.h * std::abs(nf.cos_theta), "==", tol, w);
    row["verified"] = row["verified"].get<bool>() && ok;
    out.add(row);
  }

  // Dimension-3 case bounds.
  const double cosh_half = std::cosh(s.shortest.length / 2.0);
  out.add(loxodromic_case_bound(1.0, std::sqrt(3.0), s.shortest.length));
  const double neg_length = 2.0 * std::acosh(std::sqrt(1.5));
  out.add(loxodromic_case_bound(1.0, std::sqrt(3.0), neg_length));
  out.add(loxodromic_ratio_bound(1.0, 1.0, std::sqrt(3.0)));
  for (const BoundReport& r : successive_minima_bound(1.0, 2.0 * std::sqrt(3.0), 1.0, cosh_half)) out.add(r);
  out.add(dim_n_theorem(3, 1, cosh_half));
  out.add(dim_n_theorem(3, 2, cosh_half));
  BoundReport dominates = make_report("dimension-3 coefficient dominates sqrt5/2", "systole theorem in dimension n",
                                      std::sqrt(5.0) / 2.0, systole_coefficient(3, 1).value);
  out.add(dominates);
  for (double h : {1.0, parabolic_positive_threshold(), 0.3}) out.add(parabolic_positive_case(h));
  const MajorantScan scan = scan_parabolic_negative(10001, threads);
  out.add(certificate("parabolic negative majorant maximum lies below sqrt5/2 - 0.03",
                      "parabolic negative majorant", scan.max_value, std::sqrt(5.0) / 2.0 - 0.03, "<=", tol,
                      Json{{"argmax", scan.argmax}, {"valueAtOne", scan.value_at_one}}));
  out.add(certificate("parabolic negative majorant at h = 1 equals 1.0821", "parabolic negative majorant",
                      scan.value_at_one, 1.0821, "==", 1e-3, Json::object()));
  out.add(certificate("parabolic negative majorant is maximal at h = 1", "parabolic negative majorant", scan.argmax,
                      1.0, "==", scan.step, Json::object()));
  for (double h : {0.2, 1.0 / (2.0 * std::sqrt(2.0)), 0.5, 1.0}) out.add(parabolic_negative_multi_cusp(h));

  // Flat packing.
  flatpack_optimize("torus", restarts, seed, tol, threads, out);
  flatpack_optimize("klein", restarts, seed, tol, threads, out);
  SurgeryInput in{3.0, 2.0, 0.0, Complex(1.2, 0.9), 1.0};
  const SurgeryReport sr = surgery_expansion_check(in, {1e-2, 1e-3, 1e-4});
  out.add(certificate("band surgery slope matches 1/b - v/(4h^2+d^2)", "d = h lemma expansion",
                      sr.finite_difference_slope, sr.predicted_slope, "==", 1e-4 * std::abs(sr.predicted_slope),
                      Json{{"maxRemainder", sr.max_remainder}, {"d", sr.center_distance}, {"v", sr.vertical_offset}}));
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ResourceLimit:
      return kExitResourceLimit;
    case ErrorCode::InvalidArgument:
    case ErrorCode::DomainError:
    case ErrorCode::PointOutOfRange:
    case ErrorCode::InvalidConfig:
      return kExitUsage;
    default:
      return kExitFailedCertificate;
  }
}

void emit(const Output& out, const Settings& settings, std::ostream& stream) {
  std::string text;
  const std::string format = settings.json ? "json" : settings.format;
  if (format == "json") {
    text = dump_json(Json(out.rows)) + "\n";
  } else if (format == "csv") {
    text = to_csv(out.rows);
  } else {
    text = to_text(out.rows);
  }
  if (settings.output.empty()) {
    stream << text;
    return;
  }
  std::ofstream file(settings.output, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + settings.output);
  file << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified computations for cusped hyperbolic manifolds and flat two-disk packings", "cuspkit"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option("--format", settings.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--json", settings.json, "Shorthand for --format json");
  app.add_option("-o,--output", settings.output, "Write the report to a file");
  app.add_option("--tolerance", settings.tolerance, "Certificate tolerance")->check(CLI::PositiveNumber);
  app.add_option("--threads", settings.threads, "Thread cap (default: CUSPKIT_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.fallthrough();

  int max_dim = 12;
  auto* cmd_constants = app.add_subcommand("constants", "Density and systole constants per dimension");
  cmd_constants->add_option("--max-dim", max_dim, "Largest dimension")->check(CLI::Range(3, 170));

  int depth = 10;
  int limit = 0;
  double min_diameter = 0.3;
  double window = 3.0;
  auto* cmd_gieseking = app.add_subcommand("gieseking", "Certificates for the Gieseking manifold");
  cmd_gieseking->require_subcommand(1);
  auto* g_systole = cmd_gieseking->add_subcommand("systole", "Shortest closed geodesic by word search");
  g_systole->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(1, 64));
  auto* g_spectrum = cmd_gieseking->add_subcommand("spectrum", "Length spectrum up to a word length");
  g_spectrum->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(1, 64));
  g_spectrum->add_option("--limit", limit, "Number of entries (0: all)")->check(CLI::NonNegativeNumber);
  auto* g_cusp = cmd_gieseking->add_subcommand("cusp", "Cusp stabilizer, covolume and cusp volume");
  auto* g_inradius = cmd_gieseking->add_subcommand("inradius", "Inradius from the tangency orbit");
  g_inradius->add_option("--min-diameter", min_diameter, "Smallest horoball diameter enumerated")
      ->check(CLI::Range(1e-6, 1.0));
  g_inradius->add_option("--window", window, "Horizontal enumeration radius")->check(CLI::PositiveNumber);
  auto* g_polyhedra = cmd_gieseking->add_subcommand("polyhedra", "Metric data of the polyhedra S and T");

  std::string family = "torus";
  int restarts = 64;
  std::uint64_t seed = 0;
  std::string config_path;
  auto* cmd_flat = app.add_subcommand("flatpack", "Two-disk packings on flat surfaces");
  cmd_flat->require_subcommand(1);
  auto* f_opt = cmd_flat->add_subcommand("optimize", "Multi-start search for the best packing");
  f_opt->add_option("--family", family, "torus or klein")->check(CLI::IsMember({"torus", "klein"}));
  f_opt->add_option("--restarts", restarts, "Number of restarts")->check(CLI::Range(1, 100000));
  f_opt->add_option("--seed", seed, "Random seed");
  auto* f_check = cmd_flat->add_subcommand("check", "Validate a configuration file");
  f_check->add_option("--config", config_path, "JSON configuration")->required();

  std::string bound_case;
  std::vector<std::string> params;
  int dim_n = 3;
  int cusp_index = 1;
  double lhs = NAN;
  auto* cmd_bounds = app.add_subcommand("bounds", "Evaluate the bound inequalities");
  cmd_bounds->require_subcommand(1);
  auto* b_dim3 = cmd_bounds->add_subcommand("dim3", "Dimension-3 case bounds");
  b_dim3->add_option("--case", bound_case, "loxodromic, para-pos or para-neg")
      ->required()
      ->check(CLI::IsMember({"loxodromic", "para-pos", "para-neg"}));
  b_dim3->add_option("--params", params, "key=value list (h, b, covol, length, d, theta, several, points)");
  auto* b_dimn = cmd_bounds->add_subcommand("dimn", "Dimension-n systole coefficient");
  b_dimn->add_option("--n", dim_n, "Dimension")->check(CLI::Range(3, 170));
  b_dimn->add_option("--ic", cusp_index, "Cusp index")->check(CLI::PositiveNumber);
  b_dimn->add_option("--lhs", lhs, "cosh(sys/2)/simplicial volume to test");

  auto* cmd_verify = app.add_subcommand("verify", "Run every certificate");
  cmd_verify->require_subcommand(1);
  auto* v_all = cmd_verify->add_subcommand("all", "All certificates");
  v_all->add_option("--depth", depth, "Word length for the systole search")->check(CLI::Range(1, 64));
  v_all->add_option("--restarts", restarts, "Optimizer restarts")->check(CLI::Range(1, 100000));
  v_all->add_option("--seed", seed, "Optimizer seed");

  for (CLI::App* sub : {cmd_constants, cmd_gieseking, g_systole, g_spectrum, g_cusp, g_inradius, g_polyhedra,
                        cmd_flat, f_opt, f_check, cmd_bounds, b_dim3, b_dimn, cmd_verify, v_all}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Output report;
  const double tol = settings.tolerance;
  const int threads = settings.threads;
  try {
    if (*cmd_constants) {
      constants(max_dim, report);
    } else if (*g_systole) {
      gieseking_systole(depth, tol, threads, report);
    } else if (*g_spectrum) {
      gieseking_spectrum(depth, limit, threads, report);
    } else if (*g_cusp) {
      gieseking_cusp(tol, report);
    } else if (*g_inradius) {
      gieseking_inradius(min_diameter, window, tol, threads, report);
    } else if (*g_polyhedra) {
      gieseking_polyhedra(tol, report);
    } else if (*f_opt) {
      flatpack_optimize(family, restarts, seed, tol, threads, report);
    } else if (*f_check) {
      flatpack_check(config_path, tol, report);
    } else if (*b_dim3) {
      bounds_dim3(bound_case, params, threads, report);
    } else if (*b_dimn) {
      bounds_dimn(dim_n, cusp_index, lhs, report);
    } else if (*v_all) {
      verify_all(depth, restarts, seed, tol, threads, report);
    }
    emit(report, settings, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed configuration: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!report.all_verified) {
    err << "error: at least one certificate failed\n";
    return kExitFailedCertificate;
  }
  return kExitOk;
}

}  // namespace cuspkit::cli
