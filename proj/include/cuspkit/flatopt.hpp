#pragma once

// Two-disk packings on flat tori and Klein bottles: the scale-invariant
// objective h sqrt(4h^2 + d^2) / area, a multi-start optimizer, randomized
// falsification search and the band-removal expansion check.

#include <cstdint>
#include <string>
#include <vector>

#include "cuspkit/euclat.hpp"

namespace cuspkit {

struct PackingConfig {
  FlatSurface surface;
  Complex c1;
  Complex c2;
  double h = 0.0;
};

struct ObjectiveValue {
  double value = 0.0;
  double center_distance = 0.0;
  double area = 0.0;
};

/// InvalidConfig unless two_disk_config_valid holds.
ObjectiveValue objective(const PackingConfig& cfg, double tol = kDefaultTolerance);

/// Largest h for which the two disks embed and are disjoint.
double max_feasible_height(const FlatSurface& surface, Complex c1, Complex c2);

/// Area of the two disks over the area of the surface.
double two_disk_density(const PackingConfig& cfg);

enum class SurfaceFamily { torus, klein };

struct OptimizeOptions {
  SurfaceFamily family = SurfaceFamily::torus;
  int restarts = 64;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: use worker_count()
};

struct OptimizeResult {
  PackingConfig best;
  double objective = 0.0;
  double d_over_h = 0.0;
  int best_restart = -1;
  std::vector<double> restart_objectives;
};

/// Deterministic for a given seed regardless of the thread count.
OptimizeResult optimize(const OptimizeOptions& options);

/// Torus configurations only: how far the union of the two center orbits is
/// from a hexagonal lattice (0 for the exact hexagonal arrangement).
double hexagonal_deviation(const PackingConfig& cfg);

struct SearchSummary {
  std::uint64_t samples = 0;
  std::uint64_t valid = 0;
  double max_objective = 0.0;
  double max_density = 0.0;
  PackingConfig argmax;
};

/// Random valid configurations drawn from both families (alternating), with h
/// between 0 and the feasible maximum.
SearchSummary random_search(std::uint64_t samples, std::uint64_t seed, int threads = 0);

/// Torus with lattice (a, 0), (s, b), first center at 0, second at c2.
struct SurgeryInput {
  double a = 1.0;
  double b = 1.0;
  double s = 0.0;
  Complex c2;
  double h = 0.0;
};

struct SurgeryPoint {
  double epsilon = 0.0;
  double ratio = 0.0;      // objective after / before
  double predicted = 0.0;  // 1 + eps/b - v eps/(4h^2+d^2)
  double remainder = 0.0;  // |ratio - predicted| / eps^2
};

struct SurgeryReport {
  double center_distance = 0.0;
  double vertical_offset = 0.0;  // v: vertical part of the minimizing segment crossing the band
  double band_height = 0.0;
  double objective = 0.0;
  double predicted_slope = 0.0;  // 1/b - v/(4h^2+d^2)
  double finite_difference_slope = 0.0;
  double relative_error = 0.0;
  double max_remainder = 0.0;
  std::vector<SurgeryPoint> points;
};

/// Objective after removing a horizontal band of width eps at band_height
/// (negative eps inserts a band).
double surgery_objective(const SurgeryInput& in, double band_height, double eps);

/// Empty string when the configuration meets every requirement of the check,
/// otherwise the reason.
std::string surgery_inadmissible_reason(const SurgeryInput& in);

/// Throws BandIntersectsCriticalSet when h equals the systole along a loop
/// crossing the band or when the band meets a center's horizontal line;
/// InvalidConfig when the configuration is otherwise inadmissible.  A
/// negative band_height selects the default (midway between the centers).
SurgeryReport surgery_expansion_check(const SurgeryInput& in, const std::vector<double>& epsilons,
                                      double fd_step = 1e-4, double band_height = -1.0);

}  // namespace cuspkit
