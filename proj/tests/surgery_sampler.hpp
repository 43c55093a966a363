#pragma once

#include <random>

#include "cuspkit/flatopt.hpp"

// Random torus configurations accepted by surgery_inadmissible_reason.
inline cuspkit::SurgeryInput random_admissible_surgery(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    cuspkit::SurgeryInput in;
    in.a = 1.0 + 2.0 * u(rng);
    in.b = 1.0 + 2.0 * u(rng);
    in.s = in.a * (u(rng) - 0.5);
    in.c2 = {in.a * (u(rng) - 0.5), in.b * (0.02 + 0.96 * u(rng))};
    const double d = std::abs(in.c2);
    in.h = std::min(d, in.a) * (0.05 + 0.9 * u(rng));
    if (cuspkit::surgery_inadmissible_reason(in).empty()) return in;
  }
}
