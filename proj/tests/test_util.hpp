#pragma once

#include <random>

#include "fvlimit/mesh.hpp"

namespace fvlimit::fixtures {

inline Mesh random_mesh(Index n, std::uint64_t seed, PatchKind kind = PatchKind::Outflow, double jitter = 0.3) {
  RectMeshSpec spec;
  spec.nx = n;
  spec.ny = n;
  spec.pattern = DiagonalPattern::Random;
  spec.jitter = jitter;
  spec.seed = seed;
  for (auto& side : spec.sides) side = {side.tag, kind, {1.0, 0.5, 0.2, 1.0}};
  return generate_rect_tri_mesh(spec);
}

inline PrimitiveState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::uniform_real_distribution<double> vel(-3.0, 3.0);
  return {pos(rng), vel(rng), vel(rng), pos(rng)};
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace fvlimit::fixtures
