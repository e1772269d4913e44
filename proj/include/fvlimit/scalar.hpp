#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fvlimit/gradient.hpp"
#include "fvlimit/limiters.hpp"
#include "fvlimit/mesh.hpp"

namespace fvlimit {

// Scalar linear advection q_t + div(a q) = 0 with upwind fluxes, forward
// Euler and the same nodal-average / Green-Gauss reconstruction as the Euler
// solver. Used to check the max/min principle of the MLP conditions.
enum class ScalarCondition { Mlp, Weak, Strict };

[[nodiscard]] std::string to_string(ScalarCondition c);
[[nodiscard]] ScalarCondition scalar_condition_from_string(const std::string& name);

class ScalarAdvection {
 public:
  explicit ScalarAdvection(const Mesh& mesh);

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const Stencils& stencils() const { return stencils_; }

  // Largest dt with dt L_i max_k|a.n_k| / |Omega_i| <= 1/N_f for every cell
  // (N_f faces, L_i perimeter). Infinite for a = 0.
  [[nodiscard]] double max_stable_dt(const Vector2d& a) const;

  // Throws CFLViolation when dt exceeds max_stable_dt(a) (relative slack 1e-12).
  void check_cfl(const Vector2d& a, double dt) const;

  // One limited forward-Euler step. Inflow faces see the cell value outside.
  void step(ScalarField& q, const Vector2d& a, ScalarCondition condition, double dt, bool enforce_cfl = true);

  [[nodiscard]] const ScalarField& last_limits() const { return phi_; }

 private:
  const Mesh* mesh_;
  Stencils stencils_;
  NodalWeights weights_;
  ScalarField vertex_values_;
  GradientField<1> grad_;
  CellBounds<1> bounds_;
  ScalarField phi_;
  ScalarField flux_sum_;
};

// Cells where `after` leaves [min, max] of `before` over the vertex
// neighbourhood (cell included) by more than `slack`.
[[nodiscard]] std::vector<Index> check_max_min_principle(const Mesh& mesh, const Stencils& stencils,
                                                         const ScalarField& before, const ScalarField& after,
                                                         double slack = 1e-12);

struct ScalarVerifyOptions {
  int meshes = 3;
  Index grid_points = 33;  // per direction; 2 (n-1)^2 triangles
  std::int64_t steps = 1000;
  double cfl_fraction = 0.95;  // of max_stable_dt
  double violation_factor = 4.0;
  std::int64_t violation_steps = 50;
  std::uint64_t seed = 20240611;
  std::vector<ScalarCondition> conditions{ScalarCondition::Weak, ScalarCondition::Strict};
};

struct ScalarVerifyRun {
  int mesh = 0;
  Index cells = 0;
  ScalarCondition condition = ScalarCondition::Weak;
  std::int64_t steps = 0;
  std::int64_t violations = 0;  // cell-steps outside the bound
  double worst_excess = 0.0;
};

struct ScalarVerifyReport {
  std::vector<ScalarVerifyRun> runs;
  // Same setup with dt scaled by violation_factor beyond the bound (monitored only).
  std::int64_t oversized_step_violations = 0;

  [[nodiscard]] bool passed() const;
};

[[nodiscard]] ScalarVerifyReport run_scalar_verification(const ScalarVerifyOptions& options);

}  // namespace fvlimit
