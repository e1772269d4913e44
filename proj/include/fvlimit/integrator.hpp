#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "fvlimit/flux.hpp"
#include "fvlimit/gradient.hpp"
#include "fvlimit/limiters.hpp"
#include "fvlimit/mesh.hpp"

namespace fvlimit {

enum class TimeMode { Unsteady, Steady };

struct RunConfig {
  double cfl = 0.2;
  TimeMode mode = TimeMode::Unsteady;
  double t_end = 0.2;            // unsteady
  std::int64_t max_iters = 10000;  // steady
  double residual_drop = 1e-3;   // steady: stop when normalised residual <= this
  std::vector<double> stages{0.25, 1.0 / 3.0, 0.5, 1.0};
  FluxScheme flux = FluxScheme::Hllc;
  LimiterSpec limiter{};
  Gas gas{};
  bool first_order = false;  // reconstruct with cell values only
  // A cell whose limited reconstruction is non-physical at any face centre
  // falls back to first order (phi = 0) for that stage. When off, such a
  // state raises NonPhysicalState.
  bool positivity_fallback = true;

  // Throws std::invalid_argument on cfl <= 0 or non-increasing stage coefficients.
  void validate() const;
};

struct ResidualHistory {
  std::vector<std::int64_t> iteration;
  std::vector<double> residual;  // L2 density residual / first-iteration value
  std::vector<double> wall_time;

  void write(const std::filesystem::path& path) const;
};

// Delta t_i = cfl |Omega_i| / sum_k (|V_n| + c)_i S_k, from the cell state.
void compute_time_steps(const Mesh& mesh, const StateField& q, double cfl, const Gas& gas, Eigen::VectorXd& dt);

[[nodiscard]] StateField uniform_state(const Mesh& mesh, const PrimitiveState& w, const Gas& gas);

class Solver {
 public:
  Solver(const Mesh& mesh, RunConfig config);

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const Stencils& stencils() const { return stencils_; }
  [[nodiscard]] const NodalWeights& weights() const { return weights_; }
  [[nodiscard]] const RunConfig& config() const { return config_; }
  [[nodiscard]] RunConfig& config() { return config_; }

  // R_i = -sum_k F_k S_k per cell (not divided by area). Also refreshes the
  // gradients and limiter values returned by the accessors below.
  void assemble_residual(const StateField& q, StateField& residual);

  [[nodiscard]] const GradientField<4>& gradients() const { return gradients_; }
  [[nodiscard]] const LimitField& limits() const { return limits_; }
  // Sum of boundary fluxes times face length from the last assembly.
  [[nodiscard]] const Vector4d& boundary_flux() const { return boundary_flux_; }

  // Local steps for Steady mode, the global minimum everywhere otherwise.
  void time_steps(const StateField& q, Eigen::VectorXd& dt) const;

  // One multi-stage step with per-cell dt. Returns the L2 norm of the density
  // residual (per unit area) at the first stage.
  double rk_step(StateField& q, const Eigen::VectorXd& dt);

  using StepObserver = std::function<void(std::int64_t step, double time, const StateField& q)>;

  // Advances to config().t_end, clipping the last step. Returns the step count.
  std::int64_t run_unsteady(StateField& q, const StepObserver& observer = {});
  ResidualHistory run_steady(StateField& q);

  [[nodiscard]] std::int64_t step() const { return step_; }
  // Cell-stages that used the positivity fallback since construction.
  [[nodiscard]] std::int64_t fallback_count() const { return fallback_count_; }

 private:
  void check_physical(const StateField& q);

  const Mesh* mesh_;
  RunConfig config_;
  Stencils stencils_;
  NodalWeights weights_;

  std::vector<PrimitiveState> primitive_;
  StateField vertex_values_;
  GradientField<4> gradients_;
  LimitField limits_;
  LimiterWorkspace limiter_ws_;
  Vector4d boundary_flux_ = Vector4d::Zero();

  StateField q0_;
  StateField residual_;
  std::int64_t step_ = 0;
  std::int64_t fallback_count_ = 0;
};

}  // namespace fvlimit
