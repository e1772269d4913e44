#pragma once

#include <cstdint>
#include <string>

#include "fvlimit/config.hpp"
#include "fvlimit/integrator.hpp"
#include "fvlimit/io.hpp"

namespace fvlimit {

[[nodiscard]] Mesh build_mesh(const CaseSettings& settings);
[[nodiscard]] StateField initial_state(const CaseSettings& settings, const Mesh& mesh);

// Left and right states of the shock-tube cases, split at x = 0.5.
[[nodiscard]] std::pair<PrimitiveState, PrimitiveState> riemann_states(CaseKind kind);

// Exact solution of a shock-tube case at (x, t).
[[nodiscard]] PrimitiveState exact_solution(CaseKind kind, double x, double t, const Gas& gas = {});

struct CaseResult {
  StateField q;  // final state, or the last complete step after a failure
  LimitField limits;
  ResidualHistory history;
  std::int64_t steps = 0;
  std::int64_t fallback_cells = 0;  // cell-stages reconstructed at first order for positivity
  double time = 0.0;
  double wall_seconds = 0.0;
  bool ok = true;
  std::string error;
  std::int64_t failed_cell = -1;
  std::int64_t failed_step = -1;
};

// Runs the case on `mesh`. NonPhysicalState is caught and reported in the result.
[[nodiscard]] CaseResult run_case(const CaseSettings& settings, const Mesh& mesh,
                                  const Solver::StepObserver& observer = {});

// Centerline cells of the shock-tube mesh: |y - mid| < dy.
[[nodiscard]] std::vector<CenterlineSample> case_centerline(const CaseSettings& settings, const Mesh& mesh);

// Mean absolute centerline error of `field` (rho or e) against the exact solution.
enum class CenterlineField { Density, InternalEnergy };
[[nodiscard]] double centerline_l1(const CaseSettings& settings, const Mesh& mesh, const StateField& q,
                                   CenterlineField field);

// Writes the resolved config, mesh, snapshots (VTK and CSV), centerline and
// residual history into settings.output. On failure a diagnostic snapshot of
// the last complete step and an error file are written instead.
void write_case_outputs(const CaseSettings& settings, const Mesh& mesh, const CaseResult& result);

}  // namespace fvlimit
