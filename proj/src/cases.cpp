#include "fvlimit/cases.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "fvlimit/riemann.hpp"

namespace fvlimit {

namespace {

constexpr double kTubeHeight = 0.1;

RectMeshSpec tube_spec(const CaseSettings& s) {
  RectMeshSpec spec;
  spec.nx = s.nx;
  spec.ny = s.ny;
  spec.box = {0.0, 1.0, 0.0, kTubeHeight};
  spec.pattern = DiagonalPattern::Alternating;
  spec.sides = {BoundaryPatch{"left", PatchKind::SlipWall, {}}, BoundaryPatch{"right", PatchKind::SlipWall, {}},
                BoundaryPatch{"bottom", PatchKind::SlipWall, {}}, BoundaryPatch{"top", PatchKind::SlipWall, {}}};
  if (s.kind == CaseKind::Expansion) {
    // Both ends carry supersonic outflow away from the centre.
    spec.sides[0].kind = PatchKind::Outflow;
    spec.sides[1].kind = PatchKind::Outflow;
  }
  return spec;
}

}  // namespace

Mesh build_mesh(const CaseSettings& s) {
  if (!s.mesh_file.empty()) return load_mesh(s.mesh_file);
  switch (s.kind) {
    case CaseKind::Sod:
    case CaseKind::Expansion:
      return generate_rect_tri_mesh(tube_spec(s));
    case CaseKind::Wedge:
      return generate_wedge_mesh(s.nx, s.ny, WedgeGeometry{}, s.reference);
    case CaseKind::Step:
      return generate_step_mesh(s.cells_per_unit, StepGeometry{}, s.reference);
  }
  throw std::logic_error("unhandled case");
}

std::pair<PrimitiveState, PrimitiveState> riemann_states(CaseKind kind) {
  if (kind == CaseKind::Sod) return {{1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}};
  if (kind == CaseKind::Expansion) return {{1.0, -2.0, 0.0, 0.4}, {1.0, 2.0, 0.0, 0.4}};
  throw std::invalid_argument("not a shock-tube case: " + to_string(kind));
}

PrimitiveState exact_solution(CaseKind kind, double x, double t, const Gas& gas) {
  const auto [left, right] = riemann_states(kind);
  if (t <= 0.0) return x < 0.5 ? left : right;
  return ExactRiemann(left, right, gas).sample((x - 0.5) / t);
}

StateField initial_state(const CaseSettings& s, const Mesh& mesh) {
  const Gas& gas = s.run.gas;
  if (s.kind == CaseKind::Wedge || s.kind == CaseKind::Step) return uniform_state(mesh, s.reference, gas);
  const auto [left, right] = riemann_states(s.kind);
  const Vector4d qL = to_conservative(left, gas);
  const Vector4d qR = to_conservative(right, gas);
  StateField q(4, mesh.num_cells());
  for (Index i = 0; i < mesh.num_cells(); ++i) q.col(i) = mesh.centroid(i).x() < 0.5 ? qL : qR;
  return q;
}

CaseResult run_case(const CaseSettings& s, const Mesh& mesh, const Solver::StepObserver& observer) {
  CaseResult result;
  Solver solver(mesh, s.run);
  StateField q = initial_state(s, mesh);
  result.q = q;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (s.run.mode == TimeMode::Steady) {
      result.history = solver.run_steady(q);
      result.steps = solver.step();
      result.q = q;
    } else {
      result.steps = solver.run_unsteady(q, [&](std::int64_t step, double t, const StateField& state) {
        result.q = state;
        result.steps = step;
        result.time = t;
        if (observer) observer(step, t, state);
      });
      result.q = q;
    }
    StateField residual;
    solver.assemble_residual(result.q, residual);
    result.limits = solver.limits();
  } catch (const NonPhysicalState& e) {
    result.ok = false;
    result.error = e.what();
    result.failed_cell = e.cell();
    result.failed_step = e.step();
  }
  result.fallback_cells = solver.fallback_count();
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CenterlineSample> case_centerline(const CaseSettings& s, const Mesh& mesh) {
  const double dy = kTubeHeight / (s.ny - 1);
  return centerline(mesh, 0.5 * kTubeHeight, dy);
}

double centerline_l1(const CaseSettings& s, const Mesh& mesh, const StateField& q, CenterlineField field) {
  const Gas& gas = s.run.gas;
  const auto line = case_centerline(s, mesh);
  double sum = 0.0;
  for (const auto& sample : line) {
    const PrimitiveState w = to_primitive(Vector4d(q.col(sample.cell)), gas);
    const PrimitiveState ex = exact_solution(s.kind, sample.x, s.run.t_end, gas);
    if (field == CenterlineField::Density) {
      sum += std::abs(w.rho - ex.rho);
    } else {
      const double e = w.p / ((gas.gamma - 1.0) * w.rho);
      const double e_ex = ex.rho > 0.0 ? ex.p / ((gas.gamma - 1.0) * ex.rho) : 0.0;
      sum += std::abs(e - e_ex);
    }
  }
  return line.empty() ? 0.0 : sum / static_cast<double>(line.size());
}

void write_case_outputs(const CaseSettings& s, const Mesh& mesh, const CaseResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(s.output);
  save_mesh(mesh, s.output / "mesh.txt");
  {
    CaseSettings echo = s;
    echo.mesh_file = "mesh.txt";
    std::ofstream out(s.output / "config.resolved");
    if (!out) throw std::runtime_error("cannot write " + (s.output / "config.resolved").string());
    write_resolved_config(echo, out);
  }

  const FieldSnapshot snap =
      make_snapshot(mesh, result.q, result.ok ? &result.limits : nullptr, s.run.gas, s.reference);
  if (!result.ok) {
    write_snapshot(mesh, snap, s.output / "diagnostic.vtk", SnapshotFormat::VtkLegacy);
    std::ofstream out(s.output / "error.txt");
    out << result.error << "\ncell " << result.failed_cell << "\nstep " << result.failed_step << "\n";
    return;
  }
  write_snapshot(mesh, snap, s.output / "snapshot.vtk", SnapshotFormat::VtkLegacy);
  write_snapshot(mesh, snap, s.output / "snapshot.csv", SnapshotFormat::Csv);
  if (s.kind == CaseKind::Sod || s.kind == CaseKind::Expansion) {
    write_centerline(mesh, snap, case_centerline(s, mesh), s.output / "centerline.csv");
  }
  if (s.run.mode == TimeMode::Steady) result.history.write(s.output / "residual.txt");
}

}  // namespace fvlimit
