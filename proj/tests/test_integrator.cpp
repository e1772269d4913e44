#include <gtest/gtest.h>

#include "fvlimit/cases.hpp"
#include "fvlimit/integrator.hpp"
#include "test_util.hpp"

using namespace fvlimit;

namespace {

const PrimitiveState freestream{1.0, 0.7, -0.4, 0.9};

// Two unit squares side by side; every boundary face is outflow.
Mesh two_squares() {
  Eigen::Matrix2Xd v(2, 6);
  v << 0, 1, 2, 0, 1, 2, 0, 0, 0, 1, 1, 1;
  return Mesh::from_cells(v, {{0, 1, 4, 3}, {1, 2, 5, 4}}, {BoundaryPatch{"out", PatchKind::Outflow, {}}},
                          [](const Face&, const Vector2d&, const Vector2d&) -> Index { return 0; });
}

}  // namespace

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.cfl = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.stages = {0.5, 0.25, 1.0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.stages = {0.5, 1.5};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.stages = {1.0};
  EXPECT_NO_THROW(c.validate());
}

TEST(Residual, FreestreamIsExactlyZero) {
  const Mesh m = fixtures::random_mesh(10, 1, PatchKind::Inflow);
  for (LimiterKind kind : {LimiterKind::None, LimiterKind::BarthJespersen, LimiterKind::Venkatakrishnan,
                           LimiterKind::Mlp, LimiterKind::MlpPw}) {
    RunConfig cfg;
    cfg.limiter.kind = kind;
    Solver solver(m, cfg);
    StateField R;
    solver.assemble_residual(uniform_state(m, {1.0, 0.5, 0.2, 1.0}, cfg.gas), R);
    EXPECT_EQ(R.cwiseAbs().maxCoeff(), 0.0) << to_string(kind);
  }
}

TEST(Residual, FirstOrderTwoCellBookkeeping) {
  const Mesh m = two_squares();
  RunConfig cfg;
  cfg.first_order = true;
  Solver solver(m, cfg);
  const Vector4d qL = to_conservative(PrimitiveState{1.0, 0.0, 0.0, 1.0}, cfg.gas);
  const Vector4d qR = to_conservative(PrimitiveState{0.125, 0.0, 0.0, 0.1}, cfg.gas);
  StateField q(4, 2);
  q << qL, qR;
  StateField R;
  solver.assemble_residual(q, R);
  // Outflow faces carry each cell's own physical flux, so the two sums reduce
  // to the interface flux against the cell's own flux.
  const Vector4d F = hllc_flux(qL, qR, Vector2d(1, 0), cfg.gas);
  const Vector4d expectL =
      -(F + physical_flux(qL, Vector2d(-1, 0), cfg.gas) + physical_flux(qL, Vector2d(0, 1), cfg.gas) +
        physical_flux(qL, Vector2d(0, -1), cfg.gas));
  const Vector4d expectR =
      F - physical_flux(qR, Vector2d(1, 0), cfg.gas) - physical_flux(qR, Vector2d(0, 1), cfg.gas) -
      physical_flux(qR, Vector2d(0, -1), cfg.gas);
  EXPECT_LE((R.col(0) - expectL).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((R.col(1) - expectR).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_GT(-R(0, 0), 0.0);  // mass leaves the high-pressure cell
}

TEST(Residual, SumEqualsBoundaryFlux) {
  const Mesh m = fixtures::random_mesh(12, 2, PatchKind::SlipWall);
  RunConfig cfg;
  Solver solver(m, cfg);
  std::mt19937_64 rng(3);
  StateField q(4, m.num_cells());
  for (Index i = 0; i < m.num_cells(); ++i) q.col(i) = to_conservative(fixtures::random_state(rng), cfg.gas);
  StateField R;
  solver.assemble_residual(q, R);
  const Vector4d total = R.rowwise().sum();
  const double scale = R.cwiseAbs().rowwise().sum().maxCoeff();
  EXPECT_LE((total + solver.boundary_flux()).cwiseAbs().maxCoeff(), 1e-11 * scale);
  // Slip walls carry no mass.
  EXPECT_LE(std::abs(solver.boundary_flux()[0]), 1e-12 * scale);
}

TEST(TimeStep, UniformMeshAndLinearity) {
  RectMeshSpec spec;
  spec.nx = 6;
  spec.ny = 6;
  spec.pattern = DiagonalPattern::Uniform;
  const Mesh m = generate_rect_tri_mesh(spec);
  const Gas gas;
  const StateField q = uniform_state(m, {1.0, 0.0, 0.0, 1.0}, gas);
  Eigen::VectorXd dt1, dt2;
  compute_time_steps(m, q, 0.4, gas, dt1);
  compute_time_steps(m, q, 0.8, gas, dt2);
  EXPECT_LE((dt1.array() - dt1[0]).abs().maxCoeff(), 1e-14 * dt1[0]);
  EXPECT_LE((dt2 - 2.0 * dt1).cwiseAbs().maxCoeff(), 1e-15 * dt2.maxCoeff());
  const double h = 0.2;
  EXPECT_NEAR(dt1[0], 0.4 * 0.5 * h * h / (std::sqrt(1.4) * (2.0 + std::sqrt(2.0)) * h), 1e-15);
}

TEST(TimeStep, SteadyIsLocalUnsteadyIsGlobal) {
  const Mesh m = fixtures::random_mesh(8, 4);
  RunConfig cfg;
  Solver unsteady(m, cfg);
  cfg.mode = TimeMode::Steady;
  Solver steady(m, cfg);
  const StateField q = uniform_state(m, freestream, cfg.gas);
  Eigen::VectorXd a, b;
  unsteady.time_steps(q, a);
  steady.time_steps(q, b);
  EXPECT_EQ(a.maxCoeff(), a.minCoeff());
  EXPECT_EQ(a.maxCoeff(), b.minCoeff());
  EXPECT_GT(b.maxCoeff(), b.minCoeff());
}

TEST(RungeKutta, FreestreamBitIdentical) {
  const Mesh m = fixtures::random_mesh(10, 5, PatchKind::Inflow);
  RunConfig cfg;
  cfg.limiter.kind = LimiterKind::MlpPw;
  Solver solver(m, cfg);
  const StateField q0 = uniform_state(m, {1.0, 0.5, 0.2, 1.0}, cfg.gas);
  StateField q = q0;
  Eigen::VectorXd dt;
  for (int n = 0; n < 100; ++n) {
    solver.time_steps(q, dt);
    solver.rk_step(q, dt);
  }
  EXPECT_EQ((q - q0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(RungeKutta, SingleStageIsForwardEuler) {
  const Mesh m = fixtures::random_mesh(8, 6, PatchKind::SlipWall);
  RunConfig cfg;
  cfg.stages = {1.0};
  Solver solver(m, cfg);
  std::mt19937_64 rng(7);
  StateField q(4, m.num_cells());
  for (Index i = 0; i < m.num_cells(); ++i) {
    q.col(i) = to_conservative(PrimitiveState{1.0 + 0.1 * std::sin(i), 0.1, 0.0, 1.0}, cfg.gas);
  }
  StateField R;
  solver.assemble_residual(q, R);
  Eigen::VectorXd dt;
  solver.time_steps(q, dt);
  StateField expect = q;
  for (Index i = 0; i < m.num_cells(); ++i) expect.col(i) += dt[i] / m.area(i) * R.col(i);
  solver.rk_step(q, dt);
  EXPECT_EQ((q - expect).cwiseAbs().maxCoeff(), 0.0);
}

TEST(RungeKutta, SodRemainsPhysical) {
  CaseSettings s = preset(CaseKind::Sod);
  s.nx = 51;
  s.ny = 6;
  const Mesh m = build_mesh(s);
  Solver solver(m, s.run);
  StateField q = initial_state(s, m);
  Eigen::VectorXd dt;
  for (int n = 0; n < 200; ++n) {
    solver.time_steps(q, dt);
    solver.rk_step(q, dt);
  }
  EXPECT_TRUE(q.allFinite());
  for (Index i = 0; i < m.num_cells(); ++i) EXPECT_TRUE(is_physical(Vector4d(q.col(i)), s.run.gas));
  EXPECT_EQ(solver.fallback_count(), 0);
}

TEST(RungeKutta, NonPhysicalStateNamesCellAndStep) {
  const Mesh m = fixtures::random_mesh(6, 8);
  RunConfig cfg;
  Solver solver(m, cfg);
  StateField q = uniform_state(m, freestream, cfg.gas);
  q(0, 5) = -1.0;
  try {
    Eigen::VectorXd dt = Eigen::VectorXd::Constant(m.num_cells(), 1e-3);
    solver.rk_step(q, dt);
    FAIL();
  } catch (const NonPhysicalState& e) {
    EXPECT_EQ(e.cell(), 5);
    EXPECT_EQ(e.step(), 0);
  }
}

TEST(Drivers, UnsteadyClipsLastStep) {
  const Mesh m = fixtures::random_mesh(6, 9, PatchKind::Inflow);
  RunConfig cfg;
  const StateField q0 = uniform_state(m, {1.0, 0.5, 0.2, 1.0}, cfg.gas);
  Eigen::VectorXd dt;
  compute_time_steps(m, q0, cfg.cfl, cfg.gas, dt);
  cfg.t_end = 3.0 * dt.minCoeff() + 1e-9;
  Solver solver(m, cfg);
  StateField q = q0;
  double last_time = 0.0;
  const auto steps = solver.run_unsteady(q, [&](std::int64_t, double t, const StateField&) { last_time = t; });
  EXPECT_EQ(steps, 4);
  EXPECT_EQ(last_time, cfg.t_end);
}

TEST(Drivers, SteadyFreestreamConvergesImmediately) {
  const Mesh m = fixtures::random_mesh(6, 10, PatchKind::Inflow);
  RunConfig cfg;
  cfg.mode = TimeMode::Steady;
  Solver solver(m, cfg);
  StateField q = uniform_state(m, {1.0, 0.5, 0.2, 1.0}, cfg.gas);
  const ResidualHistory h = solver.run_steady(q);
  ASSERT_EQ(h.iteration.size(), 1u);
  EXPECT_EQ(h.residual[0], 0.0);
}

TEST(Drivers, PositivityFallbackCanBeDisabled) {
  CaseSettings s = preset(CaseKind::Expansion);
  s.run.limiter.kind = LimiterKind::None;
  const Mesh m = build_mesh(s);
  const CaseResult with = run_case(s, m);
  EXPECT_TRUE(with.ok);
  EXPECT_GT(with.fallback_cells, 0);
  s.run.positivity_fallback = false;
  const CaseResult without = run_case(s, m);
  EXPECT_FALSE(without.ok);
  EXPECT_GE(without.failed_cell, 0);
  EXPECT_GE(without.failed_step, 1);
}
