#include "fvlimit/verify.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "fvlimit/cases.hpp"
#include "fvlimit/flux.hpp"
#include "fvlimit/integrator.hpp"
#include "fvlimit/limiters.hpp"

namespace fvlimit {

namespace {

std::string format(const char* label, double value) {
  std::ostringstream s;
  s << label << value;
  return s.str();
}

Mesh jittered_mesh(Index n, std::uint64_t seed, PatchKind kind, const PrimitiveState& state = {}) {
  RectMeshSpec spec;
  spec.nx = n;
  spec.ny = n;
  spec.pattern = DiagonalPattern::Random;
  spec.jitter = 0.3;
  spec.seed = seed;
  for (auto& side : spec.sides) side = {"boundary", kind, state};
  return generate_rect_tri_mesh(spec);
}

PrimitiveState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::uniform_real_distribution<double> vel(-3.0, 3.0);
  return {pos(rng), vel(rng), vel(rng), pos(rng)};
}

}  // namespace

CheckResult check_weak_ordering(std::int64_t fixtures, std::uint64_t seed) {
  CheckResult r{"weak ordering phi_weak >= phi_mlp", true, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::int64_t bad = 0;
  double worst = 0.0;
  for (std::int64_t n = 0; n < fixtures; ++n) {
    std::array<Vector2d, 3> v;
    double area = 0.0;
    do {
      for (auto& p : v) p = Vector2d(sym(rng), sym(rng));
      area = 0.5 * ((v[1] - v[0]).x() * (v[2] - v[0]).y() - (v[1] - v[0]).y() * (v[2] - v[0]).x());
    } while (std::abs(area) < 1e-3);
    const Vector2d c = (v[0] + v[1] + v[2]) / 3.0;
    const double q = unit(rng);
    const Vector2d g(4.0 * sym(rng), 4.0 * sym(rng));
    std::array<double, 3> vmax{}, vmin{};
    for (int l = 0; l < 3; ++l) {
      // Some vertices get no headroom at all.
      vmax[l] = q + (unit(rng) < 0.1 ? 0.0 : unit(rng));
      vmin[l] = q - (unit(rng) < 0.1 ? 0.0 : unit(rng));
    }
    std::array<Vector2d, 3> vert_off, face_off;
    std::array<double, 3> fmax{}, fmin{};
    for (int l = 0; l < 3; ++l) {
      const int m = (l + 1) % 3;
      vert_off[l] = v[l] - c;
      face_off[l] = 0.5 * (v[l] + v[m]) - c;
      fmax[l] = 0.5 * (vmax[l] + vmax[m]);
      fmin[l] = 0.5 * (vmin[l] + vmin[m]);
    }
    const double phi_mlp = limit_at_points<double>(q, g, vert_off, vmax, vmin, SmoothFunction::BarthJespersen, 0.0,
                                                   true);
    const double phi_weak = limit_at_points<double>(q, g, face_off, fmax, fmin, SmoothFunction::BarthJespersen, 0.0,
                                                    true);
    if (phi_weak < phi_mlp - 1e-12) {
      ++bad;
      worst = std::max(worst, phi_mlp - phi_weak);
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(fixtures) + " fixtures, " + std::to_string(bad) + " counterexamples" +
             (bad ? format(", worst gap ", worst) : "");
  return r;
}

CheckResult check_bound_nesting(std::int64_t fields, std::uint64_t seed) {
  CheckResult r{"bound nesting", true, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mesh mesh = jittered_mesh(8, rng(), PatchKind::Outflow);
  const Stencils st = build_stencils(mesh);
  const NodalWeights weights(mesh, st);
  std::int64_t bad = 0;
  ScalarField q(1, mesh.num_cells()), avg;
  CellBounds<1> b;
  ScalarField nmax, nmin;
  for (std::int64_t n = 0; n < fields; ++n) {
    for (Index i = 0; i < mesh.num_cells(); ++i) q(0, i) = unit(rng);
    weights.average(q, avg);
    gather_bounds(mesh, st, q, avg, b);
    neighborhood_extrema(mesh, b, nmax, nmin);
    for (Index i = 0; i < mesh.num_cells(); ++i) {
      if (nmin(0, i) > b.strict_min(0, i) || b.strict_max(0, i) > nmax(0, i)) ++bad;
      for (Index k : mesh.cell_faces()[i]) {
        if (nmin(0, i) > b.face_min(0, k) || b.face_max(0, k) > nmax(0, i)) ++bad;
      }
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(fields) + " fields on " + std::to_string(mesh.num_cells()) + " cells, " +
             std::to_string(bad) + " violations";
  return r;
}

CheckResult check_freestream(std::int64_t steps, double tol, std::uint64_t seed) {
  CheckResult r{"freestream preservation", true, {}};
  const PrimitiveState w{1.0, 0.8, -0.3, 0.7};
  const Mesh mesh = jittered_mesh(12, seed, PatchKind::Inflow, w);
  double worst = 0.0;
  for (LimiterKind kind : {LimiterKind::None, LimiterKind::BarthJespersen, LimiterKind::Venkatakrishnan,
                           LimiterKind::Mlp, LimiterKind::MlpPw}) {
    RunConfig cfg;
    cfg.limiter.kind = kind;
    cfg.cfl = 0.5;
    Solver solver(mesh, cfg);
    const StateField q0 = uniform_state(mesh, w, cfg.gas);
    StateField q = q0;
    Eigen::VectorXd dt;
    for (std::int64_t n = 0; n < steps; ++n) {
      solver.time_steps(q, dt);
      solver.rk_step(q, dt);
    }
    worst = std::max(worst, (q - q0).cwiseAbs().maxCoeff());
  }
  r.passed = worst <= tol;
  r.detail = std::to_string(steps) + " steps x 5 limiters, max deviation " + format("", worst);
  return r;
}

CheckResult check_hllc_invariants(std::int64_t pairs, double tol, std::uint64_t seed) {
  CheckResult r{"HLLC consistency and rotation", true, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Gas gas;
  double worst_consistency = 0.0;
  double worst_rotation = 0.0;
  for (std::int64_t n = 0; n < pairs; ++n) {
    const Vector4d qL = to_conservative(random_state(rng), gas);
    const Vector4d qR = to_conservative(random_state(rng), gas);
    const double th = angle(rng);
    const Vector2d nrm(std::cos(th), std::sin(th));

    const Vector4d exact = physical_flux(qL, nrm, gas);
    const Vector4d same = hllc_flux(qL, qL, nrm, gas);
    worst_consistency = std::max(worst_consistency, (same - exact).cwiseAbs().maxCoeff() / exact.cwiseAbs().maxCoeff());

    // Rotate into the face frame, evaluate along x, rotate back.
    const auto rotate = [&](const Vector4d& q) {
      return Vector4d(q[0], q[1] * nrm[0] + q[2] * nrm[1], -q[1] * nrm[1] + q[2] * nrm[0], q[3]);
    };
    const Vector4d Fx = hllc_flux(rotate(qL), rotate(qR), Vector2d(1.0, 0.0), gas);
    const Vector4d back(Fx[0], Fx[1] * nrm[0] - Fx[2] * nrm[1], Fx[1] * nrm[1] + Fx[2] * nrm[0], Fx[3]);
    const Vector4d F = hllc_flux(qL, qR, nrm, gas);
    const double scale = std::max(1.0, F.cwiseAbs().maxCoeff());
    worst_rotation = std::max(worst_rotation, (F - back).cwiseAbs().maxCoeff() / scale);
  }
  r.passed = worst_consistency <= tol && worst_rotation <= tol;
  r.detail = std::to_string(pairs) + " pairs, consistency " + format("", worst_consistency) + ", rotation " +
             format("", worst_rotation);
  return r;
}

CheckResult check_stationary_contact(std::int64_t samples, std::uint64_t seed) {
  CheckResult r{"HLLC stationary contact", true, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::uniform_real_distribution<double> vel(-3.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const Gas gas;
  double worst = 0.0;
  for (std::int64_t n = 0; n < samples; ++n) {
    const double th = angle(rng);
    const Vector2d nrm(std::cos(th), std::sin(th));
    const Vector2d tan(-nrm[1], nrm[0]);
    const double p = pos(rng);
    const Vector2d uL = vel(rng) * tan;
    const Vector2d uR = vel(rng) * tan;
    const Vector4d qL = to_conservative(PrimitiveState{pos(rng), uL.x(), uL.y(), p}, gas);
    const Vector4d qR = to_conservative(PrimitiveState{pos(rng), uR.x(), uR.y(), p}, gas);
    const Vector4d F = hllc_flux(qL, qR, nrm, gas);
    const Vector4d expect(0.0, p * nrm[0], p * nrm[1], 0.0);
    worst = std::max(worst, (F - expect).cwiseAbs().maxCoeff() / p);
  }
  r.passed = worst <= 1e-12;
  r.detail = std::to_string(samples) + " contacts, max flux error " + format("", worst);
  return r;
}

CheckResult check_conservation(std::int64_t steps, double tol, std::uint64_t seed) {
  CheckResult r{"global conservation", true, {}};
  RectMeshSpec spec;
  spec.nx = 14;
  spec.ny = 14;
  spec.pattern = DiagonalPattern::Random;
  spec.jitter = 0.3;
  spec.seed = seed;
  spec.sides = {BoundaryPatch{"left", PatchKind::Inflow, {1.0, 0.5, 0.1, 1.0}},
                BoundaryPatch{"right", PatchKind::Outflow, {}}, BoundaryPatch{"bottom", PatchKind::SlipWall, {}},
                BoundaryPatch{"top", PatchKind::SlipWall, {}}};
  const Mesh mesh = generate_rect_tri_mesh(spec);
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (LimiterKind kind : {LimiterKind::BarthJespersen, LimiterKind::MlpPw}) {
    RunConfig cfg;
    cfg.limiter.kind = kind;
    Solver solver(mesh, cfg);
    StateField q(4, mesh.num_cells());
    for (Index i = 0; i < mesh.num_cells(); ++i) {
      q.col(i) = to_conservative(PrimitiveState{0.5 + unit(rng), unit(rng) - 0.5, unit(rng) - 0.5, 0.5 + unit(rng)},
                                 cfg.gas);
    }
    Eigen::VectorXd dt;
    for (std::int64_t n = 0; n < steps; ++n) {
      const Vector4d before = q * mesh.areas();
      solver.time_steps(q, dt);
      solver.rk_step(q, dt);
      const Vector4d after = q * mesh.areas();
      // Last stage: sum |Omega| dq = -dt * boundary flux.
      const Vector4d defect = after - before + dt[0] * solver.boundary_flux();
      const Vector4d scale = (q.cwiseAbs() * mesh.areas()).cwiseMax(1e-300);
      worst = std::max(worst, defect.cwiseAbs().cwiseQuotient(scale).maxCoeff());
    }
  }
  r.passed = worst <= tol;
  r.detail = std::to_string(steps) + " steps x 2 limiters, max relative defect " + format("", worst);
  return r;
}

CheckResult check_determinism() {
  CheckResult r{"bit-identical reruns", true, {}};
  CaseSettings s = preset(CaseKind::Sod);
  s.nx = 41;
  s.ny = 6;
  s.run.t_end = 0.05;
  const Mesh mesh = build_mesh(s);
  const CaseResult a = run_case(s, mesh);
  const CaseResult b = run_case(s, mesh);
  const bool same = a.ok && b.ok && a.q.size() == b.q.size() &&
                    std::memcmp(a.q.data(), b.q.data(), sizeof(double) * a.q.size()) == 0 && a.steps == b.steps;
  r.passed = same;
  r.detail = std::to_string(a.steps) + " steps, states " + (same ? "identical" : "differ");
  return r;
}

std::vector<CheckResult> run_property_checks() {
  return {check_weak_ordering(100000, 1),  check_bound_nesting(10000, 2),  check_freestream(100, 1e-12, 3),
          check_hllc_invariants(10000, 1e-12, 4), check_stationary_contact(1000, 5), check_conservation(20, 1e-11, 6),
          check_determinism()};
}

}  // namespace fvlimit
