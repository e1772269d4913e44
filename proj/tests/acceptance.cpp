// Acceptance criteria runner. One PASS/FAIL line per criterion; `--only N`
// runs a single criterion (used by ctest).
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fvlimit/cases.hpp"
#include "fvlimit/scalar.hpp"
#include "fvlimit/verify.hpp"

using namespace fvlimit;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fixed(double x, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

CaseResult run_with(CaseSettings s, LimiterKind kind, const Mesh& mesh) {
  s.run.limiter.kind = kind;
  return run_case(s, mesh);
}

Outcome max_min_principle() {
  const ScalarVerifyReport report = run_scalar_verification(ScalarVerifyOptions{});
  std::int64_t violations = 0;
  std::int64_t steps = 0;
  for (const auto& r : report.runs) {
    violations += r.violations;
    steps += r.steps;
  }
  return {report.passed(), std::to_string(report.runs.size()) + " runs (weak, strict), " + std::to_string(steps) +
                               " steps, " + std::to_string(violations) + " violations; dt x4 monitor: " +
                               std::to_string(report.oversized_step_violations) + " violations"};
}

Outcome weak_ordering() {
  const auto r = check_weak_ordering(100000, 11);
  return {r.passed, r.detail};
}

Outcome bound_nesting() {
  const auto r = check_bound_nesting(10000, 12);
  return {r.passed, r.detail};
}

Outcome sod() {
  const CaseSettings s = preset(CaseKind::Sod);
  const Mesh mesh = build_mesh(s);
  std::ostringstream d;
  d << mesh.num_cells() << " cells; L1(rho)";
  double l1[3] = {0, 0, 0};
  const LimiterKind kinds[3] = {LimiterKind::BarthJespersen, LimiterKind::Mlp, LimiterKind::MlpPw};
  for (int m = 0; m < 3; ++m) {
    const CaseResult r = run_with(s, kinds[m], mesh);
    if (!r.ok) return {false, to_string(kinds[m]) + " failed: " + r.error};
    l1[m] = centerline_l1(s, mesh, r.q, CenterlineField::Density);
    d << ' ' << to_string(kinds[m]) << '=' << fixed(l1[m], 5);
  }
  const double margin_mlp = 1.0 - l1[1] / l1[0];
  const double margin_pw = 1.0 - l1[2] / l1[0];
  d << "; margins vs bj: mlp " << fixed(100 * margin_mlp, 3) << "%, mlp-pw " << fixed(100 * margin_pw, 3) << "%";
  return {margin_mlp >= 0.05 && margin_pw >= 0.05, d.str()};
}

Outcome expansion() {
  const CaseSettings s = preset(CaseKind::Expansion);
  const Mesh mesh = build_mesh(s);
  std::ostringstream d;
  bool ok = true;
  double e_venkat = 0.0;
  double e_pw = 0.0;
  for (LimiterKind kind : {LimiterKind::BarthJespersen, LimiterKind::Venkatakrishnan, LimiterKind::Mlp,
                           LimiterKind::MlpPw}) {
    const CaseResult r = run_with(s, kind, mesh);
    if (!r.ok) {
      ok = false;
      d << to_string(kind) << " positivity failure at step " << r.failed_step << " cell " << r.failed_cell << "; ";
      continue;
    }
    const double e = centerline_l1(s, mesh, r.q, CenterlineField::InternalEnergy);
    if (kind == LimiterKind::Venkatakrishnan) e_venkat = e;
    if (kind == LimiterKind::MlpPw) e_pw = e;
    d << to_string(kind) << " ok (L1 e " << fixed(e, 5) << ", " << r.fallback_cells << " fallback cell-stages) ";
  }
  ok = ok && e_pw <= e_venkat;
  d << "; mlp-pw <= venkat: " << (e_pw <= e_venkat ? "yes" : "no");
  return {ok, d.str()};
}

Outcome step_locality() {
  CaseSettings s = preset(CaseKind::Step);
  s.run.t_end = 1.0;
  const Mesh mesh = build_mesh(s);
  const CaseResult pw = run_with(s, LimiterKind::MlpPw, mesh);
  const CaseResult bj = run_with(s, LimiterKind::BarthJespersen, mesh);
  if (!pw.ok || !bj.ok) return {false, "run failed: " + (pw.ok ? bj.error : pw.error)};

  // Smooth cells: pressure varies by less than 5% over the vertex neighbourhood
  // in both solutions.
  const Stencils st = build_stencils(mesh);
  const auto smooth_mask = [&](const StateField& q) {
    std::vector<char> mask(static_cast<std::size_t>(mesh.num_cells()));
    for (Index i = 0; i < mesh.num_cells(); ++i) {
      double hi = pressure(Vector4d(q.col(i)), s.run.gas);
      double lo = hi;
      for (Index j : st.vertex_neighbors[i]) {
        const double p = pressure(Vector4d(q.col(j)), s.run.gas);
        hi = std::max(hi, p);
        lo = std::min(lo, p);
      }
      mask[i] = hi < 1.05 * lo;
    }
    return mask;
  };
  const auto mpw = smooth_mask(pw.q);
  const auto mbj = smooth_mask(bj.q);
  Index smooth = 0, active_pw = 0, active_bj = 0;
  for (Index i = 0; i < mesh.num_cells(); ++i) {
    if (!(mpw[i] && mbj[i])) continue;
    ++smooth;
    active_pw += pw.limits.phi(0, i) < 0.99;
    active_bj += bj.limits.phi(0, i) < 0.99;
  }
  const double f_pw = smooth ? double(active_pw) / smooth : 1.0;
  const double f_bj = smooth ? double(active_bj) / smooth : 0.0;
  return {smooth > 0 && f_pw < f_bj, std::to_string(smooth) + " smooth cells of " + std::to_string(mesh.num_cells()) +
                                         "; fraction phi_rho<0.99: mlp-pw " + fixed(f_pw) + ", bj " + fixed(f_bj)};
}

Outcome wedge() {
  const CaseSettings s = preset(CaseKind::Wedge);
  const Mesh mesh = build_mesh(s);
  std::ostringstream d;
  d << mesh.num_cells() << " cells, budget " << s.run.max_iters << ";";
  bool ok = true;
  for (LimiterKind kind : {LimiterKind::Venkatakrishnan, LimiterKind::Mlp, LimiterKind::MlpPw,
                           LimiterKind::BarthJespersen}) {
    const CaseResult r = run_with(s, kind, mesh);
    if (!r.ok) {
      ok = false;
      d << ' ' << to_string(kind) << " failed (" << r.error << ")";
      continue;
    }
    const double last = r.history.residual.back();
    const bool converged = last <= s.run.residual_drop;
    ok = ok && (kind == LimiterKind::BarthJespersen ? !converged : converged);
    d << ' ' << to_string(kind) << ' ' << (converged ? "converged at " : "stalled, ") << r.steps
      << (converged ? "" : " iters") << " (" << fixed(last, 3) << ")";
  }
  return {ok, d.str()};
}

Outcome step_robustness() {
  CaseSettings s = preset(CaseKind::Step);
  s.run.limiter.kind = LimiterKind::MlpPw;
  const Mesh mesh = build_mesh(s);
  const CaseResult r = run_case(s, mesh);
  return {r.ok && r.time == s.run.t_end,
          std::to_string(mesh.num_cells()) + " cells, " + std::to_string(r.steps) + " steps to t=" + fixed(r.time) +
              (r.ok ? "" : ", failed: " + r.error) + ", " + std::to_string(r.fallback_cells) +
              " fallback cell-stages, " + fixed(r.wall_seconds, 3) + " s"};
}

Outcome infrastructure() {
  const std::vector<CheckResult> checks{check_freestream(100, 1e-12, 21), check_hllc_invariants(10000, 1e-12, 22),
                                        check_stationary_contact(1000, 23), check_conservation(20, 1e-11, 24),
                                        check_determinism()};
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    d << "\n    " << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.detail;
  }
  return {ok, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) only = std::atoi(argv[++a]);
  }
  const std::vector<Criterion> criteria{
      {1, "max/min principle, weak and strict conditions", max_min_principle},
      {2, "weak-MLP ordering", weak_ordering},
      {3, "bound nesting", bound_nesting},
      {4, "Sod centerline density accuracy", sod},
      {5, "expansion positivity and internal energy", expansion},
      {6, "step limiter activation locality", step_locality},
      {7, "wedge convergence ordering", wedge},
      {8, "step robustness to t=4", step_robustness},
      {9, "infrastructure invariants", infrastructure},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ", " << fixed(secs, 3)
              << " s): " << o.detail << std::endl;
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
