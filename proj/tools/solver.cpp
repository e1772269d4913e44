#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

#include "fvlimit/cases.hpp"
#include "fvlimit/scalar.hpp"
#include "fvlimit/verify.hpp"

using namespace fvlimit;

namespace {

// Grid points along x (tube cases, ny keeps the 10:1 aspect), intervals per
// direction (wedge) or cells per unit length (step).
void apply_resolution(CaseSettings& s, int n) {
  if (s.kind == CaseKind::Step) {
    apply_setting(s, "cells_per_unit", std::to_string(n));
  } else {
    apply_setting(s, "nx", std::to_string(n));
    apply_setting(s, "ny", std::to_string(s.kind == CaseKind::Wedge ? n : (n - 1) / 10 + 1));
  }
  s.mesh_file.clear();
}

int run_command(const std::string& case_name, const std::map<std::string, std::string>& overrides,
                const std::string& config_path, int resolution) {
  CaseSettings s;
  if (!config_path.empty()) {
    s = load_config(config_path);
    if (!case_name.empty() && s.kind != case_kind_from_string(case_name)) {
      throw std::runtime_error("config selects case " + to_string(s.kind) + " but --case is " + case_name);
    }
  } else {
    if (case_name.empty()) throw std::runtime_error("--case or --config is required");
    s = preset(case_kind_from_string(case_name));
  }
  for (const auto& [key, value] : overrides) apply_setting(s, key, value);
  if (resolution > 0) apply_resolution(s, resolution);

  const Mesh mesh = build_mesh(s);
  std::cout << to_string(s.kind) << ": " << mesh.num_cells() << " cells, limiter " << to_string(s.run.limiter.kind)
            << ", output " << s.output << "\n";
  const CaseResult result = run_case(s, mesh, [](std::int64_t step, double t, const StateField&) {
    if (step % 200 == 0) std::cout << "  step " << step << "  t = " << t << "\n";
  });
  write_case_outputs(s, mesh, result);
  if (!result.ok) {
    std::cerr << "non-physical state: " << result.error << " (cell " << result.failed_cell << ", step "
              << result.failed_step << "); diagnostic written to " << (s.output / "diagnostic.vtk") << "\n";
    return 2;
  }
  if (s.run.mode == TimeMode::Steady) {
    std::cout << "iterations " << result.steps << ", residual " << result.history.residual.back() << "\n";
  } else {
    std::cout << "steps " << result.steps << ", t = " << result.time << "\n";
  }
  if (result.fallback_cells) std::cout << "first-order fallback in " << result.fallback_cells << " cell-stages\n";
  std::cout << "wall time " << std::fixed << std::setprecision(1) << result.wall_seconds << " s\n";
  return 0;
}

int verify_scalar(std::int64_t steps) {
  ScalarVerifyOptions opt;
  opt.steps = steps;
  const ScalarVerifyReport report = run_scalar_verification(opt);
  for (const auto& r : report.runs) {
    std::cout << (r.violations == 0 ? "PASS" : "FAIL") << "  mesh " << r.mesh << " (" << r.cells << " cells) "
              << to_string(r.condition) << ": " << r.steps << " steps, " << r.violations << " violations";
    if (r.violations) std::cout << ", worst excess " << r.worst_excess;
    std::cout << "\n";
  }
  std::cout << "info  dt x " << opt.violation_factor << " beyond the bound: " << report.oversized_step_violations
            << " violations\n";
  return report.passed() ? 0 : 1;
}

int verify_properties() {
  bool ok = true;
  for (const auto& c : run_property_checks()) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unstructured finite-volume Euler solver with multi-dimensional limiters"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a case preset");
  std::string case_name;
  std::string config_path;
  std::map<std::string, std::string> overrides;
  int resolution = 0;
  run->add_option("--case", case_name, "sod | expansion | wedge | step");
  run->add_option("--config", config_path, "key = value file applied on top of the preset");
  const auto override_option = [&](const char* flag, const char* key, const char* help) {
    run->add_option_function<std::string>(flag, [&overrides, key](const std::string& v) { overrides[key] = v; }, help);
  };
  override_option("--limiter", "limiter", "none | bj | venkat | mlp | mlp-pw");
  override_option("--smooth-fn", "smooth", "f_bj | f_v (MLP family)");
  override_option("--K", "K", "Venkatakrishnan constant");
  override_option("--cfl", "cfl", "CFL number");
  override_option("--flux", "flux", "hllc | rusanov");
  override_option("--t-end", "t_end", "final time (unsteady cases)");
  override_option("--max-iters", "max_iters", "iteration budget (steady cases)");
  override_option("--out", "output", "output directory");
  override_option("--mesh", "mesh", "mesh file replacing the generated mesh");
  run->add_option("--resolution", resolution,
                  "mesh resolution (grid points along x, or cells per unit for step)");

  auto* verify = app.add_subcommand("verify", "Run verification checks");
  verify->require_subcommand(1);
  auto* scalar = verify->add_subcommand("scalar", "Max/min principle of the weak and strict conditions");
  std::int64_t scalar_steps = 1000;
  scalar->add_option("--steps", scalar_steps, "forward Euler steps per run");
  auto* properties = verify->add_subcommand("properties", "Invariant checks of the discretisation");

  auto* mesh_cmd = app.add_subcommand("mesh", "Mesh utilities");
  mesh_cmd->require_subcommand(1);
  auto* gen = mesh_cmd->add_subcommand("gen", "Generate a case mesh and write it in the text format");
  std::string gen_case = "sod";
  std::string gen_out = "mesh.txt";
  int gen_resolution = 0;
  gen->add_option("--case", gen_case, "sod | expansion | wedge | step");
  gen->add_option("--resolution", gen_resolution, "grid points along x, or cells per unit for step");
  gen->add_option("--out", gen_out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(case_name, overrides, config_path, resolution);
    if (*scalar) return verify_scalar(scalar_steps);
    if (*properties) return verify_properties();
    if (*gen) {
      CaseSettings s = preset(case_kind_from_string(gen_case));
      if (gen_resolution > 0) apply_resolution(s, gen_resolution);
      const Mesh mesh = build_mesh(s);
      save_mesh(mesh, gen_out);
      std::cout << gen_out << ": " << mesh.num_cells() << " cells, " << mesh.num_vertices() << " vertices\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
