#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fvlimit/cases.hpp"
#include "fvlimit/config.hpp"
#include "fvlimit/io.hpp"
#include "test_util.hpp"

using namespace fvlimit;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fvlimit_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

CaseSettings parse(const std::string& text) {
  CaseSettings s = preset(CaseKind::Sod);
  std::istringstream in(text);
  apply_config(in, s);
  return s;
}

std::string resolved(const CaseSettings& s) {
  std::ostringstream out;
  write_resolved_config(s, out);
  return out.str();
}

Mesh four_cells() {
  RectMeshSpec spec;
  spec.nx = 3;
  spec.ny = 2;
  return generate_rect_tri_mesh(spec);
}

}  // namespace

TEST(Config, EmptyFileGivesSodDefaults) {
  const CaseSettings s = parse("");
  EXPECT_EQ(s.kind, CaseKind::Sod);
  EXPECT_EQ(s.run.limiter.kind, LimiterKind::MlpPw);
  EXPECT_EQ(s.run.limiter.smooth, SmoothFunction::Venkatakrishnan);
  EXPECT_DOUBLE_EQ(s.run.limiter.K, 1.0);
  EXPECT_DOUBLE_EQ(s.run.cfl, 0.2);
  EXPECT_DOUBLE_EQ(s.run.t_end, 0.2);
  EXPECT_EQ(s.run.flux, FluxScheme::Hllc);
  EXPECT_EQ(resolved(s), resolved(preset(CaseKind::Sod)));
}

TEST(Config, OverridesAreEchoed) {
  const CaseSettings s = parse("# comment\ncase = step\n\nlimiter = bj\nK = 5 # inline\ncfl = 0.3\n");
  EXPECT_EQ(s.kind, CaseKind::Step);
  EXPECT_EQ(s.run.limiter.kind, LimiterKind::BarthJespersen);
  EXPECT_DOUBLE_EQ(s.run.limiter.K, 5.0);
  const std::string echo = resolved(s);
  EXPECT_NE(echo.find("case = step"), std::string::npos) << echo;
  EXPECT_NE(echo.find("cfl = 0.3"), std::string::npos) << echo;
  // The echo parses back to the same settings.
  EXPECT_EQ(resolved(parse(echo)), echo);
}

TEST(Config, UnknownKeyNamesKeyAndLine) {
  try {
    (void)parse("limiter = mlp\n\nlimitr = bj\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "limitr");
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, BadValuesAreRejected) {
  EXPECT_THROW((void)parse("limiter = superbee\n"), ConfigError);
  EXPECT_THROW((void)parse("cfl = -1\n"), ConfigError);
  EXPECT_THROW((void)parse("K = abc\n"), ConfigError);
  EXPECT_THROW((void)parse("limiter = mlp\ncase = wedge\n"), ConfigError);
  EXPECT_THROW((void)parse("stages = 0.5, 0.25\n"), ConfigError);
  EXPECT_THROW((void)parse("cfl 0.3\n"), ConfigError);
}

TEST(Snapshot, VtkAndCsvRoundTrip) {
  const Mesh m = four_cells();
  ASSERT_EQ(m.num_cells(), 4);
  const Gas gas;
  StateField q(4, 4);
  for (Index i = 0; i < 4; ++i) q.col(i) = to_conservative(PrimitiveState{1.0 + 0.1 * i, 0.3 * i, -0.2, 1.0 / (i + 1)}, gas);
  LimitField limits;
  limits.phi = StateField::Constant(4, 4, 0.625);
  limits.phi(2, 1) = 1.0 / 3.0;
  limits.omega_p = Eigen::VectorXd::LinSpaced(4, 0.1, 1.0);
  const FieldSnapshot snap = make_snapshot(m, q, &limits, gas, {1.0, 0.0, 0.0, 1.0});

  const fs::path dir = scratch_dir("snapshot");
  write_snapshot(m, snap, dir / "s.vtk", SnapshotFormat::VtkLegacy);
  write_snapshot(m, snap, dir / "s.csv", SnapshotFormat::Csv);
  const auto vtk = read_vtk_cell_data(dir / "s.vtk");
  const auto csv = read_csv_columns(dir / "s.csv");
  for (const auto& [name, column] : snap.columns()) {
    ASSERT_TRUE(vtk.contains(name)) << name;
    ASSERT_TRUE(csv.contains(name)) << name;
    ASSERT_EQ(vtk.at(name).size(), 4u);
    for (Index i = 0; i < 4; ++i) {
      EXPECT_NEAR(vtk.at(name)[i], column[i], 1e-12) << name;
      EXPECT_EQ(csv.at(name)[i], vtk.at(name)[i]) << name;
    }
  }
  EXPECT_DOUBLE_EQ(csv.at("phi_rhov")[1], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(csv.at("x")[0], m.centroid(0).x());
}

TEST(Snapshot, FreestreamEntropyIsZero) {
  const Mesh m = four_cells();
  const Gas gas;
  const PrimitiveState w{1.4, 3.0, 0.0, 1.0};
  const FieldSnapshot snap = make_snapshot(m, uniform_state(m, w, gas), nullptr, gas, w);
  EXPECT_LE(snap.s.cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE((snap.phi.array() == 1.0).all());
  EXPECT_NEAR(snap.e[0], 1.0 / (0.4 * 1.4), 1e-14);
}

TEST(Snapshot, CenterlineIsSortedAndCoversTube) {
  const CaseSettings s = preset(CaseKind::Sod);
  const Mesh m = build_mesh(s);
  const auto line = case_centerline(s, m);
  ASSERT_FALSE(line.empty());
  for (std::size_t n = 1; n < line.size(); ++n) EXPECT_LE(line[n - 1].x, line[n].x);
  EXPECT_LT(line.front().x, 0.01);
  EXPECT_GT(line.back().x, 0.99);
}

TEST(Cases, ExactSolutionMatchesInitialData) {
  for (CaseKind kind : {CaseKind::Sod, CaseKind::Expansion}) {
    const auto [left, right] = riemann_states(kind);
    EXPECT_EQ(exact_solution(kind, 0.2, 0.0).rho, left.rho);
    EXPECT_EQ(exact_solution(kind, 0.8, 0.0).p, right.p);
  }
  // Undisturbed far field at t = 0.2.
  EXPECT_DOUBLE_EQ(exact_solution(CaseKind::Sod, 0.01, 0.2).rho, 1.0);
  EXPECT_DOUBLE_EQ(exact_solution(CaseKind::Sod, 0.99, 0.2).rho, 0.125);
}

TEST(Cases, OutputDirectoryAndRerun) {
  CaseSettings s = preset(CaseKind::Sod);
  s.nx = 41;
  s.ny = 6;
  s.run.t_end = 0.05;
  s.output = scratch_dir("rerun") / "first";
  const Mesh m = build_mesh(s);
  const CaseResult r = run_case(s, m);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.time, 0.05);
  write_case_outputs(s, m, r);
  for (const char* name : {"mesh.txt", "config.resolved", "snapshot.vtk", "snapshot.csv", "centerline.csv"}) {
    EXPECT_TRUE(fs::exists(s.output / name)) << name;
  }

  // The resolved config plus the saved mesh reproduce the run exactly.
  CaseSettings again = load_config(s.output / "config.resolved");
  EXPECT_EQ(again.mesh_file, s.output / "mesh.txt");
  const Mesh m2 = build_mesh(again);
  const CaseResult r2 = run_case(again, m2);
  ASSERT_TRUE(r2.ok);
  EXPECT_EQ(r2.steps, r.steps);
  EXPECT_EQ((r2.q - r.q).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Cases, SteadyRunWritesResidualHistory) {
  CaseSettings s = preset(CaseKind::Wedge);
  s.nx = 12;
  s.ny = 12;
  s.run.max_iters = 30;
  s.output = scratch_dir("steady");
  const Mesh m = build_mesh(s);
  const CaseResult r = run_case(s, m);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.history.iteration.size(), 30u);
  EXPECT_EQ(r.history.residual[0], 1.0);
  write_case_outputs(s, m, r);
  std::ifstream in(s.output / "residual.txt");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.front(), '#');
  int rows = 0;
  for (std::string line; std::getline(in, line);) rows += line.empty() ? 0 : 1;
  EXPECT_EQ(rows, 30);
}

TEST(Cases, ExpansionStaysPositiveWithMlpPw) {
  CaseSettings s = preset(CaseKind::Expansion);
  const Mesh m = build_mesh(s);
  const CaseResult r = run_case(s, m);
  ASSERT_TRUE(r.ok) << r.error;
  for (Index i = 0; i < m.num_cells(); ++i) {
    const PrimitiveState w = to_primitive(Vector4d(r.q.col(i)), s.run.gas);
    ASSERT_GT(w.rho, 0.0);
    ASSERT_GT(w.p, 0.0);
  }
}

TEST(Cases, FailureWritesDiagnostic) {
  CaseSettings s = preset(CaseKind::Expansion);
  s.nx = 41;
  s.ny = 6;
  s.run.limiter.kind = LimiterKind::None;
  s.run.positivity_fallback = false;
  s.output = scratch_dir("failure");
  const Mesh m = build_mesh(s);
  const CaseResult r = run_case(s, m);
  ASSERT_FALSE(r.ok);
  write_case_outputs(s, m, r);
  EXPECT_TRUE(fs::exists(s.output / "diagnostic.vtk"));
  EXPECT_TRUE(fs::exists(s.output / "error.txt"));
}
