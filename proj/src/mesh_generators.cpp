#include <cmath>
#include <numbers>
#include <random>

#include "fvlimit/mesh.hpp"

namespace fvlimit {

namespace {

// Splits quad (p00, p10, p11, p01) into two counter-clockwise triangles.
void split_quad(Index p00, Index p10, Index p11, Index p01, bool main_diagonal,
                std::vector<std::vector<Index>>& cells) {
  if (main_diagonal) {
    cells.push_back({p00, p10, p11});
    cells.push_back({p00, p11, p01});
  } else {
    cells.push_back({p00, p10, p01});
    cells.push_back({p10, p11, p01});
  }
}

bool choose_diagonal(DiagonalPattern pattern, Index i, Index j, std::mt19937_64& rng) {
  switch (pattern) {
    case DiagonalPattern::Uniform:
      return true;
    case DiagonalPattern::Alternating:
      return (i + j) % 2 == 0;
    case DiagonalPattern::Random:
      return (rng() >> 63) != 0;
  }
  return true;
}

}  // namespace

Mesh generate_rect_tri_mesh(const RectMeshSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2) {
    throw std::invalid_argument("rect mesh needs at least 2 grid points per direction");
  }
  const Box& box = spec.box;
  const double dx = (box.xmax - box.xmin) / (spec.nx - 1);
  const double dy = (box.ymax - box.ymin) / (spec.ny - 1);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Eigen::Matrix2Xd vertices(2, spec.nx * spec.ny);
  for (Index j = 0; j < spec.ny; ++j) {
    for (Index i = 0; i < spec.nx; ++i) {
      // Edge coordinates are pinned so the box (and the mid line) stay exact.
      double x = (i == spec.nx - 1) ? box.xmax : box.xmin + i * dx;
      double y = (j == spec.ny - 1) ? box.ymax : box.ymin + j * dy;
      if (2 * i == spec.nx - 1) x = 0.5 * (box.xmin + box.xmax);
      const bool interior = i > 0 && i < spec.nx - 1 && j > 0 && j < spec.ny - 1;
      if (interior && spec.jitter > 0.0) {
        x += spec.jitter * dx * unit(rng);
        y += spec.jitter * dy * unit(rng);
      }
      vertices.col(j * spec.nx + i) = Vector2d(x, y);
    }
  }

  std::vector<std::vector<Index>> cells;
  cells.reserve(static_cast<std::size_t>(2 * (spec.nx - 1) * (spec.ny - 1)));
  for (Index j = 0; j + 1 < spec.ny; ++j) {
    for (Index i = 0; i + 1 < spec.nx; ++i) {
      const Index p00 = j * spec.nx + i;
      split_quad(p00, p00 + 1, p00 + 1 + spec.nx, p00 + spec.nx, choose_diagonal(spec.pattern, i, j, rng), cells);
    }
  }

  const double tol = 1e-9 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
  std::vector<BoundaryPatch> patches(spec.sides.begin(), spec.sides.end());
  return Mesh::from_cells(std::move(vertices), cells, std::move(patches),
                          [&](const Face&, const Vector2d& mid, const Vector2d&) -> Index {
                            if (std::abs(mid.x() - box.xmin) < tol) return 0;
                            if (std::abs(mid.x() - box.xmax) < tol) return 1;
                            if (std::abs(mid.y() - box.ymin) < tol) return 2;
                            if (std::abs(mid.y() - box.ymax) < tol) return 3;
                            return -1;
                          });
}

Mesh generate_step_mesh(Index cells_per_unit, const StepGeometry& g, const PrimitiveState& inflow) {
  if (cells_per_unit < 1) throw std::invalid_argument("step mesh needs cells_per_unit >= 1");
  const auto nx = static_cast<Index>(std::lround(g.length * cells_per_unit));
  const auto ny = static_cast<Index>(std::lround(g.height * cells_per_unit));
  const double h = 1.0 / cells_per_unit;
  const auto in_step = [&](double x, double y) { return x > g.step_x && y < g.step_height; };

  std::vector<Index> node(static_cast<std::size_t>((nx + 1) * (ny + 1)), -1);
  const auto node_id = [&](Index i, Index j) -> Index& { return node[static_cast<std::size_t>(j * (nx + 1) + i)]; };
  std::vector<Vector2d> coords;
  const auto vertex = [&](Index i, Index j) {
    Index& id = node_id(i, j);
    if (id < 0) {
      id = static_cast<Index>(coords.size());
      coords.emplace_back(i * h, j * h);
    }
    return id;
  };

  std::vector<std::vector<Index>> cells;
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      if (in_step((i + 0.5) * h, (j + 0.5) * h)) continue;
      const Index p00 = vertex(i, j);
      const Index p10 = vertex(i + 1, j);
      const Index p11 = vertex(i + 1, j + 1);
      const Index p01 = vertex(i, j + 1);
      split_quad(p00, p10, p11, p01, (i + j) % 2 == 0, cells);
    }
  }
  Eigen::Matrix2Xd vertices(2, static_cast<Index>(coords.size()));
  for (std::size_t l = 0; l < coords.size(); ++l) vertices.col(static_cast<Index>(l)) = coords[l];

  std::vector<BoundaryPatch> patches{{"inflow", PatchKind::Inflow, inflow},
                                     {"outflow", PatchKind::Outflow, {}},
                                     {"wall", PatchKind::SlipWall, {}}};
  const double tol = 1e-9;
  return Mesh::from_cells(std::move(vertices), cells, std::move(patches),
                          [&](const Face&, const Vector2d& mid, const Vector2d&) -> Index {
                            if (mid.x() < tol) return 0;
                            if (mid.x() > g.length - tol) return 1;
                            return 2;
                          });
}

Mesh generate_wedge_mesh(Index nx, Index ny, const WedgeGeometry& g, const PrimitiveState& inflow) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("wedge mesh needs nx, ny >= 1");
  const double slope = std::tan(g.angle_deg * std::numbers::pi / 180.0);
  const auto lower = [&](double x) {
    if (x <= g.ramp_start) return 0.0;
    if (x >= g.ramp_end) return (g.ramp_end - g.ramp_start) * slope;
    return (x - g.ramp_start) * slope;
  };

  Eigen::Matrix2Xd vertices(2, (nx + 1) * (ny + 1));
  for (Index j = 0; j <= ny; ++j) {
    for (Index i = 0; i <= nx; ++i) {
      const double x = g.length * i / nx;
      const double yb = lower(x);
      const double y = (j == ny) ? g.height : yb + (g.height - yb) * j / ny;
      vertices.col(j * (nx + 1) + i) = Vector2d(x, y);
    }
  }
  std::vector<std::vector<Index>> cells;
  cells.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      const Index p00 = j * (nx + 1) + i;
      split_quad(p00, p00 + 1, p00 + nx + 2, p00 + nx + 1, (i + j) % 2 == 0, cells);
    }
  }

  std::vector<BoundaryPatch> patches{{"inflow", PatchKind::Inflow, inflow},
                                     {"outflow", PatchKind::Outflow, {}},
                                     {"wall", PatchKind::SlipWall, {}},
                                     {"top", PatchKind::SlipWall, {}}};
  const double tol = 1e-9;
  return Mesh::from_cells(std::move(vertices), cells, std::move(patches),
                          [&](const Face&, const Vector2d& mid, const Vector2d& n) -> Index {
                            if (mid.x() < tol && n.x() < -0.5) return 0;
                            if (mid.x() > g.length - tol && n.x() > 0.5) return 1;
                            if (mid.y() > g.height - tol) return 3;
                            return 2;
                          });
}

}  // namespace fvlimit
