#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fvlimit/state.hpp"
#include "fvlimit/types.hpp"

namespace fvlimit {

enum class PatchKind { Inflow, Outflow, SlipWall };

[[nodiscard]] std::string to_string(PatchKind kind);
[[nodiscard]] PatchKind patch_kind_from_string(const std::string& name);

struct BoundaryPatch {
  std::string tag;
  PatchKind kind = PatchKind::SlipWall;
  PrimitiveState state{};  // prescribed exterior state, inflow only
};

// Edge between two vertices. `a -> b` runs counter-clockwise around `left`,
// so the stored normal points out of `left`. Boundary faces have
// right == kNoCell and a patch index instead.
struct Face {
  Index a = 0;
  Index b = 0;
  Index left = kNoCell;
  Index right = kNoCell;
  Index patch = -1;

  [[nodiscard]] bool boundary() const { return right == kNoCell; }
};

// Returns the patch index for a boundary face given the face (vertex ids),
// its midpoint and its outward normal.
using PatchAssigner = std::function<Index(const Face& face, const Vector2d& midpoint, const Vector2d& normal)>;

class Mesh {
 public:
  Mesh() = default;

  // Builds faces and geometry from vertex rings. Rings may be given in either
  // orientation and are stored counter-clockwise. Throws MalformedMesh.
  static Mesh from_cells(Eigen::Matrix2Xd vertices, const std::vector<std::vector<Index>>& cells,
                         std::vector<BoundaryPatch> patches, const PatchAssigner& assign);

  [[nodiscard]] Index num_vertices() const { return static_cast<Index>(vertices_.cols()); }
  [[nodiscard]] Index num_cells() const { return cell_vertices_.rows(); }
  [[nodiscard]] Index num_faces() const { return static_cast<Index>(faces_.size()); }

  [[nodiscard]] const Eigen::Matrix2Xd& vertices() const { return vertices_; }
  [[nodiscard]] Vector2d vertex(Index l) const { return vertices_.col(l); }

  [[nodiscard]] const Adjacency& cell_vertices() const { return cell_vertices_; }
  [[nodiscard]] const Adjacency& cell_faces() const { return cell_faces_; }
  [[nodiscard]] const std::vector<Face>& faces() const { return faces_; }
  [[nodiscard]] const Face& face(Index k) const { return faces_[k]; }
  [[nodiscard]] const std::vector<BoundaryPatch>& patches() const { return patches_; }
  [[nodiscard]] std::vector<BoundaryPatch>& patches() { return patches_; }
  [[nodiscard]] Index patch_index(const std::string& tag) const;

  [[nodiscard]] const Eigen::Matrix2Xd& centroids() const { return centroids_; }
  [[nodiscard]] Vector2d centroid(Index i) const { return centroids_.col(i); }
  [[nodiscard]] double area(Index i) const { return areas_[i]; }
  [[nodiscard]] const Eigen::VectorXd& areas() const { return areas_; }
  [[nodiscard]] double perimeter(Index i) const { return perimeters_[i]; }

  [[nodiscard]] Vector2d face_midpoint(Index k) const { return midpoints_.col(k); }
  [[nodiscard]] double face_length(Index k) const { return lengths_[k]; }
  [[nodiscard]] Vector2d face_normal(Index k) const { return normals_.col(k); }

  // Normal of face k pointing out of cell i (i must be incident to k).
  [[nodiscard]] Vector2d outward_normal(Index k, Index i) const {
    return faces_[k].left == i ? Vector2d(normals_.col(k)) : Vector2d(-normals_.col(k));
  }

  [[nodiscard]] double total_area() const { return areas_.sum(); }

  // Largest |sum_k S_k n_k| over all cells; zero for closed polygons.
  [[nodiscard]] double max_closure_defect() const;

 private:
  void compute_geometry();

  Eigen::Matrix2Xd vertices_;
  Adjacency cell_vertices_;
  Adjacency cell_faces_;
  std::vector<Face> faces_;
  std::vector<BoundaryPatch> patches_;

  Eigen::Matrix2Xd centroids_;
  Eigen::VectorXd areas_;
  Eigen::VectorXd perimeters_;
  Eigen::Matrix2Xd midpoints_;
  Eigen::VectorXd lengths_;
  Eigen::Matrix2Xd normals_;
};

// Neighbourhoods used by the limiters. All rows are sorted ascending.
struct Stencils {
  Adjacency face_neighbors;    // V(i): cells sharing a face with i
  Adjacency vertex_cells;      // V(l): cells touching vertex l
  Adjacency vertex_neighbors;  // union of V(l) over the vertices of i, without i
  Adjacency face_vertices;     // v(k): the two end vertices of face k
};

// Throws MalformedMesh if a vertex is not used by any cell.
[[nodiscard]] Stencils build_stencils(const Mesh& mesh);

// ---------------------------------------------------------------------------
// Generators

enum class DiagonalPattern { Alternating, Uniform, Random };

struct Box {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;
};

struct RectMeshSpec {
  Index nx = 2;  // grid points along x
  Index ny = 2;  // grid points along y
  Box box{};
  DiagonalPattern pattern = DiagonalPattern::Alternating;
  double jitter = 0.0;  // interior vertex displacement, fraction of spacing
  std::uint64_t seed = 0;
  // left, right, bottom, top
  std::array<BoundaryPatch, 4> sides{BoundaryPatch{"left"}, BoundaryPatch{"right"}, BoundaryPatch{"bottom"},
                                     BoundaryPatch{"top"}};
};

// (nx-1)(ny-1)*2 triangles on a tensor grid; a vertical grid line sits at the
// mid-x of the box whenever nx is odd.
[[nodiscard]] Mesh generate_rect_tri_mesh(const RectMeshSpec& spec);

struct StepGeometry {
  double length = 3.0;
  double height = 1.0;
  double step_x = 0.6;
  double step_height = 0.2;
};

// Forward-facing step tunnel with uniform spacing 1/cells_per_unit. Patches:
// "inflow" (x=0), "outflow" (x=length), "wall" (everything else).
[[nodiscard]] Mesh generate_step_mesh(Index cells_per_unit, const StepGeometry& geometry = {},
                                      const PrimitiveState& inflow = {1.4, 3.0, 0.0, 1.0});

struct WedgeGeometry {
  double length = 1.0;
  double height = 1.0;
  double ramp_start = 0.2;
  double ramp_end = 0.7;
  double angle_deg = 15.0;
};

// Channel with a compression ramp on the lower wall followed by an expansion
// corner. Grid lines are mapped between the lower wall and the top. Patches:
// "inflow", "outflow", "wall" (lower), "top".
[[nodiscard]] Mesh generate_wedge_mesh(Index nx, Index ny, const WedgeGeometry& geometry = {},
                                       const PrimitiveState& inflow = {1.0, 2.0, 0.0, 1.0 / 1.4});

// ---------------------------------------------------------------------------
// Text format (see docs/mesh_format.md)

void save_mesh(const Mesh& mesh, const std::filesystem::path& path);
void write_mesh(const Mesh& mesh, std::ostream& out);
[[nodiscard]] Mesh load_mesh(const std::filesystem::path& path);
[[nodiscard]] Mesh read_mesh(std::istream& in);

}  // namespace fvlimit
