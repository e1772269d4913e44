#include "fvlimit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace fvlimit {

std::string to_string(PatchKind kind) {
  switch (kind) {
    case PatchKind::Inflow:
      return "inflow";
    case PatchKind::Outflow:
      return "outflow";
    case PatchKind::SlipWall:
      return "slip-wall";
  }
  return "slip-wall";
}

PatchKind patch_kind_from_string(const std::string& name) {
  if (name == "inflow") return PatchKind::Inflow;
  if (name == "outflow") return PatchKind::Outflow;
  if (name == "slip-wall" || name == "wall") return PatchKind::SlipWall;
  throw std::invalid_argument("unknown patch kind '" + name + "'");
}

namespace {

double signed_area(const Eigen::Matrix2Xd& vertices, const std::vector<Index>& ring) {
  double twice = 0.0;
  for (std::size_t a = 0; a < ring.size(); ++a) {
    const auto p = vertices.col(ring[a]);
    const auto q = vertices.col(ring[(a + 1) % ring.size()]);
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

std::uint64_t edge_key(Index a, Index b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

}  // namespace

Mesh Mesh::from_cells(Eigen::Matrix2Xd vertices, const std::vector<std::vector<Index>>& cells,
                      std::vector<BoundaryPatch> patches, const PatchAssigner& assign) {
  Mesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.patches_ = std::move(patches);
  const Index nv = mesh.num_vertices();

  std::unordered_map<std::uint64_t, Index> edge_to_face;
  edge_to_face.reserve(cells.size() * 2);
  std::vector<std::vector<Index>> cell_faces(cells.size());

  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<Index> ring = cells[i];
    if (ring.size() < 3) {
      throw MalformedMesh("cell " + std::to_string(i) + " has fewer than 3 vertices");
    }
    for (Index l : ring) {
      if (l < 0 || l >= nv) {
        throw MalformedMesh("cell " + std::to_string(i) + " references vertex " + std::to_string(l));
      }
    }
    const double area = signed_area(mesh.vertices_, ring);
    if (area == 0.0) {
      throw MalformedMesh("cell " + std::to_string(i) + " has zero area");
    }
    if (area < 0.0) {
      std::reverse(ring.begin(), ring.end());
    }
    const auto cell = static_cast<Index>(i);
    for (std::size_t a = 0; a < ring.size(); ++a) {
      const Index va = ring[a];
      const Index vb = ring[(a + 1) % ring.size()];
      if (va == vb) {
        throw MalformedMesh("cell " + std::to_string(i) + " repeats vertex " + std::to_string(va));
      }
      const auto key = edge_key(va, vb);
      auto it = edge_to_face.find(key);
      if (it == edge_to_face.end()) {
        edge_to_face.emplace(key, mesh.num_faces());
        cell_faces[i].push_back(mesh.num_faces());
        mesh.faces_.push_back(Face{va, vb, cell, kNoCell, -1});
        continue;
      }
      Face& face = mesh.faces_[it->second];
      if (face.right != kNoCell || face.left == cell) {
        throw MalformedMesh("non-manifold edge (" + std::to_string(va) + ", " + std::to_string(vb) + ")");
      }
      if (face.a != vb || face.b != va) {
        throw MalformedMesh("inconsistent orientation on edge (" + std::to_string(va) + ", " +
                            std::to_string(vb) + ")");
      }
      face.right = cell;
      cell_faces[i].push_back(it->second);
    }
    mesh.cell_vertices_.push_row(ring);
  }
  for (const auto& row : cell_faces) {
    mesh.cell_faces_.push_row(row);
  }

  mesh.compute_geometry();

  for (Index k = 0; k < mesh.num_faces(); ++k) {
    Face& face = mesh.faces_[k];
    if (!face.boundary()) continue;
    const Index patch = assign ? assign(face, mesh.face_midpoint(k), mesh.face_normal(k)) : -1;
    if (patch < 0 || patch >= static_cast<Index>(mesh.patches_.size())) {
      throw MalformedMesh("boundary face " + std::to_string(k) + " has no patch");
    }
    face.patch = patch;
  }
  return mesh;
}

void Mesh::compute_geometry() {
  const Index nc = num_cells();
  const Index nf = num_faces();
  centroids_.resize(2, nc);
  areas_.resize(nc);
  perimeters_.resize(nc);
  midpoints_.resize(2, nf);
  lengths_.resize(nf);
  normals_.resize(2, nf);

  for (Index k = 0; k < nf; ++k) {
    const Vector2d pa = vertices_.col(faces_[k].a);
    const Vector2d pb = vertices_.col(faces_[k].b);
    const Vector2d edge = pb - pa;
    const double length = edge.norm();
    if (!(length > 0.0)) {
      throw MalformedMesh("face " + std::to_string(k) + " has zero length");
    }
    midpoints_.col(k) = 0.5 * (pa + pb);
    lengths_[k] = length;
    normals_.col(k) = Vector2d(edge.y(), -edge.x()) / length;
  }

  for (Index i = 0; i < nc; ++i) {
    const auto ring = cell_vertices_[i];
    // Fan about the first vertex keeps the centroid well-conditioned far from the origin.
    const Vector2d origin = vertices_.col(ring[0]);
    double twice_area = 0.0;
    Vector2d moment = Vector2d::Zero();
    for (std::size_t a = 0; a < ring.size(); ++a) {
      const Vector2d p = vertices_.col(ring[a]) - origin;
      const Vector2d q = vertices_.col(ring[(a + 1) % ring.size()]) - origin;
      const double cross = p.x() * q.y() - q.x() * p.y();
      twice_area += cross;
      moment += cross * (p + q);
    }
    if (!(twice_area > 0.0)) {
      throw MalformedMesh("cell " + std::to_string(i) + " has non-positive area");
    }
    areas_[i] = 0.5 * twice_area;
    centroids_.col(i) = origin + moment / (3.0 * twice_area);
    double perimeter = 0.0;
    for (Index k : cell_faces_[i]) perimeter += lengths_[k];
    perimeters_[i] = perimeter;
  }
}

double Mesh::max_closure_defect() const {
  double worst = 0.0;
  for (Index i = 0; i < num_cells(); ++i) {
    Vector2d sum = Vector2d::Zero();
    for (Index k : cell_faces_[i]) sum += face_length(k) * outward_normal(k, i);
    worst = std::max(worst, sum.norm());
  }
  return worst;
}

Index Mesh::patch_index(const std::string& tag) const {
  for (std::size_t p = 0; p < patches_.size(); ++p) {
    if (patches_[p].tag == tag) return static_cast<Index>(p);
  }
  return -1;
}

Stencils build_stencils(const Mesh& mesh) {
  Stencils s;
  const Index nc = mesh.num_cells();
  const Index nv = mesh.num_vertices();

  for (Index i = 0; i < nc; ++i) {
    std::vector<Index> row;
    for (Index k : mesh.cell_faces()[i]) {
      const Face& f = mesh.face(k);
      if (f.boundary()) continue;
      row.push_back(f.left == i ? f.right : f.left);
    }
    std::sort(row.begin(), row.end());
    s.face_neighbors.push_row(row);
  }

  std::vector<std::vector<Index>> vertex_cells(nv);
  for (Index i = 0; i < nc; ++i) {
    for (Index l : mesh.cell_vertices()[i]) vertex_cells[l].push_back(i);
  }
  for (Index l = 0; l < nv; ++l) {
    if (vertex_cells[l].empty()) {
      throw MalformedMesh("dangling vertex " + std::to_string(l));
    }
    // cells were visited in ascending order already
    s.vertex_cells.push_row(vertex_cells[l]);
  }

  std::vector<Index> row;
  for (Index i = 0; i < nc; ++i) {
    row.clear();
    for (Index l : mesh.cell_vertices()[i]) {
      for (Index j : s.vertex_cells[l]) {
        if (j != i) row.push_back(j);
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    s.vertex_neighbors.push_row(row);
  }

  for (const Face& f : mesh.faces()) {
    s.face_vertices.push_row({std::min(f.a, f.b), std::max(f.a, f.b)});
  }
  return s;
}

}  // namespace fvlimit
