#include "fvlimit/gradient.hpp"

#include <string>

namespace fvlimit {

NodalWeights::NodalWeights(const Mesh& mesh, const Stencils& stencils) : vertex_cells_(&stencils.vertex_cells) {
  const Adjacency& vc = stencils.vertex_cells;
  weights_.resize(vc.items.size());
  for (Index l = 0; l < vc.rows(); ++l) {
    const Vector2d r = mesh.vertex(l);
    double total = 0.0;
    for (Index at = vc.offsets[l]; at < vc.offsets[l + 1]; ++at) {
      const double distance = (r - mesh.centroid(vc.items[at])).norm();
      if (distance < 1e-14) {
        throw DegenerateGeometry("vertex " + std::to_string(l) + " coincides with centroid of cell " +
                                 std::to_string(vc.items[at]));
      }
      weights_[at] = 1.0 / distance;
      total += weights_[at];
    }
    for (Index at = vc.offsets[l]; at < vc.offsets[l + 1]; ++at) weights_[at] /= total;
  }
}

template <int Vars>
void NodalWeights::average(const Field<Vars>& cells, Field<Vars>& vertices) const {
  const Adjacency& vc = *vertex_cells_;
  vertices.resize(cells.rows(), vc.rows());
  for (Index l = 0; l < vc.rows(); ++l) {
    const Index first = vc.offsets[l];
    const auto base = cells.col(vc.items[first]);
    Eigen::Matrix<double, Vars, 1> offset = Eigen::Matrix<double, Vars, 1>::Zero(cells.rows());
    for (Index at = first + 1; at < vc.offsets[l + 1]; ++at) {
      offset += weights_[at] * (cells.col(vc.items[at]) - base);
    }
    vertices.col(l) = base + offset;
  }
}

template <int Vars>
Field<Vars> nodal_average(const Mesh& mesh, const Stencils& stencils, const Field<Vars>& cells) {
  Field<Vars> out;
  NodalWeights(mesh, stencils).average(cells, out);
  return out;
}

template <int Vars>
void green_gauss(const Mesh& mesh, const Field<Vars>& vertex_values, GradientField<Vars>& out) {
  const Index nc = mesh.num_cells();
  out.dx.resize(vertex_values.rows(), nc);
  out.dy.resize(vertex_values.rows(), nc);
  const auto& faces = mesh.faces();
  for (Index i = 0; i < nc; ++i) {
    // Offsets from one vertex value make constant fields give exactly zero.
    const auto ref = vertex_values.col(mesh.cell_vertices()[i][0]);
    Eigen::Matrix<double, Vars, 1> gx = Eigen::Matrix<double, Vars, 1>::Zero(vertex_values.rows());
    Eigen::Matrix<double, Vars, 1> gy = gx;
    for (Index k : mesh.cell_faces()[i]) {
      const Face& f = faces[k];
      const Vector2d sn = mesh.face_length(k) * mesh.outward_normal(k, i);
      const Eigen::Matrix<double, Vars, 1> face_value =
          0.5 * (vertex_values.col(f.a) - ref) + 0.5 * (vertex_values.col(f.b) - ref);
      gx += sn.x() * face_value;
      gy += sn.y() * face_value;
    }
    const double inv_area = 1.0 / mesh.area(i);
    out.dx.col(i) = gx * inv_area;
    out.dy.col(i) = gy * inv_area;
  }
}

template void NodalWeights::average<1>(const Field<1>&, Field<1>&) const;
template void NodalWeights::average<4>(const Field<4>&, Field<4>&) const;
template Field<1> nodal_average<1>(const Mesh&, const Stencils&, const Field<1>&);
template Field<4> nodal_average<4>(const Mesh&, const Stencils&, const Field<4>&);
template void green_gauss<1>(const Mesh&, const Field<1>&, GradientField<1>&);
template void green_gauss<4>(const Mesh&, const Field<4>&, GradientField<4>&);

}  // namespace fvlimit
