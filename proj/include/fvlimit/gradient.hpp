#pragma once

#include "fvlimit/mesh.hpp"
#include "fvlimit/types.hpp"

namespace fvlimit {

// Per-cell gradient of each variable.
template <int Vars>
struct GradientField {
  Field<Vars> dx;
  Field<Vars> dy;

  [[nodiscard]] Eigen::Matrix<double, Vars, 2> at(Index i) const {
    Eigen::Matrix<double, Vars, 2> g;
    g.col(0) = dx.col(i);
    g.col(1) = dy.col(i);
    return g;
  }
};

// Inverse-distance weights w_li = 1/|r_l - r_i| over V(l), normalised per vertex.
class NodalWeights {
 public:
  // Throws DegenerateGeometry when a vertex sits on a cell centroid.
  NodalWeights(const Mesh& mesh, const Stencils& stencils);

  // Vertex value = weighted mean of cell values over V(l). Evaluated as an
  // offset from the first contributing cell so uniform input stays exact.
  template <int Vars>
  void average(const Field<Vars>& cells, Field<Vars>& vertices) const;

  [[nodiscard]] const Adjacency& vertex_cells() const { return *vertex_cells_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

 private:
  const Adjacency* vertex_cells_;
  std::vector<double> weights_;  // aligned with vertex_cells_->items
};

template <int Vars>
[[nodiscard]] Field<Vars> nodal_average(const Mesh& mesh, const Stencils& stencils, const Field<Vars>& cells);

// Green-Gauss over each cell boundary with the face value taken as the mean
// of its two vertex values.
template <int Vars>
void green_gauss(const Mesh& mesh, const Field<Vars>& vertex_values, GradientField<Vars>& out);

template <int Vars>
[[nodiscard]] GradientField<Vars> green_gauss(const Mesh& mesh, const Field<Vars>& vertex_values) {
  GradientField<Vars> g;
  green_gauss(mesh, vertex_values, g);
  return g;
}

}  // namespace fvlimit
