#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace fvlimit {

using Index = std::int32_t;
inline constexpr Index kNoCell = -1;

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

// Conservative 4-vector (rho, rho*u, rho*v, rho*E), also used for fluxes.
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;

// One column per mesh entity (cell or vertex), one row per variable.
template <int Vars, typename Scalar = double>
using Field = Eigen::Matrix<Scalar, Vars, Eigen::Dynamic>;

using Vector2d = Vec2<double>;
using Vector4d = Vec4<double>;
using ScalarField = Field<1>;
using StateField = Field<4>;

// Compressed row storage for ragged adjacency lists.
struct Adjacency {
  std::vector<Index> offsets{0};
  std::vector<Index> items;

  [[nodiscard]] Index rows() const { return static_cast<Index>(offsets.size()) - 1; }
  [[nodiscard]] Index size(Index row) const { return offsets[row + 1] - offsets[row]; }
  [[nodiscard]] const Index* begin(Index row) const { return items.data() + offsets[row]; }
  [[nodiscard]] const Index* end(Index row) const { return items.data() + offsets[row + 1]; }

  struct Row {
    const Index* first;
    const Index* last;
    [[nodiscard]] const Index* begin() const { return first; }
    [[nodiscard]] const Index* end() const { return last; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(last - first); }
    [[nodiscard]] Index operator[](std::size_t i) const { return first[i]; }
  };
  [[nodiscard]] Row operator[](Index row) const { return {begin(row), end(row)}; }

  void push_row(const std::vector<Index>& row) {
    items.insert(items.end(), row.begin(), row.end());
    offsets.push_back(static_cast<Index>(items.size()));
  }
};

}  // namespace fvlimit
