#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "fvlimit/gradient.hpp"
#include "fvlimit/mesh.hpp"
#include "fvlimit/state.hpp"

namespace fvlimit {

enum class LimiterKind { None, BarthJespersen, Venkatakrishnan, Mlp, MlpPw };
enum class SmoothFunction { BarthJespersen, Venkatakrishnan };

[[nodiscard]] std::string to_string(LimiterKind kind);
[[nodiscard]] std::string to_string(SmoothFunction fn);
[[nodiscard]] LimiterKind limiter_kind_from_string(const std::string& name);
[[nodiscard]] SmoothFunction smooth_function_from_string(const std::string& name);

struct LimiterSpec {
  LimiterKind kind = LimiterKind::MlpPw;
  SmoothFunction smooth = SmoothFunction::Venkatakrishnan;
  double K = 1.0;
  std::optional<bool> clip_to_unit;  // unset: clip only for the Venkatakrishnan function

  [[nodiscard]] bool clip() const { return clip_to_unit.value_or(smooth == SmoothFunction::Venkatakrishnan); }
};

// ---------------------------------------------------------------------------
// Point kernels

template <typename Scalar>
[[nodiscard]] Scalar f_bj(Scalar delta_plus, Scalar delta_minus) {
  return std::min(Scalar(1), delta_plus / delta_minus);
}

template <typename Scalar>
[[nodiscard]] Scalar f_v(Scalar delta_plus, Scalar delta_minus, Scalar eps_sq) {
  const Scalar p2 = delta_plus * delta_plus;
  const Scalar m2 = delta_minus * delta_minus;
  const Scalar num = (p2 + eps_sq) * delta_minus + Scalar(2) * m2 * delta_plus;
  const Scalar den = p2 + Scalar(2) * m2 + delta_plus * delta_minus + eps_sq;
  return num / (den * delta_minus);
}

// eps^2 = (K dh)^3 with dh the square root of the cell area.
template <typename Scalar>
[[nodiscard]] Scalar venkat_eps_sq(Scalar K, Scalar area) {
  using std::sqrt;
  const Scalar t = K * sqrt(area);
  return t * t * t;
}

// Limiter value required at one test point where the unlimited reconstruction
// deviates from the cell value by delta_minus and the admissible range is
// [lower, upper]. The headroom is clamped at zero when the cell value itself
// lies outside the range.
template <typename Scalar>
[[nodiscard]] Scalar limit_point(Scalar q_cell, Scalar delta_minus, Scalar upper, Scalar lower, SmoothFunction fn,
                                 Scalar eps_sq) {
  using std::abs;
  if (abs(delta_minus) <= Scalar(1e-14) * abs(q_cell)) return Scalar(1);
  const Scalar delta_plus =
      delta_minus > Scalar(0) ? std::max(upper - q_cell, Scalar(0)) : std::min(lower - q_cell, Scalar(0));
  return fn == SmoothFunction::BarthJespersen ? f_bj(delta_plus, delta_minus)
                                              : f_v(delta_plus, delta_minus, eps_sq);
}

// min over test points r_t of limit_point, for a reconstruction
// q(r) = q_cell + gradient . (r - r_cell). `offsets` are r_t - r_cell.
template <typename Scalar>
[[nodiscard]] Scalar limit_at_points(Scalar q_cell, const Vec2<Scalar>& gradient, std::span<const Vec2<Scalar>> offsets,
                                     std::span<const Scalar> upper, std::span<const Scalar> lower, SmoothFunction fn,
                                     Scalar eps_sq, bool clip) {
  Scalar phi(1);
  for (std::size_t t = 0; t < offsets.size(); ++t) {
    phi = std::min(phi, limit_point(q_cell, gradient.dot(offsets[t]), upper[t], lower[t], fn, eps_sq));
  }
  return clip ? std::clamp(phi, Scalar(0), Scalar(1)) : phi;
}

template <typename Scalar>
[[nodiscard]] Scalar pressure_weight(Scalar p_min, Scalar p_max) {
  const Scalar r = p_min / p_max;
  return r * r * r;
}

// Upper/lower bound of the pressure-weighted condition at one face.
template <typename Scalar>
[[nodiscard]] Scalar blend_bound(Scalar omega, Scalar face_bound, Scalar strict_bound) {
  return omega * face_bound + (Scalar(1) - omega) * strict_bound;
}

// ---------------------------------------------------------------------------
// Field-level bounds

template <int Vars>
struct CellBounds {
  Field<Vars> vertex_max;    // per vertex: extrema of cell values over V(l)
  Field<Vars> vertex_min;
  Field<Vars> face_max;      // per face: mean of the vertex extrema of its end points
  Field<Vars> face_min;
  Field<Vars> strict_max;    // per cell: extrema of the nodal averages over v(i)
  Field<Vars> strict_min;
  Field<Vars> neighbor_max;  // per cell: extrema over i and its face neighbours
  Field<Vars> neighbor_min;
};

template <int Vars>
void gather_bounds(const Mesh& mesh, const Stencils& stencils, const Field<Vars>& cells, const Field<Vars>& vertex_avg,
                   CellBounds<Vars>& out);

template <int Vars>
[[nodiscard]] CellBounds<Vars> gather_bounds(const Mesh& mesh, const Stencils& stencils, const Field<Vars>& cells,
                                             const Field<Vars>& vertex_avg) {
  CellBounds<Vars> b;
  gather_bounds(mesh, stencils, cells, vertex_avg, b);
  return b;
}

// Extrema over the vertex neighbourhood of each cell (cell itself included).
template <int Vars>
void neighborhood_extrema(const Mesh& mesh, const CellBounds<Vars>& bounds, Field<Vars>& max, Field<Vars>& min);

// ---------------------------------------------------------------------------
// Per-cell limiters (all variables of cell i at once)

template <int Vars>
using LimitVector = Eigen::Matrix<double, Vars, 1>;

// Vertex test points against face-neighbour extrema.
template <int Vars>
[[nodiscard]] LimitVector<Vars> limit_bj(const Mesh& mesh, Index i, const CellBounds<Vars>& bounds,
                                         const Field<Vars>& q, const GradientField<Vars>& grad);

template <int Vars>
[[nodiscard]] LimitVector<Vars> limit_venkat(const Mesh& mesh, Index i, const CellBounds<Vars>& bounds,
                                             const Field<Vars>& q, const GradientField<Vars>& grad, double K,
                                             bool clip = true);

// Vertex test points against per-vertex extrema.
template <int Vars>
[[nodiscard]] LimitVector<Vars> limit_mlp(const Mesh& mesh, Index i, const CellBounds<Vars>& bounds,
                                          const Field<Vars>& q, const GradientField<Vars>& grad,
                                          SmoothFunction fn, double K, bool clip);

// Face-centre test points against omega * face bound + (1 - omega) * strict bound.
template <int Vars>
[[nodiscard]] LimitVector<Vars> limit_mlp_pw(const Mesh& mesh, Index i, const CellBounds<Vars>& bounds,
                                             const Field<Vars>& q, const GradientField<Vars>& grad, double omega,
                                             SmoothFunction fn, double K, bool clip);

// Dispatches on spec.kind for every cell. `omega` (per cell) is read for MlpPw only.
template <int Vars>
void compute_limits(const Mesh& mesh, const CellBounds<Vars>& bounds, const Field<Vars>& q,
                    const GradientField<Vars>& grad, const LimiterSpec& spec, const Eigen::VectorXd& omega,
                    Field<Vars>& phi);

// ---------------------------------------------------------------------------
// Euler pipeline

struct LimitField {
  StateField phi;          // one value per conservative variable per cell
  Eigen::VectorXd omega_p; // pressure weight per cell (1 unless MlpPw)
};

// Scratch storage reused across calls.
struct LimiterWorkspace {
  CellBounds<4> bounds;
  ScalarField cell_pressure;
  ScalarField vertex_pressure;
};

// Computes omega_p from nodal-averaged pressure: (min/max over v(i))^3.
void pressure_weights(const Mesh& mesh, const ScalarField& vertex_pressure, Eigen::VectorXd& omega);

// Limits the conservative variables. Throws NonPhysicalState (with cell
// index) if a cell pressure is not positive and the limiter needs it.
void apply_limiters(const Mesh& mesh, const Stencils& stencils, const NodalWeights& weights, const StateField& states,
                    const StateField& vertex_avg, const GradientField<4>& grad, const LimiterSpec& spec,
                    const Gas& gas, LimitField& out, LimiterWorkspace& ws);

[[nodiscard]] LimitField apply_limiters(const Mesh& mesh, const Stencils& stencils, const StateField& states,
                                        const LimiterSpec& spec, const Gas& gas);

}  // namespace fvlimit
