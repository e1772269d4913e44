#include "fvlimit/limiters.hpp"

#include <limits>

namespace fvlimit {

std::string to_string(LimiterKind kind) {
  switch (kind) {
    case LimiterKind::None:
      return "none";
    case LimiterKind::BarthJespersen:
      return "bj";
    case LimiterKind::Venkatakrishnan:
      return "venkat";
    case LimiterKind::Mlp:
      return "mlp";
    case LimiterKind::MlpPw:
      return "mlp-pw";
  }
  return "none";
}

std::string to_string(SmoothFunction fn) {
  return fn == SmoothFunction::BarthJespersen ? "f_bj" : "f_v";
}

LimiterKind limiter_kind_from_string(const std::string& name) {
  if (name == "none") return LimiterKind::None;
  if (name == "bj" || name == "barth-jespersen") return LimiterKind::BarthJespersen;
  if (name == "venkat" || name == "venkatakrishnan") return LimiterKind::Venkatakrishnan;
  if (name == "mlp") return LimiterKind::Mlp;
  if (name == "mlp-pw") return LimiterKind::MlpPw;
  throw std::invalid_argument("unknown limiter '" + name + "'");
}

SmoothFunction smooth_function_from_string(const std::string& name) {
  if (name == "f_bj" || name == "bj") return SmoothFunction::BarthJespersen;
  if (name == "f_v" || name == "venkat") return SmoothFunction::Venkatakrishnan;
  throw std::invalid_argument("unknown smooth function '" + name + "'");
}

template <int Vars>
void gather_bounds(const Mesh& mesh, const Stencils& stencils, const Field<Vars>& cells, const Field<Vars>& vertex_avg,
                   CellBounds<Vars>& out) {
  const Index nv = mesh.num_vertices();
  const Index nc = mesh.num_cells();
  const Index nf = mesh.num_faces();
  const Index rows = cells.rows();

  out.vertex_max.resize(rows, nv);
  out.vertex_min.resize(rows, nv);
  const Adjacency& vc = stencils.vertex_cells;
  for (Index l = 0; l < nv; ++l) {
    const Index* it = vc.begin(l);
    Eigen::Matrix<double, Vars, 1> hi = cells.col(*it);
    Eigen::Matrix<double, Vars, 1> lo = hi;
    for (++it; it != vc.end(l); ++it) {
      hi = hi.cwiseMax(cells.col(*it));
      lo = lo.cwiseMin(cells.col(*it));
    }
    out.vertex_max.col(l) = hi;
    out.vertex_min.col(l) = lo;
  }

  out.face_max.resize(rows, nf);
  out.face_min.resize(rows, nf);
  for (Index k = 0; k < nf; ++k) {
    const Face& f = mesh.face(k);
    out.face_max.col(k) = 0.5 * (out.vertex_max.col(f.a) + out.vertex_max.col(f.b));
    out.face_min.col(k) = 0.5 * (out.vertex_min.col(f.a) + out.vertex_min.col(f.b));
  }

  out.strict_max.resize(rows, nc);
  out.strict_min.resize(rows, nc);
  out.neighbor_max.resize(rows, nc);
  out.neighbor_min.resize(rows, nc);
  for (Index i = 0; i < nc; ++i) {
    const auto ring = mesh.cell_vertices()[i];
    Eigen::Matrix<double, Vars, 1> hi = vertex_avg.col(ring[0]);
    Eigen::Matrix<double, Vars, 1> lo = hi;
    for (std::size_t a = 1; a < ring.size(); ++a) {
      hi = hi.cwiseMax(vertex_avg.col(ring[a]));
      lo = lo.cwiseMin(vertex_avg.col(ring[a]));
    }
    out.strict_max.col(i) = hi;
    out.strict_min.col(i) = lo;

    hi = cells.col(i);
    lo = hi;
    for (Index j : stencils.face_neighbors[i]) {
      hi = hi.cwiseMax(cells.col(j));
      lo = lo.cwiseMin(cells.col(j));
    }
    out.neighbor_max.col(i) = hi;
    out.neighbor_min.col(i) = lo;
  }
}

template <int Vars>
void neighborhood_extrema(const Mesh& mesh, const CellBounds<Vars>& bounds, Field<Vars>& max, Field<Vars>& min) {
  const Index nc = mesh.num_cells();
  max.resize(bounds.vertex_max.rows(), nc);
  min.resize(bounds.vertex_min.rows(), nc);
  for (Index i = 0; i < nc; ++i) {
    const auto ring = mesh.cell_vertices()[i];
    max.col(i) = bounds.vertex_max.col(ring[0]);
    min.col(i) = bounds.vertex_min.col(ring[0]);
    for (std::size_t a = 1; a < ring.size(); ++a) {
      max.col(i) = max.col(i).cwiseMax(bounds.vertex_max.col(ring[a]));
      min.col(i) = min.col(i).cwiseMin(bounds.vertex_min.col(ring[a]));
    }
  }
}

namespace {

// Shared loop: `points` yields (offset, bound-column selector) pairs through
// the two callbacks; the result is the per-variable minimum of limit_point.
template <int Vars, typename Offset, typename Upper, typename Lower>
LimitVector<Vars> limit_cell(Index i, std::size_t count, const Field<Vars>& q, const GradientField<Vars>& grad,
                             Offset offset, Upper upper, Lower lower, SmoothFunction fn, double eps_sq, bool clip) {
  const Index rows = q.rows();
  LimitVector<Vars> phi = LimitVector<Vars>::Ones(rows);
  for (std::size_t t = 0; t < count; ++t) {
    const Vector2d dr = offset(t);
    for (Index v = 0; v < rows; ++v) {
      const double qi = q(v, i);
      const double dm = grad.dx(v, i) * dr.x() + grad.dy(v, i) * dr.y();
      phi[v] = std::min(phi[v], limit_point(qi, dm, upper(t, v), lower(t, v), fn, eps_sq));
    }
  }
  if (clip) phi = phi.cwiseMax(0.0).cwiseMin(1.0);
  return phi;
}

}  // namespace

template <int Vars>
LimitVector<Vars> limit_bj(const Mesh& mesh, Index i, const CellBounds<Vars>& b, const Field<Vars>& q,
                           const GradientField<Vars>& grad) {
  const auto ring = mesh.cell_vertices()[i];
  const Vector2d rc = mesh.centroid(i);
  return limit_cell<Vars>(
      i, ring.size(), q, grad, [&](std::size_t t) { return Vector2d(mesh.vertex(ring[t]) - rc); },
      [&](std::size_t, Index v) { return b.neighbor_max(v, i); },
      [&](std::size_t, Index v) { return b.neighbor_min(v, i); }, SmoothFunction::BarthJespersen, 0.0, false);
}

template <int Vars>
LimitVector<Vars> limit_venkat(const Mesh& mesh, Index i, const CellBounds<Vars>& b, const Field<Vars>& q,
                               const GradientField<Vars>& grad, double K, bool clip) {
  const auto ring = mesh.cell_vertices()[i];
  const Vector2d rc = mesh.centroid(i);
  return limit_cell<Vars>(
      i, ring.size(), q, grad, [&](std::size_t t) { return Vector2d(mesh.vertex(ring[t]) - rc); },
      [&](std::size_t, Index v) { return b.neighbor_max(v, i); },
      [&](std::size_t, Index v) { return b.neighbor_min(v, i); }, SmoothFunction::Venkatakrishnan,
      venkat_eps_sq(K, mesh.area(i)), clip);
}

template <int Vars>
LimitVector<Vars> limit_mlp(const Mesh& mesh, Index i, const CellBounds<Vars>& b, const Field<Vars>& q,
                            const GradientField<Vars>& grad, SmoothFunction fn, double K, bool clip) {
  const auto ring = mesh.cell_vertices()[i];
  const Vector2d rc = mesh.centroid(i);
  return limit_cell<Vars>(
      i, ring.size(), q, grad, [&](std::size_t t) { return Vector2d(mesh.vertex(ring[t]) - rc); },
      [&](std::size_t t, Index v) { return b.vertex_max(v, ring[t]); },
      [&](std::size_t t, Index v) { return b.vertex_min(v, ring[t]); }, fn, venkat_eps_sq(K, mesh.area(i)), clip);
}

template <int Vars>
LimitVector<Vars> limit_mlp_pw(const Mesh& mesh, Index i, const CellBounds<Vars>& b, const Field<Vars>& q,
                               const GradientField<Vars>& grad, double omega, SmoothFunction fn, double K, bool clip) {
  const auto faces = mesh.cell_faces()[i];
  const Vector2d rc = mesh.centroid(i);
  return limit_cell<Vars>(
      i, faces.size(), q, grad, [&](std::size_t t) { return Vector2d(mesh.face_midpoint(faces[t]) - rc); },
      [&](std::size_t t, Index v) { return blend_bound(omega, b.face_max(v, faces[t]), b.strict_max(v, i)); },
      [&](std::size_t t, Index v) { return blend_bound(omega, b.face_min(v, faces[t]), b.strict_min(v, i)); }, fn,
      venkat_eps_sq(K, mesh.area(i)), clip);
}

template <int Vars>
void compute_limits(const Mesh& mesh, const CellBounds<Vars>& bounds, const Field<Vars>& q,
                    const GradientField<Vars>& grad, const LimiterSpec& spec, const Eigen::VectorXd& omega,
                    Field<Vars>& phi) {
  const Index nc = mesh.num_cells();
  phi.resize(q.rows(), nc);
  const bool clip = spec.clip();
  switch (spec.kind) {
    case LimiterKind::None:
      phi.setOnes();
      return;
    case LimiterKind::BarthJespersen:
      // f_bj is intrinsic to this limiter; spec.smooth applies to the MLP family only.
      for (Index i = 0; i < nc; ++i) phi.col(i) = limit_bj(mesh, i, bounds, q, grad);
      return;
    case LimiterKind::Venkatakrishnan:
      for (Index i = 0; i < nc; ++i) phi.col(i) = limit_venkat(mesh, i, bounds, q, grad, spec.K, clip);
      return;
    case LimiterKind::Mlp:
      for (Index i = 0; i < nc; ++i) phi.col(i) = limit_mlp(mesh, i, bounds, q, grad, spec.smooth, spec.K, clip);
      return;
    case LimiterKind::MlpPw:
      for (Index i = 0; i < nc; ++i) {
        phi.col(i) = limit_mlp_pw(mesh, i, bounds, q, grad, omega[i], spec.smooth, spec.K, clip);
      }
      return;
  }
}

void pressure_weights(const Mesh& mesh, const ScalarField& vertex_pressure, Eigen::VectorXd& omega) {
  const Index nc = mesh.num_cells();
  omega.resize(nc);
  for (Index i = 0; i < nc; ++i) {
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (Index l : mesh.cell_vertices()[i]) {
      hi = std::max(hi, vertex_pressure(0, l));
      lo = std::min(lo, vertex_pressure(0, l));
    }
    omega[i] = pressure_weight(lo, hi);
  }
}

void apply_limiters(const Mesh& mesh, const Stencils& stencils, const NodalWeights& weights, const StateField& states,
                    const StateField& vertex_avg, const GradientField<4>& grad, const LimiterSpec& spec,
                    const Gas& gas, LimitField& out, LimiterWorkspace& ws) {
  const Index nc = mesh.num_cells();
  if (spec.kind == LimiterKind::None) {
    out.phi.setOnes(4, nc);
    out.omega_p.setOnes(nc);
    return;
  }
  gather_bounds(mesh, stencils, states, vertex_avg, ws.bounds);
  if (spec.kind == LimiterKind::MlpPw) {
    ws.cell_pressure.resize(1, nc);
    for (Index i = 0; i < nc; ++i) {
      const Vector4d q = states.col(i);
      const double p = pressure(q, gas);
      if (!(q[0] > 0.0) || !(p > 0.0)) {
        throw NonPhysicalState("non-physical state in cell " + std::to_string(i), i);
      }
      ws.cell_pressure(0, i) = p;
    }
    weights.average(ws.cell_pressure, ws.vertex_pressure);
    pressure_weights(mesh, ws.vertex_pressure, out.omega_p);
  } else {
    out.omega_p.setOnes(nc);
  }
  compute_limits(mesh, ws.bounds, states, grad, spec, out.omega_p, out.phi);
}

LimitField apply_limiters(const Mesh& mesh, const Stencils& stencils, const StateField& states,
                          const LimiterSpec& spec, const Gas& gas) {
  const NodalWeights weights(mesh, stencils);
  StateField vertex_avg;
  weights.average(states, vertex_avg);
  GradientField<4> grad;
  green_gauss(mesh, vertex_avg, grad);
  LimitField out;
  LimiterWorkspace ws;
  apply_limiters(mesh, stencils, weights, states, vertex_avg, grad, spec, gas, out, ws);
  return out;
}

#define FVLIMIT_INSTANTIATE(V)                                                                                     \
  template void gather_bounds<V>(const Mesh&, const Stencils&, const Field<V>&, const Field<V>&, CellBounds<V>&);  \
  template void neighborhood_extrema<V>(const Mesh&, const CellBounds<V>&, Field<V>&, Field<V>&);                  \
  template LimitVector<V> limit_bj<V>(const Mesh&, Index, const CellBounds<V>&, const Field<V>&,                   \
                                      const GradientField<V>&);                                                    \
  template LimitVector<V> limit_venkat<V>(const Mesh&, Index, const CellBounds<V>&, const Field<V>&,               \
                                          const GradientField<V>&, double, bool);                                  \
  template LimitVector<V> limit_mlp<V>(const Mesh&, Index, const CellBounds<V>&, const Field<V>&,                  \
                                       const GradientField<V>&, SmoothFunction, double, bool);                     \
  template LimitVector<V> limit_mlp_pw<V>(const Mesh&, Index, const CellBounds<V>&, const Field<V>&,               \
                                          const GradientField<V>&, double, SmoothFunction, double, bool);          \
  template void compute_limits<V>(const Mesh&, const CellBounds<V>&, const Field<V>&, const GradientField<V>&,     \
                                  const LimiterSpec&, const Eigen::VectorXd&, Field<V>&);

FVLIMIT_INSTANTIATE(1)
FVLIMIT_INSTANTIATE(4)
#undef FVLIMIT_INSTANTIATE

}  // namespace fvlimit
