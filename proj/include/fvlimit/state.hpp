#pragma once

#include <cmath>
#include <string>

#include "fvlimit/errors.hpp"
#include "fvlimit/types.hpp"

namespace fvlimit {

template <typename Scalar>
struct GasModel {
  Scalar gamma = Scalar(1.4);
};

template <typename Scalar>
struct Primitive {
  Scalar rho{};
  Scalar u{};
  Scalar v{};
  Scalar p{};

  [[nodiscard]] bool physical() const { return rho > Scalar(0) && p > Scalar(0); }
};

using PrimitiveState = Primitive<double>;
using Gas = GasModel<double>;

template <typename Scalar>
[[nodiscard]] Vec4<Scalar> to_conservative(const Primitive<Scalar>& w, const GasModel<Scalar>& gas) {
  const Scalar kinetic = Scalar(0.5) * w.rho * (w.u * w.u + w.v * w.v);
  return {w.rho, w.rho * w.u, w.rho * w.v, w.p / (gas.gamma - Scalar(1)) + kinetic};
}

// Pressure without any positivity check.
template <typename Scalar>
[[nodiscard]] Scalar pressure(const Vec4<Scalar>& q, const GasModel<Scalar>& gas) {
  return (gas.gamma - Scalar(1)) * (q[3] - Scalar(0.5) * (q[1] * q[1] + q[2] * q[2]) / q[0]);
}

template <typename Scalar>
[[nodiscard]] bool is_physical(const Vec4<Scalar>& q, const GasModel<Scalar>& gas) {
  return q[0] > Scalar(0) && pressure(q, gas) > Scalar(0);
}

template <typename Scalar>
[[nodiscard]] Primitive<Scalar> to_primitive(const Vec4<Scalar>& q, const GasModel<Scalar>& gas) {
  if (!(q[0] > Scalar(0))) {
    throw NonPhysicalState("non-positive density " + std::to_string(static_cast<double>(q[0])));
  }
  const Scalar inv_rho = Scalar(1) / q[0];
  Primitive<Scalar> w{q[0], q[1] * inv_rho, q[2] * inv_rho, pressure(q, gas)};
  if (!(w.p > Scalar(0))) {
    throw NonPhysicalState("non-positive pressure " + std::to_string(static_cast<double>(w.p)));
  }
  return w;
}

template <typename Scalar>
[[nodiscard]] Scalar sound_speed(const Primitive<Scalar>& w, const GasModel<Scalar>& gas) {
  using std::sqrt;
  return sqrt(gas.gamma * w.p / w.rho);
}

template <typename Scalar>
[[nodiscard]] Scalar total_enthalpy(const Primitive<Scalar>& w, const GasModel<Scalar>& gas) {
  return gas.gamma / (gas.gamma - Scalar(1)) * w.p / w.rho + Scalar(0.5) * (w.u * w.u + w.v * w.v);
}

// Convective flux through a face with unit normal n, from primitive variables.
template <typename Scalar>
[[nodiscard]] Vec4<Scalar> physical_flux(const Primitive<Scalar>& w, const Vec2<Scalar>& n,
                                         const GasModel<Scalar>& gas) {
  const Scalar vn = w.u * n[0] + w.v * n[1];
  const Scalar mass = w.rho * vn;
  return {mass, mass * w.u + w.p * n[0], mass * w.v + w.p * n[1], mass * total_enthalpy(w, gas)};
}

template <typename Scalar>
[[nodiscard]] Vec4<Scalar> physical_flux(const Vec4<Scalar>& q, const Vec2<Scalar>& n,
                                         const GasModel<Scalar>& gas) {
  return physical_flux(to_primitive(q, gas), n, gas);
}

}  // namespace fvlimit
