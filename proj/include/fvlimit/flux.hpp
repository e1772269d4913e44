#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "fvlimit/state.hpp"

namespace fvlimit {

enum class FluxScheme { Hllc, Rusanov };

[[nodiscard]] inline std::string to_string(FluxScheme scheme) {
  return scheme == FluxScheme::Hllc ? "hllc" : "rusanov";
}

[[nodiscard]] inline FluxScheme flux_scheme_from_string(const std::string& name) {
  if (name == "hllc") return FluxScheme::Hllc;
  if (name == "rusanov") return FluxScheme::Rusanov;
  throw std::invalid_argument("unknown flux scheme '" + name + "'");
}

// HLLC flux with Einfeldt wave-speed bounds (Roe-averaged eigenvalues,
// floored by the single-state eigenvalues).
template <typename Scalar>
[[nodiscard]] Vec4<Scalar> hllc_flux(const Vec4<Scalar>& qL, const Vec4<Scalar>& qR, const Vec2<Scalar>& n,
                                     const GasModel<Scalar>& gas) {
  using std::sqrt;
  const Primitive<Scalar> wL = to_primitive(qL, gas);
  if (qL == qR) return physical_flux(wL, n, gas);
  const Primitive<Scalar> wR = to_primitive(qR, gas);

  const Scalar unL = wL.u * n[0] + wL.v * n[1];
  const Scalar unR = wR.u * n[0] + wR.v * n[1];
  const Scalar cL = sound_speed(wL, gas);
  const Scalar cR = sound_speed(wR, gas);
  const Scalar HL = total_enthalpy(wL, gas);
  const Scalar HR = total_enthalpy(wR, gas);

  const Scalar sL = sqrt(wL.rho);
  const Scalar sR = sqrt(wR.rho);
  const Scalar inv = Scalar(1) / (sL + sR);
  const Scalar u = (sL * wL.u + sR * wR.u) * inv;
  const Scalar v = (sL * wL.v + sR * wR.v) * inv;
  const Scalar H = (sL * HL + sR * HR) * inv;
  const Scalar un = u * n[0] + v * n[1];
  const Scalar c = sqrt(std::max((gas.gamma - Scalar(1)) * (H - Scalar(0.5) * (u * u + v * v)), Scalar(0)));

  const Scalar SL = std::min(unL - cL, un - c);
  const Scalar SR = std::max(unR + cR, un + c);

  if (SL >= Scalar(0)) return physical_flux(wL, n, gas);
  if (SR <= Scalar(0)) return physical_flux(wR, n, gas);

  const Scalar mL = wL.rho * (SL - unL);
  const Scalar mR = wR.rho * (SR - unR);
  const Scalar S_star = (wR.p - wL.p + mL * unL - mR * unR) / (mL - mR);

  const auto star_flux = [&](const Primitive<Scalar>& w, const Vec4<Scalar>& q, Scalar S, Scalar unK, Scalar m) {
    const Scalar factor = m / (S - S_star);
    const Scalar shift = S_star - unK;
    const Vec4<Scalar> q_star{factor, factor * (w.u + shift * n[0]), factor * (w.v + shift * n[1]),
                              factor * (q[3] / w.rho + shift * (S_star + w.p / m))};
    return Vec4<Scalar>(physical_flux(w, n, gas) + S * (q_star - q));
  };
  return S_star >= Scalar(0) ? star_flux(wL, qL, SL, unL, mL) : star_flux(wR, qR, SR, unR, mR);
}

template <typename Scalar>
[[nodiscard]] Vec4<Scalar> rusanov_flux(const Vec4<Scalar>& qL, const Vec4<Scalar>& qR, const Vec2<Scalar>& n,
                                        const GasModel<Scalar>& gas) {
  using std::abs;
  const Primitive<Scalar> wL = to_primitive(qL, gas);
  if (qL == qR) return physical_flux(wL, n, gas);
  const Primitive<Scalar> wR = to_primitive(qR, gas);
  const Scalar unL = wL.u * n[0] + wL.v * n[1];
  const Scalar unR = wR.u * n[0] + wR.v * n[1];
  const Scalar speed = std::max(abs(unL) + sound_speed(wL, gas), abs(unR) + sound_speed(wR, gas));
  return Scalar(0.5) * (physical_flux(wL, n, gas) + physical_flux(wR, n, gas)) - Scalar(0.5) * speed * (qR - qL);
}

template <typename Scalar>
[[nodiscard]] Vec4<Scalar> numerical_flux(FluxScheme scheme, const Vec4<Scalar>& qL, const Vec4<Scalar>& qR,
                                          const Vec2<Scalar>& n, const GasModel<Scalar>& gas) {
  return scheme == FluxScheme::Hllc ? hllc_flux(qL, qR, n, gas) : rusanov_flux(qL, qR, n, gas);
}

}  // namespace fvlimit
