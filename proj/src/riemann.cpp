#include "fvlimit/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace fvlimit {

namespace {

struct PressureFunction {
  double value;
  double derivative;
};

// Jump across a single shock (p > pK) or rarefaction (p <= pK).
PressureFunction pressure_function(double p, const PrimitiveState& w, double c, double gamma) {
  if (p > w.p) {
    const double A = 2.0 / ((gamma + 1.0) * w.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * w.p;
    const double root = std::sqrt(A / (p + B));
    return {(p - w.p) * root, root * (1.0 - 0.5 * (p - w.p) / (B + p))};
  }
  const double ratio = p / w.p;
  const double expo = (gamma - 1.0) / (2.0 * gamma);
  return {2.0 * c / (gamma - 1.0) * (std::pow(ratio, expo) - 1.0),
          std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (w.rho * c)};
}

}  // namespace

ExactRiemann::ExactRiemann(const PrimitiveState& left, const PrimitiveState& right, const Gas& gas)
    : left_(left), right_(right), gas_(gas), cL_(sound_speed(left, gas)), cR_(sound_speed(right, gas)) {
  if (!left.physical() || !right.physical()) {
    throw NonPhysicalState("Riemann data must have positive density and pressure");
  }
  const double g = gas.gamma;
  const double du = right.u - left.u;
  if (2.0 * (cL_ + cR_) / (g - 1.0) <= du) {
    vacuum_ = true;
    return;
  }

  // Primitive-variable guess, floored away from zero.
  const double rho_bar = 0.5 * (left.rho + right.rho);
  const double c_bar = 0.5 * (cL_ + cR_);
  double p = std::max(0.5 * (left.p + right.p) - 0.5 * du * rho_bar * c_bar, 1e-8 * std::min(left.p, right.p));
  for (int iter = 0; iter < 100; ++iter) {
    const auto fL = pressure_function(p, left, cL_, g);
    const auto fR = pressure_function(p, right, cR_, g);
    double next = p - (fL.value + fR.value + du) / (fL.derivative + fR.derivative);
    if (next <= 0.0) next = 0.1 * p;
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-14) break;
  }
  p_star_ = p;
  const auto fL = pressure_function(p, left, cL_, g);
  const auto fR = pressure_function(p, right, cR_, g);
  u_star_ = 0.5 * (left.u + right.u) + 0.5 * (fR.value - fL.value);
}

PrimitiveState ExactRiemann::sample(double xi) const {
  if (vacuum_) return sample_vacuum(xi);
  const double g = gas_.gamma;
  const double gm = (g - 1.0) / (g + 1.0);

  if (xi <= u_star_) {
    const PrimitiveState& w = left_;
    const double c = cL_;
    if (p_star_ > w.p) {
      const double ratio = p_star_ / w.p;
      const double speed = w.u - c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (xi <= speed) return w;
      return {w.rho * (ratio + gm) / (ratio * gm + 1.0), u_star_, w.v, p_star_};
    }
    const double head = w.u - c;
    if (xi <= head) return w;
    const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - c_star;
    if (xi >= tail) return {w.rho * std::pow(p_star_ / w.p, 1.0 / g), u_star_, w.v, p_star_};
    const double cf = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * (w.u - xi));
    const double u = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi);
    const double rho = w.rho * std::pow(cf / c, 2.0 / (g - 1.0));
    return {rho, u, w.v, w.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
  }

  const PrimitiveState& w = right_;
  const double c = cR_;
  if (p_star_ > w.p) {
    const double ratio = p_star_ / w.p;
    const double speed = w.u + c * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi >= speed) return w;
    return {w.rho * (ratio + gm) / (ratio * gm + 1.0), u_star_, w.v, p_star_};
  }
  const double head = w.u + c;
  if (xi >= head) return w;
  const double c_star = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + c_star;
  if (xi <= tail) return {w.rho * std::pow(p_star_ / w.p, 1.0 / g), u_star_, w.v, p_star_};
  const double cf = 2.0 / (g + 1.0) * (c - 0.5 * (g - 1.0) * (w.u - xi));
  const double u = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi);
  const double rho = w.rho * std::pow(cf / c, 2.0 / (g - 1.0));
  return {rho, u, w.v, w.p * std::pow(cf / c, 2.0 * g / (g - 1.0))};
}

// Two rarefactions separated by a vacuum region of zero density and pressure.
PrimitiveState ExactRiemann::sample_vacuum(double xi) const {
  const double g = gas_.gamma;
  const double front_left = left_.u + 2.0 * cL_ / (g - 1.0);
  const double front_right = right_.u - 2.0 * cR_ / (g - 1.0);
  if (xi <= left_.u - cL_) return left_;
  if (xi >= right_.u + cR_) return right_;
  if (xi < front_left) {
    const double cf = 2.0 / (g + 1.0) * (cL_ + 0.5 * (g - 1.0) * (left_.u - xi));
    return {left_.rho * std::pow(cf / cL_, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (cL_ + 0.5 * (g - 1.0) * left_.u + xi),
            left_.v, left_.p * std::pow(cf / cL_, 2.0 * g / (g - 1.0))};
  }
  if (xi > front_right) {
    const double cf = 2.0 / (g + 1.0) * (cR_ - 0.5 * (g - 1.0) * (right_.u - xi));
    return {right_.rho * std::pow(cf / cR_, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (-cR_ + 0.5 * (g - 1.0) * right_.u + xi), right_.v,
            right_.p * std::pow(cf / cR_, 2.0 * g / (g - 1.0))};
  }
  return {0.0, 0.5 * (front_left + front_right), 0.0, 0.0};
}

}  // namespace fvlimit
