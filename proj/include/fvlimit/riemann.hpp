#pragma once

#include "fvlimit/state.hpp"

namespace fvlimit {

// Exact solution of the 1D Riemann problem for a perfect gas. The
// transverse velocity v is advected as a passive scalar.
class ExactRiemann {
 public:
  ExactRiemann(const PrimitiveState& left, const PrimitiveState& right, const Gas& gas = {});

  // Samples the self-similar solution at xi = x / t.
  [[nodiscard]] PrimitiveState sample(double xi) const;

  [[nodiscard]] bool vacuum() const { return vacuum_; }
  [[nodiscard]] double star_pressure() const { return p_star_; }
  [[nodiscard]] double star_velocity() const { return u_star_; }

 private:
  [[nodiscard]] PrimitiveState sample_vacuum(double xi) const;

  PrimitiveState left_;
  PrimitiveState right_;
  Gas gas_;
  double cL_;
  double cR_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
  bool vacuum_ = false;
};

[[nodiscard]] inline PrimitiveState exact_riemann_1d(const PrimitiveState& left, const PrimitiveState& right,
                                                     const Gas& gas, double xi) {
  return ExactRiemann(left, right, gas).sample(xi);
}

}  // namespace fvlimit
