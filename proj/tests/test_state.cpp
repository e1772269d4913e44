#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fvlimit/state.hpp"
#include "test_util.hpp"

using namespace fvlimit;

namespace {

const Gas gas{};

void expect_vec(const Vector4d& got, const Vector4d& want, double tol) {
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(got[c], want[c], tol) << "component " << c;
}

}  // namespace

TEST(State, ToConservativeExamples) {
  expect_vec(to_conservative(PrimitiveState{1, 0, 0, 1}, gas), {1, 0, 0, 2.5}, 1e-15);
  expect_vec(to_conservative(PrimitiveState{1, -2, 0, 0.4}, gas), {1, -2, 0, 3.0}, 1e-15);
  expect_vec(to_conservative(PrimitiveState{0.125, 0, 0, 0.1}, gas), {0.125, 0, 0, 0.25}, 1e-15);
}

TEST(State, ToPrimitiveExamples) {
  const auto w = to_primitive(Vector4d(1, 0, 0, 2.5), gas);
  EXPECT_DOUBLE_EQ(w.rho, 1.0);
  EXPECT_DOUBLE_EQ(w.p, 1.0);
  const auto e = to_primitive(Vector4d(1, -2, 0, 3.0), gas);
  EXPECT_DOUBLE_EQ(e.u, -2.0);
  EXPECT_NEAR(e.p, 0.4, 1e-15);
}

TEST(State, NonPhysicalInputsThrow) {
  EXPECT_THROW((void)to_primitive(Vector4d(1, 0, 0, -1), gas), NonPhysicalState);
  EXPECT_THROW((void)to_primitive(Vector4d(0, 0, 0, 1), gas), NonPhysicalState);
  EXPECT_THROW((void)to_primitive(Vector4d(-1, 0, 0, 1), gas), NonPhysicalState);
  EXPECT_THROW((void)physical_flux(Vector4d(1, 3, 0, 1), Vector2d(1, 0), gas), NonPhysicalState);
}

TEST(State, RoundTripRandomStates) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 10000; ++n) {
    const PrimitiveState w = fixtures::random_state(rng);
    const PrimitiveState back = to_primitive(to_conservative(w, gas), gas);
    EXPECT_LE(std::abs(back.rho - w.rho) / w.rho, 1e-14);
    EXPECT_LE(std::abs(back.u - w.u), 1e-14 * std::max(1.0, std::abs(w.u)));
    EXPECT_LE(std::abs(back.v - w.v), 1e-14 * std::max(1.0, std::abs(w.v)));
    // Pressure loses digits to the kinetic energy subtraction.
    const double ke = 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    EXPECT_LE(std::abs(back.p - w.p), 1e-14 * (w.p + ke));
  }
}

TEST(State, PhysicalFluxExamples) {
  expect_vec(physical_flux(Vector4d(1, 0, 0, 2.5), Vector2d(1, 0), gas), {0, 1, 0, 0}, 1e-15);
  // E = 2.5 + 0.5, H = E + p/rho = 4, energy flux rho H u = 4.
  const Vector4d q = to_conservative(PrimitiveState{1, 1, 0, 1}, gas);
  expect_vec(physical_flux(q, Vector2d(1, 0), gas), {1, 2, 0, 4}, 1e-14);
}

TEST(State, FluxMatchesOneDimensionalForm) {
  std::mt19937_64 rng(8);
  for (int n = 0; n < 100; ++n) {
    const PrimitiveState w = fixtures::random_state(rng);
    const Vector4d q = to_conservative(w, gas);
    const double E = q[3] / w.rho;
    const Vector4d F = physical_flux(q, Vector2d(1, 0), gas);
    expect_vec(F, {w.rho * w.u, w.rho * w.u * w.u + w.p, w.rho * w.u * w.v, w.u * (w.rho * E + w.p)},
               1e-12 * std::max(1.0, F.cwiseAbs().maxCoeff()));
  }
}

TEST(State, FluxRotatesWithNormal) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int n = 0; n < 100; ++n) {
    const PrimitiveState w = fixtures::random_state(rng);
    const double th = angle(rng);
    const double c = std::cos(th), s = std::sin(th);
    const Vector2d nrm(c, s);
    // Rotating velocity by -theta and evaluating along x gives the same flux in the rotated frame.
    const PrimitiveState wr{w.rho, c * w.u + s * w.v, -s * w.u + c * w.v, w.p};
    const Vector4d Fr = physical_flux(wr, Vector2d(1, 0), gas);
    const Vector4d F = physical_flux(w, nrm, gas);
    const double tol = 1e-12 * F.cwiseAbs().maxCoeff();
    EXPECT_NEAR(F[0], Fr[0], tol);
    EXPECT_NEAR(F[1], c * Fr[1] - s * Fr[2], tol);
    EXPECT_NEAR(F[2], s * Fr[1] + c * Fr[2], tol);
    EXPECT_NEAR(F[3], Fr[3], tol);
  }
}

TEST(State, GammaIsARuntimeParameter) {
  const GasModel<double> g{5.0 / 3.0};
  const Vector4d q = to_conservative(PrimitiveState{1, 0, 0, 1}, g);
  EXPECT_NEAR(q[3], 1.5, 1e-15);
  EXPECT_NEAR(sound_speed(PrimitiveState{1, 0, 0, 1}, g), std::sqrt(5.0 / 3.0), 1e-15);
}
