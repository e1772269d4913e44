#pragma once

#include "fvlimit/mesh.hpp"
#include "fvlimit/state.hpp"

namespace fvlimit {

// Exterior state for a boundary face, built from the reconstructed interior
// face state. Inflow returns the prescribed state, outflow copies the
// interior, a slip wall mirrors the normal momentum.
template <typename Scalar>
[[nodiscard]] Vec4<Scalar> ghost_state(const Vec4<Scalar>& interior, const BoundaryPatch& patch,
                                       const Vec2<Scalar>& n, const GasModel<Scalar>& gas) {
  switch (patch.kind) {
    case PatchKind::Inflow:
      return to_conservative(Primitive<Scalar>{Scalar(patch.state.rho), Scalar(patch.state.u),
                                               Scalar(patch.state.v), Scalar(patch.state.p)},
                             gas);
    case PatchKind::Outflow:
      return interior;
    case PatchKind::SlipWall: {
      const Scalar mn = interior[1] * n[0] + interior[2] * n[1];
      return {interior[0], interior[1] - Scalar(2) * mn * n[0], interior[2] - Scalar(2) * mn * n[1], interior[3]};
    }
  }
  return interior;
}

}  // namespace fvlimit
