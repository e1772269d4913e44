#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fvlimit {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// phi at face centres under the weak bounds is never below phi at the
// vertices under the vertex bounds (f_bj), on random single-cell fixtures.
CheckResult check_weak_ordering(std::int64_t fixtures, std::uint64_t seed);

// Vertex-neighbourhood extrema enclose the strict and face bounds.
CheckResult check_bound_nesting(std::int64_t fields, std::uint64_t seed);

// Uniform flow stays uniform for every limiter over `steps` steps.
CheckResult check_freestream(std::int64_t steps, double tol, std::uint64_t seed);

// HLLC consistency F(q,q) = F(q) and rotational invariance on random pairs.
CheckResult check_hllc_invariants(std::int64_t pairs, double tol, std::uint64_t seed);

// HLLC resolves a stationary contact with zero mass and energy flux.
CheckResult check_stationary_contact(std::int64_t samples, std::uint64_t seed);

// Change of the conserved totals per step equals the boundary flux.
CheckResult check_conservation(std::int64_t steps, double tol, std::uint64_t seed);

// Two identical runs give bit-identical states.
CheckResult check_determinism();

[[nodiscard]] std::vector<CheckResult> run_property_checks();

}  // namespace fvlimit
