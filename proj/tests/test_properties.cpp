#include <gtest/gtest.h>

#include "fvlimit/verify.hpp"

using namespace fvlimit;

namespace {
void expect_pass(const CheckResult& r) { EXPECT_TRUE(r.passed) << r.name << ": " << r.detail; }
}  // namespace

TEST(Properties, WeakOrdering) { expect_pass(check_weak_ordering(5000, 11)); }
TEST(Properties, BoundNesting) { expect_pass(check_bound_nesting(20, 12)); }
TEST(Properties, Freestream) { expect_pass(check_freestream(20, 0.0, 13)); }
TEST(Properties, HllcInvariants) { expect_pass(check_hllc_invariants(2000, 1e-12, 14)); }
TEST(Properties, StationaryContact) { expect_pass(check_stationary_contact(200, 15)); }
TEST(Properties, Conservation) { expect_pass(check_conservation(20, 1e-12, 16)); }
TEST(Properties, Determinism) { expect_pass(check_determinism()); }
