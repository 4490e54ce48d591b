#include <gtest/gtest.h>

#include "gqd/verify.hpp"

namespace {

TEST(InvariantSuite, AllChecksPass) {
  for (const auto& c : gqd::run_invariant_suite(20, 7))
    EXPECT_TRUE(c.passed) << c.module << " / " << c.name << ": worst " << c.worst << " tol " << c.tolerance;
}

TEST(InvariantSuite, DeterministicForSeed) {
  const auto a = gqd::run_invariant_suite(10, 3);
  const auto b = gqd::run_invariant_suite(10, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].worst, b[i].worst);
  }
}

}  // namespace
