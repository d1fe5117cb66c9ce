#include <gtest/gtest.h>

#include "support/checks.hpp"
#include "support/corpus.hpp"

using namespace vsc_test;

namespace {

constexpr std::size_t kSampleMaxSize = 6;
constexpr std::size_t kLaxMaxSize = 5;

}  // namespace

TEST(BoundsProperties, KindTwoExactness) {
  Summary s = check_kind2(closed_corpus());
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(BoundsProperties, RepresentationAndDissectionOnSamples) {
  Summary s = check_sampled_bounds(closed_corpus(), kSampleMaxSize);
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(BoundsProperties, WeakExactBound) {
  Summary s = check_weak_exact(closed_corpus());
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(BoundsProperties, LaxBoundOnShrinkingSamples) {
  Summary s = check_lax_on_samples(closed_corpus(), kLaxMaxSize);
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(BoundsProperties, FixedExamples) {
  for (Summary s : {check_delta_l_golden(), check_key_sizes(), check_gap_reproduction(), check_kind3_delta_l()})
    EXPECT_TRUE(s.ok()) << s.describe();
}
