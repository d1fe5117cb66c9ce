#include <gtest/gtest.h>

#include "support/checks.hpp"
#include "support/corpus.hpp"

using namespace vsc_test;

TEST(TypingProperties, SubjectReductionClosed) {
  Summary s = check_typing(closed_corpus());
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(TypingProperties, SubjectReductionOpen) {
  Summary s = check_typing(open_corpus());
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(TypingProperties, Adequacy) {
  for (const auto* corpus : {&closed_corpus(), &open_corpus()}) {
    Summary s = check_adequacy(*corpus);
    EXPECT_TRUE(s.ok()) << s.describe();
  }
}

TEST(TypingProperties, NamedDivergents) {
  Summary s = check_named_divergents();
  EXPECT_TRUE(s.ok()) << s.describe();
}

TEST(TypingProperties, DerivationInvariantsOnSamples) {
  Summary s = check_derivation_invariants(open_corpus(), 4);
  EXPECT_TRUE(s.ok()) << s.describe();
}
