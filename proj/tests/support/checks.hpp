#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsc/term.hpp"

namespace vsc_test {

struct Summary {
  std::size_t checked = 0;
  std::size_t excluded = 0;  // graphs that reached the node cap
  std::size_t violations = 0;
  std::vector<std::string> notes;
  std::vector<std::string> samples;  // first few violations

  void fail(const std::string& what);
  bool ok() const { return violations == 0 && checked > 0; }
  std::string describe() const;
};

// Fixed examples.
Summary check_delta_l_golden();
Summary check_key_sizes();
Summary check_gap_reproduction();
Summary check_kind3_delta_l();

// Corpus suites.
Summary check_rewriting(const std::vector<vsc::TermPtr>& corpus);
Summary check_full_not_diamond();
Summary check_context_grammars(const std::vector<vsc::TermPtr>& corpus);
Summary check_driver_agreement(const std::vector<vsc::TermPtr>& corpus);
Summary check_typing(const std::vector<vsc::TermPtr>& corpus);
Summary check_adequacy(const std::vector<vsc::TermPtr>& corpus);
Summary check_named_divergents();
Summary check_kind2(const std::vector<vsc::TermPtr>& corpus);
Summary check_plotkin(const std::vector<vsc::TermPtr>& corpus);
Summary check_evar_irrelevance(const std::vector<vsc::TermPtr>& corpus);

// Context, inertness and left-shrinking spreading on sampled derivations.
Summary check_derivation_invariants(const std::vector<vsc::TermPtr>& corpus, std::size_t max_size);

// Bounds suites. Weak exactness covers the closed applications of two strong fireballs in the corpus.
Summary check_sampled_bounds(const std::vector<vsc::TermPtr>& corpus, std::size_t max_size);
Summary check_weak_exact(const std::vector<vsc::TermPtr>& corpus);
Summary check_lax_on_samples(const std::vector<vsc::TermPtr>& corpus, std::size_t max_size);

}  // namespace vsc_test
