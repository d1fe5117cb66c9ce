#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vsc/derivations.hpp"
#include "vsc/rewriting.hpp"

namespace vsc {

enum class TypingMode : std::uint8_t { OpenTight, StrongUnitary };
std::string to_string(TypingMode m);
TypingMode parse_typing_mode(std::string_view s);  // "open" or "strong"

// Types a normal form following the inductive constructions for inert terms and
// fireballs. `target` is only allowed for inert subjects: it must be inert
// (OpenTight) or left (StrongUnitary). Defaults: 0 (OpenTight), [X] (StrongUnitary).
DerivPtr type_normal_form(const TermPtr& t, TypingMode mode, const std::optional<MultiType>& target = std::nullopt);

// Splits a many-rooted derivation of a theoretical value into parts typed m1 and m2.
std::pair<DerivPtr, DerivPtr> split_value(const DerivPtr& d, const MultiType& m1, const MultiType& m2);
std::vector<DerivPtr> split_value(const DerivPtr& d, const std::vector<MultiType>& parts);
DerivPtr merge_values(const DerivPtr& d1, const DerivPtr& d2);

// Capture-avoiding renaming of a free variable through a derivation.
DerivPtr rename_free(const DerivPtr& d, const std::string& from, const std::string& to);
std::set<std::string> all_names(const DerivPtr& d);

// dt types t with x : N in its context, dv types the value v at N.
DerivPtr subst_derivation(const DerivPtr& dt, const std::string& x, const DerivPtr& dv);

// d types t{x<-v}; returns derivations of t (with x in the context) and of v.
std::pair<DerivPtr, DerivPtr> anti_subst_derivation(const DerivPtr& d, const TermPtr& t, const std::string& x,
                                                    const TermPtr& v);

// d types t; returns a derivation of step_at(t, p, k) with the same final judgment.
DerivPtr reduce_derivation(const DerivPtr& d, const Path& p, StepKind k);

// d types step_at(t, p, k); returns a derivation of t with the same final judgment.
DerivPtr expand_derivation(const DerivPtr& d, const TermPtr& t, const Path& p, StepKind k);

// Product of the many-premise counts met on the way down to p. A multiplicative
// step at p changes the mult size by twice this number.
std::size_t multiplicity_at(const DerivPtr& d, const Path& p);

struct PipelineResult {
  std::optional<DerivPtr> derivation;
  Trace trace;
  bool identity_holds = false;  // 2m + |nf| = mult, open size in OpenTight mode, strong size otherwise
  bool strong_size_identity_holds = false;  // the same equation with the strong size of the normal form
  std::size_t lhs = 0;                      // 2m + |nf|
  std::size_t mult = 0;
};

PipelineResult derive(const TermPtr& t, TypingMode mode, std::size_t fuel = kDefaultFuel);

}  // namespace vsc
