#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vsc/derivations.hpp"
#include "vsc/inference.hpp"

namespace vsc {

// A derivation is within budget when its general size is at most max_general and
// every judgment in it has type and context sizes at most max_type.
struct Budget {
  std::size_t max_general = 8;
  std::size_t max_type = 6;
  std::size_t cap = 50000;  // symbolic derivations kept per subterm
};

bool within_budget(const DerivPtr& d, const Budget& b);

struct SampleEntry {
  std::vector<MultiType> ctx_types;  // one per variable of SemSample::vars
  MultiType type;
  DerivPtr witness;  // smallest general size among those found
};

struct SemSample {
  std::vector<std::string> vars;  // sorted free variables of the term
  std::vector<SampleEntry> entries;
  Budget budget;
  bool truncated = false;  // some subterm hit the cap
};

// Derivations are searched with unification variables standing for arbitrary
// linear types; each entry is the instance obtained by mapping the remaining
// variables to X. Result multi types created at applications have at most
// max_general elements.
SemSample interpretation_sample(const TermPtr& t, const Budget& budget, bool shrinking_only = false);

struct ComposablePair {
  LinearType left;   // M -o N
  MultiType right;   // M
  DerivPtr left_witness;   // types t at [M -o N]
  DerivPtr right_witness;  // types u at M
};

// Throws std::invalid_argument unless t and u are closed.
std::vector<ComposablePair> composable_pairs(const TermPtr& t, const TermPtr& u, const Budget& budget);

struct TypesBoundReport {
  std::size_t mult = 0;
  std::size_t type_total = 0;  // |context| + |type|
  std::size_t gap = 0;
  bool holds = false;
  bool shrinking = false;
  std::size_t term_size = 0;  // strong size of the subject
  bool size_holds = true;     // |t|s <= type_total, checked only for shrinking derivations
};

TypesBoundReport check_types_bound(const DerivPtr& d);

// A skeleton-equal derivation whose context and type sizes add up to the mult size of d.
DerivPtr size_representation(const DerivPtr& d);

struct Dissection {
  DerivPtr derivation;
  GroundSubstitution substitution;
};

// avoid is extended with the ground types of d.
Dissection size_dissection(const DerivPtr& d, std::set<unsigned> avoid);

// Representation, skeleton, disjointness and size clauses; empty string when all hold.
std::string check_dissection(const DerivPtr& d, const Dissection& dis, const std::set<unsigned>& avoid);

struct BoundLine {
  std::string label;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool ok = true;
};

struct BoundReport {
  bool normalizing = false;
  Trace trace;
  std::size_t cost = 0;  // 2m + |s|s
  std::vector<BoundLine> lax, weak_exact, exact, kind2;
  std::vector<std::string> notes;
  bool ok() const;
};

BoundReport bound_report(const TermPtr& t, const TermPtr& u, std::size_t fuel, const Budget& budget);
std::string format_bound_report(const BoundReport& r);

}  // namespace vsc
