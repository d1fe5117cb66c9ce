#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsc/term.hpp"
#include "vsc/types.hpp"

namespace vsc {

enum class Rule : std::uint8_t { Ax, App, Lam, Es, Many };
std::string to_string(Rule r);

// Linear judgments carry `lin`, multi judgments carry `multi`.
struct Judgment {
  TypeContext ctx;
  TermPtr subject;
  bool linear = false;
  LinearType lin;
  MultiType multi;

  // The conclusion type as a multi type; a linear A reads as [A].
  MultiType as_multi() const { return linear ? singleton(lin) : multi; }
};

std::string to_string(const Judgment& j);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Rule rule;
  Judgment concl;
  std::vector<DerivPtr> premises;
};

struct DerivationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Smart constructors compute the conclusion and throw DerivationError on shape errors.
DerivPtr make_ax(const std::string& x, const LinearType& a);
DerivPtr make_app(const DerivPtr& fun, const DerivPtr& arg);
DerivPtr make_lam(const std::string& x, const DerivPtr& body);
DerivPtr make_es(const DerivPtr& body, const std::string& x, const DerivPtr& arg);
DerivPtr make_many(const TermPtr& subject, std::vector<DerivPtr> premises);

// Raw node, conclusion taken as given. Used by deserialization before checking.
DerivPtr make_raw(Rule r, Judgment concl, std::vector<DerivPtr> premises);

struct CheckReport {
  bool ok = true;
  std::string message;  // first violation, with the offending node's judgment
};

CheckReport check_derivation(const DerivPtr& d);

struct DerivSizes {
  std::size_t general = 0;
  std::size_t mult = 0;
};
DerivSizes sizes(const DerivPtr& d);

struct DerivationClass {
  bool inert = false;
  bool tight = false;
  bool shrinking = false;
  bool unitary_shrinking = false;
};
DerivationClass classify_derivation(const DerivPtr& d);

// Trees equal rule-for-rule, many premises up to permutation. Different subjects give false.
bool skeleton_eq(const DerivPtr& a, const DerivPtr& b);

// Apply a ground substitution to every judgment of the tree.
DerivPtr apply_subst(const GroundSubstitution& s, const DerivPtr& d);
void collect_grounds(const DerivPtr& d, std::set<unsigned>& out);

struct DerivationParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string serialize(const DerivPtr& d);
// Throws DerivationParseError on malformed text and DerivationError when the tree is invalid.
DerivPtr deserialize(const std::string& text);

}  // namespace vsc
