#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vsc/term.hpp"

namespace vsc {

enum class StepKind : std::uint8_t { Mult, Expo, EVar };
enum class Strategy : std::uint8_t { Open, External, Full };

std::string to_string(StepKind k);
std::string to_string(Strategy s);
StepKind parse_step_kind(std::string_view s);
Strategy parse_strategy(std::string_view s);

inline constexpr std::size_t kDefaultFuel = 1000;

struct Redex {
  Path path;
  StepKind kind;
  friend bool operator==(const Redex&, const Redex&) = default;
};

// The kind of root redex t is, if any.
std::optional<StepKind> root_redex_kind(const TermPtr& t, bool evar_enabled);

// Fires the rule at the root, through any substitution context. Binders of the
// context are renamed when they would capture.
std::optional<TermPtr> root_step(const TermPtr& t, StepKind kind);

// Positions whose surrounding context belongs to the strategy's context grammar,
// in preorder. Not all of them are redexes.
std::vector<Path> context_positions(const TermPtr& t, Strategy s);

std::vector<Redex> redexes(const TermPtr& t, Strategy s, bool evar_enabled);
std::optional<Redex> first_redex(const TermPtr& t, Strategy s, bool evar_enabled);

// Throws std::out_of_range on a bad path and std::invalid_argument on a non-redex.
TermPtr step_at(const TermPtr& t, const Path& p, StepKind kind);

enum class Status : std::uint8_t { Normal, FuelExhausted };
std::string to_string(Status s);

struct TraceStep {
  Path path;
  StepKind kind;
  TermPtr result;
};

struct Trace {
  TermPtr initial;
  std::vector<TraceStep> steps;
  Status status = Status::Normal;
  std::size_t m_steps = 0;
  std::size_t e_steps = 0;
  std::size_t evar_steps = 0;

  const TermPtr& final_term() const { return steps.empty() ? initial : steps.back().result; }
  const TermPtr& term_before(std::size_t i) const { return i == 0 ? initial : steps[i - 1].result; }
  void record(const Path& p, StepKind k, TermPtr result);
};

Trace evaluate(const TermPtr& t, Strategy s, std::size_t fuel = kDefaultFuel, bool evar_enabled = false);

// Plotkin's call-by-value beta, each step realized as Mult followed by Expo or EVar
// at the same position. Fuel counts VSC steps. Throws std::invalid_argument on ES input.
Trace simulate_plotkin(const TermPtr& t, std::size_t fuel = kDefaultFuel);

std::string format_trace(const Trace& tr, bool with_steps);

}  // namespace vsc
