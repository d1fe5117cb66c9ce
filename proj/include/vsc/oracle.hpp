#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vsc/rewriting.hpp"

namespace vsc {

inline constexpr std::size_t kDefaultNodeCap = 100000;

// All terms up to alpha whose measure is at most max_size, where the measure is
// the strong size plus one per explicit substitution. Bound variables are named
// by depth (x, y, z, w, x1, ...), free ones are taken from a, b, c, ... (var_pool
// of them). Ordered by measure, then by construction order.
std::vector<TermPtr> enumerate_terms(std::size_t max_size, std::size_t var_pool, bool closed_only,
                                     bool with_es = true);

struct GraphEdge {
  std::size_t from;
  Path path;
  StepKind kind;
  std::size_t to;
};

struct ReductionGraph {
  std::vector<TermPtr> nodes;  // nodes[0] is the start term
  std::vector<GraphEdge> edges;
  std::vector<std::vector<std::size_t>> out;  // edge indices per node
  bool truncated = false;
};

ReductionGraph reduction_graph(const TermPtr& t, Strategy s, std::size_t node_cap = kDefaultNodeCap,
                               bool evar_enabled = false);
std::string dump_graph(const ReductionGraph& g);

struct Verdict {
  bool ok = true;
  std::string message;  // first violation
};

// All three throw std::invalid_argument on a truncated graph.
Verdict check_diamond(const ReductionGraph& g);
Verdict check_commutation(const ReductionGraph& g, StepKind k1, StepKind k2);

struct StepCounts {
  std::size_t m = 0, e = 0, evar = 0;
  friend auto operator<=>(const StepCounts&, const StepCounts&) = default;
};

struct DescentVerdict : Verdict {
  bool normalizing = false;       // the start node reaches a normal form
  std::optional<StepCounts> counts;  // counts of every maximal sequence from the start, when normalizing
};
DescentVerdict check_random_descent(const ReductionGraph& g);

struct RandomTermParams {
  std::size_t max_depth = 6;
  std::size_t var_pool = 2;
  bool closed = true;
  bool with_es = true;
};

TermPtr random_term(std::uint64_t seed, const RandomTermParams& params);

}  // namespace vsc
