#include "vsc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace vsc {

namespace {

std::string bound_name(std::size_t depth) {
  static const char* base[] = {"x", "y", "z", "w"};
  std::string n = base[depth % 4];
  if (depth >= 4) n += std::to_string(depth / 4);
  return n;
}

std::string free_name(std::size_t i) {
  std::string n(1, static_cast<char>('a' + i % 20));
  if (i >= 20) n += std::to_string(i / 20);
  return n;
}

class Enumerator {
 public:
  Enumerator(std::size_t pool, bool with_es) : pool_(pool), with_es_(with_es) {}

  // Terms of measure exactly n with `depth` binders in scope.
  const std::vector<TermPtr>& exact(std::size_t n, std::size_t depth) {
    auto key = std::make_pair(n, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<TermPtr> out;
    if (n == 0) {
      for (std::size_t i = 0; i < depth; ++i) out.push_back(var(bound_name(i)));
      for (std::size_t i = 0; i < pool_; ++i) out.push_back(var(free_name(i)));
    } else {
      for (const auto& b : exact(n - 1, depth + 1)) out.push_back(abs(bound_name(depth), b));
      for (std::size_t a = 0; a <= n - 1; ++a) {
        const auto& ls = exact(a, depth);
        const auto& rs = exact(n - 1 - a, depth);
        for (const auto& l : ls)
          for (const auto& r : rs) out.push_back(app(l, r));
      }
      if (with_es_) {
        for (std::size_t a = 0; a <= n - 1; ++a) {
          const auto& bs = exact(a, depth + 1);
          const auto& as = exact(n - 1 - a, depth);
          for (const auto& b : bs)
            for (const auto& arg : as) out.push_back(es(b, bound_name(depth), arg));
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::size_t pool_;
  bool with_es_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<TermPtr>> memo_;
};

}  // namespace

std::vector<TermPtr> enumerate_terms(std::size_t max_size, std::size_t var_pool, bool closed_only, bool with_es) {
  Enumerator en(closed_only ? 0 : var_pool, with_es);
  std::vector<TermPtr> out;
  for (std::size_t n = 0; n <= max_size; ++n) {
    const auto& ts = en.exact(n, 0);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  return out;
}

ReductionGraph reduction_graph(const TermPtr& t, Strategy s, std::size_t node_cap, bool evar_enabled) {
  ReductionGraph g;
  std::unordered_map<std::string, std::size_t> index;
  auto add = [&](const TermPtr& u) -> std::optional<std::size_t> {
    std::string k = canonical_key(u);
    if (auto it = index.find(k); it != index.end()) return it->second;
    if (g.nodes.size() >= node_cap) {
      g.truncated = true;
      return std::nullopt;
    }
    index.emplace(std::move(k), g.nodes.size());
    g.nodes.push_back(u);
    g.out.emplace_back();
    return g.nodes.size() - 1;
  };
  add(t);
  for (std::size_t i = 0; i < g.nodes.size() && !g.truncated; ++i) {
    TermPtr cur = g.nodes[i];
    for (const auto& r : redexes(cur, s, evar_enabled)) {
      auto j = add(step_at(cur, r.path, r.kind));
      if (!j) break;
      g.out[i].push_back(g.edges.size());
      g.edges.push_back({i, r.path, r.kind, *j});
    }
  }
  return g;
}

std::string dump_graph(const ReductionGraph& g) {
  std::string out;
  for (const auto& e : g.edges)
    out += print_term(g.nodes[e.from]) + " --" + to_string(e.kind) + "@" + path_to_string(e.path) + "--> " +
           print_term(g.nodes[e.to]) + "\n";
  return out;
}

namespace {

void require_complete(const ReductionGraph& g) {
  if (g.truncated) throw std::invalid_argument("reduction graph is truncated");
}

std::set<std::size_t> successors(const ReductionGraph& g, std::size_t n, std::optional<StepKind> k) {
  std::set<std::size_t> out;
  for (std::size_t ei : g.out[n])
    if (!k || g.edges[ei].kind == *k) out.insert(g.edges[ei].to);
  return out;
}

bool meet(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  return std::any_of(a.begin(), a.end(), [&](std::size_t x) { return b.count(x) != 0; });
}

std::string peak(const ReductionGraph& g, const GraphEdge& e1, const GraphEdge& e2) {
  return print_term(g.nodes[e1.from]) + " -> {" + print_term(g.nodes[e1.to]) + " via " + to_string(e1.kind) + "@" +
         path_to_string(e1.path) + ", " + print_term(g.nodes[e2.to]) + " via " + to_string(e2.kind) + "@" +
         path_to_string(e2.path) + "}";
}

}  // namespace

Verdict check_diamond(const ReductionGraph& g) {
  require_complete(g);
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    const auto& es = g.out[n];
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        const GraphEdge& e1 = g.edges[es[i]];
        const GraphEdge& e2 = g.edges[es[j]];
        if (e1.to == e2.to) continue;
        if (!meet(successors(g, e1.to, std::nullopt), successors(g, e2.to, std::nullopt)))
          return {false, "peak not joinable in one step: " + peak(g, e1, e2)};
      }
    }
  }
  return {};
}

Verdict check_commutation(const ReductionGraph& g, StepKind k1, StepKind k2) {
  require_complete(g);
  for (std::size_t n = 0; n < g.nodes.size(); ++n) {
    for (std::size_t a : g.out[n]) {
      const GraphEdge& e1 = g.edges[a];
      if (e1.kind != k1) continue;
      for (std::size_t b : g.out[n]) {
        const GraphEdge& e2 = g.edges[b];
        if (e2.kind != k2) continue;
        if (!meet(successors(g, e1.to, k2), successors(g, e2.to, k1)))
          return {false, "peak does not commute: " + peak(g, e1, e2)};
      }
    }
  }
  return {};
}

DescentVerdict check_random_descent(const ReductionGraph& g) {
  require_complete(g);
  std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (const auto& e : g.edges) preds[e.to].push_back(e.from);
  std::vector<bool> reaches(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i)
    if (g.out[i].empty()) {
      reaches[i] = true;
      queue.push_back(i);
    }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t p : preds[i])
      if (!reaches[p]) {
        reaches[p] = true;
        queue.push_back(p);
      }
  }
  DescentVerdict v;
  v.normalizing = reaches[0];
  for (const auto& e : g.edges)
    if (reaches[e.from] && !reaches[e.to]) {
      v.ok = false;
      v.message = "normalizing term " + print_term(g.nodes[e.from]) + " has a diverging reduct " +
                  print_term(g.nodes[e.to]);
      return v;
    }
  // Kahn's algorithm on the normalizing part, sinks first.
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (reaches[i]) pending[i] = g.out[i].size();
  std::vector<std::set<StepCounts>> counts(n);
  std::size_t done = 0, total = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (reaches[i]) {
      ++total;
      if (pending[i] == 0) {
        counts[i].insert(StepCounts{});
        queue.push_back(i);
      }
    }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    ++done;
    if (counts[i].size() > 1) {
      v.ok = false;
      v.message = "maximal sequences from " + print_term(g.nodes[i]) + " have different step counts";
      return v;
    }
    for (std::size_t p : preds[i]) {
      if (--pending[p] != 0) continue;
      for (std::size_t ei : g.out[p]) {
        const GraphEdge& e = g.edges[ei];
        for (StepCounts c : counts[e.to]) {
          if (e.kind == StepKind::Mult) ++c.m;
          if (e.kind == StepKind::Expo) ++c.e;
          if (e.kind == StepKind::EVar) ++c.evar;
          counts[p].insert(c);
        }
      }
      queue.push_back(p);
    }
  }
  if (done != total) {
    v.ok = false;
    v.message = "a normalizing term lies on a reduction cycle";
    return v;
  }
  if (v.normalizing) v.counts = *counts[0].begin();
  return v;
}

TermPtr random_term(std::uint64_t seed, const RandomTermParams& params) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::size_t pool = params.closed ? 0 : params.var_pool;
  auto leaf = [&](std::size_t depth) -> TermPtr {
    std::size_t n = depth + pool;
    if (n == 0) return abs(bound_name(0), var(bound_name(0)));
    std::size_t i = pick(n);
    return var(i < depth ? bound_name(i) : free_name(i - depth));
  };
  auto gen = [&](auto& self, std::size_t budget, std::size_t depth) -> TermPtr {
    if (budget <= 1) return leaf(depth);
    std::size_t kinds = params.with_es ? 4 : 3;
    switch (pick(kinds)) {
      case 0: return leaf(depth);
      case 1: return abs(bound_name(depth), self(self, budget - 1, depth + 1));
      case 2: {
        TermPtr l = self(self, budget - 1, depth);
        return app(l, self(self, budget - 1, depth));
      }
      default: {
        TermPtr b = self(self, budget - 1, depth + 1);
        return es(b, bound_name(depth), self(self, budget - 1, depth));
      }
    }
  };
  return gen(gen, params.max_depth, 0);
}

}  // namespace vsc
