#include "vsc/bounds.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vsc {

namespace {

std::size_t judgment_type_size(const Judgment& j) {
  return j.linear ? type_size(j.lin) : type_size(j.multi);
}

bool nodes_within(const DerivPtr& d, std::size_t max_type) {
  if (judgment_type_size(d->concl) > max_type || type_size(d->concl.ctx) > max_type) return false;
  for (const auto& p : d->premises)
    if (!nodes_within(p, max_type)) return false;
  return true;
}

std::set<unsigned> grounds_of(const DerivPtr& d) {
  std::set<unsigned> out;
  collect_grounds(d, out);
  return out;
}

std::set<unsigned> grounds_of(const MultiType& m) {
  std::set<unsigned> out;
  collect_grounds(m, out);
  return out;
}

// ---- unification over ground indices >= 1; index 0 (X) is rigid ----

using Solutions = std::vector<GroundSubstitution>;

GroundSubstitution bind_var(const GroundSubstitution& s, unsigned v, const LinearType& a) {
  GroundSubstitution one{{v, a}};
  GroundSubstitution r;
  for (const auto& [k, t] : s) r.emplace(k, apply_subst(one, t));
  r[v] = a;
  return r;
}

bool occurs(unsigned v, const LinearType& a) {
  std::set<unsigned> gs;
  collect_grounds(a, gs);
  return gs.count(v) != 0;
}

void unify_mt(const std::vector<LinearType>& m, const std::vector<LinearType>& n, const GroundSubstitution& s,
              Solutions& out, std::size_t limit);

void unify_lin(const LinearType& a0, const LinearType& b0, const GroundSubstitution& s, Solutions& out,
               std::size_t limit) {
  LinearType a = apply_subst(s, a0);
  LinearType b = apply_subst(s, b0);
  if (a.is_ground && a.index != 0) {
    if (b.is_ground && b.index == a.index) {
      out.push_back(s);
    } else if (!occurs(a.index, b)) {
      out.push_back(bind_var(s, a.index, b));
    }
    return;
  }
  if (b.is_ground && b.index != 0) {
    if (!occurs(b.index, a)) out.push_back(bind_var(s, b.index, a));
    return;
  }
  if (a.is_ground && b.is_ground) {
    out.push_back(s);
    return;
  }
  if (a.is_ground || b.is_ground) return;
  Solutions mid;
  unify_mt(a.src().elems, b.src().elems, s, mid, limit);
  for (const auto& m : mid) {
    if (out.size() >= limit) return;
    unify_mt(a.tgt().elems, b.tgt().elems, m, out, limit);
  }
}

void unify_mt(const std::vector<LinearType>& m, const std::vector<LinearType>& n, const GroundSubstitution& s,
              Solutions& out, std::size_t limit) {
  if (m.size() != n.size() || out.size() >= limit) return;
  if (m.empty()) {
    out.push_back(s);
    return;
  }
  std::vector<LinearType> rest_m(m.begin() + 1, m.end());
  std::vector<LinearType> tried;
  for (std::size_t j = 0; j < n.size(); ++j) {
    LinearType nj = apply_subst(s, n[j]);
    if (std::find(tried.begin(), tried.end(), nj) != tried.end()) continue;
    tried.push_back(nj);
    Solutions heads;
    unify_lin(m[0], n[j], s, heads, limit);
    std::vector<LinearType> rest_n;
    for (std::size_t k = 0; k < n.size(); ++k)
      if (k != j) rest_n.push_back(n[k]);
    for (const auto& h : heads) {
      if (out.size() >= limit) return;
      unify_mt(rest_m, rest_n, h, out, limit);
    }
  }
}

// ---- symbolic derivations ----

struct Sym {
  DerivPtr d;
  unsigned nvars = 0;
  std::size_t general = 0;
};

void order_vars(const LinearType& a, std::vector<unsigned>& out, std::set<unsigned>& seen);

void order_vars(const MultiType& m, std::vector<unsigned>& out, std::set<unsigned>& seen) {
  for (const auto& a : m.elems) order_vars(a, out, seen);
}

void order_vars(const LinearType& a, std::vector<unsigned>& out, std::set<unsigned>& seen) {
  if (a.is_ground) {
    if (a.index != 0 && seen.insert(a.index).second) out.push_back(a.index);
    return;
  }
  order_vars(a.src(), out, seen);
  order_vars(a.tgt(), out, seen);
}

void order_vars(const Judgment& j, std::vector<unsigned>& out, std::set<unsigned>& seen) {
  for (const auto& [x, m] : j.ctx.entries()) order_vars(m, out, seen);
  order_vars(j.as_multi(), out, seen);
}

void order_vars(const DerivPtr& d, std::vector<unsigned>& out, std::set<unsigned>& seen) {
  order_vars(d->concl, out, seen);
  for (const auto& p : d->premises) order_vars(p, out, seen);
}

// Renames variables to 1..n by first occurrence, conclusion first.
Sym canonical(const DerivPtr& d) {
  DerivPtr cur = d;
  unsigned n = 0;
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<unsigned> order;
    std::set<unsigned> seen;
    order_vars(cur, order, seen);
    GroundSubstitution ren;
    bool identity = true;
    for (unsigned i = 0; i < order.size(); ++i) {
      ren.emplace(order[i], LinearType::ground(i + 1));
      if (order[i] != i + 1) identity = false;
    }
    n = static_cast<unsigned>(order.size());
    if (identity) break;
    cur = apply_subst(ren, cur);
  }
  return {cur, n, sizes(cur).general};
}

DerivPtr shift(const DerivPtr& d, unsigned nvars, unsigned offset) {
  if (nvars == 0 || offset == 0) return d;
  GroundSubstitution s;
  for (unsigned i = 1; i <= nvars; ++i) s.emplace(i, LinearType::ground(i + offset));
  return apply_subst(s, d);
}

std::vector<LinearType> fresh_vars(unsigned from, std::size_t k) {
  std::vector<LinearType> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(LinearType::ground(from + static_cast<unsigned>(i)));
  return out;
}

DerivPtr ground_all(const DerivPtr& d) {
  GroundSubstitution s;
  for (unsigned g : grounds_of(d))
    if (g != 0) s.emplace(g, LinearType::ground(0));
  return s.empty() ? d : apply_subst(s, d);
}

class Searcher {
 public:
  explicit Searcher(const Budget& b) : b_(b) {}

  const std::vector<Sym>& multi(const TermPtr& t) {
    auto it = memo_.find(t.get());
    if (it != memo_.end()) return it->second;
    std::vector<Sym> out = compute(t);
    return memo_.emplace(t.get(), std::move(out)).first->second;
  }

  bool truncated() const { return truncated_; }
  std::size_t max_arity() const { return b_.max_general; }
  std::size_t limit() const { return b_.cap; }

 private:
  struct Collector {
    Searcher& s;
    std::vector<Sym> items;
    std::map<std::string, std::size_t> index;

    bool full() const { return items.size() >= s.b_.cap; }

    void add(const DerivPtr& d) {
      if (sizes(d).general > s.b_.max_general) return;
      if (!nodes_within(d, s.b_.max_type)) return;
      if (full()) {
        s.truncated_ = true;
        return;
      }
      Sym c = canonical(d);
      std::string key = to_string(c.d->concl.ctx) + "|" + to_string(c.d->concl.as_multi());
      auto [it, fresh] = index.emplace(key, items.size());
      if (fresh) {
        items.push_back(std::move(c));
      } else if (c.general < items[it->second].general) {
        items[it->second] = std::move(c);
      }
    }
  };

  std::vector<Sym> compute(const TermPtr& t) {
    Collector c{*this, {}, {}};
    switch (t->kind) {
      case TermKind::Var: {
        for (std::size_t n = 0; n <= b_.max_general; ++n) {
          std::vector<DerivPtr> ps;
          for (const auto& a : fresh_vars(1, n)) ps.push_back(make_ax(t->name, a));
          c.add(make_many(t, std::move(ps)));
        }
        break;
      }
      case TermKind::Abs: {
        std::vector<Sym> lams;
        for (const auto& b : multi(t->left)) {
          if (b.general + 1 > b_.max_general) continue;
          lams.push_back({make_lam(t->name, b.d), b.nvars, b.general + 1});
        }
        std::vector<DerivPtr> chosen;
        std::function<void(std::size_t, std::size_t, unsigned)> pick = [&](std::size_t from, std::size_t used,
                                                                          unsigned nv) {
          c.add(make_many(t, chosen));
          if (c.full()) return;
          for (std::size_t i = from; i < lams.size(); ++i) {
            if (used + lams[i].general > b_.max_general) continue;
            chosen.push_back(shift(lams[i].d, lams[i].nvars, nv));
            pick(i, used + lams[i].general, nv + lams[i].nvars);
            chosen.pop_back();
            if (c.full()) return;
          }
        };
        pick(0, 0, 0);
        break;
      }
      case TermKind::App: {
        const auto& fs = multi(t->left);
        const auto& as = multi(t->right);
        for (const auto& f : fs) {
          const MultiType& ft = f.d->concl.multi;
          if (ft.card() != 1) continue;
          const LinearType& a = ft.elems[0];
          if (a.is_ground && a.index == 0) continue;
          for (const auto& u : as) {
            if (f.general + u.general + 1 > b_.max_general) continue;
            DerivPtr ud = shift(u.d, u.nvars, f.nvars);
            unsigned next = f.nvars + u.nvars + 1;
            const MultiType& ut = ud->concl.multi;
            if (a.is_ground) {
              for (std::size_t k = 0; k <= max_arity(); ++k) {
                GroundSubstitution s{{a.index, LinearType::arrow(ut, MultiType(fresh_vars(next, k)))}};
                c.add(make_app(apply_subst(s, f.d), apply_subst(s, ud)));
              }
            } else {
              Solutions sols;
              unify_mt(a.src().elems, ut.elems, {}, sols, b_.cap);
              for (const auto& s : sols) c.add(make_app(apply_subst(s, f.d), apply_subst(s, ud)));
            }
            if (c.full()) break;
          }
        }
        break;
      }
      case TermKind::Es: {
        const auto& bs = multi(t->left);
        const auto& as = multi(t->right);
        for (const auto& b : bs) {
          for (const auto& u : as) {
            if (b.general + u.general > b_.max_general) continue;
            DerivPtr ud = shift(u.d, u.nvars, b.nvars);
            Solutions sols;
            unify_mt(b.d->concl.ctx.at(t->name).elems, ud->concl.multi.elems, {}, sols, b_.cap);
            for (const auto& s : sols) c.add(make_es(apply_subst(s, b.d), t->name, apply_subst(s, ud)));
            if (c.full()) break;
          }
        }
        break;
      }
    }
    return std::move(c.items);
  }

  Budget b_;
  bool truncated_ = false;
  std::unordered_map<const Term*, std::vector<Sym>> memo_;
};

// Equal trees, judgments compared exactly (subjects up to alpha), many premises up to permutation.
bool same_judgment(const Judgment& a, const Judgment& b) {
  if (a.linear != b.linear || !(a.ctx == b.ctx) || !alpha_eq(a.subject, b.subject)) return false;
  return a.linear ? a.lin == b.lin : a.multi == b.multi;
}

bool deriv_eq(const DerivPtr& a, const DerivPtr& b) {
  if (a->rule != b->rule || a->premises.size() != b->premises.size()) return false;
  if (!same_judgment(a->concl, b->concl)) return false;
  if (a->rule != Rule::Many) {
    for (std::size_t i = 0; i < a->premises.size(); ++i)
      if (!deriv_eq(a->premises[i], b->premises[i])) return false;
    return true;
  }
  std::vector<bool> used(b->premises.size(), false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == a->premises.size()) return true;
    for (std::size_t j = 0; j < b->premises.size(); ++j) {
      if (used[j] || !deriv_eq(a->premises[i], b->premises[j])) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

// An empty many rule types any value at 0 and is accepted as well.
void require_strong_fireball(const DerivPtr& d, const char* who) {
  bool empty_many = d->rule == Rule::Many && d->premises.empty();
  if (!empty_many && !is_strong_fireball(d->concl.subject))
    throw std::invalid_argument(std::string(who) + ": subject is not a strong fireball: " +
                                print_term(d->concl.subject));
}

// ---- size representation ----

DerivPtr many_ax(const std::string& x, const MultiType& m) {
  std::vector<DerivPtr> ps;
  for (const auto& a : m.elems) ps.push_back(make_ax(x, a));
  return make_many(var(x), std::move(ps));
}

DerivPtr rep_fireball(const DerivPtr& d);

DerivPtr rep_inert(const DerivPtr& d, const MultiType& n) {
  const TermPtr& t = d->concl.subject;
  if (d->concl.as_multi().card() != n.card()) throw DerivationError("size representation: cardinality mismatch");
  switch (t->kind) {
    case TermKind::Var:
      return many_ax(t->name, n);
    case TermKind::App: {
      DerivPtr f = rep_fireball(d->premises[1]);
      DerivPtr i = rep_inert(d->premises[0], singleton(LinearType::arrow(f->concl.multi, n)));
      return make_app(i, f);
    }
    case TermKind::Es: {
      DerivPtr body = rep_inert(d->premises[0], n);
      DerivPtr arg = rep_inert(d->premises[1], body->concl.ctx.at(t->name));
      return make_es(body, t->name, arg);
    }
    case TermKind::Abs:
      break;
  }
  throw DerivationError("size representation: abstraction in inert position");
}

DerivPtr rep_lam(const DerivPtr& lam) {
  return make_lam(lam->concl.subject->name, rep_fireball(lam->premises[0]));
}

DerivPtr rep_fireball(const DerivPtr& d) {
  const TermPtr& t = d->concl.subject;
  if (d->rule == Rule::Lam) return rep_lam(d);
  if (d->concl.linear) throw DerivationError("size representation: unexpected linear judgment");
  if (is_strong_inert(t)) return rep_inert(d, ground_mt(d->concl.multi.card()));
  if (t->is_abs()) {
    std::vector<DerivPtr> ps;
    for (const auto& p : d->premises) ps.push_back(rep_lam(p));
    return make_many(t, std::move(ps));
  }
  if (t->is_es()) {
    DerivPtr body = rep_fireball(d->premises[0]);
    DerivPtr arg = rep_inert(d->premises[1], body->concl.ctx.at(t->name));
    return make_es(body, t->name, arg);
  }
  throw DerivationError("size representation: unexpected subject " + print_term(t));
}

// ---- size dissection ----

GroundSubstitution restrict(const GroundSubstitution& s, const std::set<unsigned>& dom) {
  GroundSubstitution r;
  for (const auto& [k, v] : s)
    if (dom.count(k)) r.emplace(k, v);
  return r;
}

void merge_into(GroundSubstitution& into, const GroundSubstitution& from) {
  for (const auto& [k, v] : from) {
    auto [it, fresh] = into.emplace(k, v);
    if (!fresh && !(it->second == v)) throw DerivationError("size dissection: conflicting substitution");
  }
}

std::set<unsigned> with_domain(std::set<unsigned> s, const GroundSubstitution& sub) {
  for (const auto& [k, v] : sub) s.insert(k);
  return s;
}

std::set<unsigned> with_domain_minus(std::set<unsigned> s, const GroundSubstitution& sub,
                                     const std::set<unsigned>& minus) {
  for (const auto& [k, v] : sub)
    if (!minus.count(k)) s.insert(k);
  return s;
}

Dissection dis_fireball(const DerivPtr& d, const std::set<unsigned>& avoid);

// d types a strong inert term at tau(m); the result types it at m.
Dissection dis_inert(const DerivPtr& d, const MultiType& m, const GroundSubstitution& tau,
                     const std::set<unsigned>& avoid) {
  const TermPtr& t = d->concl.subject;
  switch (t->kind) {
    case TermKind::Var:
      return {many_ax(t->name, m), tau};
    case TermKind::App: {
      Dissection f = dis_fireball(d->premises[1], with_domain(avoid, tau));
      const MultiType& n = f.derivation->concl.multi;
      std::set<unsigned> gn = grounds_of(n);
      GroundSubstitution tau2 = tau;
      merge_into(tau2, restrict(f.substitution, gn));
      Dissection i = dis_inert(d->premises[0], singleton(LinearType::arrow(n, m)), tau2,
                               with_domain_minus(avoid, f.substitution, gn));
      GroundSubstitution s = f.substitution;
      merge_into(s, i.substitution);
      return {make_app(i.derivation, f.derivation), s};
    }
    case TermKind::Es: {
      Dissection body = dis_inert(d->premises[0], m, tau, avoid);
      const MultiType& n = body.derivation->concl.ctx.at(t->name);
      std::set<unsigned> gn = grounds_of(n);
      Dissection arg = dis_inert(d->premises[1], n, restrict(body.substitution, gn),
                                 with_domain_minus(avoid, body.substitution, gn));
      GroundSubstitution s = body.substitution;
      merge_into(s, arg.substitution);
      return {make_es(body.derivation, t->name, arg.derivation), s};
    }
    case TermKind::Abs:
      break;
  }
  throw DerivationError("size dissection: abstraction in inert position");
}

std::pair<DerivPtr, GroundSubstitution> dis_lam(const DerivPtr& lam, const std::set<unsigned>& avoid) {
  Dissection b = dis_fireball(lam->premises[0], avoid);
  return {make_lam(lam->concl.subject->name, b.derivation), b.substitution};
}

Dissection dis_fireball(const DerivPtr& d, const std::set<unsigned>& avoid) {
  const TermPtr& t = d->concl.subject;
  if (d->rule == Rule::Lam) {
    auto [lam, s] = dis_lam(d, avoid);
    return {lam, s};
  }
  if (d->concl.linear) throw DerivationError("size dissection: unexpected linear judgment");
  if (is_strong_inert(t)) {
    const MultiType& target = d->concl.multi;
    std::vector<LinearType> fresh = fresh_grounds(avoid, target.card());
    GroundSubstitution tau;
    for (std::size_t i = 0; i < fresh.size(); ++i) tau.emplace(fresh[i].index, target.elems[i]);
    MultiType m(fresh);
    std::set<unsigned> avoid2 = avoid;
    for (const auto& g : fresh) avoid2.insert(g.index);
    return dis_inert(d, m, tau, avoid2);
  }
  if (t->is_abs()) {
    std::set<unsigned> cur = avoid;
    std::vector<DerivPtr> ps;
    GroundSubstitution s;
    for (const auto& p : d->premises) {
      auto [lam, sp] = dis_lam(p, cur);
      cur = with_domain(std::move(cur), sp);
      merge_into(s, sp);
      ps.push_back(lam);
    }
    return {make_many(t, std::move(ps)), s};
  }
  if (t->is_es()) {
    Dissection body = dis_fireball(d->premises[0], avoid);
    const MultiType& n = body.derivation->concl.ctx.at(t->name);
    std::set<unsigned> gn = grounds_of(n);
    Dissection arg = dis_inert(d->premises[1], n, restrict(body.substitution, gn),
                               with_domain_minus(avoid, body.substitution, gn));
    GroundSubstitution s = body.substitution;
    merge_into(s, arg.substitution);
    return {make_es(body.derivation, t->name, arg.derivation), s};
  }
  throw DerivationError("size dissection: unexpected subject " + print_term(t));
}

std::size_t judgment_total(const DerivPtr& d) {
  return type_size(d->concl.ctx) + judgment_type_size(d->concl);
}

void require_closed_normal(const TermPtr& t, const char* who) {
  if (!free_vars(t).empty()) throw std::invalid_argument(std::string(who) + ": term is not closed: " + print_term(t));
  if (!is_strong_fireball(t))
    throw std::invalid_argument(std::string(who) + ": term is not normal: " + print_term(t));
}

}  // namespace

bool within_budget(const DerivPtr& d, const Budget& b) {
  return sizes(d).general <= b.max_general && nodes_within(d, b.max_type);
}

SemSample interpretation_sample(const TermPtr& t, const Budget& budget, bool shrinking_only) {
  SemSample out;
  out.budget = budget;
  auto fv = free_vars(t);
  out.vars.assign(fv.begin(), fv.end());
  Searcher search(budget);
  std::map<std::pair<std::vector<MultiType>, MultiType>, SampleEntry> found;
  for (const auto& s : search.multi(t)) {
    DerivPtr d = ground_all(s.d);
    if (!within_budget(d, budget)) continue;
    if (shrinking_only && !classify_derivation(d).shrinking) continue;
    std::vector<MultiType> ctx;
    for (const auto& x : out.vars) ctx.push_back(d->concl.ctx.at(x));
    auto key = std::make_pair(ctx, d->concl.multi);
    auto it = found.find(key);
    if (it == found.end()) {
      found.emplace(key, SampleEntry{ctx, d->concl.multi, d});
    } else if (sizes(d).general < sizes(it->second.witness).general) {
      it->second.witness = d;
    }
  }
  for (auto& [k, e] : found) out.entries.push_back(std::move(e));
  out.truncated = search.truncated();
  return out;
}

std::vector<ComposablePair> composable_pairs(const TermPtr& t, const TermPtr& u, const Budget& budget) {
  if (!free_vars(t).empty() || !free_vars(u).empty())
    throw std::invalid_argument("composable_pairs: terms must be closed");
  Searcher search(budget);
  const auto ts = search.multi(t);
  const auto& us = search.multi(u);
  std::map<std::pair<LinearType, MultiType>, ComposablePair> found;
  auto consider = [&](const DerivPtr& dt0, const DerivPtr& du0) {
    DerivPtr dt = ground_all(dt0);
    DerivPtr du = ground_all(du0);
    const LinearType& a = dt->concl.multi.elems[0];
    if (!is_right(a.tgt()) || !within_budget(dt, budget) || !within_budget(du, budget)) return;
    auto key = std::make_pair(a, du->concl.multi);
    std::size_t g = sizes(dt).general + sizes(du).general;
    auto it = found.find(key);
    if (it == found.end()) {
      found.emplace(key, ComposablePair{a, du->concl.multi, dt, du});
    } else if (g < sizes(it->second.left_witness).general + sizes(it->second.right_witness).general) {
      it->second.left_witness = dt;
      it->second.right_witness = du;
    }
  };
  for (const auto& st : ts) {
    const MultiType& tt = st.d->concl.multi;
    if (tt.card() != 1) continue;
    const LinearType& a = tt.elems[0];
    if (a.is_ground && a.index == 0) continue;
    for (const auto& su : us) {
      DerivPtr du = shift(su.d, su.nvars, st.nvars);
      const MultiType& ut = du->concl.multi;
      if (a.is_ground) {
        unsigned next = st.nvars + su.nvars + 1;
        for (std::size_t k = 1; k <= search.max_arity(); ++k) {
          GroundSubstitution s{{a.index, LinearType::arrow(ut, MultiType(fresh_vars(next, k)))}};
          consider(apply_subst(s, st.d), apply_subst(s, du));
        }
        continue;
      }
      Solutions sols;
      unify_mt(a.src().elems, ut.elems, {}, sols, search.limit());
      for (const auto& s : sols) consider(apply_subst(s, st.d), apply_subst(s, du));
    }
  }
  std::vector<ComposablePair> out;
  for (auto& [k, p] : found) out.push_back(std::move(p));
  return out;
}

TypesBoundReport check_types_bound(const DerivPtr& d) {
  require_strong_fireball(d, "check_types_bound");
  TypesBoundReport r;
  r.mult = sizes(d).mult;
  r.type_total = judgment_total(d);
  r.holds = r.mult <= r.type_total;
  r.gap = r.holds ? r.type_total - r.mult : 0;
  r.shrinking = classify_derivation(d).shrinking;
  r.term_size = measure(d->concl.subject, SizeKind::Strong);
  if (r.shrinking) r.size_holds = r.term_size <= r.type_total;
  return r;
}

DerivPtr size_representation(const DerivPtr& d) {
  require_strong_fireball(d, "size_representation");
  return rep_fireball(d);
}

Dissection size_dissection(const DerivPtr& d, std::set<unsigned> avoid) {
  require_strong_fireball(d, "size_dissection");
  collect_grounds(d, avoid);
  return dis_fireball(d, avoid);
}

std::string check_dissection(const DerivPtr& d, const Dissection& dis, const std::set<unsigned>& avoid) {
  auto rep = check_derivation(dis.derivation);
  if (!rep.ok) return "invalid derivation: " + rep.message;
  if (!skeleton_eq(dis.derivation, d)) return "not skeleton-equal to the input";
  if (!deriv_eq(apply_subst(dis.substitution, dis.derivation), d)) return "substitution does not map back onto the input";
  std::set<unsigned> taken = avoid;
  collect_grounds(d, taken);
  for (unsigned g : grounds_of(dis.derivation))
    if (taken.count(g)) return "ground " + to_string(LinearType::ground(g)) + " is not fresh";
  if (judgment_total(dis.derivation) != sizes(d).mult) return "context and type sizes differ from the mult size";
  return {};
}

bool BoundReport::ok() const {
  for (const auto* sec : {&lax, &weak_exact, &exact, &kind2})
    for (const auto& l : *sec)
      if (!l.ok) return false;
  return true;
}

BoundReport bound_report(const TermPtr& t, const TermPtr& u, std::size_t fuel, const Budget& budget) {
  require_closed_normal(t, "bound_report");
  require_closed_normal(u, "bound_report");
  BoundReport r;
  TermPtr s = app(t, u);
  r.trace = evaluate(s, Strategy::External, fuel);
  auto pairs = composable_pairs(t, u, budget);
  if (r.trace.status != Status::Normal) {
    r.notes.push_back("tu diverges within fuel " + std::to_string(fuel));
    r.lax.push_back({"composable pairs within budget (expected none)", pairs.size(), 0, pairs.empty()});
    return r;
  }
  r.normalizing = true;
  r.cost = 2 * r.trace.m_steps + measure(r.trace.final_term(), SizeKind::Strong);

  for (const auto& p : pairs) {
    std::size_t lhs = type_size(p.left) + type_size(p.right) + 1;
    r.lax.push_back({to_string(p.left) + " against " + to_string(p.right), lhs, r.cost, lhs >= r.cost});
  }
  if (pairs.empty()) r.notes.push_back("no composable pair within budget (inconclusive)");

  PipelineResult pr = derive(s, TypingMode::StrongUnitary, fuel);
  if (!pr.derivation || (*pr.derivation)->rule != Rule::App) {
    r.weak_exact.push_back({"pipeline derivation unavailable", 0, r.cost, false});
    return r;
  }
  const DerivPtr& whole = *pr.derivation;
  const DerivPtr& phi_t = whole->premises[0];
  const DerivPtr& phi_u = whole->premises[1];

  {
    DerivPtr pt = size_representation(phi_t);
    DerivPtr pu = size_representation(phi_u);
    std::size_t lhs = judgment_total(pt) + judgment_total(pu) + 1;
    bool valid = check_derivation(pt).ok && check_derivation(pu).ok && skeleton_eq(pt, phi_t) && skeleton_eq(pu, phi_u);
    r.weak_exact.push_back({"M = " + to_string(pt->concl.multi) + ", N = " + to_string(pu->concl.multi), lhs, r.cost,
                            valid && lhs == r.cost});
  }

  std::size_t inf = 0;
  {
    std::set<unsigned> avoid = grounds_of(whole);
    Dissection dt = size_dissection(phi_t, avoid);
    std::set<unsigned> avoid_u = with_domain(avoid, dt.substitution);
    Dissection du = size_dissection(phi_u, avoid_u);
    std::string bad = check_dissection(phi_t, dt, avoid);
    if (bad.empty()) bad = check_dissection(phi_u, du, avoid_u);
    GroundSubstitution sigma = dt.substitution;
    for (const auto& [k, v] : du.substitution) sigma.emplace(k, v);
    const LinearType& arrow = dt.derivation->concl.multi.elems[0];
    const MultiType& o = du.derivation->concl.multi;
    LinearType image = apply_subst(sigma, arrow);
    MultiType image_o = apply_subst(sigma, o);
    bool composes = image.src() == image_o && is_right(image.tgt()) &&
                    image == phi_t->concl.multi.elems[0] && image_o == phi_u->concl.multi;
    inf = type_size(arrow) + type_size(o) + 1;
    std::string label = to_string(arrow) + ", O = " + to_string(o) + ", sigma = " + to_string(sigma);
    if (!bad.empty()) label += " (" + bad + ")";
    if (!composes) label += " (image does not compose)";
    r.exact.push_back({label, inf, r.cost, bad.empty() && composes && inf == r.cost});
  }
  for (const auto& p : pairs) {
    std::set<unsigned> avoid = grounds_of(p.left_witness);
    collect_grounds(p.right_witness, avoid);
    Dissection dt = size_dissection(p.left_witness, avoid);
    Dissection du = size_dissection(p.right_witness, with_domain(avoid, dt.substitution));
    std::size_t value = judgment_total(dt.derivation) + judgment_total(du.derivation) + 1;
    r.exact.push_back({"candidate from " + to_string(p.left) + " against " + to_string(p.right), value, inf,
                       value >= inf});
  }

  for (const auto& x : {t, u}) {
    DerivPtr psi = size_representation(type_normal_form(x, TypingMode::StrongUnitary));
    std::size_t lhs = measure(x, SizeKind::Strong);
    bool unitary = classify_derivation(psi).unitary_shrinking;
    r.kind2.push_back({print_term(x) + " : " + to_string(psi->concl.multi) + (unitary ? "" : " (not unitary shrinking)"),
                       lhs, judgment_total(psi), unitary && lhs == judgment_total(psi)});
  }
  return r;
}

std::string format_bound_report(const BoundReport& r) {
  std::ostringstream os;
  os << "cost: 2m+|s|s = " << r.cost << (r.normalizing ? "" : " (not normalizing)") << '\n';
  auto section = [&](const char* name, const std::vector<BoundLine>& lines) {
    os << name << '\n';
    for (const auto& l : lines)
      os << "  lhs=" << l.lhs << " rhs=" << l.rhs << " verdict=" << (l.ok ? "ok" : "violation") << "  " << l.label
         << '\n';
  };
  section("LAX", r.lax);
  section("WEAK-EXACT", r.weak_exact);
  section("EXACT", r.exact);
  section("KIND-2", r.kind2);
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace vsc
