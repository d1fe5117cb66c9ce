#include "vsc/inference.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsc {

std::string to_string(TypingMode m) { return m == TypingMode::OpenTight ? "open" : "strong"; }

TypingMode parse_typing_mode(std::string_view s) {
  if (s == "open") return TypingMode::OpenTight;
  if (s == "strong") return TypingMode::StrongUnitary;
  throw std::invalid_argument("unknown mode: " + std::string(s));
}

// ---- normal forms ----

namespace {

DerivPtr many_ax(const std::string& x, const MultiType& m) {
  std::vector<DerivPtr> ps;
  for (const auto& a : m.elems) ps.push_back(make_ax(x, a));
  return make_many(var(x), std::move(ps));
}

DerivPtr open_inert(const TermPtr& t, const MultiType& m);

DerivPtr open_fireball(const TermPtr& t) {
  if (is_inert(t)) return open_inert(t, {});
  if (t->is_abs()) return make_many(t, {});
  // f[x <- i]
  DerivPtr body = open_fireball(t->left);
  return make_es(body, t->name, open_inert(t->right, body->concl.ctx.at(t->name)));
}

DerivPtr open_inert(const TermPtr& t, const MultiType& m) {
  switch (t->kind) {
    case TermKind::Var: return many_ax(t->name, m);
    case TermKind::App: {
      DerivPtr arg = open_fireball(t->right);
      return make_app(open_inert(t->left, singleton(LinearType::arrow(arg->concl.multi, m))), arg);
    }
    case TermKind::Es: {
      DerivPtr body = open_inert(t->left, m);
      return make_es(body, t->name, open_inert(t->right, body->concl.ctx.at(t->name)));
    }
    case TermKind::Abs: break;
  }
  throw std::logic_error("open_inert: not an inert term");
}

DerivPtr strong_inert(const TermPtr& t, const MultiType& m);

DerivPtr strong_fireball(const TermPtr& t) {
  if (is_strong_inert(t)) return strong_inert(t, singleton(LinearType::ground()));
  if (t->is_abs()) {
    DerivPtr body = strong_fireball(t->left);
    return make_many(t, {make_lam(t->name, body)});
  }
  // f[x <- i] with f an answer
  DerivPtr body = strong_fireball(t->left);
  return make_es(body, t->name, strong_inert(t->right, body->concl.ctx.at(t->name)));
}

DerivPtr strong_inert(const TermPtr& t, const MultiType& m) {
  switch (t->kind) {
    case TermKind::Var: return many_ax(t->name, m);
    case TermKind::App: {
      DerivPtr arg = strong_fireball(t->right);
      return make_app(strong_inert(t->left, singleton(LinearType::arrow(arg->concl.multi, m))), arg);
    }
    case TermKind::Es: {
      DerivPtr body = strong_inert(t->left, m);
      return make_es(body, t->name, strong_inert(t->right, body->concl.ctx.at(t->name)));
    }
    case TermKind::Abs: break;
  }
  throw std::logic_error("strong_inert: not a strong inert term");
}

}  // namespace

DerivPtr type_normal_form(const TermPtr& t, TypingMode mode, const std::optional<MultiType>& target) {
  if (mode == TypingMode::OpenTight) {
    if (!is_fireball(t)) throw std::invalid_argument("type_normal_form: not a fireball: " + print_term(t));
    if (!target) return open_fireball(t);
    if (!is_inert(t)) throw std::invalid_argument("type_normal_form: a target is only accepted for inert terms");
    if (!is_inert(*target)) throw std::invalid_argument("type_normal_form: target is not an inert multi type");
    return open_inert(t, *target);
  }
  if (!is_strong_fireball(t)) throw std::invalid_argument("type_normal_form: not a strong fireball: " + print_term(t));
  if (!target) return strong_fireball(t);
  if (!is_strong_inert(t)) throw std::invalid_argument("type_normal_form: a target is only accepted for inert terms");
  if (!is_left(*target)) throw std::invalid_argument("type_normal_form: target is not a left multi type");
  return strong_inert(t, *target);
}

// ---- values ----

std::vector<DerivPtr> split_value(const DerivPtr& d, const std::vector<MultiType>& parts) {
  if (d->rule != Rule::Many) throw DerivationError("split_value: not a many-rooted value derivation");
  MultiType total;
  for (const auto& m : parts) total = mt_sum(total, m);
  if (!(total == d->concl.multi))
    throw DerivationError("split_value: " + to_string(total) + " is not " + to_string(d->concl.multi));
  std::vector<bool> used(d->premises.size(), false);
  std::vector<DerivPtr> out;
  for (const auto& m : parts) {
    std::vector<DerivPtr> ps;
    for (const auto& a : m.elems) {
      for (std::size_t i = 0; i < d->premises.size(); ++i) {
        if (!used[i] && d->premises[i]->concl.lin == a) {
          used[i] = true;
          ps.push_back(d->premises[i]);
          break;
        }
      }
    }
    out.push_back(make_many(d->concl.subject, std::move(ps)));
  }
  return out;
}

std::pair<DerivPtr, DerivPtr> split_value(const DerivPtr& d, const MultiType& m1, const MultiType& m2) {
  auto v = split_value(d, std::vector<MultiType>{m1, m2});
  return {v[0], v[1]};
}

DerivPtr merge_values(const DerivPtr& d1, const DerivPtr& d2) {
  if (d1->rule != Rule::Many || d2->rule != Rule::Many)
    throw DerivationError("merge_values: not many-rooted value derivations");
  if (!alpha_eq(d1->concl.subject, d2->concl.subject)) throw DerivationError("merge_values: subjects differ");
  std::vector<DerivPtr> ps = d1->premises;
  ps.insert(ps.end(), d2->premises.begin(), d2->premises.end());
  return make_many(d1->concl.subject, std::move(ps));
}

// ---- renaming ----

static void names_rec(const DerivPtr& d, std::set<std::string>& out) {
  auto n = all_names(d->concl.subject);
  out.insert(n.begin(), n.end());
  for (const auto& p : d->premises) names_rec(p, out);
}

std::set<std::string> all_names(const DerivPtr& d) {
  std::set<std::string> out;
  names_rec(d, out);
  return out;
}

DerivPtr rename_free(const DerivPtr& d, const std::string& from, const std::string& to) {
  if (from == to || !occurs_free(d->concl.subject, from)) return d;
  // A binder equal to `to` that would capture is renamed first.
  auto rebind = [&](const DerivPtr& body, const std::string& y) -> std::pair<DerivPtr, std::string> {
    if (y != to) return {body, y};
    std::set<std::string> avoid = all_names(body);
    avoid.insert(from);
    avoid.insert(to);
    std::string y2 = fresh_name(y, avoid);
    return {rename_free(body, y, y2), y2};
  };
  const auto& ps = d->premises;
  switch (d->rule) {
    case Rule::Ax: return make_ax(to, d->concl.lin);
    case Rule::Many: {
      std::vector<DerivPtr> qs;
      for (const auto& p : ps) qs.push_back(rename_free(p, from, to));
      return make_many(rename_free(d->concl.subject, from, to), std::move(qs));
    }
    case Rule::Lam: {
      auto [body, y] = rebind(ps[0], d->concl.subject->name);
      return make_lam(y, rename_free(body, from, to));
    }
    case Rule::App: return make_app(rename_free(ps[0], from, to), rename_free(ps[1], from, to));
    case Rule::Es: {
      const std::string& y = d->concl.subject->name;
      if (y == from) return make_es(ps[0], y, rename_free(ps[1], from, to));
      auto [body, y2] = rebind(ps[0], y);
      return make_es(rename_free(body, from, to), y2, rename_free(ps[1], from, to));
    }
  }
  return d;
}

// ---- substitution ----

namespace {

std::string fresh_for(const std::string& base, std::initializer_list<const DerivPtr*> ds,
                      std::initializer_list<std::string> extra) {
  std::set<std::string> avoid(extra);
  for (const DerivPtr* d : ds) {
    auto n = all_names(*d);
    avoid.insert(n.begin(), n.end());
  }
  return fresh_name(base, avoid);
}

}  // namespace

DerivPtr subst_derivation(const DerivPtr& dt, const std::string& x, const DerivPtr& dv) {
  if (dv->rule != Rule::Many) throw DerivationError("subst_derivation: value derivation must be many-rooted");
  const TermPtr& t = dt->concl.subject;
  const TermPtr& v = dv->concl.subject;
  if (!(dt->concl.ctx.at(x) == dv->concl.multi))
    throw DerivationError("subst_derivation: type mismatch at " + x + ": " + to_string(dt->concl.ctx.at(x)) +
                          " vs " + to_string(dv->concl.multi));
  if (!occurs_free(t, x)) return dt;
  const auto& ps = dt->premises;
  switch (dt->rule) {
    case Rule::Ax: return dv->premises.at(0);
    case Rule::Many: {
      if (t->is_var()) return dv;
      if (ps.empty()) return make_many(substitute(t, x, v), {});
      std::vector<MultiType> parts;
      for (const auto& p : ps) parts.push_back(p->concl.ctx.at(x));
      auto dvs = split_value(dv, parts);
      std::vector<DerivPtr> qs;
      for (std::size_t i = 0; i < ps.size(); ++i) qs.push_back(subst_derivation(ps[i], x, dvs[i]));
      TermPtr subj = qs[0]->concl.subject;
      return make_many(subj, std::move(qs));
    }
    case Rule::Lam: {
      std::string y = t->name;
      DerivPtr body = ps[0];
      if (occurs_free(v, y)) {
        std::string y2 = fresh_for(y, {&dt, &dv}, {x});
        body = rename_free(body, y, y2);
        y = y2;
      }
      return make_lam(y, subst_derivation(body, x, dv));
    }
    case Rule::App: {
      auto [d1, d2] = split_value(dv, ps[0]->concl.ctx.at(x), ps[1]->concl.ctx.at(x));
      return make_app(subst_derivation(ps[0], x, d1), subst_derivation(ps[1], x, d2));
    }
    case Rule::Es: {
      std::string y = t->name;
      if (y == x) return make_es(ps[0], y, subst_derivation(ps[1], x, dv));
      DerivPtr body = ps[0];
      if (occurs_free(v, y)) {
        std::string y2 = fresh_for(y, {&dt, &dv}, {x});
        body = rename_free(body, y, y2);
        y = y2;
      }
      auto [d1, d2] = split_value(dv, body->concl.ctx.at(x), ps[1]->concl.ctx.at(x));
      return make_es(subst_derivation(body, x, d1), y, subst_derivation(ps[1], x, d2));
    }
  }
  return dt;
}

namespace {

// Renames the binder of t (an abstraction or ES) when it occurs free in v.
TermPtr avoid_capture(const TermPtr& t, const std::string& x, const TermPtr& v, const DerivPtr& d) {
  const std::string& y = t->name;
  if (!occurs_free(v, y)) return t;
  std::set<std::string> avoid = all_names(t);
  auto nv = all_names(v);
  avoid.insert(nv.begin(), nv.end());
  auto nd = all_names(d);
  avoid.insert(nd.begin(), nd.end());
  avoid.insert(x);
  std::string y2 = fresh_name(y, avoid);
  if (t->is_abs()) return abs(y2, rename_free(t->left, y, y2));
  return es(rename_free(t->left, y, y2), y2, t->right);
}

// Renames the bound name `from` of a body derivation to `to`, where `to` is not free in it.
DerivPtr align_binder(const DerivPtr& body, const std::string& from, const std::string& to) {
  return from == to ? body : rename_free(body, from, to);
}

}  // namespace

std::pair<DerivPtr, DerivPtr> anti_subst_derivation(const DerivPtr& d, const TermPtr& t0, const std::string& x,
                                                    const TermPtr& v) {
  if (!v->is_abs() && !v->is_var()) throw std::invalid_argument("anti_subst_derivation: not a value");
  if (!occurs_free(t0, x)) {
    if (!alpha_eq(d->concl.subject, t0)) throw DerivationError("anti_subst_derivation: subject mismatch");
    return {d, make_many(v, {})};
  }
  if (t0->is_var()) {
    if (!alpha_eq(d->concl.subject, v)) throw DerivationError("anti_subst_derivation: subject mismatch");
    if (d->concl.linear) return {make_ax(x, d->concl.lin), make_many(v, {d})};
    return {many_ax(x, d->concl.multi), d};
  }
  TermPtr t = (t0->is_abs() || t0->is_es()) && t0->name != x ? avoid_capture(t0, x, v, d) : t0;
  const auto& ps = d->premises;
  auto need = [&](Rule r) {
    if (d->rule != r) throw DerivationError("anti_subst_derivation: expected a " + to_string(r) + " node");
  };
  switch (t->kind) {
    case TermKind::Abs: {
      if (d->rule == Rule::Many) {
        std::vector<DerivPtr> psi, theta;
        for (const auto& p : ps) {
          auto [a, b] = anti_subst_derivation(p, t, x, v);
          psi.push_back(a);
          theta.insert(theta.end(), b->premises.begin(), b->premises.end());
        }
        return {make_many(t, std::move(psi)), make_many(v, std::move(theta))};
      }
      need(Rule::Lam);
      DerivPtr body = align_binder(ps[0], d->concl.subject->name, t->name);
      auto [a, b] = anti_subst_derivation(body, t->left, x, v);
      return {make_lam(t->name, a), b};
    }
    case TermKind::App: {
      need(Rule::App);
      auto [a1, b1] = anti_subst_derivation(ps[0], t->left, x, v);
      auto [a2, b2] = anti_subst_derivation(ps[1], t->right, x, v);
      return {make_app(a1, a2), merge_values(b1, b2)};
    }
    case TermKind::Es: {
      need(Rule::Es);
      DerivPtr body = align_binder(ps[0], d->concl.subject->name, t->name);
      auto [a2, b2] = anti_subst_derivation(ps[1], t->right, x, v);
      if (t->name == x) return {make_es(body, x, a2), b2};
      auto [a1, b1] = anti_subst_derivation(body, t->left, x, v);
      return {make_es(a1, t->name, a2), merge_values(b1, b2)};
    }
    case TermKind::Var: break;
  }
  throw std::logic_error("anti_subst_derivation: unreachable");
}

// ---- reduction and expansion ----

namespace {

struct SpineEntry {
  std::string binder;
  DerivPtr arg;
};

// Peels k ES nodes (all of them when k is absent) off a derivation.
DerivPtr unwind(DerivPtr d, std::vector<SpineEntry>& spine, std::optional<std::size_t> k = std::nullopt) {
  while (d->rule == Rule::Es && (!k || spine.size() < *k)) {
    spine.push_back({d->concl.subject->name, d->premises[1]});
    d = d->premises[0];
  }
  if (k && spine.size() != *k) throw DerivationError("derivation does not follow the substitution context");
  return d;
}

DerivPtr rewrap(DerivPtr d, const std::vector<SpineEntry>& spine) {
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) d = make_es(d, it->binder, it->arg);
  return d;
}

// Unwinds the spine renaming binders that occur in `clash`, pushing renamings inward.
DerivPtr unwind_fresh(DerivPtr d, std::vector<SpineEntry>& spine, const std::set<std::string>& clash,
                      std::set<std::string> avoid) {
  while (d->rule == Rule::Es) {
    std::string y = d->concl.subject->name;
    DerivPtr body = d->premises[0];
    if (clash.count(y)) {
      std::string y2 = fresh_name(y, avoid);
      avoid.insert(y2);
      body = rename_free(body, y, y2);
      y = y2;
    }
    spine.push_back({y, d->premises[1]});
    d = body;
  }
  return d;
}

DerivPtr root_reduce(const DerivPtr& d, StepKind k) {
  if (k == StepKind::Mult) {
    if (d->rule != Rule::App) throw DerivationError("reduce: expected an app node at the redex");
    const DerivPtr& fun = d->premises[0];
    const DerivPtr& arg = d->premises[1];
    std::vector<SpineEntry> spine;
    std::set<std::string> avoid = all_names(d);
    DerivPtr inner = unwind_fresh(fun, spine, free_vars(arg->concl.subject), avoid);
    if (inner->rule != Rule::Many || inner->premises.size() != 1 || inner->premises[0]->rule != Rule::Lam)
      throw DerivationError("reduce: the abstraction is not typed by a single lam");
    const DerivPtr& lam = inner->premises[0];
    return rewrap(make_es(lam->premises[0], lam->concl.subject->name, arg), spine);
  }
  if (d->rule != Rule::Es) throw DerivationError("reduce: expected an es node at the redex");
  const DerivPtr& body = d->premises[0];
  const std::string& x = d->concl.subject->name;
  std::set<std::string> clash = free_vars(body->concl.subject);
  clash.erase(x);
  std::vector<SpineEntry> spine;
  DerivPtr val = unwind_fresh(d->premises[1], spine, clash, all_names(d));
  return rewrap(subst_derivation(body, x, val), spine);
}

DerivPtr reduce_rec(const DerivPtr& d, const Path& p, std::size_t i, StepKind k) {
  if (i == p.size() && d->rule != Rule::Many) return root_reduce(d, k);
  const auto& ps = d->premises;
  switch (d->rule) {
    case Rule::Many: {
      if (ps.empty()) return make_many(step_at(d->concl.subject, Path(p.begin() + i, p.end()), k), {});
      std::vector<DerivPtr> qs;
      for (const auto& q : ps) qs.push_back(reduce_rec(q, p, i, k));
      TermPtr subj = qs[0]->concl.subject;
      return make_many(subj, std::move(qs));
    }
    case Rule::Lam:
      if (p[i] != Step::Body) break;
      return make_lam(d->concl.subject->name, reduce_rec(ps[0], p, i + 1, k));
    case Rule::App:
      if (p[i] == Step::Left) return make_app(reduce_rec(ps[0], p, i + 1, k), ps[1]);
      if (p[i] == Step::Right) return make_app(ps[0], reduce_rec(ps[1], p, i + 1, k));
      break;
    case Rule::Es:
      if (p[i] == Step::Body) return make_es(reduce_rec(ps[0], p, i + 1, k), d->concl.subject->name, ps[1]);
      if (p[i] == Step::Arg) return make_es(ps[0], d->concl.subject->name, reduce_rec(ps[1], p, i + 1, k));
      break;
    case Rule::Ax: break;
  }
  throw DerivationError("reduce: path " + path_to_string(p) + " does not match the derivation");
}

// Simultaneous capture-avoiding renaming of free variables.
TermPtr rename_many(TermPtr t, const std::vector<std::pair<std::string, std::string>>& ren) {
  std::set<std::string> avoid = all_names(t);
  for (const auto& [a, b] : ren) {
    avoid.insert(a);
    avoid.insert(b);
  }
  std::vector<std::string> tmp;
  for (const auto& [a, _] : ren) {
    std::string n = fresh_name(a, avoid);
    avoid.insert(n);
    t = rename_free(t, a, n);
    tmp.push_back(n);
  }
  for (std::size_t i = 0; i < ren.size(); ++i) t = rename_free(t, tmp[i], ren[i].second);
  return t;
}

DerivPtr root_expand(const DerivPtr& d, const TermPtr& t, StepKind k) {
  if (k == StepKind::Mult) {
    Spine sp = peel_spine(t->left);
    std::vector<SpineEntry> spine;
    DerivPtr inner = unwind(d, spine, sp.entries.size() + 1);
    // The last peeled node is the ES created by the step.
    SpineEntry created = spine.back();
    spine.pop_back();
    DerivPtr body = inner;
    DerivPtr lam = make_many(abs(created.binder, body->concl.subject), {make_lam(created.binder, body)});
    return make_app(rewrap(lam, spine), created.arg);
  }
  const TermPtr& s = t->left;
  const std::string& x = t->name;
  Spine sp = peel_spine(t->right);
  std::vector<SpineEntry> spine;
  DerivPtr inner = unwind(d, spine, sp.entries.size());
  std::vector<std::pair<std::string, std::string>> ren;
  for (std::size_t i = 0; i < spine.size(); ++i)
    if (sp.entries[i].binder != spine[i].binder) ren.push_back({sp.entries[i].binder, spine[i].binder});
  TermPtr v = rename_many(sp.inner, ren);
  auto [ds, dv] = anti_subst_derivation(inner, s, x, v);
  return make_es(ds, x, rewrap(dv, spine));
}

DerivPtr expand_rec(const DerivPtr& d, const TermPtr& t, const Path& p, std::size_t i, StepKind k) {
  if (i == p.size()) return root_expand(d, t, k);
  const auto& ps = d->premises;
  switch (d->rule) {
    case Rule::Many: {
      if (ps.empty()) return make_many(t, {});
      std::vector<DerivPtr> qs;
      for (const auto& q : ps) qs.push_back(expand_rec(q, t, p, i, k));
      return make_many(t, std::move(qs));
    }
    case Rule::Lam: {
      if (p[i] != Step::Body || !t->is_abs()) break;
      DerivPtr body = align_binder(ps[0], d->concl.subject->name, t->name);
      return make_lam(t->name, expand_rec(body, t->left, p, i + 1, k));
    }
    case Rule::App:
      if (!t->is_app()) break;
      if (p[i] == Step::Left) return make_app(expand_rec(ps[0], t->left, p, i + 1, k), ps[1]);
      if (p[i] == Step::Right) return make_app(ps[0], expand_rec(ps[1], t->right, p, i + 1, k));
      break;
    case Rule::Es: {
      if (!t->is_es()) break;
      if (p[i] == Step::Arg) return make_es(ps[0], d->concl.subject->name, expand_rec(ps[1], t->right, p, i + 1, k));
      if (p[i] != Step::Body) break;
      DerivPtr body = align_binder(ps[0], d->concl.subject->name, t->name);
      return make_es(expand_rec(body, t->left, p, i + 1, k), t->name, ps[1]);
    }
    case Rule::Ax: break;
  }
  throw DerivationError("expand: path " + path_to_string(p) + " does not match the derivation");
}

}  // namespace

DerivPtr reduce_derivation(const DerivPtr& d, const Path& p, StepKind k) {
  TermPtr sub = subterm_at(d->concl.subject, p);
  if (!root_step(sub, k)) throw std::invalid_argument("reduce_derivation: no " + to_string(k) + " redex at " + path_to_string(p));
  return reduce_rec(d, p, 0, k);
}

DerivPtr expand_derivation(const DerivPtr& d, const TermPtr& t, const Path& p, StepKind k) {
  if (!alpha_eq(step_at(t, p, k), d->concl.subject))
    throw std::invalid_argument("expand_derivation: the step does not produce the derivation's subject");
  return expand_rec(d, t, p, 0, k);
}

std::size_t multiplicity_at(const DerivPtr& d, const Path& p) {
  std::size_t mult = 1;
  DerivPtr cur = d;
  std::size_t i = 0;
  while (i < p.size()) {
    if (cur->rule == Rule::Many) {
      mult *= cur->premises.size();
      if (cur->premises.empty()) return 0;
      cur = cur->premises[0];
      continue;
    }
    bool second = p[i] == Step::Right || p[i] == Step::Arg;
    if (cur->premises.size() <= (second ? 1u : 0u)) throw DerivationError("multiplicity_at: path leaves the derivation");
    cur = cur->premises[second ? 1 : 0];
    ++i;
  }
  return mult;
}

PipelineResult derive(const TermPtr& t, TypingMode mode, std::size_t fuel) {
  PipelineResult r;
  Strategy s = mode == TypingMode::OpenTight ? Strategy::Open : Strategy::External;
  r.trace = evaluate(t, s, fuel, false);
  if (r.trace.status != Status::Normal) return r;
  const TermPtr& nf = r.trace.final_term();
  DerivPtr d = type_normal_form(nf, mode);
  for (std::size_t i = r.trace.steps.size(); i-- > 0;) {
    const auto& st = r.trace.steps[i];
    d = expand_derivation(d, r.trace.term_before(i), st.path, st.kind);
  }
  r.derivation = d;
  r.mult = sizes(d).mult;
  std::size_t nf_size = measure(nf, mode == TypingMode::OpenTight ? SizeKind::Open : SizeKind::Strong);
  r.lhs = 2 * r.trace.m_steps + nf_size;
  r.identity_holds = r.lhs == r.mult;
  r.strong_size_identity_holds = 2 * r.trace.m_steps + measure(nf, SizeKind::Strong) == r.mult;
  return r;
}

}  // namespace vsc
