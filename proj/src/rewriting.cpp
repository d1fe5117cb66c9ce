#include "vsc/rewriting.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsc {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Mult: return "mult";
    case StepKind::Expo: return "expo";
    case StepKind::EVar: return "evar";
  }
  return "?";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Open: return "open";
    case Strategy::External: return "external";
    case Strategy::Full: return "full";
  }
  return "?";
}

std::string to_string(Status s) { return s == Status::Normal ? "normal" : "fuel-exhausted"; }

StepKind parse_step_kind(std::string_view s) {
  if (s == "mult") return StepKind::Mult;
  if (s == "expo") return StepKind::Expo;
  if (s == "evar") return StepKind::EVar;
  throw std::invalid_argument("unknown step kind: " + std::string(s));
}

Strategy parse_strategy(std::string_view s) {
  if (s == "open") return Strategy::Open;
  if (s == "external") return Strategy::External;
  if (s == "full") return Strategy::Full;
  throw std::invalid_argument("unknown strategy: " + std::string(s));
}

std::optional<StepKind> root_redex_kind(const TermPtr& t, bool evar_enabled) {
  if (t->is_app()) {
    const Term* f = t->left.get();
    while (f->is_es()) f = f->left.get();
    if (f->is_abs()) return StepKind::Mult;
  } else if (t->is_es()) {
    const Term* a = t->right.get();
    while (a->is_es()) a = a->left.get();
    if (a->is_abs()) return StepKind::Expo;
    if (a->is_var() && evar_enabled) return StepKind::EVar;
  }
  return std::nullopt;
}

// Renames the binders of a spine that belong to `clash`; the renaming is pushed
// into the later arguments and the inner term, which are in their scope.
static void freshen_spine(Spine& sp, const std::set<std::string>& clash, std::set<std::string> avoid) {
  for (std::size_t i = 0; i < sp.entries.size(); ++i) {
    const std::string old = sp.entries[i].binder;
    if (!clash.count(old)) continue;
    std::string nn = fresh_name(old, avoid);
    avoid.insert(nn);
    sp.entries[i].binder = nn;
    for (std::size_t j = i + 1; j < sp.entries.size(); ++j) sp.entries[j].arg = rename_free(sp.entries[j].arg, old, nn);
    sp.inner = rename_free(sp.inner, old, nn);
  }
}

std::optional<TermPtr> root_step(const TermPtr& t, StepKind kind) {
  auto k = root_redex_kind(t, true);
  if (!k || *k != kind) return std::nullopt;
  if (kind == StepKind::Mult) {
    Spine sp = peel_spine(t->left);
    const TermPtr& u = t->right;
    std::set<std::string> clash = free_vars(u);
    std::set<std::string> avoid = all_names(t);
    freshen_spine(sp, clash, avoid);
    return wrap_spine(es(sp.inner->left, sp.inner->name, u), sp.entries);
  }
  const TermPtr& s = t->left;
  const std::string& x = t->name;
  Spine sp = peel_spine(t->right);
  std::set<std::string> clash = free_vars(s);
  clash.erase(x);
  std::set<std::string> avoid = all_names(t);
  freshen_spine(sp, clash, avoid);
  return wrap_spine(substitute(s, x, sp.inner), sp.entries);
}

namespace {

constexpr unsigned kO = 1, kE = 2, kR = 4;

unsigned close_modes(unsigned m) { return (m & kE) ? (m | kO | kR) : m; }

struct ChildModes {
  unsigned first = 0, second = 0;
};

ChildModes child_modes(const TermPtr& t, unsigned m) {
  ChildModes c;
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs:
      if (m & kE) c.first |= kE;
      break;
    case TermKind::App:
      if (m & kO) {
        c.first |= kO;
        c.second |= kO;
      }
      if (m & kR) {
        c.first |= kR;
        if (is_rigid(t->left)) c.second |= kE;
      }
      break;
    case TermKind::Es: {
      if (m & kO) {
        c.first |= kO;
        c.second |= kO;
      }
      bool arg_rigid = (m & (kE | kR)) ? is_rigid(t->right) : false;
      if (m & kE) {
        c.second |= kR;
        if (arg_rigid) c.first |= kE;
      }
      if (m & kR) {
        if (arg_rigid) c.first |= kR;
        if (is_rigid(t->left)) c.second |= kR;
      }
      break;
    }
  }
  return c;
}

unsigned root_modes(Strategy s) {
  switch (s) {
    case Strategy::Open: return kO;
    case Strategy::External: return kE;
    case Strategy::Full: return kO;
  }
  return kO;
}

// Preorder walk; the visitor returns true to stop.
template <class F>
bool walk(const TermPtr& t, Path& p, unsigned m, bool full, F& visit) {
  m = close_modes(m);
  bool candidate = full || (m & kO);
  if (candidate && visit(t, p)) return true;
  if (t->is_var()) return false;
  ChildModes c = full ? ChildModes{kO, kO} : child_modes(t, m);
  Step s1 = t->is_app() ? Step::Left : Step::Body;
  if (full || c.first) {
    p.push_back(s1);
    bool stop = walk(t->left, p, c.first, full, visit);
    p.pop_back();
    if (stop) return true;
  }
  if (t->right && (full || c.second)) {
    p.push_back(t->is_app() ? Step::Right : Step::Arg);
    bool stop = walk(t->right, p, c.second, full, visit);
    p.pop_back();
    if (stop) return true;
  }
  return false;
}

}  // namespace

std::vector<Path> context_positions(const TermPtr& t, Strategy s) {
  std::vector<Path> out;
  Path p;
  auto visit = [&](const TermPtr&, const Path& q) {
    out.push_back(q);
    return false;
  };
  walk(t, p, root_modes(s), s == Strategy::Full, visit);
  return out;
}

std::vector<Redex> redexes(const TermPtr& t, Strategy s, bool evar_enabled) {
  std::vector<Redex> out;
  Path p;
  auto visit = [&](const TermPtr& sub, const Path& q) {
    if (auto k = root_redex_kind(sub, evar_enabled)) out.push_back({q, *k});
    return false;
  };
  walk(t, p, root_modes(s), s == Strategy::Full, visit);
  return out;
}

std::optional<Redex> first_redex(const TermPtr& t, Strategy s, bool evar_enabled) {
  std::optional<Redex> out;
  Path p;
  auto visit = [&](const TermPtr& sub, const Path& q) {
    if (auto k = root_redex_kind(sub, evar_enabled)) {
      out = Redex{q, *k};
      return true;
    }
    return false;
  };
  walk(t, p, root_modes(s), s == Strategy::Full, visit);
  return out;
}

TermPtr step_at(const TermPtr& t, const Path& p, StepKind kind) {
  TermPtr sub = subterm_at(t, p);
  auto r = root_step(sub, kind);
  if (!r) throw std::invalid_argument("no " + to_string(kind) + " redex at " + path_to_string(p));
  return replace_at(t, p, *r);
}

void Trace::record(const Path& p, StepKind k, TermPtr result) {
  steps.push_back({p, k, std::move(result)});
  switch (k) {
    case StepKind::Mult: ++m_steps; break;
    case StepKind::Expo: ++e_steps; break;
    case StepKind::EVar: ++evar_steps; break;
  }
}

Trace evaluate(const TermPtr& t, Strategy s, std::size_t fuel, bool evar_enabled) {
  Trace tr;
  tr.initial = t;
  TermPtr cur = t;
  for (;;) {
    auto r = first_redex(cur, s, evar_enabled);
    if (!r) {
      tr.status = Status::Normal;
      return tr;
    }
    if (tr.steps.size() >= fuel) {
      tr.status = Status::FuelExhausted;
      return tr;
    }
    cur = step_at(cur, r->path, r->kind);
    tr.record(r->path, r->kind, cur);
  }
}

static std::optional<Path> first_beta_v(const TermPtr& t, Path& p) {
  if (t->is_app() && t->left->is_abs() && (t->right->is_abs() || t->right->is_var())) return p;
  if (t->is_var()) return std::nullopt;
  p.push_back(t->is_app() ? Step::Left : Step::Body);
  auto r = first_beta_v(t->left, p);
  p.pop_back();
  if (r) return r;
  if (t->right) {
    p.push_back(Step::Right);
    r = first_beta_v(t->right, p);
    p.pop_back();
  }
  return r;
}

Trace simulate_plotkin(const TermPtr& t, std::size_t fuel) {
  if (!is_es_free(t)) throw std::invalid_argument("simulate_plotkin: input contains explicit substitutions");
  Trace tr;
  tr.initial = t;
  TermPtr cur = t;
  for (;;) {
    Path p;
    auto r = first_beta_v(cur, p);
    if (!r) {
      tr.status = Status::Normal;
      return tr;
    }
    if (tr.steps.size() + 2 > fuel) {
      tr.status = Status::FuelExhausted;
      return tr;
    }
    StepKind second = subterm_at(cur, *r)->right->is_abs() ? StepKind::Expo : StepKind::EVar;
    cur = step_at(cur, *r, StepKind::Mult);
    tr.record(*r, StepKind::Mult, cur);
    cur = step_at(cur, *r, second);
    tr.record(*r, second, cur);
  }
}

std::string format_trace(const Trace& tr, bool with_steps) {
  std::string out;
  if (with_steps) {
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
      const auto& s = tr.steps[i];
      out += "step " + std::to_string(i + 1) + ": " + to_string(s.kind) + " at " + path_to_string(s.path) + " => " +
             print_term(s.result) + "\n";
    }
  }
  out += "counts: m=" + std::to_string(tr.m_steps) + " e=" + std::to_string(tr.e_steps) +
         " evar=" + std::to_string(tr.evar_steps) + " status=" + to_string(tr.status) + "\n";
  return out;
}

}  // namespace vsc
