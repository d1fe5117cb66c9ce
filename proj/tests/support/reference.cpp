#include "reference.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace vsc_test {

using vsc::LinearType;
using vsc::MultiType;
using vsc::Step;
using vsc::Term;
using vsc::TermKind;

bool ref_rigid(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return ref_rigid(t->left);
    case TermKind::Es: return ref_rigid(t->left) && ref_rigid(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

bool ref_inert(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return ref_inert(t->left) && ref_fireball(t->right);
    case TermKind::Es: return ref_inert(t->left) && ref_inert(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

bool ref_fireball(const TermPtr& t) {
  if (t->kind == TermKind::Abs || ref_inert(t)) return true;
  return t->kind == TermKind::Es && ref_fireball(t->left) && ref_inert(t->right);
}

bool ref_strong_inert(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return ref_strong_inert(t->left) && ref_strong_fireball(t->right);
    case TermKind::Es: return ref_strong_inert(t->left) && ref_strong_inert(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

bool ref_strong_value(const TermPtr& t) {
  if (t->kind == TermKind::Abs) return ref_strong_fireball(t->left);
  return t->kind == TermKind::Es && ref_strong_value(t->left) && ref_strong_inert(t->right);
}

bool ref_strong_fireball(const TermPtr& t) { return ref_strong_inert(t) || ref_strong_value(t); }

namespace {

void paths_rec(const TermPtr& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  auto child = [&](Step s, const TermPtr& c) {
    cur.push_back(s);
    paths_rec(c, cur, out);
    cur.pop_back();
  };
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs: child(Step::Body, t->left); break;
    case TermKind::App:
      child(Step::Left, t->left);
      child(Step::Right, t->right);
      break;
    case TermKind::Es:
      child(Step::Body, t->left);
      child(Step::Arg, t->right);
      break;
  }
}

bool open_at(const TermPtr& t, const Path& p, std::size_t i) {
  if (i == p.size()) return true;
  switch (t->kind) {
    case TermKind::App: return open_at(p[i] == Step::Left ? t->left : t->right, p, i + 1);
    case TermKind::Es: return open_at(p[i] == Step::Body ? t->left : t->right, p, i + 1);
    default: return false;
  }
}

bool rigid_at(const TermPtr& t, const Path& p, std::size_t i);

// Holes of external contexts, each filled by an open context.
bool external_at(const TermPtr& t, const Path& p, std::size_t i) {
  if (open_at(t, p, i)) return true;
  if (i == p.size()) return false;
  if (t->kind == TermKind::Abs) return external_at(t->left, p, i + 1);
  if (t->kind == TermKind::Es) {
    if (p[i] == Step::Arg && rigid_at(t->right, p, i + 1)) return true;
    if (p[i] == Step::Body && ref_rigid(t->right) && external_at(t->left, p, i + 1)) return true;
  }
  return rigid_at(t, p, i);
}

bool rigid_at(const TermPtr& t, const Path& p, std::size_t i) {
  if (i == p.size()) return false;
  if (t->kind == TermKind::App) {
    if (p[i] == Step::Right) return ref_rigid(t->left) && external_at(t->right, p, i + 1);
    return rigid_at(t->left, p, i + 1);
  }
  if (t->kind == TermKind::Es) {
    if (p[i] == Step::Body) return ref_rigid(t->right) && rigid_at(t->left, p, i + 1);
    return ref_rigid(t->left) && rigid_at(t->right, p, i + 1);
  }
  return false;
}

std::set<std::string> ref_free(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return {t->name};
    case TermKind::Abs: {
      auto s = ref_free(t->left);
      s.erase(t->name);
      return s;
    }
    case TermKind::App: {
      auto s = ref_free(t->left);
      auto r = ref_free(t->right);
      s.insert(r.begin(), r.end());
      return s;
    }
    case TermKind::Es: {
      auto s = ref_free(t->left);
      s.erase(t->name);
      auto r = ref_free(t->right);
      s.insert(r.begin(), r.end());
      return s;
    }
  }
  return {};
}

std::string ref_fresh(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string c = base + "_" + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

}  // namespace

std::vector<Path> all_paths(const TermPtr& t) {
  std::vector<Path> out;
  Path cur;
  paths_rec(t, cur, out);
  return out;
}

bool ref_open_position(const TermPtr& t, const Path& p) { return open_at(t, p, 0); }
bool ref_external_position(const TermPtr& t, const Path& p) { return external_at(t, p, 0); }

TermPtr ref_substitute(const TermPtr& t, const std::string& x, const TermPtr& v) {
  switch (t->kind) {
    case TermKind::Var: return t->name == x ? v : t;
    case TermKind::App: return vsc::app(ref_substitute(t->left, x, v), ref_substitute(t->right, x, v));
    case TermKind::Abs: {
      if (t->name == x) return t;
      auto fv = ref_free(v);
      if (!fv.count(t->name)) return vsc::abs(t->name, ref_substitute(t->left, x, v));
      std::set<std::string> avoid = fv;
      auto body_fv = ref_free(t->left);
      avoid.insert(body_fv.begin(), body_fv.end());
      avoid.insert(x);
      std::string y = ref_fresh(t->name, avoid);
      TermPtr renamed = ref_substitute(t->left, t->name, vsc::var(y));
      return vsc::abs(y, ref_substitute(renamed, x, v));
    }
    case TermKind::Es: break;
  }
  throw std::invalid_argument("ref_substitute: explicit substitution");
}

std::optional<BetaStep> ref_beta_step(const TermPtr& t) {
  for (const auto& p : all_paths(t)) {
    TermPtr s = vsc::subterm_at(t, p);
    if (s->kind != TermKind::App || s->left->kind != TermKind::Abs) continue;
    if (s->right->kind != TermKind::Abs && s->right->kind != TermKind::Var) continue;
    TermPtr contracted = ref_substitute(s->left->left, s->left->name, s->right);
    return BetaStep{p, s->right->kind == TermKind::Var, vsc::replace_at(t, p, contracted)};
  }
  return std::nullopt;
}

std::size_t ref_strong_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return 0;
    case TermKind::Abs: return ref_strong_size(t->left) + 1;
    case TermKind::App: return ref_strong_size(t->left) + ref_strong_size(t->right) + 1;
    case TermKind::Es: return ref_strong_size(t->left) + ref_strong_size(t->right);
  }
  return 0;
}

std::vector<std::string> hand_listed_closed_terms_up_to_3() {
  return {
      // size 1
      "\\a. a",
      // size 2
      "\\a. \\b. a",
      "\\a. \\b. b",
      "\\a. a a",
      // size 3
      "\\a. \\b. \\c. a",
      "\\a. \\b. \\c. b",
      "\\a. \\b. \\c. c",
      "\\a. \\b. a a",
      "\\a. \\b. a b",
      "\\a. \\b. b a",
      "\\a. \\b. b b",
      "\\a. a a a",
      "\\a. a (a a)",
      "\\a. (\\b. b) a",
      "\\a. (\\b. a) a",
      "\\a. a (\\b. b)",
      "\\a. a (\\b. a)",
      "(\\a. a) (\\b. b)",
  };
}

namespace {

LinearType arrow(std::vector<LinearType> src, std::vector<LinearType> tgt) {
  return LinearType::arrow(MultiType(std::move(src)), MultiType(std::move(tgt)));
}

DerivPtr many(const std::string& v, std::vector<DerivPtr> ps) {
  TermPtr subject = ps.empty() ? vsc::var(v) : ps[0]->concl.subject;
  return vsc::make_many(subject, std::move(ps));
}

DerivPtr ax_many(const std::string& x, const LinearType& a) {
  return vsc::make_many(vsc::var(x), {vsc::make_ax(x, a)});
}

// \y. y at [A] -o [A].
DerivPtr identity_lam(const LinearType& a) { return vsc::make_lam("y", ax_many("y", a)); }

// \x. x x at [[A] -o [B], A] -o [B].
DerivPtr delta_at(const LinearType& a, const LinearType& b) {
  DerivPtr head = ax_many("x", arrow({a}, {b}));
  DerivPtr arg = ax_many("x", a);
  return many("", {vsc::make_lam("x", vsc::make_app(head, arg))});
}

}  // namespace

DerivPtr hand_built_l() {
  return many("", {identity_lam(LinearType::ground())});
}

DerivPtr hand_built_delta() {
  LinearType x = LinearType::ground();
  return delta_at(x, x);
}

DerivPtr hand_built_delta_squared() {
  LinearType x = LinearType::ground();
  LinearType x2 = arrow({x}, {x});
  return delta_at(x2, x2);
}

DerivPtr hand_built_delta_l() {
  LinearType x = LinearType::ground();
  LinearType x2 = arrow({x}, {x});
  DerivPtr l_small = identity_lam(x);
  DerivPtr l_big = identity_lam(x2);
  DerivPtr arg = many("", {l_big, l_small});
  return vsc::make_app(delta_at(x2, x2), arg);
}

namespace {

void grounds_in_order(const LinearType& a, std::vector<unsigned>& out) {
  if (a.is_ground) {
    if (a.index != 0 && std::find(out.begin(), out.end(), a.index) == out.end()) out.push_back(a.index);
    return;
  }
  for (const auto& e : a.src().elems) grounds_in_order(e, out);
  for (const auto& e : a.tgt().elems) grounds_in_order(e, out);
}

}  // namespace

bool equal_up_to_ground_renaming(const LinearType& a, const LinearType& b) {
  std::vector<unsigned> ga, gb;
  grounds_in_order(a, ga);
  grounds_in_order(b, gb);
  if (ga.size() != gb.size()) return false;
  std::vector<unsigned> perm = gb;
  std::sort(perm.begin(), perm.end());
  do {
    vsc::GroundSubstitution s;
    for (std::size_t i = 0; i < ga.size(); ++i) s.emplace(ga[i], LinearType::ground(perm[i]));
    if (vsc::apply_subst(s, a) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool same_derivation(const DerivPtr& a, const DerivPtr& b) {
  if (a->rule != b->rule || a->premises.size() != b->premises.size()) return false;
  const auto& ja = a->concl;
  const auto& jb = b->concl;
  if (ja.linear != jb.linear || !(ja.ctx == jb.ctx) || !vsc::alpha_eq(ja.subject, jb.subject)) return false;
  if (ja.linear ? !(ja.lin == jb.lin) : !(ja.multi == jb.multi)) return false;
  if (a->rule != vsc::Rule::Many) {
    for (std::size_t i = 0; i < a->premises.size(); ++i)
      if (!same_derivation(a->premises[i], b->premises[i])) return false;
    return true;
  }
  std::vector<bool> used(b->premises.size(), false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == a->premises.size()) return true;
    for (std::size_t j = 0; j < b->premises.size(); ++j) {
      if (used[j] || !same_derivation(a->premises[i], b->premises[j])) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

}  // namespace vsc_test
