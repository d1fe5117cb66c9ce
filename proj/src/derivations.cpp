#include "vsc/derivations.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace vsc {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::Ax: return "ax";
    case Rule::App: return "app";
    case Rule::Lam: return "lam";
    case Rule::Es: return "es";
    case Rule::Many: return "many";
  }
  return "?";
}

static std::optional<Rule> rule_from_string(const std::string& s) {
  for (Rule r : {Rule::Ax, Rule::App, Rule::Lam, Rule::Es, Rule::Many})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::string to_string(const Judgment& j) {
  return to_string(j.ctx) + " |- " + print_term(j.subject) + " : " + (j.linear ? to_string(j.lin) : to_string(j.multi));
}

static DerivPtr node(Rule r, Judgment j, std::vector<DerivPtr> ps) {
  return std::make_shared<const Derivation>(Derivation{r, std::move(j), std::move(ps)});
}

DerivPtr make_raw(Rule r, Judgment concl, std::vector<DerivPtr> premises) {
  return node(r, std::move(concl), std::move(premises));
}

static TypeContext without(TypeContext g, const std::string& x) {
  g.erase(x);
  return g;
}

DerivPtr make_ax(const std::string& x, const LinearType& a) {
  Judgment j;
  j.ctx = ctx_single(x, singleton(a));
  j.subject = var(x);
  j.linear = true;
  j.lin = a;
  return node(Rule::Ax, std::move(j), {});
}

DerivPtr make_app(const DerivPtr& fun, const DerivPtr& arg) {
  const Judgment& f = fun->concl;
  const Judgment& u = arg->concl;
  if (f.linear || u.linear) throw DerivationError("app: premises must be multi judgments");
  if (f.multi.card() != 1 || f.multi.elems[0].is_ground)
    throw DerivationError("app: left premise must have type [M -o N], got " + to_string(f.multi));
  const LinearType& a = f.multi.elems[0];
  if (!(a.src() == u.multi))
    throw DerivationError("app: argument type " + to_string(u.multi) + " does not match " + to_string(a.src()));
  Judgment j;
  j.ctx = ctx_sum(f.ctx, u.ctx);
  j.subject = app(f.subject, u.subject);
  j.multi = a.tgt();
  return node(Rule::App, std::move(j), {fun, arg});
}

DerivPtr make_lam(const std::string& x, const DerivPtr& body) {
  const Judgment& b = body->concl;
  if (b.linear) throw DerivationError("lam: premise must be a multi judgment");
  Judgment j;
  j.ctx = without(b.ctx, x);
  j.subject = abs(x, b.subject);
  j.linear = true;
  j.lin = LinearType::arrow(b.ctx.at(x), b.multi);
  return node(Rule::Lam, std::move(j), {body});
}

DerivPtr make_es(const DerivPtr& body, const std::string& x, const DerivPtr& arg) {
  const Judgment& b = body->concl;
  const Judgment& u = arg->concl;
  if (b.linear || u.linear) throw DerivationError("es: premises must be multi judgments");
  if (!(b.ctx.at(x) == u.multi))
    throw DerivationError("es: argument type " + to_string(u.multi) + " does not match " + to_string(b.ctx.at(x)));
  Judgment j;
  j.ctx = ctx_sum(without(b.ctx, x), u.ctx);
  j.subject = es(b.subject, x, u.subject);
  j.multi = b.multi;
  return node(Rule::Es, std::move(j), {body, arg});
}

DerivPtr make_many(const TermPtr& subject, std::vector<DerivPtr> premises) {
  if (!subject->is_var() && !subject->is_abs()) throw DerivationError("many: subject is not a theoretical value");
  Judgment j;
  j.subject = subject;
  std::vector<LinearType> ts;
  for (const auto& p : premises) {
    if (!p->concl.linear) throw DerivationError("many: premises must be linear judgments");
    if (!alpha_eq(p->concl.subject, subject)) throw DerivationError("many: premise subject differs");
    j.ctx = ctx_sum(j.ctx, p->concl.ctx);
    ts.push_back(p->concl.lin);
  }
  j.multi = MultiType(std::move(ts));
  return node(Rule::Many, std::move(j), std::move(premises));
}

namespace {

bool same_judgment(const Judgment& a, const Judgment& b) {
  if (a.linear != b.linear || !(a.ctx == b.ctx) || !alpha_eq(a.subject, b.subject)) return false;
  return a.linear ? a.lin == b.lin : a.multi == b.multi;
}

std::string check_node(const DerivPtr& d) {
  const Judgment& c = d->concl;
  const auto& ps = d->premises;
  auto arity = [&](std::size_t n) {
    return ps.size() == n ? std::string() : to_string(d->rule) + ": expected " + std::to_string(n) + " premises";
  };
  DerivPtr expect;
  try {
    switch (d->rule) {
      case Rule::Ax:
        if (auto e = arity(0); !e.empty()) return e;
        if (!c.subject->is_var() || !c.linear) return "ax: conclusion must be a linear judgment on a variable";
        expect = make_ax(c.subject->name, c.lin);
        break;
      case Rule::App:
        if (auto e = arity(2); !e.empty()) return e;
        if (!c.subject->is_app()) return "app: subject is not an application";
        expect = make_app(ps[0], ps[1]);
        break;
      case Rule::Lam:
        if (auto e = arity(1); !e.empty()) return e;
        if (!c.subject->is_abs()) return "lam: subject is not an abstraction";
        expect = make_lam(c.subject->name, ps[0]);
        break;
      case Rule::Es:
        if (auto e = arity(2); !e.empty()) return e;
        if (!c.subject->is_es()) return "es: subject is not an explicit substitution";
        expect = make_es(ps[0], c.subject->name, ps[1]);
        break;
      case Rule::Many:
        expect = make_many(c.subject, ps);
        break;
    }
  } catch (const DerivationError& e) {
    return e.what();
  }
  if (!same_judgment(expect->concl, c))
    return to_string(d->rule) + ": conclusion should be " + to_string(expect->concl);
  return {};
}

}  // namespace

CheckReport check_derivation(const DerivPtr& d) {
  for (const auto& p : d->premises) {
    CheckReport r = check_derivation(p);
    if (!r.ok) return r;
  }
  std::string err = check_node(d);
  if (err.empty()) return {};
  return {false, err + " at node " + to_string(d->concl)};
}

DerivSizes sizes(const DerivPtr& d) {
  DerivSizes s;
  if (d->rule != Rule::Many) ++s.general;
  if (d->rule == Rule::Lam || d->rule == Rule::App) ++s.mult;
  for (const auto& p : d->premises) {
    DerivSizes q = sizes(p);
    s.general += q.general;
    s.mult += q.mult;
  }
  return s;
}

DerivationClass classify_derivation(const DerivPtr& d) {
  MultiType m = d->concl.as_multi();
  TypeClass g = classify_type(d->concl.ctx);
  TypeClass t = classify_type(m);
  DerivationClass c;
  c.inert = g.inert && t.inert;
  c.tight = c.inert && t.ground;
  c.shrinking = g.left && t.right;
  c.unitary_shrinking = g.unitary_left && t.unitary_right;
  return c;
}

bool skeleton_eq(const DerivPtr& a, const DerivPtr& b) {
  if (a->rule != b->rule || a->premises.size() != b->premises.size()) return false;
  if (!alpha_eq(a->concl.subject, b->concl.subject)) return false;
  if (a->rule != Rule::Many) {
    for (std::size_t i = 0; i < a->premises.size(); ++i)
      if (!skeleton_eq(a->premises[i], b->premises[i])) return false;
    return true;
  }
  std::size_t n = a->premises.size();
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !skeleton_eq(a->premises[i], b->premises[j])) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

DerivPtr apply_subst(const GroundSubstitution& s, const DerivPtr& d) {
  std::vector<DerivPtr> ps;
  for (const auto& p : d->premises) ps.push_back(apply_subst(s, p));
  Judgment j = d->concl;
  j.ctx = apply_subst(s, j.ctx);
  if (j.linear)
    j.lin = apply_subst(s, j.lin);
  else
    j.multi = apply_subst(s, j.multi);
  return node(d->rule, std::move(j), std::move(ps));
}

void collect_grounds(const DerivPtr& d, std::set<unsigned>& out) {
  collect_grounds(d->concl.ctx, out);
  if (d->concl.linear)
    collect_grounds(d->concl.lin, out);
  else
    collect_grounds(d->concl.multi, out);
  for (const auto& p : d->premises) collect_grounds(p, out);
}

static void write(const DerivPtr& d, std::size_t indent, std::string& out) {
  std::string pad(indent, ' ');
  const Judgment& j = d->concl;
  out += pad + "(rule " + to_string(d->rule) + " (ctx " + to_string(j.ctx) + ") (subject " + print_term(j.subject) +
         ") (type " + (j.linear ? to_string(j.lin) : to_string(j.multi)) + ")";
  if (d->premises.empty()) {
    out += " (premises))";
    return;
  }
  std::vector<std::string> parts;
  for (const auto& p : d->premises) {
    std::string s;
    write(p, indent + 2, s);
    parts.push_back(std::move(s));
  }
  if (d->rule == Rule::Many) std::sort(parts.begin(), parts.end());
  out += "\n" + pad + " (premises";
  for (const auto& s : parts) out += "\n" + s;
  out += "))";
}

std::string serialize(const DerivPtr& d) {
  std::string out;
  write(d, 0, out);
  return out + "\n";
}

namespace {

class DerivReader {
 public:
  explicit DerivReader(const std::string& s) : s_(s) {}

  DerivPtr node() {
    open("rule");
    std::string tag = word();
    auto rule = rule_from_string(tag);
    if (!rule) fail("unknown rule tag '" + tag + "'");
    Judgment j;
    try {
      j.ctx = parse_context(field("ctx"));
    } catch (const TypeParseError& e) {
      fail(std::string("bad context: ") + e.what());
    }
    try {
      j.subject = parse_term(field("subject"));
    } catch (const ParseError& e) {
      fail(std::string("bad subject: ") + e.what());
    }
    std::string ty = field("type");
    j.linear = *rule == Rule::Ax || *rule == Rule::Lam;
    try {
      if (j.linear)
        j.lin = parse_linear(ty);
      else
        j.multi = parse_multi(ty);
    } catch (const TypeParseError& e) {
      fail(std::string("bad type: ") + e.what());
    }
    open("premises");
    std::vector<DerivPtr> ps;
    for (skip(); peek() == '('; skip()) ps.push_back(node());
    close();
    close();
    return make_raw(*rule, std::move(j), std::move(ps));
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_.compare(pos_, 2, "--") == 0) {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  void open(const std::string& kw) {
    skip();
    if (peek() != '(') fail("expected '(" + kw + "'");
    ++pos_;
    if (word() != kw) fail("expected '" + kw + "'");
  }
  void close() {
    skip();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
  }
  std::string word() {
    skip();
    std::string w;
    while (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '-') w += s_[pos_++];
    return w;
  }
  // The payload of `(kw ...)`, up to the balancing parenthesis.
  std::string field(const std::string& kw) {
    open(kw);
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated '(" + kw + "'");
    std::string payload = s_.substr(start, pos_ - start);
    ++pos_;
    return payload;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw DerivationParseError(msg + " at offset " + std::to_string(pos_));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

DerivPtr deserialize(const std::string& text) {
  DerivReader r(text);
  DerivPtr d = r.node();
  r.finish();
  CheckReport rep = check_derivation(d);
  if (!rep.ok) throw DerivationError("invalid derivation: " + rep.message);
  return d;
}

}  // namespace vsc
