#include "vsc/term.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace vsc {

TermPtr var(std::string name) {
  return std::make_shared<const Term>(Term{TermKind::Var, std::move(name), nullptr, nullptr});
}

TermPtr abs(std::string binder, TermPtr body) {
  return std::make_shared<const Term>(Term{TermKind::Abs, std::move(binder), std::move(body), nullptr});
}

TermPtr app(TermPtr fun, TermPtr arg) {
  return std::make_shared<const Term>(Term{TermKind::App, {}, std::move(fun), std::move(arg)});
}

TermPtr es(TermPtr body, std::string binder, TermPtr arg) {
  return std::make_shared<const Term>(Term{TermKind::Es, std::move(binder), std::move(body), std::move(arg)});
}

// ---- paths ----

std::string path_to_string(const Path& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    switch (p[i]) {
      case Step::Left: out += "left"; break;
      case Step::Right: out += "right"; break;
      case Step::Body: out += "body"; break;
      case Step::Arg: out += "arg"; break;
    }
  }
  return out;
}

Path path_from_string(std::string_view s) {
  Path p;
  if (s == "root" || s.empty()) return p;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto dot = s.find('.', start);
    auto part = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (part == "left") p.push_back(Step::Left);
    else if (part == "right") p.push_back(Step::Right);
    else if (part == "body") p.push_back(Step::Body);
    else if (part == "arg") p.push_back(Step::Arg);
    else throw std::invalid_argument("bad path component: " + std::string(part));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

static int step_rank(Step s) {
  // Left and Body are the first child of their node, Right and Arg the second.
  return (s == Step::Left || s == Step::Body) ? 0 : 1;
}

bool path_before(const Path& a, const Path& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ra = step_rank(a[i]), rb = step_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

static const TermPtr& child(const TermPtr& t, Step s) {
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs:
      if (s == Step::Body) return t->left;
      break;
    case TermKind::App:
      if (s == Step::Left) return t->left;
      if (s == Step::Right) return t->right;
      break;
    case TermKind::Es:
      if (s == Step::Body) return t->left;
      if (s == Step::Arg) return t->right;
      break;
  }
  throw std::out_of_range("path leaves the term");
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (Step s : p) cur = child(cur, s);
  return cur;
}

static TermPtr replace_rec(const TermPtr& t, const Path& p, std::size_t i, const TermPtr& with) {
  if (i == p.size()) return with;
  const TermPtr& c = child(t, p[i]);
  TermPtr nc = replace_rec(c, p, i + 1, with);
  switch (t->kind) {
    case TermKind::Abs: return abs(t->name, nc);
    case TermKind::App: return p[i] == Step::Left ? app(nc, t->right) : app(t->left, nc);
    case TermKind::Es: return p[i] == Step::Body ? es(nc, t->name, t->right) : es(t->left, t->name, nc);
    case TermKind::Var: break;
  }
  throw std::out_of_range("path leaves the term");
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& with) { return replace_rec(t, p, 0, with); }

// ---- parsing ----

ParseError::ParseError(const std::string& msg, std::size_t off, std::size_t ln, std::size_t col)
    : std::runtime_error(msg + " at line " + std::to_string(ln) + ", column " + std::to_string(col)),
      offset(off), line(ln), column(col) {}

namespace {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, LBrack, RBrack, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", pos_});
        return out;
      }
      std::size_t start = pos_;
      unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (std::isalpha(c)) {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                      src_[pos_] == '\''))
          ++pos_;
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), start});
      } else if (c == '\\') {
        ++pos_;
        out.push_back({Tok::Lambda, "\\", start});
      } else if (c == 0xCE && pos_ + 1 < src_.size() && static_cast<unsigned char>(src_[pos_ + 1]) == 0xBB) {
        pos_ += 2;
        out.push_back({Tok::Lambda, "\\", start});
      } else if (c == '.') {
        ++pos_;
        out.push_back({Tok::Dot, ".", start});
      } else if (c == '(') {
        ++pos_;
        out.push_back({Tok::LParen, "(", start});
      } else if (c == ')') {
        ++pos_;
        out.push_back({Tok::RParen, ")", start});
      } else if (c == '[') {
        ++pos_;
        out.push_back({Tok::LBrack, "[", start});
      } else if (c == ']') {
        ++pos_;
        out.push_back({Tok::RBrack, "]", start});
      } else if (c == '<' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        pos_ += 2;
        out.push_back({Tok::Arrow, "<-", start});
      } else {
        throw error("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", start);
      }
    }
  }

  ParseError error(const std::string& msg, std::size_t off) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return ParseError(msg, off, line, col);
  }

 private:
  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const Lexer& lx, std::vector<Token> toks) : lx_(lx), toks_(std::move(toks)) {}

  TermPtr parse_all() {
    TermPtr t = term();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::RBrack) throw lx_.error("']' without a matching '['", peek().offset);
      if (peek().kind == Tok::Lambda)
        throw lx_.error("an abstraction in argument position must be parenthesized", peek().offset);
      throw lx_.error("unexpected '" + peek().text + "'", peek().offset);
    }
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  Token expect(Tok k, const char* what) {
    if (peek().kind != k) throw lx_.error(std::string("expected ") + what, peek().offset);
    return take();
  }

  TermPtr term() {
    if (peek().kind == Tok::Lambda) {
      take();
      Token x = expect(Tok::Ident, "a binder name after lambda");
      expect(Tok::Dot, "'.' after the binder");
      return abs(x.text, term());
    }
    return appseq();
  }

  bool starts_atom() const { return peek().kind == Tok::Ident || peek().kind == Tok::LParen; }

  TermPtr appseq() {
    if (peek().kind == Tok::LBrack)
      throw lx_.error("explicit substitution bracket without a preceding atom", peek().offset);
    if (!starts_atom()) throw lx_.error("expected a term", peek().offset);
    TermPtr t = atom();
    while (starts_atom()) t = app(t, atom());
    return t;
  }

  TermPtr atom() {
    TermPtr t;
    if (peek().kind == Tok::Ident) {
      t = var(take().text);
    } else {
      Token open = expect(Tok::LParen, "'(' or a variable");
      t = term();
      if (peek().kind != Tok::RParen) throw lx_.error("unclosed '('", open.offset);
      take();
    }
    while (peek().kind == Tok::LBrack) {
      Token open = take();
      Token x = expect(Tok::Ident, "a variable after '['");
      expect(Tok::Arrow, "'<-' in explicit substitution");
      TermPtr u = term();
      if (peek().kind != Tok::RBrack) throw lx_.error("unterminated explicit substitution '['", open.offset);
      take();
      t = es(t, x.text, u);
    }
    return t;
  }

  const Lexer& lx_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

TermPtr parse_term(std::string_view text) {
  Lexer lx(text);
  Parser p(lx, lx.run());
  return p.parse_all();
}

// ---- printing ----

static void print_rec(const TermPtr& t, std::string& out);

static void print_atom(const TermPtr& t, std::string& out) {
  if (t->is_var()) {
    out += t->name;
  } else if (t->is_es()) {
    print_atom(t->left, out);
    out += '[';
    out += t->name;
    out += " <- ";
    print_rec(t->right, out);
    out += ']';
  } else {
    out += '(';
    print_rec(t, out);
    out += ')';
  }
}

static void print_rec(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Abs:
      out += '\\';
      out += t->name;
      out += ". ";
      print_rec(t->left, out);
      return;
    case TermKind::App:
      if (t->left->is_app()) print_rec(t->left, out);
      else print_atom(t->left, out);
      out += ' ';
      print_atom(t->right, out);
      return;
    case TermKind::Var:
    case TermKind::Es:
      print_atom(t, out);
      return;
  }
}

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

// ---- variables ----

static void fv_rec(const TermPtr& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == t->name) return;
      out.insert(t->name);
      return;
    case TermKind::Abs:
      bound.push_back(t->name);
      fv_rec(t->left, bound, out);
      bound.pop_back();
      return;
    case TermKind::App:
      fv_rec(t->left, bound, out);
      fv_rec(t->right, bound, out);
      return;
    case TermKind::Es:
      fv_rec(t->right, bound, out);
      bound.push_back(t->name);
      fv_rec(t->left, bound, out);
      bound.pop_back();
      return;
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  fv_rec(t, bound, out);
  return out;
}

bool occurs_free(const TermPtr& t, const std::string& x) {
  switch (t->kind) {
    case TermKind::Var: return t->name == x;
    case TermKind::Abs: return t->name != x && occurs_free(t->left, x);
    case TermKind::App: return occurs_free(t->left, x) || occurs_free(t->right, x);
    case TermKind::Es: return occurs_free(t->right, x) || (t->name != x && occurs_free(t->left, x));
  }
  return false;
}

static void names_rec(const TermPtr& t, std::set<std::string>& out) {
  out.insert(t->name);
  if (t->left) names_rec(t->left, out);
  if (t->right) names_rec(t->right, out);
}

std::set<std::string> all_names(const TermPtr& t) {
  std::set<std::string> out;
  names_rec(t, out);
  out.erase(std::string());
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  for (std::size_t i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

struct Subst {
  const std::string& x;
  const TermPtr& v;
  const std::set<std::string>& fvv;

  TermPtr go(const TermPtr& t) const {
    switch (t->kind) {
      case TermKind::Var: return t->name == x ? v : t;
      case TermKind::App: {
        TermPtr a = go(t->left), b = go(t->right);
        if (a == t->left && b == t->right) return t;
        return app(a, b);
      }
      case TermKind::Abs: {
        auto [y, body] = under_binder(t->name, t->left);
        if (body == t->left) return t;
        return abs(y, body);
      }
      case TermKind::Es: {
        TermPtr a = go(t->right);
        auto [y, body] = under_binder(t->name, t->left);
        if (a == t->right && body == t->left) return t;
        return es(body, y, a);
      }
    }
    return t;
  }

  std::pair<std::string, TermPtr> under_binder(const std::string& y, const TermPtr& body) const {
    if (y == x || !occurs_free(body, x)) return {y, body};
    if (!fvv.count(y)) return {y, go(body)};
    std::set<std::string> avoid = all_names(body);
    avoid.insert(fvv.begin(), fvv.end());
    avoid.insert(x);
    std::string y2 = fresh_name(y, avoid);
    return {y2, go(rename_free(body, y, y2))};
  }
};

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v) {
  if (!v->is_abs() && !v->is_var()) throw std::invalid_argument("substitute: the substituted term must be a value");
  std::set<std::string> fvv = free_vars(v);
  Subst s{x, v, fvv};
  return s.go(t);
}

TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to) {
  if (from == to) return t;
  return substitute(t, from, var(to));
}

// ---- sizes ----

std::size_t measure(const TermPtr& t, SizeKind kind) {
  switch (t->kind) {
    case TermKind::Var: return 0;
    case TermKind::Abs: return kind == SizeKind::Strong ? measure(t->left, kind) + 1 : 0;
    case TermKind::App: return measure(t->left, kind) + measure(t->right, kind) + 1;
    case TermKind::Es: return measure(t->left, kind) + measure(t->right, kind);
  }
  return 0;
}

std::size_t es_count(const TermPtr& t) {
  std::size_t n = t->is_es() ? 1 : 0;
  if (t->left) n += es_count(t->left);
  if (t->right) n += es_count(t->right);
  return n;
}

// ---- grammars ----

bool is_rigid(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return is_rigid(t->left);
    case TermKind::Es: return is_rigid(t->left) && is_rigid(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

bool is_answer(const TermPtr& t) {
  const Term* cur = t.get();
  while (cur->is_es()) cur = cur->left.get();
  return cur->is_abs();
}

bool is_inert(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return is_inert(t->left) && is_fireball(t->right);
    case TermKind::Es: return is_inert(t->left) && is_inert(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

bool is_fireball(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Abs: return true;
    case TermKind::Var: return true;
    case TermKind::App: return is_inert(t);
    case TermKind::Es: return is_fireball(t->left) && is_inert(t->right);
  }
  return false;
}

bool is_strong_inert(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return true;
    case TermKind::App: return is_strong_inert(t->left) && is_strong_fireball(t->right);
    case TermKind::Es: return is_strong_inert(t->left) && is_strong_inert(t->right);
    case TermKind::Abs: return false;
  }
  return false;
}

// Strong values are closed under substitution contexts of strong inert terms,
// which is what makes strong inert / strong value a partition of strong fireballs.
bool is_strong_value(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Abs: return is_strong_fireball(t->left);
    case TermKind::Es: return is_strong_value(t->left) && is_strong_inert(t->right);
    default: return false;
  }
}

bool is_strong_fireball(const TermPtr& t) { return is_strong_inert(t) || is_strong_value(t); }

bool is_es_free(const TermPtr& t) {
  if (t->is_es()) return false;
  if (t->left && !is_es_free(t->left)) return false;
  if (t->right && !is_es_free(t->right)) return false;
  return true;
}

TermClass classify(const TermPtr& t) {
  TermClass c;
  c.is_value = t->is_abs();
  c.is_answer = is_answer(t);
  c.is_inert = is_inert(t);
  c.is_fireball = is_fireball(t);
  c.is_strong_inert = is_strong_inert(t);
  c.is_strong_value = is_strong_value(t);
  c.is_strong_fireball = c.is_strong_inert || c.is_strong_value;
  c.is_rigid = is_rigid(t);
  return c;
}

// ---- alpha ----

static void key_rec(const TermPtr& t, std::vector<const std::string*>& bound, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
      for (std::size_t i = bound.size(); i-- > 0;) {
        if (*bound[i] == t->name) {
          out += '#';
          out += std::to_string(bound.size() - 1 - i);
          return;
        }
      }
      out += t->name;
      return;
    case TermKind::Abs:
      out += "\\(";
      bound.push_back(&t->name);
      key_rec(t->left, bound, out);
      bound.pop_back();
      out += ')';
      return;
    case TermKind::App:
      out += '(';
      key_rec(t->left, bound, out);
      out += ' ';
      key_rec(t->right, bound, out);
      out += ')';
      return;
    case TermKind::Es:
      out += '[';
      bound.push_back(&t->name);
      key_rec(t->left, bound, out);
      bound.pop_back();
      out += '|';
      key_rec(t->right, bound, out);
      out += ']';
      return;
  }
}

std::string canonical_key(const TermPtr& t) {
  std::string out;
  std::vector<const std::string*> bound;
  key_rec(t, bound, out);
  return out;
}

static bool alpha_rec(const Term* a, const Term* b, std::vector<std::pair<const std::string*, const std::string*>>& env) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        bool ha = *env[i].first == a->name, hb = *env[i].second == b->name;
        if (ha || hb) return ha && hb;
      }
      return a->name == b->name;
    }
    case TermKind::Abs: {
      env.emplace_back(&a->name, &b->name);
      bool r = alpha_rec(a->left.get(), b->left.get(), env);
      env.pop_back();
      return r;
    }
    case TermKind::App:
      return alpha_rec(a->left.get(), b->left.get(), env) && alpha_rec(a->right.get(), b->right.get(), env);
    case TermKind::Es: {
      if (!alpha_rec(a->right.get(), b->right.get(), env)) return false;
      env.emplace_back(&a->name, &b->name);
      bool r = alpha_rec(a->left.get(), b->left.get(), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  std::vector<std::pair<const std::string*, const std::string*>> env;
  return alpha_rec(a.get(), b.get(), env);
}

Spine peel_spine(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->is_es()) {
    s.entries.push_back({cur->name, cur->right});
    cur = cur->left;
  }
  s.inner = cur;
  return s;
}

TermPtr wrap_spine(const TermPtr& inner, const std::vector<Spine::Entry>& entries) {
  TermPtr cur = inner;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) cur = es(cur, it->binder, it->arg);
  return cur;
}

}  // namespace vsc
