#include "vsc/types.hpp"

#include <algorithm>
#include <cctype>

namespace vsc {

LinearType LinearType::ground(unsigned i) {
  LinearType a;
  a.index = i;
  return a;
}

LinearType LinearType::arrow(MultiType src, MultiType tgt) {
  LinearType a;
  a.is_ground = false;
  a.source = std::make_shared<const MultiType>(std::move(src));
  a.target = std::make_shared<const MultiType>(std::move(tgt));
  return a;
}

MultiType::MultiType(std::vector<LinearType> es) : elems(std::move(es)) {
  std::sort(elems.begin(), elems.end());
}

int compare(const LinearType& a, const LinearType& b) {
  if (a.is_ground != b.is_ground) return a.is_ground ? -1 : 1;
  if (a.is_ground) return a.index < b.index ? -1 : (a.index > b.index ? 1 : 0);
  if (a.source != b.source) {
    if (int c = compare(*a.source, *b.source)) return c;
  }
  if (a.target == b.target) return 0;
  return compare(*a.target, *b.target);
}

int compare(const MultiType& a, const MultiType& b) {
  std::size_t n = std::min(a.elems.size(), b.elems.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a.elems[i], b.elems[i])) return c;
  if (a.elems.size() == b.elems.size()) return 0;
  return a.elems.size() < b.elems.size() ? -1 : 1;
}

MultiType singleton(const LinearType& a) { return MultiType({a}); }

MultiType ground_mt(std::size_t n, unsigned index) {
  return MultiType(std::vector<LinearType>(n, LinearType::ground(index)));
}

MultiType mt_sum(const MultiType& m, const MultiType& n) {
  MultiType r;
  r.elems.reserve(m.elems.size() + n.elems.size());
  std::merge(m.elems.begin(), m.elems.end(), n.elems.begin(), n.elems.end(), std::back_inserter(r.elems));
  return r;
}

const MultiType& TypeContext::at(const std::string& x) const {
  static const MultiType kEmpty;
  auto it = map_.find(x);
  return it == map_.end() ? kEmpty : it->second;
}

void TypeContext::set(const std::string& x, MultiType m) {
  if (m.empty())
    map_.erase(x);
  else
    map_[x] = std::move(m);
}

std::set<std::string> TypeContext::domain() const {
  std::set<std::string> d;
  for (const auto& [x, _] : map_) d.insert(x);
  return d;
}

bool operator==(const TypeContext& a, const TypeContext& b) {
  if (a.map_.size() != b.map_.size()) return false;
  auto it = b.map_.begin();
  for (const auto& [x, m] : a.map_) {
    if (x != it->first || !(m == it->second)) return false;
    ++it;
  }
  return true;
}

TypeContext ctx_sum(const TypeContext& a, const TypeContext& b) {
  TypeContext r = a;
  for (const auto& [x, m] : b.entries()) r.set(x, mt_sum(r.at(x), m));
  return r;
}

TypeContext ctx_single(const std::string& x, MultiType m) {
  TypeContext g;
  g.set(x, std::move(m));
  return g;
}

std::size_t type_size(const LinearType& a) {
  return a.is_ground ? 0 : 1 + type_size(*a.source) + type_size(*a.target);
}

std::size_t type_size(const MultiType& m) {
  std::size_t n = 0;
  for (const auto& a : m.elems) n += type_size(a);
  return n;
}

std::size_t type_size(const TypeContext& g) {
  std::size_t n = 0;
  for (const auto& [_, m] : g.entries()) n += type_size(m);
  return n;
}

bool is_ground(const MultiType& m) {
  return std::all_of(m.elems.begin(), m.elems.end(), [](const LinearType& a) { return a.is_ground; });
}

bool is_inert(const MultiType& m) {
  return std::all_of(m.elems.begin(), m.elems.end(), [](const LinearType& a) {
    return a.is_ground || (is_ground(a.src()) && is_inert(a.tgt()));
  });
}

bool is_right(const MultiType& m);
bool is_left(const MultiType& m) {
  return std::all_of(m.elems.begin(), m.elems.end(),
                     [](const LinearType& a) { return a.is_ground || (is_right(a.src()) && is_left(a.tgt())); });
}

bool is_right(const MultiType& m) {
  return !m.empty() && std::all_of(m.elems.begin(), m.elems.end(), [](const LinearType& a) {
    return a.is_ground || (is_left(a.src()) && is_right(a.tgt()));
  });
}

bool is_unitary_left(const MultiType& m) {
  return std::all_of(m.elems.begin(), m.elems.end(), [](const LinearType& a) {
    return a.is_ground || (is_unitary_right(a.src()) && is_unitary_left(a.tgt()));
  });
}

bool is_unitary_right(const MultiType& m) {
  if (m.card() != 1) return false;
  const LinearType& a = m.elems[0];
  return a.is_ground || (is_unitary_left(a.src()) && is_unitary_right(a.tgt()));
}

TypeClass classify_type(const MultiType& m) {
  return {is_inert(m), is_ground(m), is_left(m), is_right(m), is_unitary_left(m), is_unitary_right(m)};
}

TypeClass classify_type(const TypeContext& g) {
  TypeClass c{true, true, true, true, true, true};
  for (const auto& [_, m] : g.entries()) {
    TypeClass e = classify_type(m);
    c.inert &= e.inert;
    c.ground &= e.ground;
    c.left &= e.left;
    c.right &= e.right;
    c.unitary_left &= e.unitary_left;
    c.unitary_right &= e.unitary_right;
  }
  return c;
}

bool is_inert(const TypeContext& g) { return classify_type(g).inert; }
bool is_left(const TypeContext& g) { return classify_type(g).left; }
bool is_unitary_left(const TypeContext& g) { return classify_type(g).unitary_left; }

LinearType apply_subst(const GroundSubstitution& s, const LinearType& a) {
  if (a.is_ground) {
    auto it = s.find(a.index);
    return it == s.end() ? a : it->second;
  }
  return LinearType::arrow(apply_subst(s, a.src()), apply_subst(s, a.tgt()));
}

MultiType apply_subst(const GroundSubstitution& s, const MultiType& m) {
  std::vector<LinearType> es;
  es.reserve(m.elems.size());
  for (const auto& a : m.elems) es.push_back(apply_subst(s, a));
  return MultiType(std::move(es));
}

TypeContext apply_subst(const GroundSubstitution& s, const TypeContext& g) {
  TypeContext r;
  for (const auto& [x, m] : g.entries()) r.set(x, apply_subst(s, m));
  return r;
}

void collect_grounds(const LinearType& a, std::set<unsigned>& out) {
  if (a.is_ground) {
    out.insert(a.index);
    return;
  }
  collect_grounds(a.src(), out);
  collect_grounds(a.tgt(), out);
}

void collect_grounds(const MultiType& m, std::set<unsigned>& out) {
  for (const auto& a : m.elems) collect_grounds(a, out);
}

void collect_grounds(const TypeContext& g, std::set<unsigned>& out) {
  for (const auto& [_, m] : g.entries()) collect_grounds(m, out);
}

std::vector<LinearType> fresh_grounds(const std::set<unsigned>& avoid, std::size_t count) {
  std::vector<LinearType> out;
  for (unsigned i = 0; out.size() < count; ++i)
    if (!avoid.count(i)) out.push_back(LinearType::ground(i));
  return out;
}

std::string to_string(const LinearType& a) {
  if (a.is_ground) return a.index == 0 ? "X" : "X_" + std::to_string(a.index);
  return to_string(a.src()) + " -o " + to_string(a.tgt());
}

std::string to_string(const MultiType& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.elems.size(); ++i) {
    if (i) s += ",";
    s += to_string(m.elems[i]);
  }
  return s + "]";
}

std::string to_string(const TypeContext& g) {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, m] : g.entries()) {
    if (!first) s += ", ";
    first = false;
    s += x + ":" + to_string(m);
  }
  return s + "}";
}

std::string to_string(const GroundSubstitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [i, a] : s) {
    if (!first) out += ", ";
    first = false;
    out += to_string(LinearType::ground(i)) + " <- " + to_string(a);
  }
  return out + "}";
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  LinearType linear() {
    skip();
    if (peek() == 'X') {
      ++pos_;
      unsigned idx = 0;
      if (peek() == '_') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected ground index after 'X_'");
        while (std::isdigit(static_cast<unsigned char>(peek()))) idx = idx * 10 + (s_[pos_++] - '0');
      }
      return LinearType::ground(idx);
    }
    MultiType src = multi();
    skip();
    if (s_.substr(pos_, 2) != "-o") fail("expected '-o'");
    pos_ += 2;
    MultiType tgt = multi();
    return LinearType::arrow(std::move(src), std::move(tgt));
  }

  MultiType multi() {
    skip();
    if (peek() == '0') {
      ++pos_;
      return {};
    }
    expect('[');
    std::vector<LinearType> es;
    skip();
    if (peek() != ']') {
      es.push_back(linear());
      skip();
      while (peek() == ',') {
        ++pos_;
        es.push_back(linear());
        skip();
      }
    }
    expect(']');
    return MultiType(std::move(es));
  }

  TypeContext context() {
    TypeContext g;
    expect('{');
    skip();
    if (peek() != '}') {
      for (;;) {
        skip();
        std::string x;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'') x += s_[pos_++];
        if (x.empty()) fail("expected variable name");
        expect(':');
        if (g.contains(x)) fail("duplicate variable '" + x + "'");
        g.set(x, multi());
        skip();
        if (peek() != ',') break;
        ++pos_;
      }
    }
    expect('}');
    return g;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw TypeParseError(msg + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LinearType parse_linear(std::string_view text) {
  TypeParser p(text);
  LinearType a = p.linear();
  p.finish();
  return a;
}

MultiType parse_multi(std::string_view text) {
  TypeParser p(text);
  MultiType m = p.multi();
  p.finish();
  return m;
}

TypeContext parse_context(std::string_view text) {
  TypeParser p(text);
  TypeContext g = p.context();
  p.finish();
  return g;
}

}  // namespace vsc
