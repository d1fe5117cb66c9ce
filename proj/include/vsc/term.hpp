#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsc {

enum class TermKind : std::uint8_t { Var, Abs, App, Es };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Var: name. Abs: name = binder, left = body. App: left, right.
// Es: left = body, name = binder, right = argument; the binder scopes over the body only.
struct Term {
  TermKind kind;
  std::string name;
  TermPtr left;
  TermPtr right;

  bool is_var() const { return kind == TermKind::Var; }
  bool is_abs() const { return kind == TermKind::Abs; }
  bool is_app() const { return kind == TermKind::App; }
  bool is_es() const { return kind == TermKind::Es; }
};

TermPtr var(std::string name);
TermPtr abs(std::string binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr es(TermPtr body, std::string binder, TermPtr arg);

// Child selectors. App has Left/Right, Abs has Body, Es has Body/Arg.
enum class Step : std::uint8_t { Left, Right, Body, Arg };
using Path = std::vector<Step>;

std::string path_to_string(const Path& p);
Path path_from_string(std::string_view s);
bool path_before(const Path& a, const Path& b);  // preorder: prefix first, then left to right

// Throws std::out_of_range when the path leaves the tree.
TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& with);

struct ParseError : std::runtime_error {
  std::size_t offset, line, column;
  ParseError(const std::string& msg, std::size_t off, std::size_t ln, std::size_t col);
};

TermPtr parse_term(std::string_view text);
std::string print_term(const TermPtr& t);

std::set<std::string> free_vars(const TermPtr& t);
bool occurs_free(const TermPtr& t, const std::string& x);
std::set<std::string> all_names(const TermPtr& t);

// Base name with trailing digits stripped, then the smallest counter not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Capture-avoiding t{x<-v}. v must be an abstraction or a variable.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v);
TermPtr rename_free(const TermPtr& t, const std::string& from, const std::string& to);

enum class SizeKind : std::uint8_t { Open, Strong };
std::size_t measure(const TermPtr& t, SizeKind kind);
std::size_t es_count(const TermPtr& t);

struct TermClass {
  bool is_value = false;
  bool is_answer = false;
  bool is_inert = false;
  bool is_fireball = false;
  bool is_strong_inert = false;
  bool is_strong_value = false;
  bool is_strong_fireball = false;
  bool is_rigid = false;
};

TermClass classify(const TermPtr& t);
bool is_answer(const TermPtr& t);
bool is_inert(const TermPtr& t);
bool is_fireball(const TermPtr& t);
bool is_strong_inert(const TermPtr& t);
bool is_strong_value(const TermPtr& t);
bool is_strong_fireball(const TermPtr& t);
bool is_rigid(const TermPtr& t);
bool is_es_free(const TermPtr& t);

// Nameless key: bound occurrences become indices, free ones keep their names.
std::string canonical_key(const TermPtr& t);
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Peels an explicit-substitution spine: t = L<inner>, outermost binder first.
struct Spine {
  struct Entry {
    std::string binder;
    TermPtr arg;
  };
  std::vector<Entry> entries;
  TermPtr inner;
};
Spine peel_spine(const TermPtr& t);
TermPtr wrap_spine(const TermPtr& inner, const std::vector<Spine::Entry>& entries);

}  // namespace vsc
