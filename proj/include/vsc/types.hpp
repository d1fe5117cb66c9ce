#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsc {

struct MultiType;

// Ground(index) or Arrow(source, target). Index 0 prints as X.
struct LinearType {
  bool is_ground = true;
  unsigned index = 0;
  std::shared_ptr<const MultiType> source;
  std::shared_ptr<const MultiType> target;

  static LinearType ground(unsigned i = 0);
  static LinearType arrow(MultiType src, MultiType tgt);
  const MultiType& src() const { return *source; }
  const MultiType& tgt() const { return *target; }
};

// Multiset of linear types kept sorted under compare().
struct MultiType {
  std::vector<LinearType> elems;

  MultiType() = default;
  explicit MultiType(std::vector<LinearType> es);
  std::size_t card() const { return elems.size(); }
  bool empty() const { return elems.empty(); }
};

int compare(const LinearType& a, const LinearType& b);
int compare(const MultiType& a, const MultiType& b);
inline bool operator==(const LinearType& a, const LinearType& b) { return compare(a, b) == 0; }
inline bool operator<(const LinearType& a, const LinearType& b) { return compare(a, b) < 0; }
inline bool operator==(const MultiType& a, const MultiType& b) { return compare(a, b) == 0; }
inline bool operator<(const MultiType& a, const MultiType& b) { return compare(a, b) < 0; }

MultiType singleton(const LinearType& a);
MultiType ground_mt(std::size_t n, unsigned index = 0);  // n[X]
MultiType mt_sum(const MultiType& m, const MultiType& n);

// Finite map variable -> non-empty multi type.
class TypeContext {
 public:
  const MultiType& at(const std::string& x) const;  // 0 when absent
  void set(const std::string& x, MultiType m);        // erases on 0
  void erase(const std::string& x) { map_.erase(x); }
  bool contains(const std::string& x) const { return map_.count(x) != 0; }
  std::set<std::string> domain() const;
  const std::map<std::string, MultiType>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }
  friend bool operator==(const TypeContext& a, const TypeContext& b);

 private:
  std::map<std::string, MultiType> map_;
};

TypeContext ctx_sum(const TypeContext& a, const TypeContext& b);
TypeContext ctx_single(const std::string& x, MultiType m);

std::size_t type_size(const LinearType& a);
std::size_t type_size(const MultiType& m);
std::size_t type_size(const TypeContext& g);

struct TypeClass {
  bool inert = false;
  bool ground = false;
  bool left = false;
  bool right = false;
  bool unitary_left = false;
  bool unitary_right = false;
};

// Every ground index counts as X for these grammars.
TypeClass classify_type(const MultiType& m);
TypeClass classify_type(const TypeContext& g);  // pointwise; right flags are those of all entries
bool is_inert(const MultiType& m);
bool is_ground(const MultiType& m);
bool is_left(const MultiType& m);
bool is_right(const MultiType& m);
bool is_unitary_left(const MultiType& m);
bool is_unitary_right(const MultiType& m);
bool is_inert(const TypeContext& g);
bool is_left(const TypeContext& g);
bool is_unitary_left(const TypeContext& g);

// Identity outside its domain.
using GroundSubstitution = std::map<unsigned, LinearType>;

LinearType apply_subst(const GroundSubstitution& s, const LinearType& a);
MultiType apply_subst(const GroundSubstitution& s, const MultiType& m);
TypeContext apply_subst(const GroundSubstitution& s, const TypeContext& g);

void collect_grounds(const LinearType& a, std::set<unsigned>& out);
void collect_grounds(const MultiType& m, std::set<unsigned>& out);
void collect_grounds(const TypeContext& g, std::set<unsigned>& out);

// Smallest `count` indices not in avoid.
std::vector<LinearType> fresh_grounds(const std::set<unsigned>& avoid, std::size_t count);

std::string to_string(const LinearType& a);
std::string to_string(const MultiType& m);
std::string to_string(const TypeContext& g);
std::string to_string(const GroundSubstitution& s);

struct TypeParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LinearType parse_linear(std::string_view text);
MultiType parse_multi(std::string_view text);  // "0" is accepted for []
TypeContext parse_context(std::string_view text);

}  // namespace vsc
