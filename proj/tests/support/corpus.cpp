#include "corpus.hpp"

#include <unordered_set>

#include "vsc/oracle.hpp"

namespace vsc_test {

namespace {

std::vector<vsc::TermPtr> merge(std::initializer_list<std::vector<vsc::TermPtr>> parts) {
  std::vector<vsc::TermPtr> out;
  std::unordered_set<std::string> seen;
  for (const auto& part : parts)
    for (const auto& t : part)
      if (seen.insert(vsc::canonical_key(t)).second) out.push_back(t);
  return out;
}

}  // namespace

const std::vector<vsc::TermPtr>& closed_corpus() {
  static const std::vector<vsc::TermPtr> corpus =
      merge({vsc::enumerate_terms(7, 0, true, false), vsc::enumerate_terms(5, 0, true, true)});
  return corpus;
}

const std::vector<vsc::TermPtr>& open_corpus() {
  static const std::vector<vsc::TermPtr> corpus = merge({vsc::enumerate_terms(4, 2, false, true)});
  return corpus;
}

std::vector<vsc::TermPtr> es_free(const std::vector<vsc::TermPtr>& terms) {
  std::vector<vsc::TermPtr> out;
  for (const auto& t : terms)
    if (vsc::is_es_free(t)) out.push_back(t);
  return out;
}

}  // namespace vsc_test
