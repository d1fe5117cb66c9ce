#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support/checks.hpp"
#include "support/corpus.hpp"

using vsc_test::Summary;

namespace {

Summary merged(std::vector<Summary> parts) {
  Summary s;
  for (auto& p : parts) {
    s.checked += p.checked;
    s.excluded += p.excluded;
    s.violations += p.violations;
    s.notes.insert(s.notes.end(), p.notes.begin(), p.notes.end());
    s.samples.insert(s.samples.end(), p.samples.begin(), p.samples.end());
  }
  return s;
}

}  // namespace

int main() {
  const auto& corpus = vsc_test::closed_corpus();
  std::printf("corpus: %zu closed terms\n", corpus.size());
  std::vector<std::pair<std::string, std::function<Summary()>>> criteria = {
      {"delta l golden derivation", [] { return vsc_test::check_delta_l_golden(); }},
      {"key example sizes", [] { return vsc_test::check_key_sizes(); }},
      {"gap reproduction", [] { return vsc_test::check_gap_reproduction(); }},
      {"kind-3 bounds on (delta, l)", [] { return vsc_test::check_kind3_delta_l(); }},
      {"rewriting properties", [&] { return vsc_test::check_rewriting(corpus); }},
      {"typing properties", [&] { return vsc_test::check_typing(corpus); }},
      {"adequacy", [&] { return vsc_test::check_adequacy(corpus); }},
      {"kind-2 bounds", [&] { return vsc_test::check_kind2(corpus); }},
      {"plotkin simulation",
       [&] { return merged({vsc_test::check_plotkin(corpus), vsc_test::check_evar_irrelevance(corpus)}); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Summary s;
    try {
      s = criteria[i].second();
    } catch (const std::exception& e) {
      s.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = s.ok();
    failed += !pass;
    std::printf("criterion %zu: %s  %s (%.1fs) %s\n", i + 1, pass ? "PASS" : "FAIL", criteria[i].first.c_str(), secs,
                s.describe().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
