#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "vsc/bounds.hpp"
#include "vsc/derivations.hpp"
#include "vsc/inference.hpp"
#include "vsc/oracle.hpp"
#include "vsc/rewriting.hpp"
#include "vsc/term.hpp"

using namespace vsc;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Settings {
  std::size_t fuel = kDefaultFuel;
  std::size_t max_general = Budget{}.max_general;
  std::size_t max_type = Budget{}.max_type;
  std::size_t cap = kDefaultNodeCap;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline text, or @file.
TermPtr load_term(const std::string& arg) {
  std::string text = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return parse_term(text);
}

void header(const Settings& s) {
  std::cout << "# vsc fuel=" << s.fuel << " budget=" << s.max_general << "," << s.max_type << " cap=" << s.cap
            << '\n';
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int run_eval(const Settings& st, const std::string& term, const std::string& strategy, bool evar, bool trace) {
  TermPtr t = load_term(term);
  header(st);
  Trace tr = evaluate(t, parse_strategy(strategy), st.fuel, evar);
  std::cout << format_trace(tr, trace);
  std::cout << "normal form: " << print_term(tr.final_term()) << '\n';
  return kOk;
}

int run_classify(const Settings& st, const std::string& term) {
  TermPtr t = load_term(term);
  header(st);
  TermClass c = classify(t);
  std::cout << "term: " << print_term(t) << '\n'
            << "value: " << yes_no(c.is_value) << '\n'
            << "answer: " << yes_no(c.is_answer) << '\n'
            << "inert: " << yes_no(c.is_inert) << '\n'
            << "fireball: " << yes_no(c.is_fireball) << '\n'
            << "strong_inert: " << yes_no(c.is_strong_inert) << '\n'
            << "strong_value: " << yes_no(c.is_strong_value) << '\n'
            << "strong_fireball: " << yes_no(c.is_strong_fireball) << '\n'
            << "rigid: " << yes_no(c.is_rigid) << '\n';
  return kOk;
}

void print_sizes(const DerivPtr& d) {
  DerivSizes sz = sizes(d);
  DerivationClass c = classify_derivation(d);
  std::cout << "general=" << sz.general << " mult=" << sz.mult << " inert=" << yes_no(c.inert)
            << " tight=" << yes_no(c.tight) << " shrinking=" << yes_no(c.shrinking)
            << " unitary_shrinking=" << yes_no(c.unitary_shrinking) << '\n';
}

int run_type_nf(const Settings& st, const std::string& term, const std::string& mode, const std::string& target) {
  TermPtr t = load_term(term);
  std::optional<MultiType> tgt;
  if (!target.empty()) tgt = parse_multi(target);
  TypingMode m = parse_typing_mode(mode);
  DerivPtr d;
  try {
    d = type_normal_form(t, m, tgt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  header(st);
  std::cout << serialize(d);
  print_sizes(d);
  return kOk;
}

int run_derive(const Settings& st, const std::string& term, const std::string& mode, const std::string& out) {
  TermPtr t = load_term(term);
  TypingMode m = parse_typing_mode(mode);
  header(st);
  PipelineResult r = derive(t, m, st.fuel);
  std::cout << format_trace(r.trace, false);
  if (!r.derivation) {
    std::cout << "no derivation: evaluation did not reach a normal form within fuel\n";
    return kViolation;
  }
  if (out.empty()) {
    std::cout << serialize(*r.derivation);
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write " + out);
    f << serialize(*r.derivation);
    std::cout << "derivation written to " << out << '\n';
  }
  print_sizes(*r.derivation);
  std::cout << "mult=" << r.mult << " identity=" << (r.identity_holds ? "ok" : "violation") << '\n';
  return r.identity_holds ? kOk : kViolation;
}

int run_check(const Settings& st, const std::string& file) {
  DerivPtr d;
  try {
    d = deserialize(read_file(file));
  } catch (const DerivationParseError& e) {
    throw UsageError(e.what());
  } catch (const DerivationError& e) {
    header(st);
    std::cout << "invalid: " << e.what() << '\n';
    return kViolation;
  }
  header(st);
  CheckReport rep = check_derivation(d);
  if (!rep.ok) {
    std::cout << "invalid: " << rep.message << '\n';
    return kViolation;
  }
  std::cout << "valid: " << to_string(d->concl) << '\n';
  print_sizes(d);
  return kOk;
}

int run_bounds(const Settings& st, const std::string& t_arg, const std::string& u_arg) {
  TermPtr t = load_term(t_arg);
  TermPtr u = load_term(u_arg);
  Budget b;
  b.max_general = st.max_general;
  b.max_type = st.max_type;
  BoundReport r;
  try {
    r = bound_report(t, u, st.fuel, b);
  } catch (const DerivationError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  header(st);
  std::cout << format_bound_report(r);
  return r.ok() ? kOk : kViolation;
}

int run_oracle(const Settings& st, const std::string& check, const std::string& strategy, std::size_t max_size,
               bool evar) {
  header(st);
  std::vector<TermPtr> terms = enumerate_terms(max_size, 0, true, true);
  if (check == "enumerate") {
    for (const auto& t : terms) std::cout << print_term(t) << '\n';
    std::cout << "terms=" << terms.size() << '\n';
    return kOk;
  }
  Strategy s = parse_strategy(strategy);
  std::size_t truncated = 0, violations = 0;
  for (const auto& t : terms) {
    ReductionGraph g = reduction_graph(t, s, st.cap, evar);
    if (g.truncated) {
      ++truncated;
      continue;
    }
    Verdict v;
    if (check == "diamond") {
      v = check_diamond(g);
    } else if (check == "commute") {
      v = check_commutation(g, StepKind::Mult, StepKind::Expo);
      if (v.ok) v = check_commutation(g, StepKind::Expo, StepKind::Mult);
    } else {
      v = check_random_descent(g);
    }
    if (!v.ok) {
      ++violations;
      std::cout << "violation: " << print_term(t) << ": " << v.message << '\n';
    }
  }
  std::cout << "check=" << check << " strategy=" << to_string(s) << " terms=" << terms.size()
            << " truncated=" << truncated << " violations=" << violations << '\n';
  return violations == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Value substitution calculus toolkit"};
  app.require_subcommand(1);
  Settings st;
  std::string term, term2, strategy = "external", mode = "strong", target, out, file, check;
  std::string budget = std::to_string(st.max_general) + "," + std::to_string(st.max_type);
  bool evar = false, trace = false;
  std::size_t max_size = 0;

  auto* eval = app.add_subcommand("eval", "Evaluate a term with a strategy");
  eval->add_option("--strategy", strategy)->check(CLI::IsMember({"open", "external", "full"}));
  eval->add_flag("--evar", evar, "Enable the variable exponential rule");
  eval->add_option("--fuel", st.fuel);
  eval->add_flag("--trace", trace, "Print every step");
  eval->add_option("term", term)->required();

  auto* cls = app.add_subcommand("classify", "Report the syntactic classes of a term");
  cls->add_option("term", term)->required();

  auto* tnf = app.add_subcommand("type-nf", "Type a normal form");
  tnf->add_option("--mode", mode)->check(CLI::IsMember({"open", "strong"}));
  tnf->add_option("--target", target, "Multi type for inert subjects");
  tnf->add_option("term", term)->required();

  auto* der = app.add_subcommand("derive", "Evaluate, type the normal form and expand back");
  der->add_option("--mode", mode)->check(CLI::IsMember({"open", "strong"}));
  der->add_option("--fuel", st.fuel);
  der->add_option("--out", out, "Write the derivation to a file");
  der->add_option("term", term)->required();

  auto* chk = app.add_subcommand("check-derivation", "Check a serialized derivation");
  chk->add_option("file", file)->required();

  auto* bnd = app.add_subcommand("bounds", "Bound report for the application of two closed normal terms");
  bnd->add_option("--budget", budget, "max general size,max type size");
  bnd->add_option("--fuel", st.fuel);
  bnd->add_option("t", term)->required();
  bnd->add_option("u", term2)->required();

  auto* orc = app.add_subcommand("oracle", "Exhaustive checks over enumerated closed terms");
  orc->add_option("check", check)->required()->check(CLI::IsMember({"diamond", "commute", "descent", "enumerate"}));
  orc->add_option("--strategy", strategy)->check(CLI::IsMember({"open", "external", "full"}));
  orc->add_option("--max-size", max_size)->required();
  orc->add_option("--cap", st.cap);
  orc->add_flag("--evar", evar);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (bnd->parsed()) {
      auto comma = budget.find(',');
      if (comma == std::string::npos) throw UsageError("--budget expects G,T");
      try {
        st.max_general = std::stoul(budget.substr(0, comma));
        st.max_type = std::stoul(budget.substr(comma + 1));
      } catch (const std::exception&) {
        throw UsageError("--budget expects G,T");
      }
    }
    if (eval->parsed()) return run_eval(st, term, strategy, evar, trace);
    if (cls->parsed()) return run_classify(st, term);
    if (tnf->parsed()) return run_type_nf(st, term, mode, target);
    if (der->parsed()) return run_derive(st, term, mode, out);
    if (chk->parsed()) return run_check(st, file);
    if (bnd->parsed()) return run_bounds(st, term, term2);
    if (orc->parsed()) return run_oracle(st, check, strategy, max_size, evar);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const TypeParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kUsage;
}
