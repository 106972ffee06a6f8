// tenseq — batch command-line front end for the sequent-calculus toolkit.
//
// Subcommands:
//   parse      validate a formula or sequent and print its canonical form
//   check      check a derivation file under a calculus variant
//   eliminate  run the cut-elimination pipeline on a derivation file
//   prove      backward proof search for a sequent
//   translate  move a derivation between calculus variants
//
// Exit codes: 0 success, 1 logical failure (violations, not-found,
// untranslatable), 2 input error (unreadable file, syntax, bad flags),
// 3 resource exhaustion (fuel).
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tenseq/cutelim.hpp"
#include "tenseq/search.hpp"
#include "tenseq/sexpr.hpp"
#include "tenseq/text.hpp"
#include "tenseq/translate.hpp"

namespace {

using namespace tenseq;

// Reads a whole input, `-` meaning standard input.  Returns false (after
// reporting) when the file cannot be opened.
bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

void print_violations(const std::vector<Violation>& violations, std::ostream& os) {
  for (const auto& v : violations)
    os << v.addr << ": " << reason_code(v.reason) << ": " << v.msg << "\n";
}

int cmd_parse(const std::string& path) {
  std::string text;
  if (!read_input(path, text)) return 2;
  try {
    if (text.find("=>") != std::string::npos)
      std::cout << print_sequent(parse_sequent(text)) << "\n";
    else
      std::cout << print_formula(parse_formula(text)) << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_check(const std::string& calculus, const std::string& path) {
  std::string text;
  if (!read_input(path, text)) return 2;
  Variant v = *variant_from_name(calculus);
  DerivPtr d;
  try {
    d = read_derivation(text);
  } catch (const std::runtime_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  auto violations = check(d, v);
  if (violations.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  print_violations(violations, std::cout);
  return 1;
}

// Counts the nodes the pipeline rewrites even on cut-free input: (Id) leaves
// and unrestricted contractions, both absent from the restricted calculi.
int count_expandable(const DerivPtr& d) {
  int n = (d->rule == RuleId::Id || d->rule == RuleId::ConF) ? 1 : 0;
  for (const auto& p : d->prems) n += count_expandable(p);
  return n;
}

bool write_trace(const std::string& path, const Trace& trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return false;
  }
  for (const auto& step : trace) f << trace_line(step) << "\n";
  return true;
}

int cmd_eliminate(const std::string& path, const std::string& trace_path,
                  long long fuel) {
  std::string text;
  if (!read_input(path, text)) return 2;
  DerivPtr d;
  try {
    d = read_derivation(text);
  } catch (const std::runtime_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  auto violations = check(d, Variant::Base);
  if (!violations.empty()) {
    std::cerr << "input does not check under base:\n";
    print_violations(violations, std::cerr);
    return 1;
  }
  const bool was_cut_free = is_cut_free(d);
  const int expandable = count_expandable(d);
  std::optional<long long> budget;
  if (fuel >= 0) budget = fuel;
  EliminationResult result;
  try {
    result = pipeline(d, budget);
  } catch (const FuelExhausted& e) {
    if (!trace_path.empty() && !write_trace(trace_path, e.trace)) return 2;
    std::cerr << "fuel exhausted: " << e.what() << "\n";
    return 3;
  }
  if (!trace_path.empty() && !write_trace(trace_path, result.trace)) return 2;
  if (was_cut_free && expandable > 0)
    std::cerr << "note: input was already cut-free; expanded " << expandable
              << " base-only node(s)\n";
  std::cout << write_derivation(result.derivation);
  return 0;
}

int cmd_prove(const std::string& calculus, int depth, const std::string& goal) {
  Sequent s;
  try {
    s = parse_sequent(goal);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  SearchBudget budget;
  budget.max_depth = depth;
  DerivPtr d;
  try {
    d = prove(s, *variant_from_name(calculus), budget);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (!d) {
    std::cout << "not-found\n";
    return 1;
  }
  std::cout << write_derivation(d);
  return 0;
}

int cmd_translate(const std::string& target_name, const std::string& path) {
  std::string text;
  if (!read_input(path, text)) return 2;
  DerivPtr d;
  try {
    d = read_derivation(text);
  } catch (const std::runtime_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  // The file format does not carry a calculus tag, so the source is the
  // first variant the derivation checks under.
  std::optional<Variant> source;
  for (Variant v : {Variant::Base, Variant::Dagger, Variant::DoubleDagger})
    if (check(d, v).empty()) {
      source = v;
      break;
    }
  if (!source) {
    std::cerr << "input does not check under any calculus:\n";
    print_violations(check(d, Variant::Base), std::cerr);
    return 1;
  }
  Variant target = *variant_from_name(target_name);
  try {
    DerivPtr out = d;
    if (*source == Variant::Base && target != Variant::Base) {
      out = to_dagger(out);
      if (target == Variant::DoubleDagger) out = split_cuts(out);
    } else if (*source == Variant::Dagger) {
      if (target == Variant::Base) out = from_dagger(out);
      if (target == Variant::DoubleDagger) out = split_cuts(out);
    } else if (*source == Variant::DoubleDagger && target != Variant::DoubleDagger) {
      out = from_ddagger(out);
      if (target == Variant::Base) out = from_dagger(out);
    }
    std::cout << write_derivation(out);
  } catch (const TransformError& e) {
    std::cerr << "translate failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof tools for a weak intuitionistic tense sequent calculus"};
  app.require_subcommand(1);

  const std::vector<std::string> calculi = {"base", "dagger", "ddagger"};

  auto* parse_cmd = app.add_subcommand("parse", "validate and canonically print");
  std::string parse_path;
  parse_cmd->add_option("file", parse_path, "formula or sequent file, - for stdin")
      ->required();

  auto* check_cmd = app.add_subcommand("check", "check a derivation file");
  std::string check_calculus;
  std::string check_path;
  check_cmd->add_option("--calculus", check_calculus, "calculus variant")
      ->required()
      ->check(CLI::IsMember(calculi));
  check_cmd->add_option("file", check_path, "derivation file, - for stdin")->required();

  auto* elim_cmd = app.add_subcommand("eliminate", "run cut elimination");
  std::string elim_path;
  std::string elim_trace;
  long long elim_fuel = -1;
  elim_cmd->add_option("--trace", elim_trace, "write the reduction trace here");
  elim_cmd->add_option("--fuel", elim_fuel, "reduction step budget")
      ->check(CLI::NonNegativeNumber);
  elim_cmd->add_option("file", elim_path, "derivation file, - for stdin")->required();

  auto* prove_cmd = app.add_subcommand("prove", "backward proof search");
  std::string prove_calculus;
  int prove_depth = 0;
  std::string prove_goal;
  prove_cmd->add_option("--calculus", prove_calculus, "calculus variant")
      ->required()
      ->check(CLI::IsMember(calculi));
  prove_cmd->add_option("--depth", prove_depth, "maximum search depth")->required();
  prove_cmd->add_option("sequent", prove_goal, "goal sequent")->required();

  auto* trans_cmd = app.add_subcommand("translate", "move between calculi");
  std::string trans_target;
  std::string trans_path;
  trans_cmd->add_option("--to", trans_target, "target calculus")
      ->required()
      ->check(CLI::IsMember(calculi));
  trans_cmd->add_option("file", trans_path, "derivation file, - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*parse_cmd) return cmd_parse(parse_path);
  if (*check_cmd) return cmd_check(check_calculus, check_path);
  if (*elim_cmd) return cmd_eliminate(elim_path, elim_trace, elim_fuel);
  if (*prove_cmd) return cmd_prove(prove_calculus, prove_depth, prove_goal);
  if (*trans_cmd) return cmd_translate(trans_target, trans_path);
  return 2;
}
