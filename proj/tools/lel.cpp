#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lelogic/cli.hpp"

using namespace lelogic;

int main(int argc, char** argv) {
  CLI::App app{"polarity- and graph-based semantics for lattice-expansion logics"};
  app.require_subcommand(1);
  bool json_mode = false;
  bool assert_mode = false;
  app.add_flag("--json", json_mode, "machine-readable output");
  app.add_flag("--assert", assert_mode, "report false verdicts as assertion failures");

  auto* lattice = app.add_subcommand("lattice", "concept lattice of a context CSV");
  cli::LatticeArgs la;
  std::string dot_path;
  lattice->add_option("--context", la.context_path, "context CSV file")->required();
  lattice->add_option("--dot", dot_path, "write the order diagram in DOT format");

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a frame");
  cli::EvalArgs ea;
  eval->add_option("--frame", ea.frame_path, "frame JSON file")->required();
  eval->add_option("--valuation", ea.valuation_path, "valuation JSON file")->required();
  eval->add_option("--formula", ea.formula, "formula text")->required();

  auto* valid = app.add_subcommand("valid", "check a sequent on every valuation");
  cli::ValidArgs va;
  valid->add_option("--frame", va.frame_path, "frame JSON file")->required();
  valid->add_option("--sequent", va.sequent, "sequent text, e.g. 'box p |- p'")->required();
  valid->add_option("--vars", va.vars, "budget of distinct letters")->default_val(2);

  auto* check = app.add_subcommand("check", "frame property report");
  cli::CheckArgs ca;
  std::string props;
  std::string check_val, check_formula;
  check->add_option("--frame", ca.frame_path, "frame JSON file")->required();
  check->add_option("--properties", props, "comma-separated property names")->required();
  check->add_option("--valuation", check_val, "valuation JSON (weak-persistence)");
  check->add_option("--formula", check_formula, "formula text (weak-persistence)");

  auto* cm = app.add_subcommand("countermodel", "search small frames for a falsifier");
  cli::CountermodelArgs cma;
  std::string require, out_prefix;
  cm->add_option("--sequent", cma.sequent, "sequent text")->required();
  cm->add_option("--kind", cma.kind, "polarity | graph")->default_val("polarity");
  cm->add_option("--signature", cma.signature, "none | dml | box")->default_val("none");
  cm->add_option("--max-size", cma.max_size, "carrier bound")->default_val(3);
  cm->add_option("--seed", cma.seed, "random stream seed")->default_val(42);
  cm->add_option("--budget", cma.budget, "frames examined")->default_val(20000);
  cm->add_option("--require", require, "restrict generation (factivity, e-reflexivity)");
  cm->add_option("--out", out_prefix, "write <prefix>-frame.json and <prefix>-valuation.json");

  auto* examples = app.add_subcommand("examples", "replay a bundled example");
  cli::ExamplesArgs xa;
  examples->add_option("name", xa.name, "plays | witnesses")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    int rc = cli::kUsage;
    if (*lattice) {
      la.json_mode = json_mode;
      if (!dot_path.empty()) la.dot_path = dot_path;
      rc = cli::cmd_lattice(la, std::cout, std::cerr);
    } else if (*eval) {
      ea.json_mode = json_mode;
      rc = cli::cmd_eval(ea, std::cout, std::cerr);
    } else if (*valid) {
      va.json_mode = json_mode;
      rc = cli::cmd_valid(va, std::cout, std::cerr);
    } else if (*check) {
      ca.json_mode = json_mode;
      std::string cur;
      for (char ch : props + ",") {
        if (ch == ',') {
          if (!cur.empty()) ca.properties.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      if (!check_val.empty()) ca.valuation_path = check_val;
      if (!check_formula.empty()) ca.formula = check_formula;
      rc = cli::cmd_check(ca, std::cout, std::cerr);
    } else if (*cm) {
      cma.json_mode = json_mode;
      if (!require.empty()) cma.require = require;
      if (!out_prefix.empty()) cma.out_prefix = out_prefix;
      rc = cli::cmd_countermodel(cma, std::cout, std::cerr);
    } else if (*examples) {
      xa.json_mode = json_mode;
      rc = cli::cmd_examples(xa, std::cout, std::cerr);
    }
    if (rc == cli::kFalse && assert_mode) std::cerr << "assertion failed\n";
    return rc;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return cli::kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return cli::kUsage;
  }
}
