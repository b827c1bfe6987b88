#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lelogic/correspondence.hpp"
#include "lelogic/fixtures.hpp"
#include "lelogic/io.hpp"

namespace lelogic::cli {

// Exit codes: 0 success / valid / all properties true, 1 invalid or a false
// property, 2 usage error, 3 cap exceeded.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCap = 3;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << body;
}

inline std::string concept_label(const ConceptLattice& l, int i) {
  const Concept& c = l.at(i);
  return "{" + l.source().objects.format(c.extent) + "}|{" +
         l.source().attributes.format(c.intent) + "}";
}

inline void print_concepts(const ConceptLattice& l, std::ostream& out) {
  out << l.size() << " concepts\n";
  for (int i = 0; i < l.size(); ++i) out << "  " << i << ": " << concept_label(l, i) << "\n";
}

// -- lattice ----------------------------------------------------------------

struct LatticeArgs {
  std::string context_path;
  std::optional<std::string> dot_path;
  bool json_mode = false;
};

inline int cmd_lattice(const LatticeArgs& a, std::ostream& out, std::ostream& err) {
  (void)err;
  std::ifstream in(a.context_path);
  if (!in) throw std::invalid_argument("cannot open '" + a.context_path + "'");
  Polarity p = parse_context_csv(in);
  ConceptLattice l = concept_lattice(p);
  if (a.json_mode) {
    json j;
    j["count"] = l.size();
    json cs = json::array();
    for (int i = 0; i < l.size(); ++i) {
      json c;
      c["extent"] = json::array();
      for_each_bit(l.at(i).extent, [&](int x) { c["extent"].push_back(p.objects.name(x)); });
      c["intent"] = json::array();
      for_each_bit(l.at(i).intent, [&](int x) { c["intent"].push_back(p.attributes.name(x)); });
      cs.push_back(c);
    }
    j["concepts"] = cs;
    out << j.dump(2) << "\n";
  } else {
    print_concepts(l, out);
  }
  if (a.dot_path) write_text_file(*a.dot_path, to_dot(l));
  return kOk;
}

// -- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string frame_path;
  std::string valuation_path;
  std::string formula;
  bool json_mode = false;
};

inline int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  LoadedFrame lf = frame_from_json(read_json_file(a.frame_path));
  for (auto& w : lf.warnings) err << "warning: " << w << "\n";
  const Signature& sig =
      lf.is_polarity() ? lf.polarity().signature : lf.graph().signature;
  Formula f = parse_formula(sig, a.formula);
  ConceptAlgebra alg =
      lf.is_polarity() ? complex_algebra(lf.polarity()) : complex_algebra(lf.graph());
  Valuation v = valuation_from_json(read_json_file(a.valuation_path), alg.lattice);
  int c = eval(alg, v, f);
  const Concept& cc = alg.lattice.at(c);
  const Polarity& p = alg.lattice.source();
  if (a.json_mode) {
    json j;
    j["formula"] = format(f);
    j["value"] = {{"extent", json::array()}, {"intent", json::array()}};
    for_each_bit(cc.extent, [&](int x) { j["value"]["extent"].push_back(p.objects.name(x)); });
    for_each_bit(cc.intent, [&](int x) { j["value"]["intent"].push_back(p.attributes.name(x)); });
    json pts = json::array();
    if (lf.is_polarity()) {
      for (int i = 0; i < p.objects.size(); ++i)
        pts.push_back({{"point", p.objects.name(i)},
                       {"forces", contains(cc.extent, i)},
                       {"refutes", nullptr}});
      for (int i = 0; i < p.attributes.size(); ++i)
        pts.push_back({{"point", p.attributes.name(i)},
                       {"forces", nullptr},
                       {"refutes", contains(cc.intent, i)}});
    } else {
      for (int i = 0; i < p.objects.size(); ++i)
        pts.push_back({{"point", p.objects.name(i)},
                       {"forces", contains(cc.extent, i)},
                       {"refutes", contains(cc.intent, i)}});
    }
    j["points"] = pts;
    out << j.dump(2) << "\n";
    return kOk;
  }
  out << "value: " << concept_label(alg.lattice, c) << "\n";
  out << "point  forces  refutes\n";
  if (lf.is_polarity()) {
    for (int i = 0; i < p.objects.size(); ++i)
      out << p.objects.name(i) << "  " << (contains(cc.extent, i) ? "yes" : "no") << "  -\n";
    for (int i = 0; i < p.attributes.size(); ++i)
      out << p.attributes.name(i) << "  -  " << (contains(cc.intent, i) ? "yes" : "no")
          << "\n";
  } else {
    for (int i = 0; i < p.objects.size(); ++i)
      out << p.objects.name(i) << "  " << (contains(cc.extent, i) ? "yes" : "no") << "  "
          << (contains(cc.intent, i) ? "yes" : "no") << "\n";
  }
  return kOk;
}

// -- valid --------------------------------------------------------------------

struct ValidArgs {
  std::string frame_path;
  std::string sequent;
  int vars = 2;
  bool json_mode = false;
};

inline int cmd_valid(const ValidArgs& a, std::ostream& out, std::ostream& err) {
  LoadedFrame lf = frame_from_json(read_json_file(a.frame_path));
  for (auto& w : lf.warnings) err << "warning: " << w << "\n";
  const Signature& sig =
      lf.is_polarity() ? lf.polarity().signature : lf.graph().signature;
  Sequent s = parse_sequent(sig, a.sequent);
  ConceptAlgebra alg =
      lf.is_polarity() ? complex_algebra(lf.polarity()) : complex_algebra(lf.graph());
  ValidityLimits lim;
  lim.var_budget = a.vars;
  auto res = valid_on_algebra(alg, s, lim);
  if (a.json_mode) {
    json j;
    j["sequent"] = format(s);
    j["valid"] = res.valid;
    if (!res.valid) {
      j["countermodel"] = {{"valuation", valuation_to_json(*res.counterexample, alg.lattice)},
                           {"lhs", concept_label(alg.lattice, res.lhs)},
                           {"rhs", concept_label(alg.lattice, res.rhs)}};
    }
    out << j.dump(2) << "\n";
  } else if (res.valid) {
    out << "VALID\n";
  } else {
    out << "INVALID\n";
    out << "witness valuation:\n";
    for (auto& [letter, idx] : res.counterexample->assign)
      out << "  " << letter << " = " << concept_label(alg.lattice, idx) << "\n";
    out << "lhs = " << concept_label(alg.lattice, res.lhs)
        << "  rhs = " << concept_label(alg.lattice, res.rhs) << "\n";
  }
  return res.valid ? kOk : kFalse;
}

// -- check ----------------------------------------------------------------------

struct CheckArgs {
  std::string frame_path;
  std::vector<std::string> properties;
  std::optional<std::string> valuation_path;  // for weak-persistence
  std::optional<std::string> formula;         // for weak-persistence
  bool json_mode = false;
};

inline int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  LoadedFrame lf = frame_from_json(read_json_file(a.frame_path), Compat::unchecked);
  for (auto& w : lf.warnings) err << "warning: " << w << "\n";
  json results = json::object();
  bool all_true = true;
  auto record = [&](const std::string& name, bool value) {
    results[name] = value;
    if (!value) all_true = false;
  };
  for (auto& prop : a.properties) {
    if (prop == "compatibility") {
      record(prop, lf.is_polarity() ? compatibility_check(lf.polarity()).ok
                                    : compatibility_check(lf.graph()).ok);
    } else if (prop == "distributivity") {
      auto alg = lf.is_polarity() ? complex_algebra(lf.polarity())
                                  : complex_algebra(lf.graph());
      record(prop, alg.lattice.is_distributive());
    } else if (prop == "transitive") {
      if (lf.is_polarity()) throw std::invalid_argument("'transitive' needs a graph frame");
      record(prop, is_transitive(lf.graph().graph));
    } else if (prop == "antisymmetric") {
      if (lf.is_polarity()) throw std::invalid_argument("'antisymmetric' needs a graph frame");
      record(prop, is_antisymmetric(lf.graph().graph));
    } else if (prop == "factivity") {
      if (!lf.is_polarity()) throw std::invalid_argument("'factivity' needs a polarity frame");
      record(prop, polarity_condition(lf.polarity(), PolarityCondition::factivity));
    } else if (prop == "omniscience") {
      if (!lf.is_polarity()) throw std::invalid_argument("'omniscience' needs a polarity frame");
      record(prop, polarity_condition(lf.polarity(), PolarityCondition::omniscience));
    } else if (prop == "e-reflexivity" || prop == "e-omniscience" || prop == "e-transitivity") {
      if (lf.is_polarity()) throw std::invalid_argument("'" + prop + "' needs a graph frame");
      GraphCondition which = prop == "e-reflexivity"   ? GraphCondition::e_reflexivity
                             : prop == "e-omniscience" ? GraphCondition::e_omniscience
                                                       : GraphCondition::e_transitivity;
      record(prop, graph_condition(lf.graph(), which));
    } else if (prop == "approximation-space") {
      if (!lf.is_polarity())
        throw std::invalid_argument("'approximation-space' needs a polarity frame");
      auto rep = approximation_space_check(lf.polarity());
      bool every = rep.interior_operator() && rep.closure_operator() && rep.adjoint_relations;
      for (auto& [name, ok] : rep.axioms) {
        results["axiom " + name] = ok;
        if (!ok) every = false;
      }
      results["box interior operator"] = rep.interior_operator();
      results["dia closure operator"] = rep.closure_operator();
      results["box/dia adjoint relations"] = rep.adjoint_relations;
      if (!every) all_true = false;
    } else if (prop == "weak-persistence") {
      if (lf.is_polarity())
        throw std::invalid_argument("'weak-persistence' needs a graph frame");
      if (!a.valuation_path || !a.formula)
        throw std::invalid_argument("'weak-persistence' needs --valuation and --formula");
      auto alg = complex_algebra(lf.graph());
      Valuation v = valuation_from_json(read_json_file(*a.valuation_path), alg.lattice);
      Formula f = parse_formula(lf.graph().signature, *a.formula);
      record(prop, weak_persistence_check(lf.graph(), alg, v, f));
    } else {
      throw std::invalid_argument("unknown property '" + prop + "'");
    }
  }
  if (a.json_mode) {
    out << results.dump(2) << "\n";
  } else {
    for (auto& [name, value] : results.items())
      out << name << ": " << (value.get<bool>() ? "true" : "false") << "\n";
  }
  return all_true ? kOk : kFalse;
}

// -- countermodel -----------------------------------------------------------------

struct CountermodelArgs {
  std::string sequent;
  std::string kind = "polarity";  // or "graph"
  std::string signature = "none"; // "none" | "dml" | "box"
  int max_size = 3;
  std::uint64_t seed = 42;
  int budget = 20000;
  std::optional<std::string> require;
  std::optional<std::string> out_prefix;  // writes <prefix>-frame.json etc.
  bool json_mode = false;
};

inline int cmd_countermodel(const CountermodelArgs& a, std::ostream& out, std::ostream& err) {
  (void)err;
  SearchParams params;
  if (a.kind == "polarity")
    params.kind = FrameKind::polarity;
  else if (a.kind == "graph")
    params.kind = FrameKind::graph;
  else
    throw std::invalid_argument("unknown frame kind '" + a.kind + "'");
  if (a.signature == "dml")
    params.signature = Signature::dml();
  else if (a.signature == "box")
    params.signature = Signature::box_only();
  else if (a.signature != "none")
    throw std::invalid_argument("unknown signature '" + a.signature + "'");
  params.max_size = a.max_size;
  params.seed = a.seed;
  params.budget = a.budget;
  params.require = a.require;
  Sequent s = parse_sequent(params.signature, a.sequent);
  auto found = countermodel_search(s, params);
  if (!found) {
    if (a.json_mode)
      out << json{{"sequent", format(s)}, {"found", false}}.dump(2) << "\n";
    else
      out << "none within budget\n";
    return kFalse;
  }
  json frame_json = std::holds_alternative<PolarityFrame>(found->frame)
                        ? frame_to_json(std::get<PolarityFrame>(found->frame))
                        : frame_to_json(std::get<GraphFrame>(found->frame));
  ConceptAlgebra alg = std::holds_alternative<PolarityFrame>(found->frame)
                           ? complex_algebra(std::get<PolarityFrame>(found->frame))
                           : complex_algebra(std::get<GraphFrame>(found->frame));
  json val_json = valuation_to_json(found->valuation, alg.lattice);
  if (a.out_prefix) {
    write_text_file(*a.out_prefix + "-frame.json", frame_json.dump(2) + "\n");
    write_text_file(*a.out_prefix + "-valuation.json", val_json.dump(2) + "\n");
  }
  if (a.json_mode) {
    json j;
    j["sequent"] = format(s);
    j["found"] = true;
    j["frame"] = frame_json;
    j["valuation"] = val_json;
    j["lhs"] = concept_label(alg.lattice, found->lhs);
    j["rhs"] = concept_label(alg.lattice, found->rhs);
    out << j.dump(2) << "\n";
  } else {
    out << "countermodel found\n";
    out << "frame: " << frame_json.dump() << "\n";
    out << "valuation: " << val_json.dump() << "\n";
    out << "lhs = " << concept_label(alg.lattice, found->lhs)
        << "  rhs = " << concept_label(alg.lattice, found->rhs) << "\n";
  }
  return kOk;
}

// -- examples ----------------------------------------------------------------------

struct ExamplesArgs {
  std::string name;  // "plays" | "witnesses"
  bool json_mode = false;
};

inline int cmd_examples(const ExamplesArgs& a, std::ostream& out, std::ostream& err) {
  (void)err;
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    out << (ok ? "  ok: " : "  FAIL: ") << what << "\n";
    if (!ok) ++failures;
  };
  if (a.name == "plays") {
    std::istringstream csv(fixtures::plays_csv);
    Polarity p = parse_context_csv(csv);
    ConceptLattice l = concept_lattice(p);
    print_concepts(l, out);
    expect(l.size() == 5, "lattice has 5 concepts");
    PolarityFrame fr = PolarityFrame::make(p, {}, {}, Compat::checked);
    ConceptAlgebra alg = complex_algebra(fr);
    Valuation v = valuation_from_json(json::parse(fixtures::plays_valuation_json), alg.lattice);
    Formula left = parse_formula({}, "d /\\ (h \\/ r)");
    Formula right = parse_formula({}, "(d /\\ h) \\/ (d /\\ r)");
    int lv = eval(alg, v, left), rv = eval(alg, v, right);
    out << "eval " << format(left) << " = " << concept_label(alg.lattice, lv) << "\n";
    out << "eval " << format(right) << " = " << concept_label(alg.lattice, rv) << "\n";
    expect(lv == v.at("d"), "d /\\ (h \\/ r) coincides with d");
    expect(rv == v.at("h"), "(d /\\ h) \\/ (d /\\ r) coincides with h");
    expect(!alg.lattice.is_distributive(), "lattice is not distributive");
    return failures == 0 ? kOk : kFalse;
  }
  if (a.name == "witnesses") {
    LoadedFrame lf = frame_from_json(json::parse(fixtures::witness_frame_json));
    const GraphFrame& fr = lf.graph();
    ConceptAlgebra alg = complex_algebra(fr);
    print_concepts(alg.lattice, out);
    expect(alg.lattice.size() == 5, "lattice has 5 concepts");
    Valuation v =
        valuation_from_json(json::parse(fixtures::witness_valuation_json), alg.lattice);
    Formula p = Formula::var("p"), q = Formula::var("q");
    Formula porq = Formula::disj(p, q);
    int vi = fr.graph.nodes.index("v"), ui = fr.graph.nodes.index("u"),
        zi = fr.graph.nodes.index("z");
    expect(forces(fr, alg, v, vi, porq), "v forces p \\/ q");
    expect(!forces(fr, alg, v, vi, p), "v does not force p");
    expect(!forces(fr, alg, v, vi, q), "v does not force q");
    expect(refutes(fr, alg, v, vi, p), "v refutes p");
    expect(!refutes(fr, alg, v, vi, q), "v does not refute q");
    expect(forces(fr, alg, v, ui, q), "u forces q");
    expect(refutes(fr, alg, v, zi, q), "z refutes q");
    expect(!forces(fr, alg, v, vi, q) && !refutes(fr, alg, v, vi, q),
           "q is indeterminate at v");
    return failures == 0 ? kOk : kFalse;
  }
  throw std::invalid_argument("unknown example '" + a.name + "' (try plays, witnesses)");
}

}  // namespace lelogic::cli
