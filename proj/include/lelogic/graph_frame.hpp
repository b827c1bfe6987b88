#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/algebra.hpp"
#include "lelogic/graph.hpp"
#include "lelogic/polarity_frame.hpp"  // Compat, CompatReport, AuditReport, ClauseSets
#include "lelogic/relation.hpp"

namespace lelogic {

/// A reflexive graph equipped with one relation on node tuples per
/// connective: output node first, then argument nodes. Compatibility follows
/// the section conditions of the complement polarity.
class GraphFrame {
 public:
  ReflexiveGraph graph;
  Signature signature;
  std::map<std::string, Relation> relations;

  static GraphFrame make(ReflexiveGraph g, Signature sig,
                         std::map<std::string, Relation> rels,
                         Compat mode = Compat::checked);

  static Relation empty_relation(const ReflexiveGraph& g, const Connective& c) {
    return Relation(c.arity(), std::vector<int>(c.arity() + 1, g.size()));
  }

  bool was_checked() const { return checked_; }

 private:
  bool checked_ = false;
};

/// Which closure a graph-frame section must absorb: the output section of a
/// G-relation and every antitone coordinate live on the extent side, the rest
/// on the intent side.
inline Side graph_section_side(const Connective& c, int coord /* 0 = output */) {
  bool extent_side;
  if (coord == 0)
    extent_side = c.family == Family::G;
  else if (c.tones[coord - 1] == Tone::monotone)
    extent_side = c.family != Family::G;
  else
    extent_side = c.family == Family::G;
  return extent_side ? Side::object : Side::attribute;
}

inline CompatReport compatibility_check(const GraphFrame& fr, const SectionLimits& lim = {}) {
  CompatReport rep;
  Polarity p = graph_polarity(fr.graph);
  int n = fr.graph.size();
  for (auto& c : fr.signature.connectives()) {
    const Relation& r = fr.relations.at(c.name);
    long long prod = 1;
    for (int i = 0; i < c.arity(); ++i) {
      prod *= std::max(1, n);
      if (prod > lim.max_sections)
        throw CapExceeded("compatibility check section count exceeds cap");
    }
    auto note = [&](const std::string& what) {
      rep.ok = false;
      rep.violations.push_back({c.name, what});
    };
    std::vector<Bits> ranges(c.arity(), full_mask(n));
    std::vector<int> args(c.arity());
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      Bits s = r.csection_at_points(a);
      if (!stable_on(p, graph_section_side(c, 0), s)) {
        std::string desc = "output section at (";
        for (size_t k = 0; k < a.size(); ++k) desc += (k ? "," : "") + std::to_string(a[k]);
        note(desc + ")");
      }
    });
    for (int i = 1; i <= c.arity(); ++i) {
      std::vector<Bits> fixed(static_cast<size_t>(c.arity()), full_mask(n));
      std::vector<int> pts(fixed.size());
      Relation::each_product(fixed, pts, 0, [&](const std::vector<int>& a) {
        std::vector<int> others(a.begin() + 1, a.end());
        Bits s = r.csection_i(i, a[0], others);
        if (!stable_on(p, graph_section_side(c, i), s))
          note("coordinate " + std::to_string(i) + " section at output " + std::to_string(a[0]));
      });
    }
  }
  return rep;
}

inline GraphFrame GraphFrame::make(ReflexiveGraph g, Signature sig,
                                   std::map<std::string, Relation> rels, Compat mode) {
  GraphFrame fr;
  fr.graph = std::move(g);
  fr.signature = std::move(sig);
  for (auto& [name, r] : rels)
    if (!fr.signature.find(name))
      throw std::invalid_argument("relation '" + name + "' has no declared connective");
  for (auto& c : fr.signature.connectives()) {
    auto it = rels.find(c.name);
    if (it == rels.end())
      throw std::invalid_argument("missing relation for connective '" + c.name + "'");
    Relation expect = empty_relation(fr.graph, c);
    if (it->second.arity() != expect.arity() ||
        it->second.carrier_sizes() != expect.carrier_sizes())
      throw std::invalid_argument("relation for '" + c.name + "' has wrong carrier layout");
    it->second.finish();
    fr.relations.emplace(c.name, std::move(it->second));
  }
  if (mode == Compat::checked) {
    auto rep = compatibility_check(fr);
    if (!rep.ok)
      throw std::invalid_argument("incompatible frame: " + rep.violations.front().connective +
                                  " " + rep.violations.front().section);
    fr.checked_ = true;
  }
  return fr;
}

inline ConceptAlgebra complex_algebra(const GraphFrame& fr, const EnumLimits& lim = {}) {
  Polarity p = graph_polarity(fr.graph);
  ConceptAlgebra alg{concept_lattice(p, lim), fr.signature, {}};
  const ConceptLattice& L = alg.lattice;
  int n = L.size();
  for (auto& c : fr.signature.connectives()) {
    const Relation& r = fr.relations.at(c.name);
    long long entries = pow_checked(n, c.arity(), 1 << 20);
    OpTable op{c, std::vector<int>(static_cast<size_t>(entries), -1)};
    std::vector<int> args(c.arity(), 0);
    for (long long idx = 0; idx < entries; ++idx) {
      long long rest = idx;
      for (int i = c.arity() - 1; i >= 0; --i) {
        args[i] = static_cast<int>(rest % n);
        rest /= n;
      }
      std::vector<Bits> pattern;
      for (int i = 0; i < c.arity(); ++i) {
        const Concept& ci = L.at(args[i]);
        // monotone G-coordinates read the intent, antitone the extent;
        // F is the mirror image
        bool use_extent = (c.family == Family::F) == (c.tones[i] == Tone::monotone);
        pattern.push_back(use_extent ? ci.extent : ci.intent);
      }
      Bits sec = r.csection0(pattern);
      int res;
      if (c.family == Family::G) {
        Bits extent = fr.was_checked() ? sec : p.closure_extent(sec);
        auto found = L.try_index_of_extent(extent);
        if (!found)
          throw std::logic_error("operation left the concept lattice; frame incompatible?");
        res = *found;
      } else {
        Bits intent = fr.was_checked() ? sec : p.closure_intent(sec);
        Bits extent = p.down(intent);
        auto found = L.try_index_of_extent(extent);
        if (!found || L.at(*found).intent != intent)
          throw std::logic_error("operation left the concept lattice; frame incompatible?");
        res = *found;
      }
      op.table[static_cast<size_t>(idx)] = res;
    }
    alg.ops.emplace(c.name, std::move(op));
  }
  return alg;
}

inline bool forces(const GraphFrame& fr, const ConceptAlgebra& alg, const Valuation& v,
                   int node, const Formula& f) {
  if (node < 0 || node >= fr.graph.size()) throw std::invalid_argument("unknown node");
  return contains(alg.lattice.at(eval(alg, v, f)).extent, node);
}

inline bool refutes(const GraphFrame& fr, const ConceptAlgebra& alg, const Valuation& v,
                    int node, const Formula& f) {
  if (node < 0 || node >= fr.graph.size()) throw std::invalid_argument("unknown node");
  return contains(alg.lattice.at(eval(alg, v, f)).intent, node);
}

/// Satisfaction/refutation sets recomputed from the graph clause tables:
/// everything is phrased through edges and the frame relations.
inline ClauseSets graph_clause_sets(const GraphFrame& fr, const Valuation& v,
                                    const ConceptLattice& L, const Formula& f) {
  const ReflexiveGraph& g = fr.graph;
  int n = g.size();
  Bits all = full_mask(n);
  // nodes with no edge into any member of s: {z | forall z', z'Ez -> z' not in s}
  auto no_incoming_from = [&](Bits s) {
    Bits image = 0;
    for_each_bit(s, [&](int z) { image |= g.adj[z]; });
    return all & ~image;
  };
  // nodes whose successors avoid s: {z | forall z', zEz' -> z' not in s}
  auto successors_avoid = [&](Bits s) {
    Bits out = 0;
    for (int z = 0; z < n; ++z)
      if ((g.adj[z] & s) == 0) out |= bit(z);
    return out;
  };
  switch (f.kind) {
    case Formula::Kind::var: {
      const Concept& c = L.at(v.at(f.name));
      return {c.extent, no_incoming_from(c.extent)};
    }
    case Formula::Kind::top:
      return {all, 0};
    case Formula::Kind::bot:
      return {0, all};
    case Formula::Kind::conj: {
      ClauseSets l = graph_clause_sets(fr, v, L, f.args[0]);
      ClauseSets r = graph_clause_sets(fr, v, L, f.args[1]);
      Bits force = l.force & r.force;
      return {force, no_incoming_from(force)};
    }
    case Formula::Kind::disj: {
      ClauseSets l = graph_clause_sets(fr, v, L, f.args[0]);
      ClauseSets r = graph_clause_sets(fr, v, L, f.args[1]);
      Bits refute = l.refute & r.refute;
      return {successors_avoid(refute), refute};
    }
    case Formula::Kind::app: {
      const Connective& c = fr.signature.get(f.name);
      const Relation& r = fr.relations.at(f.name);
      std::vector<Bits> pattern;
      for (int i = 0; i < c.arity(); ++i) {
        ClauseSets a = graph_clause_sets(fr, v, L, f.args[i]);
        bool use_force = (c.family == Family::F) == (c.tones[i] == Tone::monotone);
        pattern.push_back(use_force ? a.force : a.refute);
      }
      // primary set: outputs with no related tuple matching the pattern
      Bits primary = r.csection0(pattern);
      if (c.family == Family::G) return {primary, no_incoming_from(primary)};
      return {successors_avoid(primary), primary};
    }
  }
  throw std::logic_error("unreachable");
}

inline AuditReport clause_audit(const GraphFrame& fr, const ConceptAlgebra& alg,
                                const Valuation& v, const Formula& f) {
  AuditReport rep;
  int n = fr.graph.size();
  for (const Formula& sub : subformulas(f)) {
    ClauseSets cs = graph_clause_sets(fr, v, alg.lattice, sub);
    const Concept& ec = alg.lattice.at(eval(alg, v, sub));
    for (int z = 0; z < n; ++z) {
      if (contains(cs.force, z) != contains(ec.extent, z)) {
        rep.ok = false;
        rep.mismatches.push_back(
            {format(sub), Side::object, z, contains(cs.force, z), contains(ec.extent, z)});
      }
      if (contains(cs.refute, z) != contains(ec.intent, z)) {
        rep.ok = false;
        rep.mismatches.push_back(
            {format(sub), Side::attribute, z, contains(cs.refute, z), contains(ec.intent, z)});
      }
    }
  }
  return rep;
}

/// If zEz' and z satisfies the formula, z' must not refute it.
inline bool weak_persistence_check(const GraphFrame& fr, const ConceptAlgebra& alg,
                                   const Valuation& v, const Formula& f) {
  const Concept& c = alg.lattice.at(eval(alg, v, f));
  for (int z = 0; z < fr.graph.size(); ++z)
    if (contains(c.extent, z) && (fr.graph.adj[z] & c.intent) != 0) return false;
  return true;
}

/// On a preorder graph with a lone box relation, compatibility of that
/// relation must hold exactly when (R o E) = R and (E o R) is contained in R.
/// Returns whether the two sides agree; both are brute-forced.
inline bool preorder_projection_check(const GraphFrame& fr) {
  if (!is_transitive(fr.graph))
    throw std::invalid_argument("edge relation is not a preorder");
  auto it = fr.relations.find("box");
  if (it == fr.relations.end() || fr.signature.connectives().size() != 1)
    throw std::invalid_argument("check requires the box-only signature");
  const ReflexiveGraph& g = fr.graph;
  int n = g.size();
  std::vector<Bits> r(n, 0);
  for (auto& t : it->second.tuples()) r[t[0]] |= bit(t[1]);
  std::vector<Bits> r_then_e(n, 0), e_then_r(n, 0);
  for (int a = 0; a < n; ++a) {
    for_each_bit(r[a], [&](int b) { r_then_e[a] |= g.adj[b]; });
    for_each_bit(g.adj[a], [&](int b) { e_then_r[a] |= r[b]; });
  }
  bool projected = true;
  for (int a = 0; a < n; ++a) {
    if (r_then_e[a] != r[a]) projected = false;
    if (!subset_of(e_then_r[a], r[a])) projected = false;
  }
  bool compatible = compatibility_check(fr).ok;
  return compatible == projected;
}

/// The graph frame associated with a finite normal lattice expansion: the
/// filter/ideal graph plus relations read off the transported operations.
inline GraphFrame frame_from_algebra_graph(const LatticeExpansion& e,
                                           const FilterIdealLimits& glim = {},
                                           const EnumLimits& lim = {}) {
  const FiniteLattice& L = e.lattice;
  auto states = filter_ideal_states(L, glim);
  ReflexiveGraph g = lattice_graph(L, glim);
  ConceptLattice XL = graph_lattice(g, lim);
  // the lattice embeds onto the graph's concept lattice; build both directions
  std::vector<int> into(L.size(), -1);
  std::vector<int> back(XL.size(), -1);
  for (int c = 0; c < L.size(); ++c) {
    Bits extent = 0, intent = 0;
    for (size_t z = 0; z < states.size(); ++z) {
      if (contains(states[z].filter, c)) extent |= bit(static_cast<int>(z));
      if (contains(states[z].ideal, c)) intent |= bit(static_cast<int>(z));
    }
    auto idx = XL.try_index_of_extent(extent);
    if (!idx || XL.at(*idx).intent != intent || back[*idx] != -1)
      throw std::logic_error("state lattice does not mirror the input lattice");
    into[c] = *idx;
    back[*idx] = c;
  }
  if (XL.size() != L.size())
    throw std::logic_error("state lattice does not mirror the input lattice");
  int n = g.size();
  std::vector<NodeConcepts> nc;
  nc.reserve(n);
  for (int z = 0; z < n; ++z) nc.push_back(node_concepts(XL, z));
  std::map<std::string, Relation> rels;
  for (auto& c : e.signature.connectives()) {
    Relation r = GraphFrame::empty_relation(g, c);
    std::vector<Bits> ranges(c.arity(), full_mask(n));
    std::vector<int> args(c.arity());
    std::vector<int> t(c.arity() + 1);
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      std::vector<int> lattice_args;
      for (int i = 0; i < c.arity(); ++i) {
        bool use_sat = (c.family == Family::F) == (c.tones[i] == Tone::monotone);
        int concept_idx = use_sat ? nc[a[i]].satisfaction : nc[a[i]].refutation;
        lattice_args.push_back(back[concept_idx]);
      }
      int val = into[e.apply(c.name, lattice_args)];
      for (int out = 0; out < n; ++out) {
        t[0] = out;
        std::copy(a.begin(), a.end(), t.begin() + 1);
        bool rel = c.family == Family::F ? !XL.leq(val, nc[out].refutation)
                                         : !XL.leq(nc[out].satisfaction, val);
        if (rel) r.add(t);
      }
    });
    rels.emplace(c.name, std::move(r));
  }
  return GraphFrame::make(std::move(g), e.signature, std::move(rels), Compat::checked);
}

}  // namespace lelogic
