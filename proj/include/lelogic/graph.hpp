#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lelogic/finite_lattice.hpp"
#include "lelogic/polarity.hpp"
#include "lelogic/sets.hpp"

namespace lelogic {

/// A finite graph whose edge relation contains the diagonal. Nodes share the
/// carrier cap of polarities.
struct ReflexiveGraph {
  Carrier nodes;
  std::vector<Bits> adj;  // adj[z]: successors of z, self included

  enum class Loops { require, add_missing };

  static ReflexiveGraph make(std::vector<std::string> node_names,
                             const std::vector<std::pair<std::string, std::string>>& edges,
                             Loops policy = Loops::require) {
    ReflexiveGraph g;
    g.nodes = Carrier(std::move(node_names));
    g.adj.assign(g.nodes.size(), 0);
    for (auto& [s, t] : edges) g.adj[g.nodes.index(s)] |= bit(g.nodes.index(t));
    for (int z = 0; z < g.nodes.size(); ++z) {
      if (!contains(g.adj[z], z)) {
        if (policy == Loops::require)
          throw std::invalid_argument("edge relation is not reflexive: missing (" +
                                      g.nodes.name(z) + "," + g.nodes.name(z) + ")");
        g.adj[z] |= bit(z);
      }
    }
    return g;
  }

  static ReflexiveGraph from_masks(Carrier ns, std::vector<Bits> rows) {
    ReflexiveGraph g;
    g.nodes = std::move(ns);
    g.adj = std::move(rows);
    if (static_cast<int>(g.adj.size()) != g.nodes.size())
      throw std::invalid_argument("adjacency size mismatch");
    for (int z = 0; z < g.nodes.size(); ++z) {
      if (!subset_of(g.adj[z], g.nodes.all()))
        throw std::invalid_argument("edge references undeclared node");
      if (!contains(g.adj[z], z))
        throw std::invalid_argument("edge relation is not reflexive");
    }
    return g;
  }

  int size() const { return nodes.size(); }
  bool edge(int s, int t) const { return contains(adj[s], t); }
  Bits successors(int z) const { return adj[z]; }
  Bits predecessors(int z) const {
    Bits out = 0;
    for (int s = 0; s < size(); ++s)
      if (edge(s, z)) out |= bit(s);
    return out;
  }
};

inline bool is_transitive(const ReflexiveGraph& g) {
  for (int a = 0; a < g.size(); ++a) {
    Bits reach = 0;
    for_each_bit(g.adj[a], [&](int b) { reach |= g.adj[b]; });
    if (!subset_of(reach, g.adj[a])) return false;
  }
  return true;
}

inline bool is_antisymmetric(const ReflexiveGraph& g) {
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (g.edge(a, b) && g.edge(b, a)) return false;
  return true;
}

inline ReflexiveGraph transitive_closure(const ReflexiveGraph& g) {
  auto rows = g.adj;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < g.size(); ++a) {
      Bits reach = rows[a];
      for_each_bit(rows[a], [&](int b) { reach |= rows[b]; });
      if (reach != rows[a]) {
        rows[a] = reach;
        changed = true;
      }
    }
  }
  return ReflexiveGraph::from_masks(g.nodes, std::move(rows));
}

/// The polarity (Z, Z, I) with zIz' exactly when (z,z') is not an edge.
inline Polarity graph_polarity(const ReflexiveGraph& g) {
  Carrier objs(g.nodes.names()), attrs(g.nodes.names());
  std::vector<Bits> rows(g.size());
  for (int z = 0; z < g.size(); ++z) rows[z] = g.nodes.all() & ~g.adj[z];
  return Polarity::from_masks(std::move(objs), std::move(attrs), std::move(rows));
}

inline ConceptLattice graph_lattice(const ReflexiveGraph& g, const EnumLimits& lim = {}) {
  return concept_lattice(graph_polarity(g), lim);
}

struct NodeConcepts {
  int satisfaction;  // generated on the satisfaction side
  int refutation;    // generated on the refutation side
};

/// The two concepts a node generates in the graph's concept lattice.
inline NodeConcepts node_concepts(const ConceptLattice& xl, int z) {
  const Polarity& p = xl.source();
  if (z < 0 || z >= p.objects.size()) throw std::invalid_argument("unknown node");
  return NodeConcepts{xl.index_of_extent(p.closure_extent(bit(z))),
                      xl.index_of_extent(p.down(bit(z)))};
}

inline NodeConcepts node_concepts(const ReflexiveGraph& g, int z, const EnumLimits& lim = {}) {
  return node_concepts(graph_lattice(g, lim), z);
}

struct FilterIdealLimits {
  int max_lattice = 14;
  int max_states = kMaxCarrier;
};

/// Nonempty proper up-closed meet-closed subsets, by exhaustive enumeration.
inline std::vector<Bits> enumerate_filters(const FiniteLattice& l, int cap = 14) {
  if (l.size() > cap) throw CapExceeded("filter enumeration capped at " + std::to_string(cap) + " elements");
  std::vector<Bits> out;
  Bits allm = full_mask(l.size());
  for (Bits s = 1; s <= allm; ++s) {
    bool ok = s != allm;
    for_each_bit(s, [&](int a) {
      if (!ok) return;
      if (!subset_of(l.upset(a), s)) ok = false;
      for_each_bit(s, [&](int b) {
        if (ok && !contains(s, l.meet(a, b))) ok = false;
      });
    });
    if (ok) out.push_back(s);
    if (s == allm) break;
  }
  return out;
}

inline std::vector<Bits> enumerate_ideals(const FiniteLattice& l, int cap = 14) {
  if (l.size() > cap) throw CapExceeded("ideal enumeration capped at " + std::to_string(cap) + " elements");
  std::vector<Bits> out;
  Bits allm = full_mask(l.size());
  for (Bits s = 1; s <= allm; ++s) {
    bool ok = s != allm;
    for_each_bit(s, [&](int a) {
      if (!ok) return;
      if (!subset_of(l.downset(a), s)) ok = false;
      for_each_bit(s, [&](int b) {
        if (ok && !contains(s, l.join(a, b))) ok = false;
      });
    });
    if (ok) out.push_back(s);
    if (s == allm) break;
  }
  return out;
}

/// One state of the filter/ideal graph of a lattice.
struct FilterIdealState {
  Bits filter;
  Bits ideal;
};

/// All disjoint (filter, ideal) pairs, in a fixed enumeration order.
inline std::vector<FilterIdealState> filter_ideal_states(const FiniteLattice& l,
                                                         const FilterIdealLimits& lim = {}) {
  auto filters = enumerate_filters(l, lim.max_lattice);
  auto ideals = enumerate_ideals(l, lim.max_lattice);
  std::vector<FilterIdealState> states;
  for (Bits f : filters)
    for (Bits j : ideals)
      if ((f & j) == 0) states.push_back({f, j});
  if (static_cast<int>(states.size()) > lim.max_states)
    throw CapExceeded("filter/ideal state count exceeds " + std::to_string(lim.max_states));
  return states;
}

/// Graph of disjoint (filter, ideal) pairs; zEz' exactly when the filter of z
/// misses the ideal of z'. Reflexive by the disjointness of each state.
inline ReflexiveGraph lattice_graph(const FiniteLattice& l,
                                    const FilterIdealLimits& lim = {}) {
  auto states = filter_ideal_states(l, lim);
  auto least_of = [&](Bits s) {
    int m = -1;
    for_each_bit(s, [&](int a) {
      if (m == -1 || l.leq(a, m)) m = a;
    });
    return m;
  };
  auto greatest_of = [&](Bits s) {
    int m = -1;
    for_each_bit(s, [&](int a) {
      if (m == -1 || l.leq(m, a)) m = a;
    });
    return m;
  };
  std::vector<std::string> names;
  // every finite filter/ideal is principal: name states by their generators
  for (auto& st : states)
    names.push_back(l.elements().name(least_of(st.filter)) + "/" +
                    l.elements().name(greatest_of(st.ideal)));
  Carrier ns(std::move(names));
  std::vector<Bits> rows(states.size(), 0);
  for (size_t z = 0; z < states.size(); ++z)
    for (size_t w = 0; w < states.size(); ++w)
      if ((states[z].filter & states[w].ideal) == 0) rows[z] |= bit(static_cast<int>(w));
  return ReflexiveGraph::from_masks(std::move(ns), std::move(rows));
}

}  // namespace lelogic
