#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/algebra.hpp"
#include "lelogic/finite_lattice.hpp"
#include "lelogic/formula.hpp"
#include "lelogic/graph.hpp"
#include "lelogic/graph_frame.hpp"
#include "lelogic/polarity.hpp"
#include "lelogic/polarity_frame.hpp"

namespace lelogic {

/// Seeded deterministic source; all generation in the library flows through
/// this so runs are reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  bool percent(int pct) { return below(100) < pct; }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<std::string> indexed_names(const std::string& prefix, int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Polarity random_polarity(Rng& rng, int max_objects, int max_attributes,
                                int density_pct = 40) {
  int na = 1 + rng.below(max_objects);
  int nx = 1 + rng.below(max_attributes);
  std::vector<Bits> rows(na, 0);
  for (int a = 0; a < na; ++a)
    for (int x = 0; x < nx; ++x)
      if (rng.percent(density_pct)) rows[a] |= bit(x);
  return Polarity::from_masks(Carrier(indexed_names("a", na)),
                              Carrier(indexed_names("x", nx)), std::move(rows));
}

inline ReflexiveGraph random_reflexive_graph(Rng& rng, int max_nodes, int edge_pct = 35) {
  int n = 1 + rng.below(max_nodes);
  std::vector<Bits> rows(n, 0);
  for (int a = 0; a < n; ++a) {
    rows[a] |= bit(a);
    for (int b = 0; b < n; ++b)
      if (a != b && rng.percent(edge_pct)) rows[a] |= bit(b);
  }
  return ReflexiveGraph::from_masks(Carrier(indexed_names("z", n)), std::move(rows));
}

inline ReflexiveGraph random_antisymmetric_graph(Rng& rng, int max_nodes, int edge_pct = 35) {
  ReflexiveGraph g = random_reflexive_graph(rng, max_nodes, edge_pct);
  auto rows = g.adj;
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (contains(rows[a], b) && contains(rows[b], a)) {
        if (rng.percent(50))
          rows[a] &= ~bit(b);
        else
          rows[b] &= ~bit(a);
      }
  return ReflexiveGraph::from_masks(g.nodes, std::move(rows));
}

/// Random lattice as a closure system: intersections of a few random subsets
/// of a small universe, plus the universe itself, ordered by inclusion.
inline FiniteLattice random_lattice(Rng& rng, int max_elements) {
  for (;;) {
    int universe = 2 + rng.below(5);
    int seeds = 1 + rng.below(4);
    std::vector<Bits> closed = {full_mask(universe)};
    auto insert_closed = [&](Bits s) {
      for (Bits c : closed)
        if (c == s) return;
      closed.push_back(s);
    };
    for (int i = 0; i < seeds; ++i) {
      Bits s = 0;
      for (int b = 0; b < universe; ++b)
        if (rng.percent(50)) s |= bit(b);
      insert_closed(s);
    }
    for (size_t i = 0; i < closed.size(); ++i)
      for (size_t j = 0; j < closed.size(); ++j) insert_closed(closed[i] & closed[j]);
    if (static_cast<int>(closed.size()) > max_elements) continue;
    int n = static_cast<int>(closed.size());
    std::sort(closed.begin(), closed.end(), [](Bits a, Bits b) {
      return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) leq[i][j] = subset_of(closed[i], closed[j]);
    return FiniteLattice::from_leq(indexed_names("e", n), leq);
  }
}

// ---------------------------------------------------------------------------
// Compatible relation generation. A random seed relation rarely has stable
// sections; the repair loop closes every section that fails, which only adds
// (polarity case) or only removes (graph case) tuples, so it terminates.
// ---------------------------------------------------------------------------

inline void repair_polarity_relation(const Polarity& p, const Connective& c, Relation& r) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Bits> ranges;
    for (int i = 0; i < c.arity(); ++i)
      ranges.push_back(full_mask(PolarityFrame::side_size(p, coord_side(c, i))));
    std::vector<int> args(c.arity());
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      Bits s = r.section_at_points(a);
      Bits cl = close_on(p, output_side(c), s);
      if (cl != s) {
        changed = true;
        std::vector<int> t(c.arity() + 1);
        std::copy(a.begin(), a.end(), t.begin() + 1);
        for_each_bit(cl & ~s, [&](int o) {
          t[0] = o;
          r.add(t);
        });
      }
    });
    for (int i = 1; i <= c.arity(); ++i) {
      std::vector<Bits> fixed;
      fixed.push_back(full_mask(PolarityFrame::side_size(p, output_side(c))));
      for (int j = 0; j < c.arity(); ++j)
        if (j != i - 1) fixed.push_back(full_mask(PolarityFrame::side_size(p, coord_side(c, j))));
      std::vector<int> pts(fixed.size());
      Relation::each_product(fixed, pts, 0, [&](const std::vector<int>& a) {
        std::vector<int> others(a.begin() + 1, a.end());
        Bits s = r.section_i(i, a[0], others);
        Bits cl = close_on(p, coord_side(c, i - 1), s);
        if (cl != s) {
          changed = true;
          std::vector<int> t(c.arity() + 1);
          t[0] = a[0];
          int k = 0;
          for (int j = 1; j <= c.arity(); ++j)
            if (j != i) t[j] = others[k++];
          for_each_bit(cl & ~s, [&](int w) {
            t[i] = w;
            r.add(t);
          });
        }
      });
    }
  }
}

inline void repair_graph_relation(const Polarity& p, const Connective& c, Relation& r,
                                  int n_nodes) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Bits> ranges(c.arity(), full_mask(n_nodes));
    std::vector<int> args(c.arity());
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      Bits s = r.csection_at_points(a);
      Bits cl = close_on(p, graph_section_side(c, 0), s);
      if (cl != s) {
        changed = true;
        std::vector<int> t(c.arity() + 1);
        std::copy(a.begin(), a.end(), t.begin() + 1);
        for_each_bit(cl & ~s, [&](int o) {
          t[0] = o;
          r.remove(t);
        });
      }
    });
    for (int i = 1; i <= c.arity(); ++i) {
      std::vector<Bits> fixed(static_cast<size_t>(c.arity()), full_mask(n_nodes));
      std::vector<int> pts(fixed.size());
      Relation::each_product(fixed, pts, 0, [&](const std::vector<int>& a) {
        std::vector<int> others(a.begin() + 1, a.end());
        Bits s = r.csection_i(i, a[0], others);
        Bits cl = close_on(p, graph_section_side(c, i), s);
        if (cl != s) {
          changed = true;
          std::vector<int> t(c.arity() + 1);
          t[0] = a[0];
          int k = 0;
          for (int j = 1; j <= c.arity(); ++j)
            if (j != i) t[j] = others[k++];
          for_each_bit(cl & ~s, [&](int w) {
            t[i] = w;
            r.remove(t);
          });
        }
      });
    }
  }
}

/// Seed tuples: a few rectangles over closed sets plus sparse noise.
inline Relation seed_polarity_relation(Rng& rng, const Polarity& p, const Connective& c) {
  Relation r = PolarityFrame::empty_relation(p, c);
  int rects = rng.below(3);
  for (int k = 0; k < rects; ++k) {
    Bits out;
    if (output_side(c) == Side::object) {
      Bits raw = 0;
      for (int i = 0; i < p.objects.size(); ++i)
        if (rng.percent(40)) raw |= bit(i);
      out = p.closure_extent(raw);
    } else {
      Bits raw = 0;
      for (int i = 0; i < p.attributes.size(); ++i)
        if (rng.percent(40)) raw |= bit(i);
      out = p.closure_intent(raw);
    }
    std::vector<Bits> argsets;
    for (int i = 0; i < c.arity(); ++i) {
      int sz = PolarityFrame::side_size(p, coord_side(c, i));
      Bits raw = 0;
      for (int b = 0; b < sz; ++b)
        if (rng.percent(40)) raw |= bit(b);
      argsets.push_back(coord_side(c, i) == Side::object ? p.closure_extent(raw)
                                                         : p.closure_intent(raw));
    }
    std::vector<int> args(c.arity());
    Relation::each_product(argsets, args, 0, [&](const std::vector<int>& a) {
      std::vector<int> t(c.arity() + 1);
      std::copy(a.begin(), a.end(), t.begin() + 1);
      for_each_bit(out, [&](int o) {
        t[0] = o;
        r.add(t);
      });
    });
  }
  // sparse noise
  int sprinkle = rng.below(4);
  for (int k = 0; k < sprinkle; ++k) {
    std::vector<int> t(c.arity() + 1);
    bool ok = true;
    for (int i = 0; i <= c.arity(); ++i) {
      int sz = r.carrier_sizes()[i];
      if (sz == 0) { ok = false; break; }
      t[i] = rng.below(sz);
    }
    if (ok) r.add(t);
  }
  return r;
}

inline PolarityFrame random_polarity_frame(Rng& rng, const Signature& sig, Polarity p) {
  std::map<std::string, Relation> rels;
  for (auto& c : sig.connectives()) {
    Relation r = seed_polarity_relation(rng, p, c);
    repair_polarity_relation(p, c, r);
    rels.emplace(c.name, std::move(r));
  }
  return PolarityFrame::make(std::move(p), sig, std::move(rels), Compat::checked);
}

inline GraphFrame random_graph_frame(Rng& rng, const Signature& sig, ReflexiveGraph g) {
  Polarity p = graph_polarity(g);
  std::map<std::string, Relation> rels;
  int n = g.size();
  for (auto& c : sig.connectives()) {
    Relation r = GraphFrame::empty_relation(g, c);
    int mode = rng.below(4);
    std::vector<int> t(c.arity() + 1);
    std::vector<Bits> ranges(c.arity(), full_mask(n));
    std::vector<int> args(c.arity());
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      std::copy(a.begin(), a.end(), t.begin() + 1);
      for (int o = 0; o < n; ++o) {
        t[0] = o;
        bool put = false;
        switch (mode) {
          case 0: put = true; break;                         // full
          case 1: put = rng.percent(70); break;              // dense noise
          case 2: put = rng.percent(35); break;              // sparse noise
          case 3: {                                          // edge-guided
            bool all_edges = true;
            for (int i = 0; i < c.arity(); ++i)
              if (!g.edge(o, a[i])) all_edges = false;
            put = all_edges || rng.percent(15);
            break;
          }
        }
        if (put) r.add(t);
      }
    });
    repair_graph_relation(p, c, r, n);
    rels.emplace(c.name, std::move(r));
  }
  return GraphFrame::make(std::move(g), sig, std::move(rels), Compat::checked);
}

inline Formula random_formula(Rng& rng, const Signature& sig,
                              const std::vector<std::string>& letters, int max_depth) {
  if (max_depth == 0 || rng.percent(25)) {
    int pick = rng.below(static_cast<int>(letters.size()) + 2);
    if (pick == static_cast<int>(letters.size())) return Formula::top();
    if (pick == static_cast<int>(letters.size()) + 1) return Formula::bot();
    return Formula::var(letters[pick]);
  }
  int nconn = static_cast<int>(sig.connectives().size());
  int pick = rng.below(2 + nconn);
  if (pick == 0)
    return Formula::conj(random_formula(rng, sig, letters, max_depth - 1),
                         random_formula(rng, sig, letters, max_depth - 1));
  if (pick == 1)
    return Formula::disj(random_formula(rng, sig, letters, max_depth - 1),
                         random_formula(rng, sig, letters, max_depth - 1));
  const Connective& c = sig.connectives()[pick - 2];
  std::vector<Formula> as;
  for (int i = 0; i < c.arity(); ++i)
    as.push_back(random_formula(rng, sig, letters, max_depth - 1));
  return Formula::app(c.name, std::move(as));
}

/// Finite lattice copy of a concept lattice, elements in concept order.
inline FiniteLattice to_finite_lattice(const ConceptLattice& cl) {
  int n = cl.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = cl.leq(i, j);
  return FiniteLattice::from_leq(indexed_names("c", n), leq);
}

/// Random finite normal expansion: the complex algebra of a random compatible
/// frame over a random polarity, re-packaged as lattice plus tables.
inline LatticeExpansion random_expansion(Rng& rng, const Signature& sig, int max_carrier = 3) {
  for (;;) {
    Polarity p = random_polarity(rng, max_carrier, max_carrier);
    PolarityFrame fr = random_polarity_frame(rng, sig, std::move(p));
    ConceptAlgebra alg = complex_algebra(fr);
    if (alg.lattice.size() > 12) continue;
    std::map<std::string, std::vector<int>> tables;
    for (auto& [name, op] : alg.ops) tables.emplace(name, op.table);
    return LatticeExpansion::make(to_finite_lattice(alg.lattice), sig, std::move(tables));
  }
}

}  // namespace lelogic
