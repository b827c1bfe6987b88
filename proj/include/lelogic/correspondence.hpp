#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lelogic/algebra.hpp"
#include "lelogic/generate.hpp"
#include "lelogic/graph_frame.hpp"
#include "lelogic/polarity_frame.hpp"

namespace lelogic {

struct ValidityResult {
  bool valid = true;
  std::optional<Valuation> counterexample;
  int lhs = -1, rhs = -1;  // evaluated concepts under the counterexample
};

struct ValidityLimits {
  int var_budget = 2;
  long long max_valuations = 1'000'000;
};

/// Semantic validity: the left side evaluates below the right side under
/// every assignment of the sequent's letters into the algebra. Valuations are
/// scanned in mixed-radix order over the letters' first-occurrence order, so
/// the reported counterexample is the least one.
inline ValidityResult valid_on_algebra(const ConceptAlgebra& alg, const Sequent& s,
                                       const ValidityLimits& lim = {}) {
  auto letters = prop_vars(s);
  if (static_cast<int>(letters.size()) > lim.var_budget)
    throw std::invalid_argument("sequent uses " + std::to_string(letters.size()) +
                                " letters, over the budget of " +
                                std::to_string(lim.var_budget));
  int n = alg.lattice.size();
  long long total = 1;
  for (size_t i = 0; i < letters.size(); ++i) {
    total *= n;
    if (total > lim.max_valuations)
      throw CapExceeded("validity needs " + std::to_string(n) + "^" +
                        std::to_string(letters.size()) + " valuations, over the cap of " +
                        std::to_string(lim.max_valuations));
  }
  std::vector<int> digits(letters.size(), 0);
  for (long long it = 0; it < total; ++it) {
    Valuation v;
    for (size_t i = 0; i < letters.size(); ++i) v.assign[letters[i]] = digits[i];
    int l = eval(alg, v, s.lhs);
    int r = eval(alg, v, s.rhs);
    if (!alg.lattice.leq(l, r)) return {false, std::move(v), l, r};
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
      if (++digits[i] < n) break;
      digits[i] = 0;
    }
  }
  return {};
}

inline ValidityResult valid_on_frame(const PolarityFrame& fr, const Sequent& s,
                                     const ValidityLimits& lim = {}) {
  return valid_on_algebra(complex_algebra(fr), s, lim);
}

inline ValidityResult valid_on_frame(const GraphFrame& fr, const Sequent& s,
                                     const ValidityLimits& lim = {}) {
  return valid_on_algebra(complex_algebra(fr), s, lim);
}

// ---------------------------------------------------------------------------
// First-order frame conditions.
// ---------------------------------------------------------------------------

enum class PolarityCondition { factivity, omniscience };

inline bool polarity_condition(const PolarityFrame& fr, PolarityCondition which) {
  auto it = fr.relations.find("box");
  if (it == fr.relations.end())
    throw std::invalid_argument("condition requires the box connective");
  const Polarity& p = fr.polarity;
  if (which == PolarityCondition::factivity) {
    for (auto& t : it->second.tuples())
      if (!p.incident(t[0], t[1])) return false;
    return true;
  }
  for (int a = 0; a < p.objects.size(); ++a)
    for (int x = 0; x < p.attributes.size(); ++x)
      if (p.incident(a, x) && !it->second.contains({a, x})) return false;
  return true;
}

/// Edge-parameterized composition: a (R .E S) x iff some y has aRy and every
/// E-predecessor of y is S-related to x. Collapses to plain composition when
/// the edges are just the diagonal.
inline std::vector<Bits> bullet_e(const std::vector<Bits>& r, const std::vector<Bits>& s,
                                  const ReflexiveGraph& g) {
  int n = g.size();
  std::vector<Bits> common(n, 0);
  for (int y = 0; y < n; ++y) {
    Bits acc = full_mask(n);
    for (int b = 0; b < n; ++b)
      if (g.edge(b, y)) acc &= s[b];
    common[y] = acc;
  }
  std::vector<Bits> out(n, 0);
  for (int a = 0; a < n; ++a)
    for_each_bit(r[a], [&](int y) { out[a] |= common[y]; });
  return out;
}

enum class GraphCondition { e_reflexivity, e_omniscience, e_transitivity };

inline std::vector<Bits> relation_rows(const Relation& r, int n) {
  std::vector<Bits> rows(n, 0);
  for (auto& t : r.tuples()) rows[t[0]] |= bit(t[1]);
  return rows;
}

inline bool graph_condition(const GraphFrame& fr, GraphCondition which) {
  auto it = fr.relations.find("box");
  if (it == fr.relations.end())
    throw std::invalid_argument("condition requires the box connective");
  int n = fr.graph.size();
  auto rows = relation_rows(it->second, n);
  switch (which) {
    case GraphCondition::e_reflexivity:
      for (int z = 0; z < n; ++z)
        if (!subset_of(fr.graph.adj[z], rows[z])) return false;
      return true;
    case GraphCondition::e_omniscience:
      for (int z = 0; z < n; ++z)
        if (!subset_of(rows[z], fr.graph.adj[z])) return false;
      return true;
    case GraphCondition::e_transitivity: {
      auto comp = bullet_e(rows, rows, fr.graph);
      for (int z = 0; z < n; ++z)
        if (!subset_of(comp[z], rows[z])) return false;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rough-approximation diagnostics for frames carrying box and dia.
// ---------------------------------------------------------------------------

struct ApproximationReport {
  std::map<std::string, bool> axioms;  // name -> valid on the frame
  bool box_deflationary = false, box_monotone = false, box_idempotent = false;
  bool dia_inflationary = false, dia_monotone = false, dia_idempotent = false;
  bool adjoint_relations = false;  // aRbox x iff x Rdia a

  bool interior_operator() const {
    return box_deflationary && box_monotone && box_idempotent;
  }
  bool closure_operator() const {
    return dia_inflationary && dia_monotone && dia_idempotent;
  }
};

inline ApproximationReport approximation_space_check(const PolarityFrame& fr) {
  if (!fr.signature.find("box") || !fr.signature.find("dia"))
    throw std::invalid_argument("check requires box and dia");
  ConceptAlgebra alg = complex_algebra(fr);
  using F = Formula;
  F p = F::var("p");
  ApproximationReport rep;
  std::vector<std::pair<std::string, Sequent>> axioms = {
      {"seriality: box p |- dia p", {F::box(p), F::dia(p)}},
      {"reflexivity: box p |- p", {F::box(p), p}},
      {"reflexivity: p |- dia p", {p, F::dia(p)}},
      {"transitivity: box p |- box box p", {F::box(p), F::box(F::box(p))}},
      {"transitivity: dia dia p |- dia p", {F::dia(F::dia(p)), F::dia(p)}},
      {"symmetry: p |- box dia p", {p, F::box(F::dia(p))}},
      {"symmetry: dia box p |- p", {F::dia(F::box(p)), p}},
  };
  for (auto& [name, s] : axioms) rep.axioms[name] = valid_on_algebra(alg, s).valid;

  int n = alg.lattice.size();
  auto box = [&](int c) { return alg.apply("box", {c}); };
  auto dia = [&](int c) { return alg.apply("dia", {c}); };
  rep.box_deflationary = rep.box_monotone = rep.box_idempotent = true;
  rep.dia_inflationary = rep.dia_monotone = rep.dia_idempotent = true;
  for (int c = 0; c < n; ++c) {
    if (!alg.lattice.leq(box(c), c)) rep.box_deflationary = false;
    if (box(box(c)) != box(c)) rep.box_idempotent = false;
    if (!alg.lattice.leq(c, dia(c))) rep.dia_inflationary = false;
    if (dia(dia(c)) != dia(c)) rep.dia_idempotent = false;
    for (int d = 0; d < n; ++d)
      if (alg.lattice.leq(c, d)) {
        if (!alg.lattice.leq(box(c), box(d))) rep.box_monotone = false;
        if (!alg.lattice.leq(dia(c), dia(d))) rep.dia_monotone = false;
      }
  }
  const Relation& rbox = fr.relations.at("box");
  const Relation& rdia = fr.relations.at("dia");
  rep.adjoint_relations = true;
  for (int a = 0; a < fr.polarity.objects.size(); ++a)
    for (int x = 0; x < fr.polarity.attributes.size(); ++x)
      if (rbox.contains({a, x}) != rdia.contains({x, a})) rep.adjoint_relations = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Countermodel search.
// ---------------------------------------------------------------------------

enum class FrameKind { polarity, graph };

struct SearchParams {
  FrameKind kind = FrameKind::polarity;
  int max_size = 3;
  Signature signature;      // empty for pure lattice sequents
  std::uint64_t seed = 42;
  int budget = 20000;       // candidate frames examined
  int random_relation_sets = 3;
  long long max_valuations = 1'000'000;
  std::optional<std::string> require;  // "factivity" | "e-reflexivity"
};

struct Countermodel {
  std::variant<PolarityFrame, GraphFrame> frame;
  Valuation valuation;
  Sequent sequent;
  int lhs = -1, rhs = -1;
};

namespace detail {

inline bool relation_constraint_ok(const SearchParams& params,
                                   const PolarityFrame& fr) {
  if (!params.require) return true;
  if (*params.require == "factivity")
    return polarity_condition(fr, PolarityCondition::factivity);
  throw std::invalid_argument("unknown constraint '" + *params.require + "'");
}

inline bool relation_constraint_ok(const SearchParams& params, const GraphFrame& fr) {
  if (!params.require) return true;
  if (*params.require == "e-reflexivity")
    return graph_condition(fr, GraphCondition::e_reflexivity);
  if (*params.require == "factivity")
    return graph_condition(fr, GraphCondition::e_reflexivity);
  throw std::invalid_argument("unknown constraint '" + *params.require + "'");
}

}  // namespace detail

/// Deterministic first-falsifier search: candidate structures stream in
/// ascending (size, encoding) order; the seed only drives the random relation
/// sets layered on each structure. Absence of a countermodel within budget is
/// a legal outcome.
inline std::optional<Countermodel> countermodel_search(const Sequent& seq,
                                                       const SearchParams& params) {
  int letters = static_cast<int>(prop_vars(seq).size());
  ValidityLimits vlim{letters, params.max_valuations};
  int examined = 0;

  auto check_polarity = [&](PolarityFrame fr) -> std::optional<Countermodel> {
    if (!detail::relation_constraint_ok(params, fr)) return std::nullopt;
    ++examined;
    auto res = valid_on_algebra(complex_algebra(fr), seq, vlim);
    if (!res.valid)
      return Countermodel{std::move(fr), *res.counterexample, seq, res.lhs, res.rhs};
    return std::nullopt;
  };
  auto check_graph = [&](GraphFrame fr) -> std::optional<Countermodel> {
    if (!detail::relation_constraint_ok(params, fr)) return std::nullopt;
    ++examined;
    auto res = valid_on_algebra(complex_algebra(fr), seq, vlim);
    if (!res.valid)
      return Countermodel{std::move(fr), *res.counterexample, seq, res.lhs, res.rhs};
    return std::nullopt;
  };

  std::uint64_t frame_counter = 0;
  if (params.kind == FrameKind::polarity) {
    for (int size = 1; size <= params.max_size; ++size) {
      for (int na = 1; na <= size; ++na) {
        for (int nx = 1; nx <= size; ++nx) {
          if (std::max(na, nx) != size) continue;
          long long masks = 1LL << (na * nx);
          for (long long m = 0; m < masks; ++m) {
            if (examined >= params.budget) return std::nullopt;
            std::vector<Bits> rows(na, 0);
            for (int a = 0; a < na; ++a)
              for (int x = 0; x < nx; ++x)
                if ((m >> (a * nx + x)) & 1) rows[a] |= bit(x);
            Polarity p = Polarity::from_masks(Carrier(indexed_names("a", na)),
                                              Carrier(indexed_names("x", nx)), rows);
            ++frame_counter;
            if (params.signature.empty()) {
              auto hit = check_polarity(
                  PolarityFrame::make(p, params.signature, {}, Compat::checked));
              if (hit) return hit;
              continue;
            }
            // canonical relation sets: full, then seeded random repaired ones
            {
              std::map<std::string, Relation> rels;
              for (auto& c : params.signature.connectives()) {
                Relation r = PolarityFrame::empty_relation(p, c);
                std::vector<Bits> ranges(c.arity() + 1, 0);
                std::vector<int> t(c.arity() + 1, 0);
                auto fill = [&](auto&& self, int at) -> void {
                  if (at == c.arity() + 1) {
                    r.add(t);
                    return;
                  }
                  for (int v = 0; v < r.carrier_sizes()[at]; ++v) {
                    t[at] = v;
                    self(self, at + 1);
                  }
                };
                bool any_empty = false;
                for (int i = 0; i <= c.arity(); ++i)
                  if (r.carrier_sizes()[i] == 0) any_empty = true;
                if (!any_empty) fill(fill, 0);
                rels.emplace(c.name, std::move(r));
              }
              auto hit = check_polarity(
                  PolarityFrame::make(p, params.signature, std::move(rels), Compat::checked));
              if (hit) return hit;
            }
            for (int k = 0; k < params.random_relation_sets; ++k) {
              Rng rng(params.seed ^ (frame_counter * 1000003ULL + k));
              auto hit = check_polarity(random_polarity_frame(rng, params.signature, p));
              if (hit) return hit;
            }
          }
        }
      }
    }
    return std::nullopt;
  }

  for (int n = 1; n <= params.max_size; ++n) {
    int off = n * (n - 1);
    long long masks = 1LL << off;
    for (long long m = 0; m < masks; ++m) {
      if (examined >= params.budget) return std::nullopt;
      std::vector<Bits> rows(n, 0);
      int k = 0;
      for (int a = 0; a < n; ++a) {
        rows[a] |= bit(a);
        for (int b = 0; b < n; ++b) {
          if (a == b) continue;
          if ((m >> k) & 1) rows[a] |= bit(b);
          ++k;
        }
      }
      ReflexiveGraph g = ReflexiveGraph::from_masks(Carrier(indexed_names("z", n)), rows);
      ++frame_counter;
      if (params.signature.empty()) {
        auto hit = check_graph(GraphFrame::make(g, params.signature, {}, Compat::checked));
        if (hit) return hit;
        continue;
      }
      {
        // full relations are always compatible on graphs
        std::map<std::string, Relation> rels;
        for (auto& c : params.signature.connectives()) {
          Relation r = GraphFrame::empty_relation(g, c);
          std::vector<int> t(c.arity() + 1, 0);
          auto fill = [&](auto&& self, int at) -> void {
            if (at == c.arity() + 1) {
              r.add(t);
              return;
            }
            for (int v = 0; v < n; ++v) {
              t[at] = v;
              self(self, at + 1);
            }
          };
          fill(fill, 0);
          rels.emplace(c.name, std::move(r));
        }
        auto hit = check_graph(
            GraphFrame::make(g, params.signature, std::move(rels), Compat::checked));
        if (hit) return hit;
      }
      for (int k2 = 0; k2 < params.random_relation_sets; ++k2) {
        Rng rng(params.seed ^ (frame_counter * 1000003ULL + k2));
        auto hit = check_graph(random_graph_frame(rng, params.signature, g));
        if (hit) return hit;
      }
    }
  }
  return std::nullopt;
}

}  // namespace lelogic
