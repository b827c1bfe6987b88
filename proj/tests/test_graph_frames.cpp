#include <catch2/catch_amalgamated.hpp>

#include "lelogic/correspondence.hpp"
#include "lelogic/generate.hpp"
#include "lelogic/graph_frame.hpp"

#include "helpers.hpp"

using namespace lelogic;
using testutil::make_craig_graph;
using testutil::make_witness_graph;

namespace {

Relation edge_relation(const ReflexiveGraph& g, const Connective& c) {
  Relation r = GraphFrame::empty_relation(g, c);
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.edge(a, b)) r.add({a, b});
  return r;
}

Relation converse_edge_relation(const ReflexiveGraph& g, const Connective& c) {
  Relation r = GraphFrame::empty_relation(g, c);
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.edge(b, a)) r.add({a, b});
  return r;
}

// identity operations: box reads the edges, dia their converse
GraphFrame dml_edge_frame(const ReflexiveGraph& g) {
  Signature sig = Signature::box_dia();
  std::map<std::string, Relation> rels;
  rels.emplace("box", edge_relation(g, sig.get("box")));
  rels.emplace("dia", converse_edge_relation(g, sig.get("dia")));
  return GraphFrame::make(g, sig, std::move(rels), Compat::checked);
}

ReflexiveGraph identity_graph(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> loops;
  for (int i = 0; i < n; ++i) {
    names.push_back("w" + std::to_string(i));
    loops.emplace_back(names.back(), names.back());
  }
  return ReflexiveGraph::make(names, loops);
}

}  // namespace

TEST_CASE("square-bracket sections on the witness graph") {
  ReflexiveGraph g = make_witness_graph();
  Connective box{"box", Family::G, {Tone::monotone}};
  Relation e = edge_relation(g, box);
  Polarity p = graph_polarity(g);
  int u = g.nodes.index("u");
  // the complement sections of the edge relation are the polarity maps
  for (int z = 0; z < g.size(); ++z) {
    CHECK(e.csection0({bit(z)}) == p.down(bit(z)));
    CHECK(e.csection_i(1, z, {}) == p.up(bit(z)));
  }
  CHECK(e.csection_i(1, u, {}) == p.attributes.mask_of({"z"}));
  CHECK(e.csection0({Bits{0}}) == full_mask(3));
}

TEST_CASE("edge relations are compatible; corrupted ones are flagged") {
  ReflexiveGraph g = make_witness_graph();
  GraphFrame fr = dml_edge_frame(g);
  CHECK(compatibility_check(fr).ok);

  // empty relations on this graph
  Signature sig = Signature::box_dia();
  std::map<std::string, Relation> empties;
  for (auto& c : sig.connectives()) empties.emplace(c.name, GraphFrame::empty_relation(g, c));
  CHECK(compatibility_check(GraphFrame::make(g, sig, empties, Compat::unchecked)).ok);

  // dropping one loop from the box relation breaks a section
  Signature boxsig = Signature::box_only();
  Relation bad = edge_relation(g, boxsig.get("box"));
  bad.remove({g.nodes.index("v"), g.nodes.index("v")});
  std::map<std::string, Relation> rels;
  rels.emplace("box", bad);
  auto rep = compatibility_check(GraphFrame::make(g, boxsig, rels, Compat::unchecked));
  CHECK_FALSE(rep.ok);
  CHECK(rep.violations.front().connective == "box");
  CHECK_THROWS_AS(GraphFrame::make(g, boxsig, rels, Compat::checked), std::invalid_argument);
}

TEST_CASE("box over the edge relation is the identity operation") {
  for (auto g : {make_witness_graph(), make_craig_graph(), identity_graph(3)}) {
    GraphFrame fr = dml_edge_frame(g);
    ConceptAlgebra alg = complex_algebra(fr);
    for (int c = 0; c < alg.lattice.size(); ++c) {
      CHECK(alg.apply("box", {c}) == c);
      CHECK(alg.apply("dia", {c}) == c);
    }
    CHECK(is_normal(alg));
    CHECK(alg.apply("dia", {alg.lattice.bottom()}) == alg.lattice.bottom());
  }
}

TEST_CASE("witness model: forces and refutes match the worked example") {
  ReflexiveGraph g = make_witness_graph();
  GraphFrame fr = GraphFrame::make(g, {}, {}, Compat::checked);
  ConceptAlgebra alg = complex_algebra(fr);
  const Polarity& p = alg.lattice.source();
  Valuation v;
  v.assign["p"] = alg.lattice.index_of_extent(p.objects.mask_of({"z"}));
  v.assign["q"] = alg.lattice.index_of_extent(p.objects.mask_of({"u"}));
  Formula fp = Formula::var("p"), fq = Formula::var("q");
  Formula porq = Formula::disj(fp, fq);
  int u = g.nodes.index("u"), vv = g.nodes.index("v"), z = g.nodes.index("z");

  CHECK(eval(alg, v, porq) == alg.lattice.top());
  CHECK(forces(fr, alg, v, vv, porq));
  CHECK_FALSE(forces(fr, alg, v, vv, fp));
  CHECK_FALSE(forces(fr, alg, v, vv, fq));
  CHECK(refutes(fr, alg, v, vv, fp));
  CHECK_FALSE(refutes(fr, alg, v, vv, fq));
  CHECK(forces(fr, alg, v, u, fq));
  CHECK(refutes(fr, alg, v, z, fq));
  CHECK_THROWS_AS(forces(fr, alg, v, 9, fp), std::invalid_argument);

  CHECK(clause_audit(fr, alg, v, porq).ok);
  CHECK(weak_persistence_check(fr, alg, v, porq));
  CHECK(weak_persistence_check(fr, alg, v, fq));
}

TEST_CASE("identity-edge frames collapse to the classical reading") {
  ReflexiveGraph g = identity_graph(3);
  GraphFrame fr = dml_edge_frame(g);
  ConceptAlgebra alg = complex_algebra(fr);
  Rng rng(5001);
  Signature sig = Signature::box_dia();
  for (int k = 0; k < 40; ++k) {
    Valuation v;
    v.assign["p"] = rng.below(alg.lattice.size());
    v.assign["q"] = rng.below(alg.lattice.size());
    Formula f = random_formula(rng, sig, {"p", "q"}, 3);
    for (int z = 0; z < g.size(); ++z)
      CHECK(refutes(fr, alg, v, z, f) == !forces(fr, alg, v, z, f));
    CHECK(clause_audit(fr, alg, v, f).ok);
  }
}

TEST_CASE("clause audit is empty on random compatible graph frames") {
  Rng rng(5002);
  Signature sig = Signature::dml();
  for (int i = 0; i < 25; ++i) {
    GraphFrame fr = random_graph_frame(rng, sig, random_reflexive_graph(rng, 4));
    ConceptAlgebra alg = complex_algebra(fr);
    for (int k = 0; k < 6; ++k) {
      Valuation v;
      v.assign["p"] = rng.below(alg.lattice.size());
      v.assign["q"] = rng.below(alg.lattice.size());
      Formula f = random_formula(rng, sig, {"p", "q"}, 3);
      auto rep = clause_audit(fr, alg, v, f);
      if (!rep.ok) {
        CAPTURE(format(f), rep.mismatches.front().subformula);
        REQUIRE(rep.ok);
      }
      CHECK(weak_persistence_check(fr, alg, v, f));
    }
  }
}

TEST_CASE("clause audit flags an incompatible graph frame") {
  ReflexiveGraph g = make_witness_graph();
  Signature sig = Signature::box_only();
  Relation bad = edge_relation(g, sig.get("box"));
  bad.remove({g.nodes.index("v"), g.nodes.index("v")});
  std::map<std::string, Relation> rels;
  rels.emplace("box", bad);
  GraphFrame fr = GraphFrame::make(g, sig, rels, Compat::unchecked);
  ConceptAlgebra alg = complex_algebra(fr);
  bool any_mismatch = false;
  for (int c = 0; c < alg.lattice.size() && !any_mismatch; ++c) {
    Valuation v;
    v.assign["p"] = c;
    if (!clause_audit(fr, alg, v, Formula::box(Formula::var("p"))).ok) any_mismatch = true;
  }
  CHECK(any_mismatch);
}

TEST_CASE("mutated valuation breaks weak persistence") {
  // feeding eval an unstable satisfaction set is impossible through the API,
  // so probe the checker with a discrete counterexample instead: on the
  // witness graph take the concept (u,z); edge u->v, u satisfies, v must not
  // refute. Corrupt the frame by rerouting the edge to z, which does refute.
  ReflexiveGraph g = make_witness_graph();
  GraphFrame fr = GraphFrame::make(g, {}, {}, Compat::checked);
  ConceptAlgebra alg = complex_algebra(fr);
  Valuation v;
  v.assign["q"] = alg.lattice.index_of_extent(
      alg.lattice.source().objects.mask_of({"u"}));
  CHECK(weak_persistence_check(fr, alg, v, Formula::var("q")));
  ReflexiveGraph bad = ReflexiveGraph::make(
      {"u", "v", "z"},
      {{"u", "u"}, {"v", "v"}, {"z", "z"}, {"u", "z"}, {"v", "z"}});
  GraphFrame bfr = GraphFrame::make(bad, {}, {}, Compat::checked);
  // same valuation indices carry over: the lattice of `bad` differs, so remap
  ConceptAlgebra balg = complex_algebra(bfr);
  auto uext = balg.lattice.try_index_of_extent(balg.lattice.source().objects.mask_of({"u"}));
  if (uext) {
    Valuation bv;
    bv.assign["q"] = *uext;
    CHECK_FALSE(weak_persistence_check(bfr, balg, bv, Formula::var("q")));
  }
}

TEST_CASE("preorder projection equivalence") {
  // three-element chain graph with the box relation equal to the edges
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::string s : {"0", "1", "2"})
    for (std::string t : {"0", "1", "2"})
      if (s <= t) edges.emplace_back(s, t);
  ReflexiveGraph chain = ReflexiveGraph::make({"0", "1", "2"}, edges);
  REQUIRE(is_transitive(chain));
  Signature sig = Signature::box_only();
  std::map<std::string, Relation> rels;
  rels.emplace("box", edge_relation(chain, sig.get("box")));
  GraphFrame fr = GraphFrame::make(chain, sig, std::move(rels), Compat::checked);
  CHECK(preorder_projection_check(fr));

  // identity edges: both sides trivialize but stay equivalent
  ReflexiveGraph idg = identity_graph(3);
  std::map<std::string, Relation> rels2;
  Relation any = GraphFrame::empty_relation(idg, sig.get("box"));
  any.add({0, 1});
  any.add({1, 2});
  rels2.emplace("box", any);
  GraphFrame fr2 = GraphFrame::make(idg, sig, std::move(rels2), Compat::unchecked);
  CHECK(preorder_projection_check(fr2));

  // random preorders, random relations: the equivalence is exhaustive per frame
  Rng rng(5003);
  for (int i = 0; i < 40; ++i) {
    ReflexiveGraph g = transitive_closure(random_reflexive_graph(rng, 5));
    Relation r = GraphFrame::empty_relation(g, sig.get("box"));
    for (int a = 0; a < g.size(); ++a)
      for (int b = 0; b < g.size(); ++b)
        if (rng.percent(40)) r.add({a, b});
    std::map<std::string, Relation> rr;
    rr.emplace("box", std::move(r));
    GraphFrame fr3 = GraphFrame::make(g, sig, std::move(rr), Compat::unchecked);
    CHECK(preorder_projection_check(fr3));
    CHECK_THROWS_AS(
        preorder_projection_check(GraphFrame::make(make_witness_graph(), sig,
                                                   [&] {
                                                     std::map<std::string, Relation> m;
                                                     m.emplace("box",
                                                               GraphFrame::empty_relation(
                                                                   make_witness_graph(),
                                                                   sig.get("box")));
                                                     return m;
                                                   }(),
                                                   Compat::unchecked)),
        std::invalid_argument);
  }
}

TEST_CASE("persistence is full on reflexive transitive graphs") {
  Rng rng(5004);
  Signature sig;
  for (int i = 0; i < 30; ++i) {
    ReflexiveGraph g = transitive_closure(random_reflexive_graph(rng, 5));
    GraphFrame fr = GraphFrame::make(g, sig, {}, Compat::checked);
    ConceptAlgebra alg = complex_algebra(fr);
    for (int k = 0; k < 8; ++k) {
      Valuation v;
      v.assign["p"] = rng.below(alg.lattice.size());
      v.assign["q"] = rng.below(alg.lattice.size());
      Formula f = random_formula(rng, sig, {"p", "q"}, 3);
      const Concept& c = alg.lattice.at(eval(alg, v, f));
      for (int z = 0; z < g.size(); ++z)
        if (contains(c.extent, z)) CHECK(subset_of(g.adj[z], c.extent));
    }
  }
}

TEST_CASE("graph frame from a lattice expansion") {
  // identity box on the 2-chain: a single loop state carrying box = edges
  Signature sig = Signature::box_only();
  std::map<std::string, std::vector<int>> tables;
  tables["box"] = {0, 1};
  LatticeExpansion e = LatticeExpansion::make(lattices::chain(2), sig, tables);
  GraphFrame fr = frame_from_algebra_graph(e);
  CHECK(compatibility_check(fr).ok);
  REQUIRE(fr.graph.size() == 1);
  CHECK(fr.relations.at("box").contains({0, 0}));
  ConceptAlgebra alg = complex_algebra(fr);
  REQUIRE(alg.lattice.size() == 2);
  for (int c = 0; c < 2; ++c) CHECK(alg.apply("box", {c}) == c);

  // powerset algebra with a kripke-style box round-trips its modal behavior
  FiniteLattice cube = lattices::boolean_cube(2);
  // worlds {0,1}, accessibility 0->0, 0->1, 1->1; box S = {w | succ(w) in S}
  auto boxval = [&](int s) {
    int out = 0;
    for (int w = 0; w < 2; ++w) {
      int succ = w == 0 ? 3 : 2;  // masks of successor sets
      if ((succ & ~s) == 0) out |= 1 << w;
    }
    return out;
  };
  std::map<std::string, std::vector<int>> kt;
  kt["box"] = std::vector<int>(4);
  for (int s = 0; s < 4; ++s) kt["box"][s] = boxval(s);
  LatticeExpansion ke = LatticeExpansion::make(cube, sig, kt);
  GraphFrame kfr = frame_from_algebra_graph(ke);
  CHECK(compatibility_check(kfr).ok);
  ConceptAlgebra kalg = complex_algebra(kfr);
  REQUIRE(kalg.lattice.size() == 4);
  // transport: element s of the cube maps to the concept with matching extent
  auto img = [&](int s) {
    Bits extent = 0;
    auto states = filter_ideal_states(cube);
    for (size_t z = 0; z < states.size(); ++z)
      if (contains(states[z].filter, s)) extent |= bit(static_cast<int>(z));
    return kalg.lattice.index_of_extent(extent);
  };
  for (int s = 0; s < 4; ++s) CHECK(kalg.apply("box", {img(s)}) == img(boxval(s)));
  // the reflexive kripke relation makes box p |- p hold in the algebra
  for (int c = 0; c < 4; ++c) CHECK(kalg.lattice.leq(kalg.apply("box", {c}), c));

  Rng rng(5005);
  for (int i = 0; i < 10; ++i) {
    LatticeExpansion e2 = random_expansion(rng, Signature::box_dia(), 3);
    if (e2.lattice.size() > 6) continue;
    GraphFrame fr2 = frame_from_algebra_graph(e2);
    CHECK(compatibility_check(fr2).ok);
    ConceptAlgebra a2 = complex_algebra(fr2);
    CHECK(a2.lattice.size() == e2.lattice.size());
    CHECK(is_normal(a2));
  }
}
