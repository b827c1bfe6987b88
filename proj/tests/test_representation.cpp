#include <catch2/catch_amalgamated.hpp>

#include "lelogic/finite_lattice.hpp"
#include "lelogic/generate.hpp"
#include "lelogic/graph.hpp"

#include "helpers.hpp"

using namespace lelogic;
using testutil::make_craig_graph;
using testutil::make_witness_graph;

TEST_CASE("birkhoff polarity of small lattices") {
  FiniteLattice two = lattices::chain(2);
  Polarity p = birkhoff_polarity(two);
  CHECK(p.incident(0, 0));
  CHECK(p.incident(0, 1));
  CHECK(p.incident(1, 1));
  CHECK_FALSE(p.incident(1, 0));

  FiniteLattice one = lattices::chain(1);
  Polarity q = birkhoff_polarity(one);
  CHECK(q.incident(0, 0));

  ConceptLattice n5l = concept_lattice(birkhoff_polarity(lattices::n5()));
  CHECK(n5l.size() == 5);
}

TEST_CASE("birkhoff representation round trip") {
  CHECK(birkhoff_iso_check(lattices::chain(2)));
  CHECK(birkhoff_iso_check(lattices::chain(1)));
  CHECK(birkhoff_iso_check(lattices::chain(7)));
  CHECK(birkhoff_iso_check(lattices::n5()));
  CHECK(birkhoff_iso_check(lattices::m3()));
  CHECK(birkhoff_iso_check(lattices::boolean_cube(3)));
  Rng rng(2001);
  for (int i = 0; i < 60; ++i) CHECK(birkhoff_iso_check(random_lattice(rng, 12)));
}

TEST_CASE("graph polarity complements the edges") {
  ReflexiveGraph g = make_witness_graph();
  Polarity p = graph_polarity(g);
  int u = g.nodes.index("u"), v = g.nodes.index("v"), z = g.nodes.index("z");
  CHECK(p.incident(u, z));
  CHECK(p.incident(v, u));
  CHECK(p.incident(z, u));
  CHECK(p.incident(z, v));
  CHECK_FALSE(p.incident(u, u));
  CHECK_FALSE(p.incident(u, v));
  CHECK_FALSE(p.incident(v, v));
  CHECK_FALSE(p.incident(v, z));
  CHECK_FALSE(p.incident(z, z));

  ReflexiveGraph single = ReflexiveGraph::make({"w"}, {{"w", "w"}});
  CHECK(graph_polarity(single).rows[0] == 0);

  ReflexiveGraph full = ReflexiveGraph::make(
      {"s", "t"}, {{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}});
  CHECK(graph_polarity(full).rows[0] == 0);
  CHECK(graph_polarity(full).rows[1] == 0);
}

TEST_CASE("witness graph lattice matches the worked example") {
  ReflexiveGraph g = make_witness_graph();
  ConceptLattice l = graph_lattice(g);
  const Polarity& p = l.source();
  REQUIRE(l.size() == 5);
  auto has = [&](std::vector<std::string> ext, std::vector<std::string> intent) {
    int i = l.index_of_extent(p.objects.mask_of(ext));
    return l.at(i).intent == p.attributes.mask_of(intent);
  };
  CHECK(has({}, {"u", "v", "z"}));
  CHECK(has({"z"}, {"u", "v"}));
  CHECK(has({"v", "z"}, {"u"}));
  CHECK(has({"u"}, {"z"}));
  CHECK(has({"u", "v", "z"}, {}));
}

TEST_CASE("identity-edge graphs give powerset lattices") {
  for (int n = 0; n <= 4; ++n) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> loops;
    for (int i = 0; i < n; ++i) {
      names.push_back("n" + std::to_string(i));
      loops.emplace_back(names.back(), names.back());
    }
    ReflexiveGraph g = ReflexiveGraph::make(names, loops);
    ConceptLattice l = graph_lattice(g);
    REQUIRE(l.size() == (1 << n));
    for (int c = 0; c < l.size(); ++c)
      CHECK(l.at(c).intent == (full_mask(n) & ~l.at(c).extent));
    CHECK(l.is_distributive());
  }
}

TEST_CASE("craig graph: reflexive, neither antisymmetric nor transitive, chain lattice") {
  ReflexiveGraph g = make_craig_graph();
  CHECK_FALSE(is_antisymmetric(g));
  CHECK_FALSE(is_transitive(g));
  ConceptLattice l = graph_lattice(g);
  REQUIRE(l.size() == 3);
  CHECK(l.is_distributive());
  // a 3-element chain: exactly two covering edges
  CHECK(l.hasse_edges().size() == 2);
}

TEST_CASE("witness graph is antisymmetric but not transitive") {
  ReflexiveGraph g = make_witness_graph();
  CHECK(is_antisymmetric(g));
  CHECK_FALSE(is_transitive(g));
  ReflexiveGraph d = ReflexiveGraph::make({"a"}, {{"a", "a"}});
  CHECK(is_antisymmetric(d));
  CHECK(is_transitive(d));
}

TEST_CASE("node concepts of the witness graph") {
  ReflexiveGraph g = make_witness_graph();
  ConceptLattice l = graph_lattice(g);
  const Polarity& p = l.source();
  auto u = node_concepts(l, g.nodes.index("u"));
  CHECK(l.at(u.satisfaction).extent == p.objects.mask_of({"u"}));
  CHECK(l.at(u.satisfaction).intent == p.attributes.mask_of({"z"}));
  auto v = node_concepts(l, g.nodes.index("v"));
  CHECK(l.at(v.refutation).extent == p.objects.mask_of({"z"}));
  CHECK(l.at(v.refutation).intent == p.attributes.mask_of({"u", "v"}));
  CHECK_THROWS_AS(node_concepts(l, 17), std::invalid_argument);
}

TEST_CASE("identity-edge node concepts follow the classical projection") {
  ReflexiveGraph g = ReflexiveGraph::make({"1", "2", "3"},
                                          {{"1", "1"}, {"2", "2"}, {"3", "3"}});
  ConceptLattice l = graph_lattice(g);
  for (int z = 0; z < g.size(); ++z) {
    auto nc = node_concepts(l, z);
    CHECK(l.at(nc.satisfaction).extent == bit(z));
    CHECK(l.at(nc.satisfaction).intent == (full_mask(3) & ~bit(z)));
  }
}

TEST_CASE("filter and ideal enumeration on small lattices") {
  // independent expectation: finite filters are the principal up-sets of
  // non-bottom elements, ideals the principal down-sets of non-top elements
  for (auto make : {+[] { return lattices::chain(2); }, +[] { return lattices::chain(4); },
                    +[] { return lattices::n5(); }, +[] { return lattices::boolean_cube(2); }}) {
    FiniteLattice l = make();
    auto filters = enumerate_filters(l);
    auto ideals = enumerate_ideals(l);
    CHECK(static_cast<int>(filters.size()) == l.size() - 1);
    CHECK(static_cast<int>(ideals.size()) == l.size() - 1);
    for (Bits f : filters) {
      int least = -1;
      for_each_bit(f, [&](int a) {
        if (least == -1 || l.leq(a, least)) least = a;
      });
      CHECK(f == l.upset(least));
      CHECK(least != l.bottom());
    }
  }
}

TEST_CASE("lattice graph states and reflexivity") {
  // 2-chain: the only disjoint pair is (up(top), down(bottom))
  ReflexiveGraph g2 = lattice_graph(lattices::chain(2));
  REQUIRE(g2.size() == 1);
  CHECK(g2.edge(0, 0));

  // 1-element lattice: no proper filters, so the graph is empty
  ReflexiveGraph g1 = lattice_graph(lattices::chain(1));
  CHECK(g1.size() == 0);

  // 3-chain gives the craig-shaped graph
  ReflexiveGraph g3 = lattice_graph(lattices::chain(3));
  REQUIRE(g3.size() == 3);
  int missing = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (!g3.edge(a, b)) ++missing;
  CHECK(missing == 1);

  Rng rng(2002);
  for (int i = 0; i < 30; ++i) {
    FiniteLattice l = random_lattice(rng, 8);
    ReflexiveGraph g;
    try {
      g = lattice_graph(l);
    } catch (const CapExceeded&) {
      continue;
    }
    for (int z = 0; z < g.size(); ++z) CHECK(g.edge(z, z));
    // pair count by definition: elements a not below b, a nonbottom, b nontop
    int expect = 0;
    for (int a = 0; a < l.size(); ++a)
      for (int b = 0; b < l.size(); ++b)
        if (!l.leq(a, b)) ++expect;
    CHECK(g.size() == expect);
  }
}

TEST_CASE("transitive reflexive graphs have distributive lattices") {
  Rng rng(2003);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    ReflexiveGraph g = transitive_closure(random_reflexive_graph(rng, 6));
    REQUIRE(is_transitive(g));
    CHECK(graph_lattice(g).is_distributive());
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("antisymmetric graphs with distributive lattices are transitive") {
  Rng rng(2004);
  for (int i = 0; i < 200; ++i) {
    ReflexiveGraph g = random_antisymmetric_graph(rng, 6);
    if (graph_lattice(g).is_distributive()) CHECK(is_transitive(g));
  }
}
