#include <catch2/catch_amalgamated.hpp>

#include "lelogic/formula.hpp"
#include "lelogic/generate.hpp"
#include "lelogic/signature.hpp"

using namespace lelogic;

TEST_CASE("precedence: conjunction binds tighter than disjunction, modals tightest") {
  Signature sig = Signature::dml();
  Formula f = parse_formula(sig, "box p /\\ q");
  REQUIRE(f.kind == Formula::Kind::conj);
  CHECK(f.args[0] == Formula::box(Formula::var("p")));
  CHECK(f.args[1] == Formula::var("q"));

  Formula g = parse_formula(sig, "p \\/ q /\\ r");
  REQUIRE(g.kind == Formula::Kind::disj);
  CHECK(g.args[1].kind == Formula::Kind::conj);

  Formula h = parse_formula(sig, "dia (p \\/ q)");
  CHECK(h == Formula::dia(Formula::disj(Formula::var("p"), Formula::var("q"))));

  Formula k = parse_formula(sig, "box box p");
  CHECK(k == Formula::box(Formula::box(Formula::var("p"))));
}

TEST_CASE("parse errors carry positions") {
  Signature sig = Signature::dml();
  CHECK_THROWS_AS(parse_formula(sig, ""), ParseError);
  CHECK_THROWS_AS(parse_formula(sig, "p /\\"), ParseError);
  CHECK_THROWS_AS(parse_formula(sig, "(p"), ParseError);
  CHECK_THROWS_AS(parse_formula(sig, "p ? q"), ParseError);
  CHECK_THROWS_AS(parse_formula(sig, "f(p, q)"), ParseError);  // undeclared
  CHECK_THROWS_AS(parse_formula({}, "box p"), ParseError);     // not in signature
  try {
    parse_formula(sig, "p @");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("declared connectives apply with checked arities") {
  Signature sig;
  sig.add({"impl", Family::G, {Tone::antitone, Tone::monotone}});
  sig.add({"unit", Family::F, {}});
  Formula f = parse_formula(sig, "impl(p, q \\/ r)");
  REQUIRE(f.kind == Formula::Kind::app);
  CHECK(f.name == "impl");
  REQUIRE(f.args.size() == 2);
  CHECK_THROWS_AS(parse_formula(sig, "impl(p)"), ParseError);
  CHECK(parse_formula(sig, "unit()") == Formula::app("unit", {}));
  CHECK(parse_formula(sig, "unit") == Formula::app("unit", {}));
  CHECK_THROWS_AS(parse_formula(sig, "impl"), ParseError);
}

TEST_CASE("sequent parsing") {
  Signature sig = Signature::dml();
  Sequent s = parse_sequent(sig, "box p |- p");
  CHECK(s.lhs == Formula::box(Formula::var("p")));
  CHECK(s.rhs == Formula::var("p"));
  CHECK(parse_sequent(sig, "p |- p") == Sequent{Formula::var("p"), Formula::var("p")});
  CHECK_THROWS_AS(parse_sequent(sig, "p |- q |- r"), ParseError);
  CHECK_THROWS_AS(parse_sequent(sig, "p"), ParseError);
}

TEST_CASE("axioms of the base logic") {
  CHECK(axioms_of_base_logic(Signature::dml()).size() == 16);
  CHECK(axioms_of_base_logic(Signature::box_only()).size() == 10);
  CHECK(axioms_of_base_logic({}).size() == 8);
  // spot check the box pair
  auto axs = axioms_of_base_logic(Signature::box_only());
  Formula p = Formula::var("p"), q = Formula::var("q");
  CHECK(axs[8] == Sequent{Formula::top(), Formula::box(Formula::top())});
  CHECK(axs[9] == Sequent{Formula::conj(Formula::box(p), Formula::box(q)),
                          Formula::box(Formula::conj(p, q))});
}

TEST_CASE("letters and subformulas in deterministic order") {
  Signature sig = Signature::dml();
  Formula f = parse_formula(sig, "box p /\\ q");
  CHECK(prop_vars(f) == std::vector<std::string>{"p", "q"});
  auto subs = subformulas(f);
  REQUIRE(subs.size() == 4);
  CHECK(subs[0] == Formula::var("p"));
  CHECK(subs[1] == Formula::box(Formula::var("p")));
  CHECK(subs[2] == Formula::var("q"));
  CHECK(subs[3] == f);

  CHECK(prop_vars(parse_formula(sig, "top")).empty());
  CHECK(prop_vars(parse_formula(sig, "dia (p \\/ p)")) == std::vector<std::string>{"p"});
  CHECK(subformulas(parse_formula(sig, "p \\/ p")).size() == 2);
}

TEST_CASE("parse after format is the identity") {
  Signature sig = Signature::dml();
  sig.add({"impl", Family::G, {Tone::antitone, Tone::monotone}});
  sig.add({"unit", Family::F, {}});
  Rng rng(3001);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, sig, {"p", "q", "r"}, 4);
    CHECK(parse_formula(sig, format(f)) == f);
  }
  Sequent s{random_formula(rng, sig, {"p", "q"}, 3), random_formula(rng, sig, {"p"}, 3)};
  CHECK(parse_sequent(sig, format(s)) == s);
}
