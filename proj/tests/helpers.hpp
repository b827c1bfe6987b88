#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/graph.hpp"
#include "lelogic/polarity.hpp"

namespace testutil {

using lelogic::Polarity;
using lelogic::ReflexiveGraph;

// 3x3 context: a has z; b has x; c has x and y.
inline Polarity make_plays() {
  return Polarity::make({"a", "b", "c"}, {"x", "y", "z"},
                        {{"a", "z"}, {"b", "x"}, {"c", "x"}, {"c", "y"}});
}

// Three nodes with loops plus u->v and v->z.
inline ReflexiveGraph make_witness_graph() {
  return ReflexiveGraph::make(
      {"u", "v", "z"},
      {{"u", "u"}, {"v", "v"}, {"z", "z"}, {"u", "v"}, {"v", "z"}});
}

// All edges except (u,z): reflexive, not antisymmetric, not transitive.
inline ReflexiveGraph make_craig_graph() {
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::string s : {"u", "v", "z"})
    for (std::string t : {"u", "v", "z"})
      if (!(s == "u" && t == "z")) edges.emplace_back(s, t);
  return ReflexiveGraph::make({"u", "v", "z"}, edges);
}

// ---------------------------------------------------------------------------
// Independent enumeration oracle over plain string sets: a concept is any
// pair (B, Y) with B^ = Y and Y_ = B, found by scanning all subset pairs.
// ---------------------------------------------------------------------------

using NameSet = std::set<std::string>;

struct OracleContext {
  std::vector<std::string> objects, attributes;
  std::set<std::pair<std::string, std::string>> incidence;
};

inline NameSet oracle_up(const OracleContext& c, const NameSet& b) {
  NameSet out;
  for (auto& x : c.attributes) {
    bool all = true;
    for (auto& a : b)
      if (!c.incidence.count({a, x})) all = false;
    if (all) out.insert(x);
  }
  return out;
}

inline NameSet oracle_down(const OracleContext& c, const NameSet& y) {
  NameSet out;
  for (auto& a : c.objects) {
    bool all = true;
    for (auto& x : y)
      if (!c.incidence.count({a, x})) all = false;
    if (all) out.insert(a);
  }
  return out;
}

inline std::set<std::pair<NameSet, NameSet>> oracle_concepts(const OracleContext& c) {
  std::set<std::pair<NameSet, NameSet>> out;
  size_t n = c.objects.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    NameSet b;
    for (size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) b.insert(c.objects[i]);
    NameSet y = oracle_up(c, b);
    if (oracle_down(c, y) == b) out.insert({b, y});
  }
  return out;
}

inline OracleContext to_oracle(const Polarity& p) {
  OracleContext c;
  c.objects = p.objects.names();
  c.attributes = p.attributes.names();
  for (int a = 0; a < p.objects.size(); ++a)
    for (int x = 0; x < p.attributes.size(); ++x)
      if (p.incident(a, x)) c.incidence.insert({p.objects.name(a), p.attributes.name(x)});
  return c;
}

inline NameSet names_of(const lelogic::Carrier& carrier, lelogic::Bits s) {
  NameSet out;
  lelogic::for_each_bit(s, [&](int i) { out.insert(carrier.name(i)); });
  return out;
}

}  // namespace testutil
