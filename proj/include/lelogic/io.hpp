#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lelogic/graph_frame.hpp"
#include "lelogic/polarity_frame.hpp"

namespace lelogic {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Context CSV: header row is a blank cell followed by attribute names; each
// body row is an object name followed by cells in {1,0} or {X,""}.
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline Polarity parse_context_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty context file");
  auto header = split_csv_row(line);
  std::vector<std::string> attrs;
  for (size_t i = 1; i < header.size(); ++i) {
    auto name = trim(header[i]);
    if (!name.empty()) attrs.push_back(name);
  }
  std::vector<std::string> objects;
  std::vector<std::vector<std::string>> cells;
  int row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    auto row = split_csv_row(line);
    if (row.size() != attrs.size() + 1)
      throw std::invalid_argument("row " + std::to_string(row_no) + " has " +
                                  std::to_string(row.size() - 1) + " cells, expected " +
                                  std::to_string(attrs.size()));
    objects.push_back(trim(row[0]));
    cells.emplace_back(row.begin() + 1, row.end());
  }
  Carrier objs{objects}, ats{attrs};
  std::vector<Bits> rows(objs.size(), 0);
  for (size_t a = 0; a < cells.size(); ++a)
    for (size_t x = 0; x < cells[a].size(); ++x) {
      auto v = trim(cells[a][x]);
      if (v == "1" || v == "X" || v == "x")
        rows[a] |= bit(static_cast<int>(x));
      else if (!(v.empty() || v == "0"))
        throw std::invalid_argument("unrecognized cell '" + v + "' in row " +
                                    std::to_string(a + 2));
    }
  return Polarity::from_masks(std::move(objs), std::move(ats), std::move(rows));
}

// ---------------------------------------------------------------------------
// DOT emission: one node per concept labeled "extent|intent", one edge per
// covering pair, oriented bottom-to-top.
// ---------------------------------------------------------------------------

inline std::string to_dot(const ConceptLattice& l) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int i = 0; i < l.size(); ++i) {
    const Concept& c = l.at(i);
    out << "  c" << i << " [label=\"" << l.source().objects.format(c.extent) << "|"
        << l.source().attributes.format(c.intent) << "\"];\n";
  }
  for (auto& [lo, hi] : l.hasse_edges()) out << "  c" << lo << " -> c" << hi << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Frame JSON. Two kinds share the relation schema:
//   {"kind":"polarity","objects":[...],"attributes":[...],
//    "incidence":[["a","x"],...],"signature":...,"relations":{...}}
//   {"kind":"graph","nodes":[...],"edges":[["u","v"],...],
//    "signature":...,"relations":{...}}
// The signature is either the string "dml" or
//   {"f":{"name":["+","-"...],...},"g":{...}}.
// A relation entry is either a bare tuple array or
//   {"order_type":[...],"tuples":[...]} (order type cross-checked).
// Self-edges may be omitted in graph files; they are added on load and the
// normalization is reported as a warning.
// ---------------------------------------------------------------------------

struct LoadedFrame {
  std::variant<PolarityFrame, GraphFrame> frame;
  std::vector<std::string> warnings;

  bool is_polarity() const { return std::holds_alternative<PolarityFrame>(frame); }
  const PolarityFrame& polarity() const { return std::get<PolarityFrame>(frame); }
  const GraphFrame& graph() const { return std::get<GraphFrame>(frame); }
};

inline std::vector<Tone> parse_order_type(const json& j) {
  std::vector<Tone> tones;
  for (auto& t : j) {
    std::string s = t.get<std::string>();
    if (s == "+")
      tones.push_back(Tone::monotone);
    else if (s == "-")
      tones.push_back(Tone::antitone);
    else
      throw std::invalid_argument("order type entries must be '+' or '-'");
  }
  return tones;
}

inline json order_type_json(const Connective& c) {
  json out = json::array();
  for (auto t : c.tones) out.push_back(t == Tone::monotone ? "+" : "-");
  return out;
}

inline Signature signature_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "dml") return Signature::dml();
    throw std::invalid_argument("unknown signature preset '" + j.get<std::string>() + "'");
  }
  Signature sig;
  for (auto family : {Family::F, Family::G}) {
    const char* key = family == Family::F ? "f" : "g";
    if (!j.contains(key)) continue;
    for (auto& [name, ot] : j.at(key).items())
      sig.add({name, family, parse_order_type(ot)});
  }
  return sig;
}

inline json signature_to_json(const Signature& sig) {
  json f = json::object(), g = json::object();
  for (auto& c : sig.connectives())
    (c.family == Family::F ? f : g)[c.name] = order_type_json(c);
  return json{{"f", f}, {"g", g}};
}

inline Relation relation_from_json(const json& entry, const Connective& c,
                                   const Relation& layout,
                                   const std::vector<const Carrier*>& carriers) {
  const json* tuples = &entry;
  if (entry.is_object()) {
    if (entry.contains("order_type")) {
      auto tones = parse_order_type(entry.at("order_type"));
      if (tones != c.tones)
        throw std::invalid_argument("order type for '" + c.name +
                                    "' contradicts the signature");
    }
    tuples = &entry.at("tuples");
  }
  Relation r = layout;
  for (auto& tj : *tuples) {
    if (!tj.is_array() || static_cast<int>(tj.size()) != c.arity() + 1)
      throw std::invalid_argument("relation tuple for '" + c.name + "' has wrong length");
    std::vector<int> t;
    for (int i = 0; i <= c.arity(); ++i)
      t.push_back(carriers[i]->index(tj[i].get<std::string>()));
    r.add(t);
  }
  return r;
}

inline LoadedFrame frame_from_json(const json& j, Compat mode = Compat::checked) {
  LoadedFrame out;
  std::string kind = j.at("kind").get<std::string>();
  Signature sig =
      j.contains("signature") ? signature_from_json(j.at("signature")) : Signature{};
  if (kind == "polarity") {
    std::vector<std::pair<std::string, std::string>> inc;
    for (auto& e : j.at("incidence"))
      inc.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    Polarity p = Polarity::make(j.at("objects").get<std::vector<std::string>>(),
                                j.at("attributes").get<std::vector<std::string>>(), inc);
    std::map<std::string, Relation> rels;
    if (j.contains("relations"))
      for (auto& [name, entry] : j.at("relations").items()) {
        const Connective& c = sig.get(name);
        Relation layout = PolarityFrame::empty_relation(p, c);
        std::vector<const Carrier*> carriers;
        carriers.push_back(output_side(c) == Side::object ? &p.objects : &p.attributes);
        for (int i = 0; i < c.arity(); ++i)
          carriers.push_back(coord_side(c, i) == Side::object ? &p.objects : &p.attributes);
        rels.emplace(name, relation_from_json(entry, c, layout, carriers));
      }
    out.frame = PolarityFrame::make(std::move(p), std::move(sig), std::move(rels), mode);
    return out;
  }
  if (kind != "graph") throw std::invalid_argument("unknown frame kind '" + kind + "'");
  auto nodes = j.at("nodes").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  ReflexiveGraph strict = ReflexiveGraph::make(nodes, edges, ReflexiveGraph::Loops::add_missing);
  {
    // report which self-edges were supplied implicitly
    std::vector<bool> had(nodes.size(), false);
    Carrier nc{nodes};
    for (auto& [s, t] : edges)
      if (s == t) had[nc.index(s)] = true;
    for (size_t z = 0; z < nodes.size(); ++z)
      if (!had[z])
        out.warnings.push_back("added missing self-edge (" + nodes[z] + "," + nodes[z] + ")");
  }
  std::map<std::string, Relation> rels;
  if (j.contains("relations"))
    for (auto& [name, entry] : j.at("relations").items()) {
      const Connective& c = sig.get(name);
      Relation layout = GraphFrame::empty_relation(strict, c);
      std::vector<const Carrier*> carriers(static_cast<size_t>(c.arity()) + 1,
                                           &strict.nodes);
      rels.emplace(name, relation_from_json(entry, c, layout, carriers));
    }
  out.frame = GraphFrame::make(std::move(strict), std::move(sig), std::move(rels), mode);
  return out;
}

inline json relation_to_json(const Relation& r, const std::vector<const Carrier*>& carriers) {
  json tuples = json::array();
  Relation sorted = r;
  for (auto& t : sorted.sorted_tuples()) {
    json tj = json::array();
    for (size_t i = 0; i < t.size(); ++i) tj.push_back(carriers[i]->name(t[i]));
    tuples.push_back(tj);
  }
  return tuples;
}

inline json frame_to_json(const PolarityFrame& fr) {
  json j;
  j["kind"] = "polarity";
  j["objects"] = fr.polarity.objects.names();
  j["attributes"] = fr.polarity.attributes.names();
  json inc = json::array();
  for (int a = 0; a < fr.polarity.objects.size(); ++a)
    for_each_bit(fr.polarity.rows[a], [&](int x) {
      inc.push_back({fr.polarity.objects.name(a), fr.polarity.attributes.name(x)});
    });
  j["incidence"] = inc;
  j["signature"] = signature_to_json(fr.signature);
  json rels = json::object();
  for (auto& c : fr.signature.connectives()) {
    std::vector<const Carrier*> carriers;
    carriers.push_back(output_side(c) == Side::object ? &fr.polarity.objects
                                                      : &fr.polarity.attributes);
    for (int i = 0; i < c.arity(); ++i)
      carriers.push_back(coord_side(c, i) == Side::object ? &fr.polarity.objects
                                                          : &fr.polarity.attributes);
    rels[c.name] = json{{"order_type", order_type_json(c)},
                        {"tuples", relation_to_json(fr.relations.at(c.name), carriers)}};
  }
  j["relations"] = rels;
  return j;
}

inline json frame_to_json(const GraphFrame& fr) {
  json j;
  j["kind"] = "graph";
  j["nodes"] = fr.graph.nodes.names();
  json edges = json::array();
  for (int a = 0; a < fr.graph.size(); ++a)
    for_each_bit(fr.graph.adj[a], [&](int b) {
      edges.push_back({fr.graph.nodes.name(a), fr.graph.nodes.name(b)});
    });
  j["edges"] = edges;
  j["signature"] = signature_to_json(fr.signature);
  json rels = json::object();
  for (auto& c : fr.signature.connectives()) {
    std::vector<const Carrier*> carriers(static_cast<size_t>(c.arity()) + 1, &fr.graph.nodes);
    rels[c.name] = json{{"order_type", order_type_json(c)},
                        {"tuples", relation_to_json(fr.relations.at(c.name), carriers)}};
  }
  j["relations"] = rels;
  return j;
}

// ---------------------------------------------------------------------------
// Valuation JSON: {"p":{"extent":["a","b"]}}; the intent is derived and a
// non-stable extent is rejected.
// ---------------------------------------------------------------------------

inline Valuation valuation_from_json(const json& j, const ConceptLattice& l) {
  Valuation v;
  const Polarity& p = l.source();
  for (auto& [letter, spec] : j.items()) {
    Bits extent = 0;
    for (auto& n : spec.at("extent")) extent |= bit(p.objects.index(n.get<std::string>()));
    if (!p.is_stable_extent(extent))
      throw std::invalid_argument("extent for '" + letter +
                                  "' is not Galois-stable in this frame");
    v.assign[letter] = l.index_of_extent(extent);
  }
  return v;
}

inline json valuation_to_json(const Valuation& v, const ConceptLattice& l) {
  json j = json::object();
  for (auto& [letter, idx] : v.assign) {
    json ext = json::array();
    for_each_bit(l.at(idx).extent, [&](int a) { ext.push_back(l.source().objects.name(a)); });
    j[letter] = json{{"extent", ext}};
  }
  return j;
}

}  // namespace lelogic
