#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lelogic {

/// Per-coordinate tone of a connective: monotone coordinates preserve the
/// order, antitone coordinates reverse it.
enum class Tone { monotone, antitone };

/// Connective family: F-connectives distribute over joins coordinate-wise,
/// G-connectives over meets (with the antitone coordinates flipped).
enum class Family { F, G };

struct Connective {
  std::string name;
  Family family;
  std::vector<Tone> tones;  // one per argument; empty for nullary

  int arity() const { return static_cast<int>(tones.size()); }
  friend bool operator==(const Connective&, const Connective&) = default;
};

inline const std::vector<std::string>& reserved_words() {
  static const std::vector<std::string> w = {"top", "bot", "box", "dia", "lhd", "rhd"};
  return w;
}

class Signature {
 public:
  Signature() = default;

  Signature& add(Connective c) {
    if (c.name.empty()) throw std::invalid_argument("connective name empty");
    for (auto& r : reserved_words())
      if (c.name == r && !is_builtin_shape(c))
        throw std::invalid_argument("'" + c.name + "' is reserved for the built-in connective");
    if (find(c.name)) throw std::invalid_argument("duplicate connective '" + c.name + "'");
    conns_.push_back(std::move(c));
    return *this;
  }

  const Connective* find(const std::string& name) const {
    for (auto& c : conns_)
      if (c.name == name) return &c;
    return nullptr;
  }
  const Connective& get(const std::string& name) const {
    auto* c = find(name);
    if (!c) throw std::invalid_argument("unknown connective '" + name + "'");
    return *c;
  }
  const std::vector<Connective>& connectives() const { return conns_; }
  bool empty() const { return conns_.empty(); }

  /// The four unary built-ins: F = {dia (+), lhd (-)}, G = {box (+), rhd (-)}.
  static Signature dml() {
    Signature s;
    s.add({"dia", Family::F, {Tone::monotone}});
    s.add({"lhd", Family::F, {Tone::antitone}});
    s.add({"box", Family::G, {Tone::monotone}});
    s.add({"rhd", Family::G, {Tone::antitone}});
    return s;
  }

  static Signature box_only() {
    Signature s;
    s.add({"box", Family::G, {Tone::monotone}});
    return s;
  }

  static Signature box_dia() {
    Signature s;
    s.add({"dia", Family::F, {Tone::monotone}});
    s.add({"box", Family::G, {Tone::monotone}});
    return s;
  }

 private:
  static bool is_builtin_shape(const Connective& c) {
    if (c.arity() != 1) return false;
    if (c.name == "dia") return c.family == Family::F && c.tones[0] == Tone::monotone;
    if (c.name == "lhd") return c.family == Family::F && c.tones[0] == Tone::antitone;
    if (c.name == "box") return c.family == Family::G && c.tones[0] == Tone::monotone;
    if (c.name == "rhd") return c.family == Family::G && c.tones[0] == Tone::antitone;
    return false;
  }

  std::vector<Connective> conns_;
};

}  // namespace lelogic
