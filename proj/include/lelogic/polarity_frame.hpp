#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/algebra.hpp"
#include "lelogic/formula.hpp"
#include "lelogic/polarity.hpp"
#include "lelogic/relation.hpp"
#include "lelogic/signature.hpp"

namespace lelogic {

enum class Side { object, attribute };
enum class Compat { checked, unchecked };

inline Side output_side(const Connective& c) {
  return c.family == Family::F ? Side::attribute : Side::object;
}
inline Side coord_side(const Connective& c, int i) {
  bool mono = c.tones[i] == Tone::monotone;
  if (c.family == Family::F) return mono ? Side::object : Side::attribute;
  return mono ? Side::attribute : Side::object;
}

struct CompatViolation {
  std::string connective;
  std::string section;  // which section failed
};

struct CompatReport {
  bool ok = true;
  std::vector<CompatViolation> violations;
};

/// A polarity equipped with one relation per connective. F-relations hold an
/// attribute output point and coordinate points per tone; dually for G.
/// Checked construction rejects frames whose relation sections are not
/// Galois-stable; unchecked mode stores them as given.
class PolarityFrame {
 public:
  Polarity polarity;
  Signature signature;
  std::map<std::string, Relation> relations;

  static PolarityFrame make(Polarity p, Signature sig,
                            std::map<std::string, Relation> rels,
                            Compat mode = Compat::checked);

  static int side_size(const Polarity& p, Side s) {
    return s == Side::object ? p.objects.size() : p.attributes.size();
  }

  /// Declares the carrier layout of a connective's relation on a polarity.
  static Relation empty_relation(const Polarity& p, const Connective& c) {
    std::vector<int> sizes;
    sizes.push_back(side_size(p, output_side(c)));
    for (int i = 0; i < c.arity(); ++i) sizes.push_back(side_size(p, coord_side(c, i)));
    return Relation(c.arity(), std::move(sizes));
  }

  bool was_checked() const { return checked_; }

 private:
  bool checked_ = false;
};

inline bool stable_on(const Polarity& p, Side s, Bits set) {
  return s == Side::object ? p.is_stable_extent(set) : p.is_stable_intent(set);
}

inline Bits close_on(const Polarity& p, Side s, Bits set) {
  return s == Side::object ? p.closure_extent(set) : p.closure_intent(set);
}

struct SectionLimits {
  long long max_sections = 200000;
};

inline CompatReport compatibility_check(const PolarityFrame& fr,
                                        const SectionLimits& lim = {}) {
  CompatReport rep;
  const Polarity& p = fr.polarity;
  for (auto& c : fr.signature.connectives()) {
    const Relation& r = fr.relations.at(c.name);
    long long prod = 1;
    for (int i = 0; i < c.arity(); ++i) {
      prod *= std::max(1, PolarityFrame::side_size(p, coord_side(c, i)));
      if (prod > lim.max_sections)
        throw CapExceeded("compatibility check section count exceeds cap");
    }
    // output sections at every argument point tuple
    std::vector<Bits> point_ranges;
    for (int i = 0; i < c.arity(); ++i)
      point_ranges.push_back(full_mask(PolarityFrame::side_size(p, coord_side(c, i))));
    std::vector<int> args(c.arity());
    bool any_empty = false;
    for (auto m : point_ranges)
      if (m == 0) any_empty = true;
    auto note = [&](const std::string& what) {
      rep.ok = false;
      rep.violations.push_back({c.name, what});
    };
    if (!any_empty || c.arity() == 0) {
      Relation::each_product(point_ranges, args, 0, [&](const std::vector<int>& a) {
        Bits s = r.section_at_points(a);
        if (!stable_on(p, output_side(c), s)) {
          std::string desc = "output section at (";
          for (size_t k = 0; k < a.size(); ++k) desc += (k ? "," : "") + std::to_string(a[k]);
          note(desc + ")");
        }
      });
    }
    // coordinate sections at every (output point, fixed other points)
    for (int i = 1; i <= c.arity(); ++i) {
      std::vector<Bits> fixed_ranges;
      fixed_ranges.push_back(full_mask(PolarityFrame::side_size(p, output_side(c))));
      for (int j = 0; j < c.arity(); ++j)
        if (j != i - 1)
          fixed_ranges.push_back(full_mask(PolarityFrame::side_size(p, coord_side(c, j))));
      std::vector<int> pts(fixed_ranges.size());
      Relation::each_product(fixed_ranges, pts, 0, [&](const std::vector<int>& a) {
        std::vector<int> others(a.begin() + 1, a.end());
        Bits s = r.section_i(i, a[0], others);
        if (!stable_on(p, coord_side(c, i - 1), s))
          note("coordinate " + std::to_string(i) + " section at output " +
               std::to_string(a[0]));
      });
    }
  }
  return rep;
}

inline PolarityFrame PolarityFrame::make(Polarity p, Signature sig,
                                         std::map<std::string, Relation> rels,
                                         Compat mode) {
  PolarityFrame fr;
  fr.polarity = std::move(p);
  fr.signature = std::move(sig);
  for (auto& [name, r] : rels)
    if (!fr.signature.find(name))
      throw std::invalid_argument("relation '" + name + "' has no declared connective");
  for (auto& c : fr.signature.connectives()) {
    auto it = rels.find(c.name);
    if (it == rels.end())
      throw std::invalid_argument("missing relation for connective '" + c.name + "'");
    Relation expect = empty_relation(fr.polarity, c);
    if (it->second.arity() != expect.arity() ||
        it->second.carrier_sizes() != expect.carrier_sizes())
      throw std::invalid_argument("relation for '" + c.name + "' has wrong carrier layout");
    it->second.finish();
    fr.relations.emplace(c.name, std::move(it->second));
  }
  if (mode == Compat::checked) {
    auto rep = compatibility_check(fr);
    if (!rep.ok)
      throw std::invalid_argument("incompatible frame: " +
                                  rep.violations.front().connective + " " +
                                  rep.violations.front().section);
    fr.checked_ = true;
  }
  return fr;
}

/// Builds the concept lattice and one operation table per connective. On
/// unchecked frames the raw section may fail to be an intent/extent; it is
/// then closed so that the operation still lands on a concept.
inline ConceptAlgebra complex_algebra(const PolarityFrame& fr, const EnumLimits& lim = {}) {
  ConceptAlgebra alg{concept_lattice(fr.polarity, lim), fr.signature, {}};
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
        pattern.push_back(coord_side(c, i) == Side::object ? ci.extent : ci.intent);
      }
      Bits sec = r.section0(pattern);
      int res;
      if (c.family == Family::G) {
        Bits extent = fr.was_checked() ? sec : fr.polarity.closure_extent(sec);
        auto found = L.try_index_of_extent(extent);
        if (!found)
          throw std::logic_error("operation left the concept lattice; frame incompatible?");
        res = *found;
      } else {
        Bits intent = fr.was_checked() ? sec : fr.polarity.closure_intent(sec);
        Bits extent = fr.polarity.down(intent);
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

inline bool forces(const ConceptAlgebra& alg, const Valuation& v, int object_point,
                   const Formula& f) {
  if (object_point < 0 || object_point >= alg.lattice.source().objects.size())
    throw std::invalid_argument("unknown object point");
  return contains(alg.lattice.at(eval(alg, v, f)).extent, object_point);
}

inline bool refutes(const ConceptAlgebra& alg, const Valuation& v, int attribute_point,
                    const Formula& f) {
  if (attribute_point < 0 || attribute_point >= alg.lattice.source().attributes.size())
    throw std::invalid_argument("unknown attribute point");
  return contains(alg.lattice.at(eval(alg, v, f)).intent, attribute_point);
}

struct AuditEntry {
  std::string subformula;
  Side side;       // object: satisfaction set, attribute: refutation set
  int point;
  bool clause_value;
  bool eval_value;
};

struct AuditReport {
  bool ok = true;
  std::vector<AuditEntry> mismatches;
};

struct ClauseSets {
  Bits force;
  Bits refute;
};

/// Satisfaction/refutation sets recomputed purely from the recursive
/// relational clauses (incidence and frame relations only), bottom-up.
inline ClauseSets clause_sets(const PolarityFrame& fr, const Valuation& v,
                              const ConceptLattice& L, const Formula& f) {
  const Polarity& p = fr.polarity;
  switch (f.kind) {
    case Formula::Kind::var: {
      const Concept& c = L.at(v.at(f.name));
      return {c.extent, c.intent};
    }
    case Formula::Kind::top:
      return {p.objects.all(), p.up(p.objects.all())};
    case Formula::Kind::bot:
      return {p.down(p.attributes.all()), p.attributes.all()};
    case Formula::Kind::conj: {
      ClauseSets l = clause_sets(fr, v, L, f.args[0]);
      ClauseSets r = clause_sets(fr, v, L, f.args[1]);
      Bits force = l.force & r.force;
      return {force, p.up(force)};
    }
    case Formula::Kind::disj: {
      ClauseSets l = clause_sets(fr, v, L, f.args[0]);
      ClauseSets r = clause_sets(fr, v, L, f.args[1]);
      Bits refute = l.refute & r.refute;
      return {p.down(refute), refute};
    }
    case Formula::Kind::app: {
      const Connective& c = fr.signature.get(f.name);
      const Relation& r = fr.relations.at(f.name);
      std::vector<Bits> pattern;
      for (int i = 0; i < c.arity(); ++i) {
        ClauseSets a = clause_sets(fr, v, L, f.args[i]);
        pattern.push_back(coord_side(c, i) == Side::object ? a.force : a.refute);
      }
      Bits sec = r.section0(pattern);
      if (c.family == Family::G) return {sec, p.up(sec)};
      return {p.down(sec), sec};
    }
  }
  throw std::logic_error("unreachable");
}

/// Re-derives satisfaction and refutation for every subformula from the
/// relational clauses and diffs them against the algebraic evaluation.
inline AuditReport clause_audit(const PolarityFrame& fr, const ConceptAlgebra& alg,
                                const Valuation& v, const Formula& f) {
  AuditReport rep;
  const Polarity& p = fr.polarity;
  for (const Formula& sub : subformulas(f)) {
    ClauseSets cs = clause_sets(fr, v, alg.lattice, sub);
    const Concept& ec = alg.lattice.at(eval(alg, v, sub));
    for (int a = 0; a < p.objects.size(); ++a)
      if (contains(cs.force, a) != contains(ec.extent, a)) {
        rep.ok = false;
        rep.mismatches.push_back(
            {format(sub), Side::object, a, contains(cs.force, a), contains(ec.extent, a)});
      }
    for (int x = 0; x < p.attributes.size(); ++x)
      if (contains(cs.refute, x) != contains(ec.intent, x)) {
        rep.ok = false;
        rep.mismatches.push_back(
            {format(sub), Side::attribute, x, contains(cs.refute, x), contains(ec.intent, x)});
      }
  }
  return rep;
}

/// The frame associated with a finite normal lattice expansion: the lattice's
/// order polarity plus, per connective, the relation read off the operation.
inline PolarityFrame frame_from_algebra(const LatticeExpansion& e) {
  const FiniteLattice& L = e.lattice;
  Polarity p = birkhoff_polarity(L);
  std::map<std::string, Relation> rels;
  int n = L.size();
  for (auto& c : e.signature.connectives()) {
    Relation r = PolarityFrame::empty_relation(p, c);
    std::vector<int> t(c.arity() + 1);
    std::vector<Bits> ranges(c.arity(), full_mask(n));
    std::vector<int> args(c.arity());
    Relation::each_product(ranges, args, 0, [&](const std::vector<int>& a) {
      int val = e.apply(c.name, a);
      for (int out = 0; out < n; ++out) {
        t[0] = out;
        std::copy(a.begin(), a.end(), t.begin() + 1);
        bool rel = c.family == Family::F ? L.leq(val, out) : L.leq(out, val);
        if (rel) r.add(t);
      }
    });
    rels.emplace(c.name, std::move(r));
  }
  return PolarityFrame::make(std::move(p), e.signature, std::move(rels), Compat::checked);
}

}  // namespace lelogic
