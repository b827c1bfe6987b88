#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lelogic/sets.hpp"

namespace lelogic {

/// A formal context (A, X, I): finite sets of objects and attributes plus an
/// incidence relation between them. Carriers may be empty.
struct Polarity {
  Carrier objects;
  Carrier attributes;
  std::vector<Bits> rows;  // rows[a]: attributes incident to object a
  std::vector<Bits> cols;  // cols[x]: objects incident to attribute x

  static Polarity make(std::vector<std::string> object_names,
                       std::vector<std::string> attribute_names,
                       const std::vector<std::pair<std::string, std::string>>&
                           incidence) {
    Polarity p;
    p.objects = Carrier(std::move(object_names));
    p.attributes = Carrier(std::move(attribute_names));
    p.rows.assign(p.objects.size(), 0);
    p.cols.assign(p.attributes.size(), 0);
    for (auto& [o, x] : incidence) p.set(p.objects.index(o), p.attributes.index(x));
    return p;
  }

  static Polarity from_masks(Carrier objs, Carrier attrs, std::vector<Bits> row_masks) {
    Polarity p;
    p.objects = std::move(objs);
    p.attributes = std::move(attrs);
    p.rows = std::move(row_masks);
    if (static_cast<int>(p.rows.size()) != p.objects.size())
      throw std::invalid_argument("incidence row count mismatch");
    p.cols.assign(p.attributes.size(), 0);
    for (int a = 0; a < p.objects.size(); ++a) {
      if (!subset_of(p.rows[a], p.attributes.all()))
        throw std::invalid_argument("incidence references undeclared attribute");
      for_each_bit(p.rows[a], [&](int x) { p.cols[x] |= bit(a); });
    }
    return p;
  }

  void set(int a, int x) {
    rows[a] |= bit(x);
    cols[x] |= bit(a);
  }
  bool incident(int a, int x) const { return contains(rows[a], x); }

  /// B^ : attributes shared by every object in b; up(empty) = all attributes.
  Bits up(Bits b) const {
    check_objects(b);
    Bits out = attributes.all();
    for_each_bit(b, [&](int a) { out &= rows[a]; });
    return out;
  }

  /// Y_ : objects bearing every attribute in y; down(empty) = all objects.
  Bits down(Bits y) const {
    check_attributes(y);
    Bits out = objects.all();
    for_each_bit(y, [&](int x) { out &= cols[x]; });
    return out;
  }

  Bits closure_extent(Bits b) const { return down(up(b)); }
  Bits closure_intent(Bits y) const { return up(down(y)); }
  bool is_stable_extent(Bits b) const { return closure_extent(b) == b; }
  bool is_stable_intent(Bits y) const { return closure_intent(y) == y; }

  void check_objects(Bits b) const {
    if (!subset_of(b, objects.all()))
      throw std::invalid_argument("set references undeclared object");
  }
  void check_attributes(Bits y) const {
    if (!subset_of(y, attributes.all()))
      throw std::invalid_argument("set references undeclared attribute");
  }
};

/// A Galois-stable (extent, intent) pair.
struct Concept {
  Bits extent;
  Bits intent;
  friend bool operator==(const Concept&, const Concept&) = default;
};

struct EnumLimits {
  int max_small_carrier = 22;       // enumeration walks 2^min(|A|,|X|) subsets
  long long max_concepts = 1 << 20;
};

/// The complete lattice of all formal concepts of a polarity, with a
/// deterministic concept order: ascending extent popcount, then ascending
/// extent mask.
class ConceptLattice {
 public:
  ConceptLattice(Polarity p, std::vector<Concept> concepts)
      : source_(std::move(p)), concepts_(std::move(concepts)) {
    std::sort(concepts_.begin(), concepts_.end(), [](const Concept& l, const Concept& r) {
      int pl = popcount(l.extent), pr = popcount(r.extent);
      return pl != pr ? pl < pr : l.extent < r.extent;
    });
    for (int i = 0; i < size(); ++i) extent_index_.emplace(concepts_[i].extent, i);
    bottom_ = index_of_extent(source_.down(source_.attributes.all()));
    top_ = index_of_extent(source_.objects.all());
    object_map_.reserve(source_.objects.size());
    for (int a = 0; a < source_.objects.size(); ++a)
      object_map_.push_back(index_of_extent(source_.closure_extent(bit(a))));
    attribute_map_.reserve(source_.attributes.size());
    for (int x = 0; x < source_.attributes.size(); ++x)
      attribute_map_.push_back(index_of_extent(source_.down(bit(x))));
  }

  const Polarity& source() const { return source_; }
  int size() const { return static_cast<int>(concepts_.size()); }
  const Concept& at(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("concept index out of range");
    return concepts_[i];
  }
  const std::vector<Concept>& concepts() const { return concepts_; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }
  int object_concept(int a) const { return object_map_.at(a); }     // the concept generated by a
  int attribute_concept(int x) const { return attribute_map_.at(x); }

  int index_of_extent(Bits extent) const {
    auto it = extent_index_.find(extent);
    if (it == extent_index_.end())
      throw std::invalid_argument("no concept with the given extent");
    return it->second;
  }
  std::optional<int> try_index_of_extent(Bits extent) const {
    auto it = extent_index_.find(extent);
    if (it == extent_index_.end()) return std::nullopt;
    return it->second;
  }

  bool leq(int c, int d) const { return subset_of(at(c).extent, at(d).extent); }

  int meet(const std::vector<int>& s) const {
    Bits e = source_.objects.all();
    for (int i : s) e &= at(i).extent;
    return index_of_extent(s.empty() ? at(top_).extent : e);
  }

  int join(const std::vector<int>& s) const {
    if (s.empty()) return bottom_;
    Bits y = source_.attributes.all();
    for (int i : s) y &= at(i).intent;
    return index_of_extent(source_.down(y));
  }

  int meet2(int c, int d) const { return index_of_extent(at(c).extent & at(d).extent); }
  int join2(int c, int d) const { return index_of_extent(source_.down(at(c).intent & at(d).intent)); }

  bool is_distributive() const {
    int n = size();
    if (n > 512) throw CapExceeded("distributivity check capped at 512 concepts");
    std::vector<int> mt(n * n), jt(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mt[i * n + j] = meet2(i, j);
        jt[i * n + j] = join2(i, j);
      }
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e)
          if (mt[c * n + jt[d * n + e]] != jt[mt[c * n + d] * n + mt[c * n + e]])
            return false;
    return true;
  }

  /// Covering pairs (lower, upper) of the order: its transitive reduction.
  std::vector<std::pair<int, int>> hasse_edges() const {
    int n = size();
    if (n > 2048) throw CapExceeded("hasse computation capped at 2048 concepts");
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        if (c == d || !leq(c, d)) continue;
        bool covered = true;
        for (int e = 0; e < n && covered; ++e)
          if (e != c && e != d && leq(c, e) && leq(e, d)) covered = false;
        if (covered) out.emplace_back(c, d);
      }
    return out;
  }

 private:
  Polarity source_;
  std::vector<Concept> concepts_;
  std::unordered_map<Bits, int> extent_index_;
  std::vector<int> object_map_, attribute_map_;
  int top_ = 0, bottom_ = 0;
};

/// Enumerates every formal concept by closing all subsets of the smaller
/// carrier. Deterministic output order; throws CapExceeded past the limits.
inline ConceptLattice concept_lattice(const Polarity& p, const EnumLimits& lim = {}) {
  int na = p.objects.size(), nx = p.attributes.size();
  int small = std::min(na, nx);
  if (small > lim.max_small_carrier)
    throw CapExceeded("concept enumeration capped at min(|A|,|X|) <= " +
                      std::to_string(lim.max_small_carrier));
  std::unordered_map<Bits, Bits> seen;  // extent -> intent
  bool from_objects = na <= nx;
  Bits limit_mask = full_mask(small);
  for (Bits s = 0;; ++s) {
    if (from_objects) {
      Bits intent = p.up(s);
      Bits extent = p.down(intent);
      seen.emplace(extent, intent);
    } else {
      Bits extent = p.down(s);
      Bits intent = p.up(extent);
      seen.emplace(extent, intent);
    }
    if (static_cast<long long>(seen.size()) > lim.max_concepts)
      throw CapExceeded("concept count exceeds cap of " + std::to_string(lim.max_concepts));
    if (s == limit_mask) break;
  }
  std::vector<Concept> cs;
  cs.reserve(seen.size());
  for (auto& [e, i] : seen) cs.push_back(Concept{e, i});
  return ConceptLattice(p, std::move(cs));
}

}  // namespace lelogic
