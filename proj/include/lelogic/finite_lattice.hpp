#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lelogic/polarity.hpp"
#include "lelogic/sets.hpp"

namespace lelogic {

/// A finite bounded lattice given by its order relation. Construction checks
/// that the order is reflexive, antisymmetric, transitive and that every pair
/// of elements has a greatest lower bound and a least upper bound; binary
/// meet/join tables are precomputed.
class FiniteLattice {
 public:
  static FiniteLattice from_leq(std::vector<std::string> names,
                                const std::vector<std::vector<bool>>& leq) {
    FiniteLattice l;
    l.elems_ = Carrier(std::move(names));
    int n = l.elems_.size();
    if (n == 0) throw std::invalid_argument("lattice must be nonempty");
    if (static_cast<int>(leq.size()) != n)
      throw std::invalid_argument("order matrix size mismatch");
    l.below_.assign(n, 0);
    l.above_.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][j]) {
          l.below_[j] |= bit(i);
          l.above_[i] |= bit(j);
        }
    l.validate();
    l.build_tables();
    return l;
  }

  int size() const { return elems_.size(); }
  const Carrier& elements() const { return elems_; }
  bool leq(int i, int j) const { return contains(below_[j], i); }
  Bits downset(int i) const { return below_[i]; }
  Bits upset(int i) const { return above_[i]; }
  int meet(int i, int j) const { return meet_[i * size() + j]; }
  int join(int i, int j) const { return join_[i * size() + j]; }
  int top() const { return top_; }
  int bottom() const { return bottom_; }

  int meet_all(const std::vector<int>& s) const {
    int m = top_;
    for (int i : s) m = meet(m, i);
    return m;
  }
  int join_all(const std::vector<int>& s) const {
    int m = bottom_;
    for (int i : s) m = join(m, i);
    return m;
  }

 private:
  void validate() const {
    int n = size();
    for (int i = 0; i < n; ++i)
      if (!leq(i, i)) throw std::invalid_argument("order not reflexive");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j && leq(i, j) && leq(j, i))
          throw std::invalid_argument("order not antisymmetric");
        if (leq(i, j))
          for (int k = 0; k < n; ++k)
            if (leq(j, k) && !leq(i, k))
              throw std::invalid_argument("order not transitive");
      }
  }

  static int unique_greatest(Bits set, const std::vector<Bits>& below) {
    int best = -1;
    for_each_bit(set, [&](int c) {
      if (best == -1 || contains(below[c], best)) best = c;
    });
    if (best == -1) return -1;
    // best must dominate every member, otherwise there is no greatest element
    bool ok = true;
    for_each_bit(set, [&](int c) {
      if (!contains(below[best], c)) ok = false;
    });
    return ok ? best : -1;
  }

  void build_tables() {
    int n = size();
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int m = unique_greatest(below_[i] & below_[j], below_);
        if (m < 0) throw std::invalid_argument("pair without a meet");
        meet_[i * n + j] = m;
        // joins dually: least element of the common upper bounds
        Bits ubs = above_[i] & above_[j];
        int jn = -1;
        for_each_bit(ubs, [&](int c) {
          if (jn == -1 || contains(above_[c], jn)) jn = c;
        });
        bool ok = jn != -1;
        for_each_bit(ubs, [&](int c) {
          if (ok && !contains(above_[jn], c)) ok = false;
        });
        if (!ok) throw std::invalid_argument("pair without a join");
        join_[i * n + j] = jn;
      }
    top_ = 0;
    bottom_ = 0;
    for (int i = 0; i < n; ++i) {
      top_ = join(top_, i);
      bottom_ = meet(bottom_, i);
    }
  }

  Carrier elems_;
  std::vector<Bits> below_, above_;
  std::vector<int> meet_, join_;
  int top_ = 0, bottom_ = 0;
};

namespace lattices {

inline FiniteLattice chain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = true;
  return FiniteLattice::from_leq(std::move(names), leq);
}

/// Powerset of k atoms ordered by inclusion (2^k elements).
inline FiniteLattice boolean_cube(int k) {
  int n = 1 << k;
  std::vector<std::string> names;
  for (int s = 0; s < n; ++s) names.push_back("s" + std::to_string(s));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = (a & ~b) == 0;
  return FiniteLattice::from_leq(std::move(names), leq);
}

/// The pentagon: bottom < a < b < top and bottom < c < top.
inline FiniteLattice n5() {
  std::vector<std::string> names = {"bot", "a", "b", "c", "top"};
  auto le = [](int i, int j) {
    if (i == j || i == 0 || j == 4) return true;
    return i == 1 && j == 2;
  };
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) leq[i][j] = le(i, j);
  return FiniteLattice::from_leq(std::move(names), leq);
}

/// The diamond with three incomparable atoms.
inline FiniteLattice m3() {
  std::vector<std::string> names = {"bot", "a", "b", "c", "top"};
  std::vector<std::vector<bool>> leq(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) leq[i][j] = i == j || i == 0 || j == 4;
  return FiniteLattice::from_leq(std::move(names), leq);
}

/// Four elements: bottom, two incomparable middles, top (the 2-cube shape).
inline FiniteLattice diamond4() { return boolean_cube(2); }

}  // namespace lattices

/// The polarity (L, L, <=) whose concept lattice is isomorphic to L.
inline Polarity birkhoff_polarity(const FiniteLattice& l) {
  Carrier objs(l.elements().names()), attrs(l.elements().names());
  std::vector<Bits> rows(l.size());
  for (int i = 0; i < l.size(); ++i) rows[i] = l.upset(i);
  return Polarity::from_masks(std::move(objs), std::move(attrs), std::move(rows));
}

/// Verifies that a |-> (downset(a), upset(a)) is an order isomorphism onto the
/// concept lattice of the induced polarity: bijective and order-preserving in
/// both directions.
inline bool birkhoff_iso_check(const FiniteLattice& l, const EnumLimits& lim = {}) {
  ConceptLattice cl = concept_lattice(birkhoff_polarity(l), lim);
  if (cl.size() != l.size()) return false;
  std::vector<int> image(l.size());
  std::vector<bool> hit(cl.size(), false);
  for (int a = 0; a < l.size(); ++a) {
    auto idx = cl.try_index_of_extent(l.downset(a));
    if (!idx || cl.at(*idx).intent != l.upset(a)) return false;
    if (hit[*idx]) return false;
    hit[*idx] = true;
    image[a] = *idx;
  }
  for (int a = 0; a < l.size(); ++a)
    for (int b = 0; b < l.size(); ++b)
      if (l.leq(a, b) != cl.leq(image[a], image[b])) return false;
  return true;
}

}  // namespace lelogic
