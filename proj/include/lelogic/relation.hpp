#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "lelogic/sets.hpp"

namespace lelogic {

/// A relation on point tuples (output point first, then `arity` argument
/// points), each coordinate ranging over its own carrier. Tuples are kept
/// sorted for deterministic iteration.
class Relation {
 public:
  Relation() = default;
  Relation(int arity, std::vector<int> carrier_sizes)
      : arity_(arity), sizes_(std::move(carrier_sizes)) {
    if (static_cast<int>(sizes_.size()) != arity_ + 1)
      throw std::invalid_argument("carrier size list must cover output plus arguments");
    if (arity_ + 1 > 10)
      throw CapExceeded("relation arity capped at 9");
  }

  int arity() const { return arity_; }
  const std::vector<int>& carrier_sizes() const { return sizes_; }
  const std::vector<std::vector<int>>& tuples() const { return tuples_; }
  size_t size() const { return tuples_.size(); }

  void add(const std::vector<int>& t) {
    validate(t);
    if (keys_.insert(key(t)).second) {
      tuples_.push_back(t);
      sorted_ = false;
    }
  }

  void remove(const std::vector<int>& t) {
    if (keys_.erase(key(t))) {
      tuples_.erase(std::find(tuples_.begin(), tuples_.end(), t));
    }
  }

  bool contains(const std::vector<int>& t) const { return keys_.count(key(t)) > 0; }

  void finish() {
    if (!sorted_) {
      std::sort(tuples_.begin(), tuples_.end());
      sorted_ = true;
    }
  }

  const std::vector<std::vector<int>>& sorted_tuples() {
    finish();
    return tuples_;
  }

  /// {o | (o, args) in R} for a fixed argument point tuple.
  Bits section_at_points(const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != arity_)
      throw std::invalid_argument("argument tuple arity mismatch");
    Bits out = 0;
    std::vector<int> t(arity_ + 1);
    std::copy(args.begin(), args.end(), t.begin() + 1);
    for (int o = 0; o < sizes_[0]; ++o) {
      t[0] = o;
      if (contains(t)) out |= bit(o);
    }
    return out;
  }

  /// S^(0)[C]: {o | every argument tuple drawn from the given sets relates to o}.
  Bits section0(const std::vector<Bits>& argsets) const {
    if (static_cast<int>(argsets.size()) != arity_)
      throw std::invalid_argument("argument set arity mismatch");
    Bits out = full_mask(sizes_[0]);
    std::vector<int> args(arity_);
    bool empty_product = false;
    for (int i = 0; i < arity_ && !empty_product; ++i)
      if (argsets[i] == 0) empty_product = true;
    if (empty_product) return out;  // vacuous: full carrier
    each_product(argsets, args, 0, [&](const std::vector<int>& a) {
      out &= section_at_points(a);
    });
    return out;
  }

  /// S^(i)[o, fixed]: {w | (o, ..., w at coordinate i, ...) in R}; i is 1-based.
  Bits section_i(int i, int out_point, const std::vector<int>& other_args) const {
    if (i < 1 || i > arity_) throw std::invalid_argument("coordinate out of range");
    if (static_cast<int>(other_args.size()) != arity_ - 1)
      throw std::invalid_argument("fixed argument count mismatch");
    std::vector<int> t(arity_ + 1);
    t[0] = out_point;
    int k = 0;
    for (int j = 1; j <= arity_; ++j)
      if (j != i) t[j] = other_args[k++];
    Bits out = 0;
    for (int w = 0; w < sizes_[i]; ++w) {
      t[i] = w;
      if (contains(t)) out |= bit(w);
    }
    return out;
  }

  /// Complement-relation variants used by graph frames.
  Bits csection_at_points(const std::vector<int>& args) const {
    return full_mask(sizes_[0]) & ~section_at_points(args);
  }

  /// S^[0][C]: {o | no argument tuple drawn from the sets relates to o}.
  Bits csection0(const std::vector<Bits>& argsets) const {
    if (static_cast<int>(argsets.size()) != arity_)
      throw std::invalid_argument("argument set arity mismatch");
    Bits bad = 0;
    for (auto& t : tuples_) {
      bool match = true;
      for (int i = 0; i < arity_ && match; ++i)
        if (!contains_point(argsets[i], t[i + 1])) match = false;
      if (match) bad |= bit(t[0]);
    }
    return full_mask(sizes_[0]) & ~bad;
  }

  Bits csection_i(int i, int out_point, const std::vector<int>& other_args) const {
    return full_mask(sizes_[i]) & ~section_i(i, out_point, other_args);
  }

  template <typename Fn>
  static void each_product(const std::vector<Bits>& sets, std::vector<int>& scratch,
                           size_t at, Fn&& fn) {
    if (at == sets.size()) {
      fn(scratch);
      return;
    }
    for_each_bit(sets[at], [&](int p) {
      scratch[at] = p;
      each_product(sets, scratch, at + 1, fn);
    });
  }

 private:
  static bool contains_point(Bits s, int i) { return lelogic::contains(s, i); }

  void validate(const std::vector<int>& t) const {
    if (static_cast<int>(t.size()) != arity_ + 1)
      throw std::invalid_argument("tuple arity mismatch");
    for (int i = 0; i <= arity_; ++i)
      if (t[i] < 0 || t[i] >= sizes_[i])
        throw std::invalid_argument("tuple point outside its carrier");
  }

  std::uint64_t key(const std::vector<int>& t) const {
    std::uint64_t k = 0;
    for (int i = 0; i <= arity_; ++i) k = (k << 6) | static_cast<std::uint64_t>(t[i]);
    return k;
  }

  int arity_ = 0;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> tuples_;
  std::unordered_set<std::uint64_t> keys_;
  bool sorted_ = true;
};

}  // namespace lelogic
