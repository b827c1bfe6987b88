#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace lelogic {

// Carriers are capped at 64 points so that every subset fits in one word.
// All set algebra in the library (intersection, inclusion, closure) runs on
// these masks.
using Bits = std::uint64_t;

inline constexpr int kMaxCarrier = 64;

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr Bits bit(int i) { return Bits{1} << i; }
inline constexpr bool contains(Bits s, int i) { return (s >> i) & Bits{1}; }
inline constexpr bool subset_of(Bits a, Bits b) { return (a & ~b) == 0; }
inline constexpr int popcount(Bits s) { return std::popcount(s); }
inline constexpr Bits full_mask(int n) {
  return n >= kMaxCarrier ? ~Bits{0} : (Bits{1} << n) - 1;
}

template <typename Fn>
inline void for_each_bit(Bits s, Fn&& fn) {
  while (s) {
    int i = std::countr_zero(s);
    fn(i);
    s &= s - 1;
  }
}

inline std::vector<int> to_indices(Bits s) {
  std::vector<int> out;
  for_each_bit(s, [&](int i) { out.push_back(i); });
  return out;
}

/// A finite ordered set of named points. Iteration and bit positions follow
/// declaration order.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> names) {
    for (auto& n : names) add(std::move(n));
  }

  int add(std::string name) {
    if (static_cast<int>(names_.size()) >= kMaxCarrier)
      throw CapExceeded("carrier exceeds " + std::to_string(kMaxCarrier) +
                        " points");
    if (index_.count(name))
      throw std::invalid_argument("duplicate identifier '" + name + "'");
    int i = static_cast<int>(names_.size());
    index_.emplace(name, i);
    names_.push_back(std::move(name));
    return i;
  }

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> try_index(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index(const std::string& n) const {
    auto i = try_index(n);
    if (!i) throw std::invalid_argument("unknown identifier '" + n + "'");
    return *i;
  }
  bool has(const std::string& n) const { return index_.count(n) > 0; }
  Bits all() const { return full_mask(size()); }

  Bits mask_of(const std::vector<std::string>& ns) const {
    Bits m = 0;
    for (auto& n : ns) m |= bit(index(n));
    return m;
  }

  std::string format(Bits s, const char* sep = ",") const {
    std::string out;
    for_each_bit(s, [&](int i) {
      if (!out.empty()) out += sep;
      out += name(i);
    });
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace lelogic
