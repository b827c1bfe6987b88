#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/finite_lattice.hpp"
#include "lelogic/formula.hpp"
#include "lelogic/polarity.hpp"
#include "lelogic/signature.hpp"

namespace lelogic {

inline long long pow_checked(long long base, int exp, long long cap) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap) throw CapExceeded("operation table size exceeds cap");
  }
  return v;
}

/// Table of one lattice operation, indexed row-major by the argument tuple.
struct OpTable {
  Connective conn;
  std::vector<int> table;

  int apply(int n, const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != conn.arity())
      throw std::invalid_argument("arity mismatch applying '" + conn.name + "'");
    long long idx = 0;
    for (int a : args) {
      if (a < 0 || a >= n) throw std::invalid_argument("argument index out of range");
      idx = idx * n + a;
    }
    return table[static_cast<size_t>(idx)];
  }
};

/// A concept lattice together with one operation per declared connective.
struct ConceptAlgebra {
  ConceptLattice lattice;
  Signature signature;
  std::map<std::string, OpTable> ops;

  int apply(const std::string& name, const std::vector<int>& args) const {
    auto it = ops.find(name);
    if (it == ops.end()) throw std::invalid_argument("no operation for connective '" + name + "'");
    return it->second.apply(lattice.size(), args);
  }
};

/// Assignment of proposition letters to concepts.
struct Valuation {
  std::map<std::string, int> assign;

  int at(const std::string& p) const {
    auto it = assign.find(p);
    if (it == assign.end())
      throw std::invalid_argument("unassigned proposition letter '" + p + "'");
    return it->second;
  }
};

/// Homomorphic extension of a valuation over the algebra.
inline int eval(const ConceptAlgebra& alg, const Valuation& v, const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::var: {
      int c = v.at(f.name);
      if (c < 0 || c >= alg.lattice.size())
        throw std::invalid_argument("valuation index out of range for '" + f.name + "'");
      return c;
    }
    case Formula::Kind::top:
      return alg.lattice.top();
    case Formula::Kind::bot:
      return alg.lattice.bottom();
    case Formula::Kind::conj:
      return alg.lattice.meet2(eval(alg, v, f.args[0]), eval(alg, v, f.args[1]));
    case Formula::Kind::disj:
      return alg.lattice.join2(eval(alg, v, f.args[0]), eval(alg, v, f.args[1]));
    case Formula::Kind::app: {
      std::vector<int> args;
      args.reserve(f.args.size());
      for (auto& a : f.args) args.push_back(eval(alg, v, a));
      return alg.apply(f.name, args);
    }
  }
  throw std::logic_error("unreachable");
}

/// Coordinate-wise normality over any finite lattice with tables: monotone
/// coordinates of F-operations preserve binary and empty joins, antitone ones
/// send meets to joins; dually for G-operations. Exhaustive.
template <typename MeetFn, typename JoinFn, typename ApplyFn>
bool check_normal_operation(int n, int top, int bottom, const Connective& c,
                            MeetFn&& meet, JoinFn&& join, ApplyFn&& apply) {
  int ar = c.arity();
  std::vector<int> args(ar, 0);
  // walks all tuples for the remaining coordinates
  auto each_tuple = [&](auto&& self, int skip, int at, auto&& body) -> bool {
    if (at == ar) return body();
    if (at == skip) return self(self, skip, at + 1, body);
    for (int v = 0; v < n; ++v) {
      args[at] = v;
      if (!self(self, skip, at + 1, body)) return false;
    }
    return true;
  };
  for (int i = 0; i < ar; ++i) {
    bool mono = c.tones[i] == Tone::monotone;
    bool fjoin = c.family == Family::F;
    bool ok = each_tuple(each_tuple, i, 0, [&]() {
      // empty case
      int unit_in, unit_out;
      if (fjoin) {
        unit_in = mono ? bottom : top;
        unit_out = bottom;
      } else {
        unit_in = mono ? top : bottom;
        unit_out = top;
      }
      args[i] = unit_in;
      if (apply(args) != unit_out) return false;
      // binary case
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
          int combined_in;
          if (fjoin)
            combined_in = mono ? join(a, b) : meet(a, b);
          else
            combined_in = mono ? meet(a, b) : join(a, b);
          args[i] = a;
          int ra = apply(args);
          args[i] = b;
          int rb = apply(args);
          args[i] = combined_in;
          int rc = apply(args);
          int expect = fjoin ? join(ra, rb) : meet(ra, rb);
          if (rc != expect) return false;
        }
      return true;
    });
    if (!ok) return false;
  }
  return true;
}

inline bool is_normal(const ConceptAlgebra& alg) {
  for (auto& [name, op] : alg.ops) {
    auto ok = check_normal_operation(
        alg.lattice.size(), alg.lattice.top(), alg.lattice.bottom(), op.conn,
        [&](int a, int b) { return alg.lattice.meet2(a, b); },
        [&](int a, int b) { return alg.lattice.join2(a, b); },
        [&](const std::vector<int>& args) { return op.apply(alg.lattice.size(), args); });
    if (!ok) return false;
  }
  return true;
}

/// A finite lattice expanded with operation tables for a signature; the input
/// format of frame construction from algebras.
struct LatticeExpansion {
  FiniteLattice lattice;
  Signature signature;
  std::map<std::string, OpTable> tables;

  static LatticeExpansion make(FiniteLattice l, Signature sig,
                               std::map<std::string, std::vector<int>> raw) {
    LatticeExpansion e;
    e.lattice = std::move(l);
    e.signature = std::move(sig);
    int n = e.lattice.size();
    for (auto& c : e.signature.connectives()) {
      auto it = raw.find(c.name);
      if (it == raw.end())
        throw std::invalid_argument("missing operation table for '" + c.name + "'");
      long long want = pow_checked(n, c.arity(), 1 << 22);
      if (static_cast<long long>(it->second.size()) != want)
        throw std::invalid_argument("operation table for '" + c.name + "' has wrong size");
      for (int v : it->second)
        if (v < 0 || v >= n)
          throw std::invalid_argument("operation table for '" + c.name + "' hits no element");
      e.tables.emplace(c.name, OpTable{c, std::move(it->second)});
    }
    if (!e.is_normal())
      throw std::invalid_argument("operation tables are not normal");
    return e;
  }

  int apply(const std::string& name, const std::vector<int>& args) const {
    return tables.at(name).apply(lattice.size(), args);
  }

  bool is_normal() const {
    for (auto& [name, op] : tables) {
      auto ok = check_normal_operation(
          lattice.size(), lattice.top(), lattice.bottom(), op.conn,
          [&](int a, int b) { return lattice.meet(a, b); },
          [&](int a, int b) { return lattice.join(a, b); },
          [&](const std::vector<int>& args) { return op.apply(lattice.size(), args); });
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace lelogic
