#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lelogic/signature.hpp"

namespace lelogic {

/// Term AST over a signature: letters, bounds, lattice connectives and
/// applications of declared connectives.
struct Formula {
  enum class Kind { var, top, bot, conj, disj, app };

  Kind kind = Kind::top;
  std::string name;            // letter or connective name
  std::vector<Formula> args;

  friend bool operator==(const Formula&, const Formula&) = default;

  static Formula var(std::string n) { return {Kind::var, std::move(n), {}}; }
  static Formula top() { return {Kind::top, {}, {}}; }
  static Formula bot() { return {Kind::bot, {}, {}}; }
  static Formula conj(Formula l, Formula r) {
    return {Kind::conj, {}, {std::move(l), std::move(r)}};
  }
  static Formula disj(Formula l, Formula r) {
    return {Kind::disj, {}, {std::move(l), std::move(r)}};
  }
  static Formula app(std::string n, std::vector<Formula> as) {
    return {Kind::app, std::move(n), std::move(as)};
  }
  static Formula box(Formula f) { return app("box", {std::move(f)}); }
  static Formula dia(Formula f) { return app("dia", {std::move(f)}); }
  static Formula lhd(Formula f) { return app("lhd", {std::move(f)}); }
  static Formula rhd(Formula f) { return app("rhd", {std::move(f)}); }
};

struct Sequent {
  Formula lhs, rhs;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

/// Proposition letters in first-occurrence order.
inline void collect_vars(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == Formula::Kind::var) {
    if (std::find(out.begin(), out.end(), f.name) == out.end()) out.push_back(f.name);
    return;
  }
  for (auto& a : f.args) collect_vars(a, out);
}

inline std::vector<std::string> prop_vars(const Formula& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  return out;
}

inline std::vector<std::string> prop_vars(const Sequent& s) {
  std::vector<std::string> out;
  collect_vars(s.lhs, out);
  collect_vars(s.rhs, out);
  return out;
}

/// Distinct subformulas in evaluation (post-) order; the formula itself last.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    for (auto& a : g.args) self(self, a);
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  walk(walk, f);
  return out;
}

inline int depth(const Formula& f) {
  int d = 0;
  for (auto& a : f.args) d = std::max(d, 1 + depth(a));
  return d;
}

// ---------------------------------------------------------------------------
// Concrete syntax.
//
//   sequent := formula '|-' formula
//   formula := and_term ('\/' and_term)*
//   and_term := unary ('/\' unary)*
//   unary := ('box'|'dia'|'lhd'|'rhd') unary | primary
//   primary := 'top' | 'bot' | ident ['(' formula {',' formula} ')'] | '(' formula ')'
//
// Identifiers [a-z][a-z0-9_]* name proposition letters unless declared in the
// signature, in which case they are connective applications (nullary ones may
// omit the parentheses).
// ---------------------------------------------------------------------------

struct ParseError : std::invalid_argument {
  ParseError(const std::string& msg, size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
  size_t position;
};

namespace detail {

struct Token {
  enum class Type { ident, and_op, or_op, turnstile, lparen, rparen, comma, end };
  Type type;
  std::string text;
  size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    size_t at = i_;
    if (i_ >= s_.size()) {
      tok_ = {Token::Type::end, "", at};
      return;
    }
    char c = s_[i_];
    if (c == '(') { ++i_; tok_ = {Token::Type::lparen, "(", at}; return; }
    if (c == ')') { ++i_; tok_ = {Token::Type::rparen, ")", at}; return; }
    if (c == ',') { ++i_; tok_ = {Token::Type::comma, ",", at}; return; }
    if (s_.compare(i_, 2, "/\\") == 0) { i_ += 2; tok_ = {Token::Type::and_op, "/\\", at}; return; }
    if (s_.compare(i_, 2, "\\/") == 0) { i_ += 2; tok_ = {Token::Type::or_op, "\\/", at}; return; }
    if (s_.compare(i_, 2, "|-") == 0) { i_ += 2; tok_ = {Token::Type::turnstile, "|-", at}; return; }
    if (c >= 'a' && c <= 'z') {
      size_t j = i_ + 1;
      while (j < s_.size() && ((s_[j] >= 'a' && s_[j] <= 'z') ||
                               (s_[j] >= '0' && s_[j] <= '9') || s_[j] == '_'))
        ++j;
      tok_ = {Token::Type::ident, s_.substr(i_, j - i_), at};
      i_ = j;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  const std::string& s_;
  size_t i_ = 0;
  Token tok_{Token::Type::end, "", 0};
};

class Parser {
 public:
  Parser(const Signature& sig, const std::string& text) : sig_(sig), lex_(text) {}

  Formula formula() {
    Formula f = or_term();
    return f;
  }

  Formula parse_all() {
    Formula f = formula();
    expect_end();
    return f;
  }

  Sequent sequent() {
    Formula l = formula();
    if (lex_.peek().type != Token::Type::turnstile)
      throw ParseError("expected '|-'", lex_.peek().pos);
    lex_.next();
    Formula r = formula();
    if (lex_.peek().type == Token::Type::turnstile)
      throw ParseError("at most one '|-' allowed", lex_.peek().pos);
    expect_end();
    return {std::move(l), std::move(r)};
  }

 private:
  using Type = Token::Type;

  void expect_end() {
    if (lex_.peek().type != Type::end)
      throw ParseError("unexpected trailing input '" + lex_.peek().text + "'", lex_.peek().pos);
  }

  Formula or_term() {
    Formula f = and_term();
    while (lex_.peek().type == Type::or_op) {
      lex_.next();
      f = Formula::disj(std::move(f), and_term());
    }
    return f;
  }

  Formula and_term() {
    Formula f = unary();
    while (lex_.peek().type == Type::and_op) {
      lex_.next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  static bool is_unary_builtin(const std::string& s) {
    return s == "box" || s == "dia" || s == "lhd" || s == "rhd";
  }

  Formula unary() {
    if (lex_.peek().type == Type::ident && is_unary_builtin(lex_.peek().text)) {
      Token t = lex_.next();
      if (!sig_.find(t.text))
        throw ParseError("connective '" + t.text + "' is not declared in the signature", t.pos);
      return Formula::app(t.text, {unary()});
    }
    return primary();
  }

  Formula primary() {
    Token t = lex_.next();
    if (t.type == Type::lparen) {
      Formula f = or_term();
      if (lex_.peek().type != Type::rparen) throw ParseError("expected ')'", lex_.peek().pos);
      lex_.next();
      return f;
    }
    if (t.type != Type::ident) throw ParseError("expected a formula", t.pos);
    if (t.text == "top") return Formula::top();
    if (t.text == "bot") return Formula::bot();
    const Connective* conn = sig_.find(t.text);
    if (lex_.peek().type == Type::lparen) {
      if (!conn) throw ParseError("unknown connective '" + t.text + "'", t.pos);
      lex_.next();
      std::vector<Formula> args;
      if (lex_.peek().type != Type::rparen) {
        args.push_back(or_term());
        while (lex_.peek().type == Type::comma) {
          lex_.next();
          args.push_back(or_term());
        }
      }
      if (lex_.peek().type != Type::rparen) throw ParseError("expected ')'", lex_.peek().pos);
      lex_.next();
      if (static_cast<int>(args.size()) != conn->arity())
        throw ParseError("'" + t.text + "' expects " + std::to_string(conn->arity()) +
                             " argument(s), got " + std::to_string(args.size()),
                         t.pos);
      return Formula::app(t.text, std::move(args));
    }
    if (conn) {
      if (conn->arity() != 0)
        throw ParseError("'" + t.text + "' expects " + std::to_string(conn->arity()) +
                             " argument(s)",
                         t.pos);
      return Formula::app(t.text, {});
    }
    return Formula::var(t.text);
  }

  const Signature& sig_;
  Lexer lex_;
};

}  // namespace detail

inline Formula parse_formula(const Signature& sig, const std::string& text) {
  if (text.empty()) throw ParseError("empty input", 0);
  return detail::Parser(sig, text).parse_all();
}

inline Sequent parse_sequent(const Signature& sig, const std::string& text) {
  if (text.empty()) throw ParseError("empty input", 0);
  return detail::Parser(sig, text).sequent();
}

/// Minimal-parenthesis printer; parse(format(f)) == f.
inline std::string format(const Formula& f) {
  auto emit = [](auto&& self, const Formula& g, int parent_level) -> std::string {
    // levels: disj 1, conj 2, unary app 3, atoms 4
    switch (g.kind) {
      case Formula::Kind::var:
        return g.name;
      case Formula::Kind::top:
        return "top";
      case Formula::Kind::bot:
        return "bot";
      case Formula::Kind::disj: {
        std::string s = self(self, g.args[0], 1) + " \\/ " + self(self, g.args[1], 2);
        return parent_level > 1 ? "(" + s + ")" : s;
      }
      case Formula::Kind::conj: {
        std::string s = self(self, g.args[0], 2) + " /\\ " + self(self, g.args[1], 3);
        return parent_level > 2 ? "(" + s + ")" : s;
      }
      case Formula::Kind::app: {
        bool builtin_unary = g.args.size() == 1 &&
                             (g.name == "box" || g.name == "dia" || g.name == "lhd" ||
                              g.name == "rhd");
        if (builtin_unary) return g.name + " " + self(self, g.args[0], 3);
        std::string s = g.name + "(";
        for (size_t i = 0; i < g.args.size(); ++i) {
          if (i) s += ", ";
          s += self(self, g.args[i], 0);
        }
        return s + ")";
      }
    }
    return {};
  };
  return emit(emit, f, 0);
}

inline std::string format(const Sequent& s) {
  return format(s.lhs) + " |- " + format(s.rhs);
}

/// The axiom sequents of the basic logic: eight propositional sequents plus,
/// per declared unary built-in, its two characteristic sequents.
inline std::vector<Sequent> axioms_of_base_logic(const Signature& sig) {
  using F = Formula;
  F p = F::var("p"), q = F::var("q");
  std::vector<Sequent> out = {
      {p, p},
      {F::bot(), p},
      {p, F::top()},
      {F::bot(), F::top()},
      {p, F::disj(p, q)},
      {q, F::disj(p, q)},
      {F::conj(p, q), p},
      {F::conj(p, q), q},
  };
  if (sig.find("box")) {
    out.push_back({F::top(), F::box(F::top())});
    out.push_back({F::conj(F::box(p), F::box(q)), F::box(F::conj(p, q))});
  }
  if (sig.find("dia")) {
    out.push_back({F::dia(F::bot()), F::bot()});
    out.push_back({F::dia(F::disj(p, q)), F::disj(F::dia(p), F::dia(q))});
  }
  if (sig.find("rhd")) {
    out.push_back({F::top(), F::rhd(F::bot())});
    out.push_back({F::conj(F::rhd(p), F::rhd(q)), F::rhd(F::disj(p, q))});
  }
  if (sig.find("lhd")) {
    out.push_back({F::lhd(F::top()), F::bot()});
    out.push_back({F::lhd(F::conj(p, q)), F::disj(F::lhd(p), F::lhd(q))});
  }
  return out;
}

}  // namespace lelogic
