#pragma once

// Polynomial text grammar:
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' unary) | ('/' unary))*      divisor must be a nonzero constant
//   unary   := ('+' | '-') unary | power
//   power   := atom ('^' integer)?
//   atom    := integer | variable | '(' sum ')'
//   variable:= identifier ('(' integer ')')? '\''*
//
// Whitespace is ignored; there is no implicit multiplication.

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "resing/polynomial.hpp"

namespace resing {

namespace detail {

struct VariableToken {
  std::string text;
  std::string base;
  std::optional<Integer> index;
  std::size_t primes = 0;
  std::size_t position = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::size_t position() const { return pos_; }
  void advance() { ++pos_; }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  Integer integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  VariableToken variable() {
    skip_space();
    VariableToken tok;
    tok.position = pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) throw ParseError("expected variable", pos_);
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    tok.base = std::string(text_.substr(start, pos_ - start));
    // An index must follow the identifier immediately: x(1), not x (1).
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) throw ParseError("expected integer index", digits);
      tok.index = Integer(std::string(text_.substr(digits, pos_ - digits)));
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
    }
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      ++tok.primes;
    }
    tok.text = std::string(text_.substr(start, pos_ - start));
    return tok;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, RingPtr ring) : lex_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    if (lex_.at_end()) throw ParseError("empty input", lex_.position());
    Polynomial p = sum();
    if (!lex_.at_end()) throw ParseError(std::string("unexpected '") + lex_.peek() + "'", lex_.position());
    return p;
  }

 private:
  Polynomial sum() {
    Polynomial acc = product();
    for (;;) {
      if (lex_.accept('+')) {
        acc += product();
      } else if (lex_.accept('-')) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    for (;;) {
      if (lex_.accept('*')) {
        acc *= unary();
      } else if (lex_.peek() == '/') {
        std::size_t at = lex_.position();
        lex_.advance();
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) throw ParseError("divisor must be a nonzero constant", at);
        acc = acc.scaled(ring_->field().inv(d.constant_term()));
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (lex_.accept('-')) return -unary();
    if (lex_.accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (lex_.accept('^')) {
      std::size_t at = lex_.position();
      Integer e = lex_.integer();
      if (e > 1'000'000) throw ParseError("exponent too large", at);
      return base.pow(static_cast<std::uint64_t>(e));
    }
    return base;
  }

  Polynomial atom() {
    char c = lex_.peek();
    if (c == '(') {
      lex_.advance();
      Polynomial inner = sum();
      if (!lex_.accept(')')) throw ParseError("expected ')'", lex_.position());
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(ring_, Rational(lex_.integer()));
    if (Lexer::ident_start(c)) {
      auto tok = lex_.variable();
      auto idx = ring_->index_of(tok.text);
      if (!idx) throw UnknownVariableError(tok.text, tok.position);
      return Polynomial::variable(ring_, *idx);
    }
    if (c == '\0') throw ParseError("unexpected end of input", lex_.position());
    throw ParseError(std::string("unexpected '") + c + "'", lex_.position());
  }

  Lexer lex_;
  RingPtr ring_;
};

}  // namespace detail

/// Parses `text` as a polynomial over `ring`.
inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::Parser(text, ring).parse();
}

/// Orders variable names naturally: by base name, then numeric index, then primes.
inline bool natural_variable_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    detail::Lexer lex(s);
    return lex.variable();
  };
  auto ta = split(a), tb = split(b);
  if (ta.base != tb.base) return ta.base < tb.base;
  if (ta.index.has_value() != tb.index.has_value()) return !ta.index.has_value();
  if (ta.index && *ta.index != *tb.index) return *ta.index < *tb.index;
  return ta.primes < tb.primes;
}

/// Collects every variable name occurring in the texts, in natural order.
inline std::vector<std::string> infer_variables(const std::vector<std::string>& texts) {
  std::set<std::string> seen;
  for (const auto& text : texts) {
    detail::Lexer lex(text);
    while (!lex.at_end()) {
      char c = lex.peek();
      if (detail::Lexer::ident_start(c)) {
        seen.insert(lex.variable().text);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex.integer();
      } else {
        lex.advance();
      }
    }
  }
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), natural_variable_less);
  return out;
}

}  // namespace resing
