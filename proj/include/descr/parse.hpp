#pragma once

// Text format for signomials:
//   poly  := sterm (('+'|'-') sterm)*
//   sterm := [coeff] ['*' mono] | mono
//   mono  := var ['^' exp] ('*' var ['^' exp])*
//   exp   := integer | '(' rational ')'
// Variables are x1, x2, ... with aliases x, y, z, w for the first four.
// Coefficients may be integers, exact decimals, p/q, or parenthesized rationals.
// '#' starts a comment that runs to the end of the line.

#include "signomial.hpp"

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace descr {

struct ParseError : std::runtime_error {
  std::size_t line, column;
  ParseError(const std::string& msg, std::size_t l, std::size_t c)
      : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
        line(l), column(c) {}
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  struct RawTerm {
    Rational coeff;
    std::map<std::size_t, Rational> powers;  // 1-based variable index
  };

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip();
    if (eof()) return terms;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip();
    }
    terms.push_back(sterm(negative));
    for (;;) {
      skip();
      if (eof()) break;
      char c = peek();
      if (c != '+' && c != '-') error("expected '+' or '-'");
      get();
      skip();
      terms.push_back(sterm(c == '-'));
    }
    return terms;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }

  void skip() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string digits() {
    std::string d;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) d += get();
    return d;
  }

  // integer, decimal, or p/q without sign
  Rational number() {
    std::string lit = digits();
    if (peek() == '.') {
      lit += get();
      lit += digits();
    }
    if (lit.empty() || lit == ".") error("expected a number");
    skip();
    if (peek() == '/') {
      std::size_t save = pos_;
      get();
      skip();
      std::string den = digits();
      if (den.empty()) {
        pos_ = save;
        error("expected a denominator");
      }
      if (lit.find('.') != std::string::npos) error("decimal numerator in a fraction");
      lit += "/" + den;
    }
    try {
      return parse_rational(lit);
    } catch (const std::invalid_argument& e) {
      error(e.what());
    }
  }

  Rational parenthesized() {
    get();  // '('
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
      skip();
    }
    Rational r = number();
    skip();
    if (peek() != ')') error("expected ')'");
    get();
    return negative ? Rational(-r) : r;
  }

  bool at_variable() const { return !eof() && std::isalpha(static_cast<unsigned char>(peek())); }

  std::size_t variable() {
    std::string name;
    while (!eof() && std::isalnum(static_cast<unsigned char>(peek()))) name += get();
    if (name == "x") return 1;
    if (name == "y") return 2;
    if (name == "z") return 3;
    if (name == "w") return 4;
    if (name.size() >= 2 && name[0] == 'x') {
      bool ok = true;
      for (std::size_t i = 1; i < name.size(); ++i) ok = ok && std::isdigit(static_cast<unsigned char>(name[i]));
      if (ok) {
        std::size_t idx = std::stoul(name.substr(1));
        if (idx == 0) error("variable indices start at x1");
        return idx;
      }
    }
    pos_ -= name.size();
    error("unknown variable '" + name + "'");
  }

  void factor(RawTerm& t) {
    std::size_t var = variable();
    skip();
    Rational e = 1;
    if (peek() == '^') {
      get();
      skip();
      if (peek() == '(') {
        e = parenthesized();
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::string d = digits();
        e = parse_rational(d);
      } else {
        error("expected an exponent");
      }
    }
    t.powers[var] += e;
  }

  RawTerm sterm(bool negative) {
    RawTerm t;
    t.coeff = 1;
    bool have_coeff = false;
    if (peek() == '(') {
      t.coeff = parenthesized();
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      t.coeff = number();
      have_coeff = true;
    }
    skip();
    if (have_coeff) {
      if (peek() == '*') {
        get();
        skip();
        if (!at_variable()) error("expected a variable after '*'");
      } else if (at_variable()) {
        error("expected '*' between coefficient and monomial");
      }
    }
    if (at_variable()) {
      factor(t);
      for (;;) {
        skip();
        if (peek() != '*') break;
        get();
        skip();
        if (!at_variable()) error("expected a variable after '*'");
        factor(t);
      }
    } else if (!have_coeff) {
      error("expected a coefficient or a variable");
    }
    if (negative) t.coeff = -t.coeff;
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses polynomial text. The dimension is the largest variable index used
/// (at least 1) unless `vars` is given, which must not be smaller.
inline Signomial parse_signomial(std::string_view text, std::optional<std::size_t> vars = std::nullopt) {
  auto raw = detail::PolyParser(text).parse();
  std::size_t n = 1;
  for (const auto& t : raw)
    for (const auto& [v, e] : t.powers) n = std::max(n, v);
  if (vars) {
    if (*vars < n) throw ParseError("polynomial uses x" + std::to_string(n) + " but --vars is " + std::to_string(*vars), 1, 1);
    n = *vars;
  }
  std::vector<Term> terms;
  for (const auto& t : raw) {
    Vec mu = zeros(n);
    for (const auto& [v, e] : t.powers) mu[v - 1] = e;
    terms.push_back({t.coeff, std::move(mu)});
  }
  return Signomial(n, std::move(terms));
}

inline std::string format_rational_factor(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1 && r.sign() >= 0) return to_string(r);
  return "(" + to_string(r) + ")";
}

/// Text form that parses back to the same signomial (with the same --vars).
inline std::string to_text(const Signomial& f) {
  if (f.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& t = f.terms()[k];
    Rational c = t.coefficient;
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    out += k == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (std::size_t i = 0; i < t.exponent.size(); ++i) {
      const Rational& e = t.exponent[i];
      if (e.is_zero()) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e != 1) mono += "^" + format_rational_factor(e);
    }
    std::string coeff = boost::multiprecision::denominator(c) == 1 ? to_string(c) : "(" + to_string(c) + ")";
    if (mono.empty()) out += coeff;
    else if (c == 1) out += mono;
    else out += coeff + "*" + mono;
  }
  return out;
}

}  // namespace descr
