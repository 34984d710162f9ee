#pragma once

// Exact rational scalars and vectors plus the small amount of dense linear
// algebra (row reduction, null spaces) the polyhedral code needs.

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace descr {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// A dense rational vector. Exponent vectors, normals and LP witnesses all use it.
using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline Vec negated(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline bool is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

inline Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec unit(std::size_t n, std::size_t i) {
  Vec e = zeros(n);
  e.at(i) = 1;
  return e;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p", "p/q", or a decimal literal such as "-9.5" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(b, e - b + 1);

  auto digits_only = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };

  // GMP reads a leading 0 as an octal prefix
  auto integer = [](std::string_view d) {
    auto nz = d.find_first_not_of('0');
    return nz == std::string_view::npos ? Integer(0) : Integer(std::string(d.substr(nz)));
  };

  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den))
      throw std::invalid_argument("malformed rational literal: " + s);
    Integer d = integer(den);
    if (d.is_zero()) throw std::invalid_argument("zero denominator: " + s);
    value = Rational(integer(num), d);
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    auto whole = body.substr(0, dot_pos);
    auto frac = body.substr(dot_pos + 1);
    if ((!whole.empty() && !digits_only(whole)) || (!frac.empty() && !digits_only(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("malformed decimal literal: " + s);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer num = integer(std::string(whole) + std::string(frac));
    value = Rational(num, scale);
  } else {
    if (!digits_only(body)) throw std::invalid_argument("malformed rational literal: " + s);
    value = Rational(integer(body));
  }
  return negative ? Rational(-value) : value;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::vector<double> to_doubles(const Vec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

/// Positive multiple of `v` with coprime integer entries. The zero vector is returned unchanged.
inline Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  Integer lcm_den = 1;
  for (const auto& x : v) {
    Integer d = boost::multiprecision::denominator(x);
    lcm_den = boost::multiprecision::lcm(lcm_den, d);
  }
  std::vector<Integer> ints(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational scaled = v[i] * Rational(lcm_den);
    ints[i] = boost::multiprecision::numerator(scaled);
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(ints[i]));
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(Integer(ints[i] / g));
  return out;
}

/// `v` or `-v`, whichever has its first nonzero coordinate positive.
inline Vec sign_canonical(const Vec& v) {
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    return x.sign() > 0 ? v : negated(v);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Row reduction

/// Reduced row echelon form of a list of equal-length rows.
struct RowEchelon {
  std::vector<Vec> rows;              ///< nonzero rows, each with a leading 1
  std::vector<std::size_t> pivots;    ///< pivot column of each row
  std::size_t columns = 0;

  std::size_t rank() const { return rows.size(); }
};

inline RowEchelon row_reduce(std::vector<Vec> m, std::size_t columns) {
  RowEchelon out;
  out.columns = columns;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < columns; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const std::vector<Vec>& rows, std::size_t columns) {
  return row_reduce(rows, columns).rank();
}

/// Basis of {x : row . x = 0 for every row}.
inline std::vector<Vec> null_space(const std::vector<Vec>& rows, std::size_t columns) {
  RowEchelon e = row_reduce(rows, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    Vec x = zeros(columns);
    x[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Solves the square system A x = b exactly; nullopt when A is singular.
inline std::optional<Vec> solve_square(const std::vector<Vec>& a, const Vec& b) {
  const std::size_t n = a.size();
  if (n == 0) return Vec{};
  std::vector<Vec> aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  RowEchelon e = row_reduce(std::move(aug), n + 1);
  if (e.rank() != n || e.pivots.back() != n - 1) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
  return x;
}

}  // namespace descr
