#pragma once

// Sparse signomials with rational exponents, signed supports, restriction,
// floating-point evaluation in log coordinates and univariate sign sequences.

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace descr {

struct Term {
  Rational coefficient;
  Vec exponent;

  bool operator==(const Term&) const = default;
};

/// Terms are kept sorted by exponent with pairwise distinct exponents and
/// nonzero coefficients, so two equal signomials compare equal structurally.
class Signomial {
 public:
  Signomial() = default;

  explicit Signomial(std::size_t dimension, std::vector<Term> terms = {}) : n_(dimension) {
    if (n_ == 0) throw std::invalid_argument("signomial dimension must be positive");
    std::map<Vec, Rational> merged;
    for (auto& t : terms) {
      if (t.exponent.size() != n_)
        throw std::invalid_argument("exponent vector has wrong length");
      merged[t.exponent] += t.coefficient;
    }
    for (auto& [mu, c] : merged) {
      if (!c.is_zero()) terms_.push_back({c, mu});
    }
  }

  std::size_t dimension() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  std::vector<Vec> support() const {
    std::vector<Vec> s;
    s.reserve(terms_.size());
    for (const auto& t : terms_) s.push_back(t.exponent);
    return s;
  }

  /// Coefficient of x^mu, zero when mu is not in the support.
  Rational coefficient(const Vec& mu) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mu,
                               [](const Term& t, const Vec& m) { return t.exponent < m; });
    if (it != terms_.end() && it->exponent == mu) return it->coefficient;
    return Rational(0);
  }

  Signomial negated() const {
    Signomial g = *this;
    for (auto& t : g.terms_) t.coefficient = -t.coefficient;
    return g;
  }

  bool operator==(const Signomial&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

struct SignedSupport {
  std::vector<Vec> positives;
  std::vector<Vec> negatives;
};

inline SignedSupport signed_support(const Signomial& f) {
  SignedSupport s;
  for (const auto& t : f.terms()) {
    (t.coefficient.sign() > 0 ? s.positives : s.negatives).push_back(t.exponent);
  }
  return s;
}

/// f restricted to the exponents in `keep`.
inline Signomial restrict_to(const Signomial& f, std::vector<Vec> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    if (std::binary_search(keep.begin(), keep.end(), t.exponent)) out.push_back(t);
  }
  return Signomial(f.dimension(), std::move(out));
}

/// f restricted to the terms at the given positions of f.terms().
inline Signomial restrict_indices(const Signomial& f, const std::vector<std::size_t>& idx) {
  std::vector<Term> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(f.terms().at(i));
  return Signomial(f.dimension(), std::move(out));
}

// ---------------------------------------------------------------------------
// Floating-point evaluation

/// Relative tolerance used by every floating sign decision unless overridden.
inline constexpr double kDefaultRelTol = 1e-12;

struct LogValue {
  double value = 0;      ///< sum of c * exp(mu . y)
  double magnitude = 0;  ///< sum of |c * exp(mu . y)|, the scale for tolerances
};

inline LogValue evaluate_log_detail(const Signomial& f, const std::vector<double>& y) {
  if (y.size() != f.dimension()) throw std::invalid_argument("evaluate_log: dimension mismatch");
  LogValue r;
  for (const auto& t : f.terms()) {
    double e = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!t.exponent[i].is_zero()) e += to_double(t.exponent[i]) * y[i];
    }
    double term = to_double(t.coefficient) * std::exp(e);
    if (!std::isfinite(term)) throw std::range_error("evaluate_log: overflow");
    r.value += term;
    r.magnitude += std::abs(term);
  }
  if (!std::isfinite(r.value) || !std::isfinite(r.magnitude))
    throw std::range_error("evaluate_log: overflow");
  return r;
}

/// f(exp(y)) in double precision. Throws std::range_error on overflow.
inline double evaluate_log(const Signomial& f, const std::vector<double>& y) {
  return evaluate_log_detail(f, y).value;
}

/// Sign of f(exp(y)); values within rel_tol * sum|terms| of zero count as 0.
inline int sign_log(const Signomial& f, const std::vector<double>& y,
                    double rel_tol = kDefaultRelTol) {
  LogValue r = evaluate_log_detail(f, y);
  double tau = rel_tol * r.magnitude;
  if (r.value < -tau) return -1;
  if (r.value > tau) return 1;
  return 0;
}

/// Long double re-evaluation, used to double-check sampled witnesses.
inline long double evaluate_log_long(const Signomial& f, const std::vector<double>& y) {
  long double s = 0;
  for (const auto& t : f.terms()) {
    long double e = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!t.exponent[i].is_zero()) e += t.exponent[i].convert_to<long double>() * y[i];
    }
    s += t.coefficient.convert_to<long double>() * std::exp(e);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Univariate sign sequences

struct SignEntry {
  Rational exponent;
  int sign = 0;  ///< +1 or -1

  bool operator==(const SignEntry&) const = default;
};

using SignSequence = std::vector<SignEntry>;

inline std::size_t sign_variations(const SignSequence& seq) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].sign != seq[i - 1].sign) ++count;
  }
  return count;
}

/// Coefficient sequence of t -> f(t^v * x): terms grouped by v . mu, groups
/// summed at x, near-zero groups dropped, ordered by the exponent of t.
inline SignSequence induced_sequence(const Signomial& f, const Vec& v, const std::vector<double>& x,
                                     double rel_tol = kDefaultRelTol) {
  if (v.size() != f.dimension() || x.size() != f.dimension())
    throw std::invalid_argument("induced_sequence: dimension mismatch");
  std::vector<double> logx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) throw std::invalid_argument("induced_sequence: x must be positive");
    logx[i] = std::log(x[i]);
  }
  std::map<Rational, double> groups;
  double magnitude = 0;
  for (const auto& t : f.terms()) {
    double e = 0;
    for (std::size_t i = 0; i < x.size(); ++i) e += to_double(t.exponent[i]) * logx[i];
    double term = to_double(t.coefficient) * std::exp(e);
    groups[dot(v, t.exponent)] += term;
    magnitude += std::abs(term);
  }
  double tau = rel_tol * magnitude;
  SignSequence seq;
  for (const auto& [k, s] : groups) {
    if (std::abs(s) <= tau) continue;
    seq.push_back({k, s > 0 ? 1 : -1});
  }
  return seq;
}

}  // namespace descr
