#pragma once

// Exact rational feasibility for systems of linear (in)equalities over free
// unknowns. Phase I of the primal simplex method with Bland's rule; every
// witness is re-substituted exactly before it is returned.

#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace descr {

enum class Relation { GreaterEqual, Equal };

struct LinearRow {
  Vec coeffs;
  Rational rhs;
  Relation relation = Relation::GreaterEqual;
};

struct LinearSystem {
  std::size_t unknowns = 0;
  std::vector<LinearRow> rows;

  explicit LinearSystem(std::size_t m = 0) : unknowns(m) {}

  void add_ge(Vec coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), Relation::GreaterEqual); }
  void add_le(Vec coeffs, Rational rhs) { add(negated(coeffs), -rhs, Relation::GreaterEqual); }
  void add_eq(Vec coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), Relation::Equal); }

  void add(Vec coeffs, Rational rhs, Relation rel) {
    if (coeffs.size() != unknowns) throw std::invalid_argument("LinearSystem: row length mismatch");
    rows.push_back({std::move(coeffs), std::move(rhs), rel});
  }

  bool satisfied_by(const Vec& x) const {
    if (x.size() != unknowns) return false;
    for (const auto& r : rows) {
      Rational lhs = dot(r.coeffs, x);
      if (r.relation == Relation::Equal ? lhs != r.rhs : lhs < r.rhs) return false;
    }
    return true;
  }
};

struct FeasibilityResult {
  bool feasible = false;
  Vec witness;  ///< meaningful only when feasible

  explicit operator bool() const { return feasible; }
};

namespace detail {

// Dense tableau in equality form A z = b, z >= 0, b >= 0.
class PhaseOne {
 public:
  PhaseOne(std::vector<Vec> a, Vec b, std::vector<std::ptrdiff_t> basis, std::size_t first_artificial)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)), first_art_(first_artificial) {
    cols_ = a_.empty() ? first_art_ : a_.front().size();
    cost_.assign(cols_, Rational(0));
    for (std::size_t j = first_art_; j < cols_; ++j) cost_[j] = 1;
    // reduced costs relative to the starting basis
    reduced_ = cost_;
    objective_ = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!a_[i][j].is_zero()) reduced_[j] -= cb * a_[i][j];
      }
      objective_ += cb * b_[i];
    }
  }

  /// Runs to optimality; returns the minimal sum of artificials.
  Rational solve() {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (reduced_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return objective_;

      std::size_t leave = a_.size();
      Rational best;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter].sign() <= 0) continue;
        Rational ratio = b_[i] / a_[i][enter];
        if (leave == a_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      // Phase I is bounded below by zero, so an entering column always has a pivot row.
      if (leave == a_.size()) throw std::logic_error("phase one: unbounded direction");
      pivot(leave, enter);
    }
  }

  Vec values() const {
    Vec z(cols_, Rational(0));
    for (std::size_t i = 0; i < a_.size(); ++i) z[basis_[i]] = b_[i];
    return z;
  }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / a_[r][c];
    for (auto& x : a_[r]) {
      if (!x.is_zero()) x *= inv;
    }
    b_[r] *= inv;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == r || a_[i][c].is_zero()) continue;
      Rational f = a_[i][c];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!a_[r][j].is_zero()) a_[i][j] -= f * a_[r][j];
      }
      b_[i] -= f * b_[r];
    }
    if (!reduced_[c].is_zero()) {
      Rational f = reduced_[c];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!a_[r][j].is_zero()) reduced_[j] -= f * a_[r][j];
      }
      objective_ += f * b_[r];
    }
    basis_[r] = static_cast<std::ptrdiff_t>(c);
  }

  std::vector<Vec> a_;
  Vec b_;
  std::vector<std::ptrdiff_t> basis_;
  std::size_t first_art_;
  std::size_t cols_ = 0;
  Vec cost_;
  Vec reduced_;
  Rational objective_;
};

}  // namespace detail

/// Decides feasibility of `sys` exactly. Unknowns are free.
inline FeasibilityResult feasible(const LinearSystem& sys) {
  const std::size_t m = sys.unknowns;
  const std::size_t rows = sys.rows.size();
  if (rows == 0) return {true, zeros(m)};

  // Columns: x+ (m), x- (m), one surplus per inequality row, then artificials.
  std::size_t n_slack = 0;
  for (const auto& r : sys.rows) n_slack += r.relation == Relation::GreaterEqual;
  const std::size_t slack0 = 2 * m;
  const std::size_t art0 = slack0 + n_slack;

  std::vector<bool> needs_art(rows, false);
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = sys.rows[i];
    // a.x - s = b with b <= 0 becomes -a.x + s = -b >= 0, and s can start basic.
    bool slack_basic = r.relation == Relation::GreaterEqual && r.rhs.sign() <= 0;
    needs_art[i] = !slack_basic;
    n_art += needs_art[i];
  }
  const std::size_t cols = art0 + n_art;

  std::vector<Vec> a(rows, Vec(cols, Rational(0)));
  Vec b(rows);
  std::vector<std::ptrdiff_t> basis(rows);
  std::size_t s = 0, art = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& r = sys.rows[i];
    bool flip = r.rhs.sign() < 0 || !needs_art[i];
    Rational sign = flip ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < m; ++j) {
      if (r.coeffs[j].is_zero()) continue;
      a[i][j] = sign * r.coeffs[j];
      a[i][m + j] = -sign * r.coeffs[j];
    }
    if (r.relation == Relation::GreaterEqual) {
      a[i][slack0 + s] = -sign;
      if (!needs_art[i]) basis[i] = static_cast<std::ptrdiff_t>(slack0 + s);
      ++s;
    }
    b[i] = sign * r.rhs;
    if (needs_art[i]) {
      a[i][art0 + art] = 1;
      basis[i] = static_cast<std::ptrdiff_t>(art0 + art);
      ++art;
    }
  }

  detail::PhaseOne lp(std::move(a), std::move(b), std::move(basis), art0);
  if (!lp.solve().is_zero()) return {false, {}};

  Vec z = lp.values();
  Vec x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = z[j] - z[m + j];
  if (!sys.satisfied_by(x)) throw std::logic_error("feasible: witness failed exact verification");
  return {true, std::move(x)};
}

// ---------------------------------------------------------------------------
// Strict separation of a segment from a convex hull

struct SegmentSeparation {
  Vec w;
  Rational c;

  bool operator==(const SegmentSeparation&) const = default;
};

/// Checks w.b1 > c, w.b2 > c and w.alpha <= c for every alpha in s.
inline bool verify_segment_separation(const Vec& b1, const Vec& b2, const std::vector<Vec>& s,
                                      const SegmentSeparation& sep) {
  if (sep.w.size() != b1.size() || b2.size() != b1.size()) return false;
  if (dot(sep.w, b1) <= sep.c || dot(sep.w, b2) <= sep.c) return false;
  for (const auto& alpha : s) {
    if (dot(sep.w, alpha) > sep.c) return false;
  }
  return true;
}

/// Witness that Conv({b1, b2}) and Conv(s) are disjoint, or nullopt when they meet.
inline std::optional<SegmentSeparation> separate_segment_from_hull(const Vec& b1, const Vec& b2,
                                                                   const std::vector<Vec>& s) {
  const std::size_t n = b1.size();
  LinearSystem sys(n + 1);
  auto row = [&](const Vec& p, const Rational& sign_w, const Rational& sign_c) {
    Vec r(n + 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = sign_w * p[i];
    r[n] = sign_c;
    return r;
  };
  sys.add_ge(row(b1, 1, -1), 1);
  sys.add_ge(row(b2, 1, -1), 1);
  for (const auto& alpha : s) sys.add_ge(row(alpha, -1, 1), 0);
  auto res = feasible(sys);
  if (!res) return std::nullopt;
  SegmentSeparation sep{Vec(res.witness.begin(), res.witness.begin() + n), res.witness[n]};
  // joint primitive scaling keeps traces readable
  Vec joint = primitive(res.witness);
  sep.w.assign(joint.begin(), joint.begin() + n);
  sep.c = joint[n];
  return sep;
}

}  // namespace descr
