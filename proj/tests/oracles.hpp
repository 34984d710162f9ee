#pragma once

// Slow, independent reference implementations used to cross-check the library.

#include "descr/descr.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using namespace descr;  // vector operators

inline descr::Signomial fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::string text{std::istreambuf_iterator<char>(in), {}};
  return descr::parse_signomial(text);
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

// Fourier-Motzkin elimination on rows a.x >= b. Rows are scaled so the largest
// |coefficient| is 1 and deduplicated after every step.
inline bool fm_feasible(const descr::LinearSystem& sys) {
  using Row = std::pair<Vec, Rational>;
  std::set<Row> rows;
  auto normalize = [](Row r) {
    Rational m = 0;
    for (const auto& c : r.first) m = std::max(m, Rational(abs(c)));
    if (m != 0) {
      for (auto& c : r.first) c /= m;
      r.second /= m;
    }
    return r;
  };
  for (const auto& r : sys.rows) {
    rows.insert(normalize({r.coeffs, r.rhs}));
    if (r.relation == descr::Relation::Equal) rows.insert(normalize({descr::negated(r.coeffs), -r.rhs}));
  }
  for (std::size_t j = 0; j < sys.unknowns; ++j) {
    std::vector<Row> pos, neg;
    std::set<Row> next;
    for (const auto& r : rows) {
      int s = r.first[j].sign();
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.insert(r);
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational lp = p.first[j], lq = -q.first[j];
        Row c{lq * p.first + lp * q.first, lq * p.second + lp * q.second};
        c.first[j] = 0;
        next.insert(normalize(c));
      }
    rows = std::move(next);
  }
  for (const auto& r : rows)
    if (r.second > 0) return false;
  return true;
}

inline bool affinely_independent(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return true;
  std::vector<Vec> d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(pts[i] - pts[0]);
  return descr::rank(d, pts[0].size()) == d.size();
}

// Every hyperplane of the affine hull spanned by dim affinely independent
// points that leaves all points on one side. Normals live in the direction
// space of the hull and are made primitive, matching the library convention.
inline std::vector<descr::Halfspace> exhaustive_facets(const std::vector<Vec>& pts) {
  std::size_t n = pts[0].size();
  std::vector<Vec> diffs;
  for (const auto& p : pts) diffs.push_back(p - pts[0]);
  auto ech = descr::row_reduce(diffs, n);
  std::size_t d = ech.rank();
  std::set<descr::Halfspace> out;
  if (d == 0) return {};
  std::vector<Vec> basis = ech.rows;
  std::vector<std::size_t> pick;
  auto visit = [&](const std::vector<std::size_t>& idx) {
    std::vector<Vec> sub;
    for (auto i : idx) sub.push_back(pts[i]);
    if (!affinely_independent(sub)) return;
    // w = sum c_k basis_k with w . (sub_i - sub_0) = 0
    std::vector<Vec> cons;
    for (std::size_t i = 1; i < sub.size(); ++i) {
      Vec row(d);
      for (std::size_t k = 0; k < d; ++k) row[k] = descr::dot(basis[k], sub[i] - sub[0]);
      cons.push_back(row);
    }
    auto ns = descr::null_space(cons, d);
    if (ns.size() != 1) return;
    Vec w = descr::zeros(n);
    for (std::size_t k = 0; k < d; ++k) w = w + ns[0][k] * basis[k];
    Rational a = descr::dot(w, sub[0]);
    bool le = true, ge = true;
    for (const auto& p : pts) {
      Rational s = descr::dot(w, p);
      if (s > a) le = false;
      if (s < a) ge = false;
    }
    if (!le && !ge) return;
    if (!le) w = descr::negated(w);
    w = descr::primitive(w);
    out.insert({w, descr::dot(w, sub[0])});
  };
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == d) {
      visit(pick);
      return;
    }
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

// Vertex test from a facet list: the normals of the facets through p span
// the direction space of the hull.
inline bool vertex_by_facets(const std::vector<Vec>& pts, const std::vector<descr::Halfspace>& facets, std::size_t i,
                             std::size_t dim) {
  if (dim == 0) return true;
  std::vector<Vec> normals;
  for (const auto& h : facets)
    if (descr::dot(h.normal, pts[i]) == h.offset) normals.push_back(h.normal);
  return !normals.empty() && descr::rank(normals, pts[i].size()) == dim;
}

// Breadth-first flood fill of a boolean grid with axis adjacency; axis 0 fastest.
inline std::size_t flood_components(const std::vector<std::int8_t>& mask, std::size_t res, std::size_t n) {
  std::vector<char> seen(mask.size(), 0);
  std::size_t count = 0;
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t a = 1; a < n; ++a) stride[a] = stride[a - 1] * res;
  for (std::size_t s = 0; s < mask.size(); ++s) {
    if (!mask[s] || seen[s]) continue;
    ++count;
    std::deque<std::size_t> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      std::size_t c = q.front();
      q.pop_front();
      for (std::size_t a = 0; a < n; ++a) {
        std::size_t coord = (c / stride[a]) % res;
        if (coord > 0 && mask[c - stride[a]] && !seen[c - stride[a]]) {
          seen[c - stride[a]] = 1;
          q.push_back(c - stride[a]);
        }
        if (coord + 1 < res && mask[c + stride[a]] && !seen[c + stride[a]]) {
          seen[c + stride[a]] = 1;
          q.push_back(c + stride[a]);
        }
      }
    }
  }
  return count;
}

inline Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> den(1, max_den);
  int q = den(rng);
  std::uniform_int_distribution<int> num(lo * q, hi * q);
  return Rational(num(rng), q);
}

inline descr::Signomial random_signomial(std::mt19937& rng, std::size_t n, std::size_t max_terms) {
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<int> expo(0, 5);
  std::size_t cap = 1;
  for (std::size_t i = 0; i < n; ++i) cap *= 6;
  std::size_t k = std::min(count(rng), cap);
  std::set<Vec> seen;
  std::vector<descr::Term> terms;
  while (terms.size() < k) {
    Vec mu(n);
    for (auto& m : mu) m = expo(rng);
    if (!seen.insert(mu).second) continue;
    Rational c = 0;
    while (c == 0) c = random_rational(rng, -10, 10, 4);
    terms.push_back({c, mu});
  }
  return descr::Signomial(n, terms);
}

inline std::vector<Vec> random_points(std::mt19937& rng, std::size_t n, std::size_t max_points, int range) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<int> coord(0, range);
  std::set<Vec> pts;
  std::size_t cap = 1;
  for (std::size_t i = 0; i < n; ++i) cap *= static_cast<std::size_t>(range + 1);
  std::size_t k = std::min(count(rng), cap);
  while (pts.size() < k) {
    Vec p(n);
    for (auto& c : p) c = coord(rng);
    pts.insert(p);
  }
  return {pts.begin(), pts.end()};
}

inline descr::LinearSystem random_system(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> unknowns(1, 4), rows(1, 8);
  std::uniform_int_distribution<int> coef(-3, 3), rel(0, 5);
  descr::LinearSystem sys(unknowns(rng));
  std::size_t m = rows(rng);
  for (std::size_t r = 0; r < m; ++r) {
    Vec a(sys.unknowns);
    for (auto& c : a) c = coef(rng);
    Rational b = coef(rng);
    sys.add(a, b, rel(rng) == 0 ? descr::Relation::Equal : descr::Relation::GreaterEqual);
  }
  return sys;
}

inline Vec V(std::initializer_list<int> xs) {
  Vec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

}  // namespace oracle
