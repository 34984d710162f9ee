#pragma once

// Exact convex hulls of finite rational point sets. The hull is built inside
// the affine hull of the points, so flat point sets (faces of a Newton
// polytope, restrictions) need no special treatment.

#include "lp.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace descr {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AffineHull {
  Vec base;
  std::vector<Vec> basis;               ///< reduced row echelon rows spanning the directions
  std::vector<std::size_t> pivots;      ///< pivot column of each basis row

  std::size_t dim() const { return basis.size(); }

  /// Coordinates of a point of the hull with respect to `basis`.
  Vec coordinates(const Vec& p) const {
    Vec t(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) t[k] = p[pivots[k]] - base[pivots[k]];
    return t;
  }

  bool contains(const Vec& p) const {
    Vec back = base;
    Vec t = coordinates(p);
    for (std::size_t k = 0; k < basis.size(); ++k) back = back + t[k] * basis[k];
    return back == p;
  }
};

inline AffineHull affine_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("affine_hull: no points");
  AffineHull h;
  h.base = points.front();
  std::vector<Vec> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - h.base);
  RowEchelon e = row_reduce(std::move(diffs), h.base.size());
  h.basis = std::move(e.rows);
  h.pivots = std::move(e.pivots);
  return h;
}

/// Outer form: the halfspace is {mu : normal . mu <= offset}.
struct Halfspace {
  Vec normal;
  Rational offset;

  bool operator==(const Halfspace&) const = default;
  bool operator<(const Halfspace& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

struct Facet {
  Halfspace halfspace;
  std::vector<std::size_t> incident;  ///< indices of points on the bounding hyperplane
};

struct Polytope {
  std::vector<Vec> points;
  AffineHull hull;
  std::vector<std::size_t> vertices;  ///< sorted point indices
  std::vector<Facet> facets;          ///< sorted by normal

  std::size_t dim() const { return hull.dim(); }
  std::size_t ambient() const { return points.empty() ? 0 : points.front().size(); }
};

namespace detail {

// Direction-space representative of an ambient functional: the orthogonal
// projection onto span(basis). Two functionals agree on the affine hull up to a
// constant iff their projections agree.
inline Vec project_to_directions(const AffineHull& h, const Vec& w) {
  const std::size_t d = h.dim();
  if (d == h.base.size()) return w;
  std::vector<Vec> gram(d, Vec(d));
  Vec rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(h.basis[i], h.basis[j]);
    rhs[i] = dot(h.basis[i], w);
  }
  auto lambda = solve_square(gram, rhs);
  if (!lambda) throw std::logic_error("project_to_directions: singular Gram matrix");
  Vec out = zeros(w.size());
  for (std::size_t i = 0; i < d; ++i) out = out + (*lambda)[i] * h.basis[i];
  return out;
}

// Lifts u . t <= c from hull coordinates to a canonical ambient halfspace.
inline Halfspace lift_halfspace(const AffineHull& h, const Vec& u, const Rational& c) {
  Vec w = zeros(h.base.size());
  for (std::size_t k = 0; k < u.size(); ++k) w[h.pivots[k]] = u[k];
  Vec proj = project_to_directions(h, w);
  // proj and w agree on differences of hull points
  Rational offset = c + dot(proj, h.base);
  // scale by the content of the normal only, so equal facets get equal normals
  Vec prim = primitive(proj);
  Rational scale;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    if (!proj[i].is_zero()) {
      scale = prim[i] / proj[i];
      break;
    }
  }
  return {prim, offset * scale};
}

struct Simplex {
  std::vector<std::size_t> verts;  // sorted point indices
  Vec u;
  Rational c;
};

// Hyperplane u . t = c through d points in R^d, oriented away from `inside`.
inline std::pair<Vec, Rational> plane_through(const std::vector<Vec>& t, const std::vector<std::size_t>& idx,
                                              const Vec& inside) {
  const std::size_t d = inside.size();
  std::vector<Vec> rows;
  for (auto i : idx) {
    Vec r = t[i];
    r.push_back(Rational(-1));
    rows.push_back(std::move(r));
  }
  auto ns = null_space(rows, d + 1);
  if (ns.size() != 1) throw std::logic_error("plane_through: degenerate simplex");
  Vec u(ns[0].begin(), ns[0].begin() + d);
  Rational c = ns[0][d];
  if (dot(u, inside) > c) {
    u = negated(u);
    c = -c;
  }
  return {u, c};
}

}  // namespace detail

/// Convex hull with vertices and the complete irredundant facet list.
/// Throws BudgetExceeded when the boundary triangulation exceeds `budget` simplices.
inline Polytope build_polytope(const std::vector<Vec>& points, std::size_t budget = 100000) {
  Polytope P;
  P.points = points;
  P.hull = affine_hull(points);
  const std::size_t d = P.hull.dim();
  const std::size_t N = points.size();

  std::vector<Vec> t(N);
  for (std::size_t i = 0; i < N; ++i) t[i] = P.hull.coordinates(points[i]);

  // first index of each distinct point; duplicates never count as vertices
  std::vector<bool> first_copy(N, true);
  {
    std::map<Vec, std::size_t> seen;
    for (std::size_t i = 0; i < N; ++i) {
      if (!seen.emplace(points[i], i).second) first_copy[i] = false;
    }
  }

  std::vector<std::pair<Vec, Rational>> planes;  // hull coordinates, outer form
  if (d == 0) {
    P.vertices = {0};
    return P;
  }
  if (d == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < N; ++i) {
      if (t[i][0] < t[lo][0]) lo = i;
      if (t[i][0] > t[hi][0]) hi = i;
    }
    planes.push_back({Vec{Rational(-1)}, -t[lo][0]});
    planes.push_back({Vec{Rational(1)}, t[hi][0]});
  } else {
    // initial simplex: greedily pick affinely independent points
    std::vector<std::size_t> init{0};
    std::vector<Vec> dirs;
    for (std::size_t i = 1; i < N && init.size() < d + 1; ++i) {
      auto trial = dirs;
      trial.push_back(t[i] - t[init[0]]);
      if (rank(trial, d) == trial.size()) {
        dirs = std::move(trial);
        init.push_back(i);
      }
    }
    Vec inside = zeros(d);
    for (auto i : init) inside = inside + t[i];
    inside = Rational(1, static_cast<long>(init.size())) * inside;

    std::vector<detail::Simplex> boundary;
    auto make = [&](std::vector<std::size_t> verts) {
      std::sort(verts.begin(), verts.end());
      auto [u, c] = detail::plane_through(t, verts, inside);
      return detail::Simplex{std::move(verts), std::move(u), std::move(c)};
    };
    for (std::size_t skip = 0; skip < init.size(); ++skip) {
      std::vector<std::size_t> verts;
      for (std::size_t k = 0; k < init.size(); ++k)
        if (k != skip) verts.push_back(init[k]);
      boundary.push_back(make(std::move(verts)));
    }

    std::vector<bool> used(N, false);
    for (auto i : init) used[i] = true;
    for (std::size_t p = 0; p < N; ++p) {
      if (used[p]) continue;
      std::vector<detail::Simplex> keep;
      std::map<std::vector<std::size_t>, int> ridge_count;
      bool any_visible = false;
      for (auto& s : boundary) {
        if (dot(s.u, t[p]) > s.c) {
          any_visible = true;
          for (std::size_t k = 0; k < s.verts.size(); ++k) {
            std::vector<std::size_t> ridge;
            for (std::size_t j = 0; j < s.verts.size(); ++j)
              if (j != k) ridge.push_back(s.verts[j]);
            ++ridge_count[ridge];
          }
        } else {
          keep.push_back(std::move(s));
        }
      }
      if (!any_visible) {
        boundary = std::move(keep);
        continue;
      }
      for (auto& [ridge, count] : ridge_count) {
        if (count != 1) continue;
        auto verts = ridge;
        verts.push_back(p);
        keep.push_back(make(std::move(verts)));
      }
      boundary = std::move(keep);
      if (boundary.size() > budget)
        throw BudgetExceeded("convex hull exceeded the facet budget of " + std::to_string(budget));
    }

    std::set<std::pair<Vec, Rational>> distinct;
    for (const auto& s : boundary) {
      Vec joint = s.u;
      joint.push_back(s.c);
      // scaling u and c jointly by a positive factor keeps the orientation
      Vec prim = primitive(joint);
      distinct.insert({Vec(prim.begin(), prim.begin() + d), prim[d]});
    }
    planes.assign(distinct.begin(), distinct.end());
  }

  // facets with incidence, then vertices from the rank of incident normals
  std::vector<std::vector<std::size_t>> incident_planes(N);
  for (std::size_t f = 0; f < planes.size(); ++f) {
    const auto& [u, c] = planes[f];
    Facet facet;
    facet.halfspace = detail::lift_halfspace(P.hull, u, c);
    for (std::size_t i = 0; i < N; ++i) {
      if (dot(u, t[i]) == c) {
        facet.incident.push_back(i);
        incident_planes[i].push_back(f);
      }
    }
    P.facets.push_back(std::move(facet));
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (!first_copy[i]) continue;
    std::vector<Vec> normals;
    for (auto f : incident_planes[i]) normals.push_back(planes[f].first);
    if (normals.size() >= d && rank(normals, d) == d) P.vertices.push_back(i);
  }
  std::sort(P.facets.begin(), P.facets.end(),
            [](const Facet& a, const Facet& b) { return a.halfspace < b.halfspace; });
  return P;
}

// ---------------------------------------------------------------------------
// Faces

/// Indices of the points maximizing v . mu.
inline std::vector<std::size_t> face_in_direction(const std::vector<Vec>& points, const Vec& v) {
  std::vector<std::size_t> out;
  Rational best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rational s = dot(v, points[i]);
    if (out.empty() || s > best) {
      out.assign(1, i);
      best = s;
    } else if (s == best) {
      out.push_back(i);
    }
  }
  return out;
}

inline std::vector<std::size_t> face_in_direction(const Polytope& P, const Vec& v) {
  return face_in_direction(P.points, v);
}

/// A functional w with w . p_i > w . q for every point q different from p_i,
/// or nullopt when p_i is not a vertex.
inline std::optional<Vec> exposing_vertex_functional(const std::vector<Vec>& points, std::size_t i) {
  const Vec& p = points.at(i);
  LinearSystem sys(p.size());
  for (const auto& q : points) {
    if (q == p) continue;
    sys.add_ge(p - q, 1);
  }
  auto r = feasible(sys);
  if (!r) return std::nullopt;
  return primitive(r.witness);
}

inline bool is_vertex(const Polytope& P, std::size_t i) {
  return exposing_vertex_functional(P.points, i).has_value();
}

inline bool verify_vertex_functional(const std::vector<Vec>& points, const Vec& p, const Vec& w) {
  if (w.size() != p.size()) return false;
  bool found = false;
  Rational wp = dot(w, p);
  for (const auto& q : points) {
    if (q == p) {
      found = true;
      continue;
    }
    if (dot(w, q) >= wp) return false;
  }
  return found;
}

/// True when q lies on the closed segment [a, b].
inline bool on_segment(const Vec& a, const Vec& b, const Vec& q) {
  Vec d = b - a;
  Vec e = q - a;
  std::optional<Rational> lambda;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].is_zero()) {
      if (!e[k].is_zero()) return false;
      continue;
    }
    Rational l = e[k] / d[k];
    if (lambda && *lambda != l) return false;
    lambda = l;
  }
  if (!lambda) return true;  // a == b == q
  return *lambda >= 0 && *lambda <= 1;
}

/// A functional exposing Conv(a, b) as an edge of Conv(points): w . a = w . b
/// and w . a > w . q for every point q off the segment. Points lying on the
/// segment itself do not obstruct the edge.
inline std::optional<Vec> exposing_edge_functional(const std::vector<Vec>& points, const Vec& a,
                                                   const Vec& b) {
  if (a == b) return std::nullopt;
  LinearSystem sys(a.size());
  sys.add_eq(a - b, 0);
  for (const auto& q : points) {
    if (on_segment(a, b, q)) continue;
    sys.add_ge(a - q, 1);
  }
  auto r = feasible(sys);
  if (!r) return std::nullopt;
  return primitive(r.witness);
}

inline bool verify_edge_functional(const std::vector<Vec>& points, const Vec& a, const Vec& b,
                                   const Vec& w) {
  if (a == b || w.size() != a.size()) return false;
  Rational wa = dot(w, a);
  if (dot(w, b) != wa) return false;
  bool has_a = false, has_b = false;
  for (const auto& q : points) {
    has_a = has_a || q == a;
    has_b = has_b || q == b;
    if (on_segment(a, b, q)) continue;
    if (dot(w, q) >= wa) return false;
  }
  return has_a && has_b;
}

inline bool is_edge(const Polytope& P, std::size_t i, std::size_t j) {
  if (i == j) return false;
  return exposing_edge_functional(P.points, P.points.at(i), P.points.at(j)).has_value();
}

struct FaceResult {
  std::vector<std::size_t> face;  ///< point indices
  bool proper = false;
  Vec normal;                     ///< exposes `face`; zero when not proper
};

/// Intersection of all facets containing the points `subset`.
inline FaceResult smallest_face_containing(const Polytope& P, const std::vector<std::size_t>& subset) {
  FaceResult r;
  r.normal = zeros(P.ambient());
  std::vector<bool> in_face(P.points.size(), true);
  for (const auto& f : P.facets) {
    std::vector<bool> on(P.points.size(), false);
    for (auto i : f.incident) on[i] = true;
    bool contains = std::all_of(subset.begin(), subset.end(), [&](std::size_t i) { return on[i]; });
    if (!contains) continue;
    r.proper = true;
    r.normal = r.normal + f.halfspace.normal;
    for (std::size_t i = 0; i < on.size(); ++i) in_face[i] = in_face[i] && on[i];
  }
  for (std::size_t i = 0; i < in_face.size(); ++i)
    if (in_face[i]) r.face.push_back(i);
  return r;
}

/// Facet normals v (one of each +-v pair, first nonzero coordinate positive)
/// for which v . mu takes exactly two values on the given points.
inline std::vector<Vec> parallel_face_pairs(const Polytope& P, const std::vector<std::size_t>& support) {
  std::set<Vec> out;
  for (const auto& f : P.facets) {
    std::set<Rational> values;
    for (auto i : support) {
      values.insert(dot(f.halfspace.normal, P.points[i]));
      if (values.size() > 2) break;
    }
    if (values.size() == 2) out.insert(sign_canonical(f.halfspace.normal));
  }
  return {out.begin(), out.end()};
}

inline std::vector<Vec> parallel_face_pairs(const Polytope& P) {
  std::vector<std::size_t> all(P.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return parallel_face_pairs(P, all);
}

}  // namespace descr
