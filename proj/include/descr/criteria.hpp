#pragma once

// Single-shot connectivity criteria for the negative set of a signomial:
// coefficient counts, separating hyperplanes, enclosing pairs and the box
// criterion, simplex vertex cones, and the closure property.

#include "lp.hpp"
#include "polytope.hpp"
#include "signomial.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace descr {

struct SeparatingWitness {
  Vec normal;
  Rational offset;
  bool strict = false;
  std::optional<Vec> strict_point;

  bool operator==(const SeparatingWitness&) const = default;
};

struct EnclosingWitness {
  Vec normal;
  Rational upper;  // a
  Rational lower;  // b
  bool strict = false;

  bool operator==(const EnclosingWitness&) const = default;
};

enum class SimplexMode { NegativesInside, PositivesInside };

struct SimplexWitness {
  std::vector<Vec> vertices;
  std::vector<Halfspace> h_rep;  // optional on input; v_j . mu <= a_j, facet j omits vertex j
  SimplexMode mode = SimplexMode::NegativesInside;
  std::optional<Vec> interior_negative;

  bool operator==(const SimplexWitness&) const = default;
};

struct BoxWitness {
  EnclosingWitness pair;
  Vec beta1;  // negative on the upper side
  Vec beta2;  // negative on the lower side
  SegmentSeparation separation;

  bool operator==(const BoxWitness&) const = default;
};

enum class CriterionKind {
  NoNegativeCoeff,
  NoPositiveCoeff,
  OneNegativeCoeff,
  OnePositiveCoeff,
  StrictSeparating,
  SimplexNegIn,
  SimplexPosIn,
  Box,
};

inline const char* to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::NoNegativeCoeff: return "NoNegativeCoeff";
    case CriterionKind::NoPositiveCoeff: return "NoPositiveCoeff";
    case CriterionKind::OneNegativeCoeff: return "OneNegativeCoeff";
    case CriterionKind::OnePositiveCoeff: return "OnePositiveCoeff";
    case CriterionKind::StrictSeparating: return "StrictSeparating";
    case CriterionKind::SimplexNegIn: return "SimplexNegIn";
    case CriterionKind::SimplexPosIn: return "SimplexPosIn";
    case CriterionKind::Box: return "Box";
  }
  return "?";
}

/// The single exponent for the coefficient-count kinds; nothing for the
/// sign-only kinds.
using CriterionPayload = std::variant<std::monostate, Vec, SeparatingWitness, SimplexWitness, BoxWitness>;

struct CriterionCertificate {
  CriterionKind kind = CriterionKind::NoNegativeCoeff;
  CriterionPayload witness;
  bool nonempty = false;  // whether the negative set is also known to be nonempty

  bool operator==(const CriterionCertificate&) const = default;
};

/// Whether a criterion kind also proves the negative set is nonempty.
inline bool guarantees_nonempty(CriterionKind k) {
  switch (k) {
    case CriterionKind::NoPositiveCoeff:
    case CriterionKind::OnePositiveCoeff:
    case CriterionKind::StrictSeparating:
    case CriterionKind::SimplexPosIn:
    case CriterionKind::Box:
      return true;
    default:
      return false;
  }
}

inline std::size_t newton_dimension(const Signomial& f) {
  if (f.empty()) return 0;
  return affine_hull(f.support()).dim();
}

// ---------------------------------------------------------------------------
// Separating hyperplanes

inline bool verify_separating_hyperplane(const Signomial& f, const Vec& v, const Rational& a, bool strict) {
  if (v.size() != f.dimension() || is_zero(v)) return false;
  bool strictly_above = false;
  for (const auto& t : f.terms()) {
    Rational s = dot(v, t.exponent);
    if (t.coefficient.sign() < 0) {
      if (s < a) return false;
      strictly_above = strictly_above || s > a;
    } else if (s > a) {
      return false;
    }
  }
  return !strict || strictly_above;
}

/// The LP for one strictness candidate beta0 in sigma_-, unknowns (v, a).
inline LinearSystem separating_system(const Signomial& f, const Vec& beta0) {
  const std::size_t n = f.dimension();
  LinearSystem sys(n + 1);
  auto row = [&](const Vec& mu, int sv) {
    Vec r(n + 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = sv * mu[i];
    r[n] = -sv;
    return r;
  };
  for (const auto& t : f.terms()) {
    if (t.coefficient.sign() < 0) sys.add_ge(row(t.exponent, 1), 0);   // v.beta - a >= 0
    else sys.add_ge(row(t.exponent, -1), 0);                            // a - v.alpha >= 0
  }
  sys.add_ge(row(beta0, 1), 1);
  return sys;
}

inline std::optional<SeparatingWitness> find_strict_separating_hyperplane(const Signomial& f) {
  auto ss = signed_support(f);
  if (ss.negatives.empty() || ss.positives.empty()) return std::nullopt;
  const std::size_t n = f.dimension();
  for (const auto& beta0 : ss.negatives) {
    auto r = feasible(separating_system(f, beta0));
    if (!r) continue;
    Vec joint = primitive(r.witness);
    SeparatingWitness w{Vec(joint.begin(), joint.begin() + n), joint[n], true, beta0};
    if (!verify_separating_hyperplane(f, w.normal, w.offset, true))
      throw std::logic_error("separating witness failed verification");
    return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enclosing pairs

inline bool verify_enclosing_pair(const Signomial& f, const Vec& v, const Rational& a, const Rational& b,
                                  bool strict) {
  if (v.size() != f.dimension() || is_zero(v) || a < b) return false;
  bool above = false, below = false;
  for (const auto& t : f.terms()) {
    Rational s = dot(v, t.exponent);
    if (t.coefficient.sign() > 0) {
      if (s > a || s < b) return false;
    } else {
      if (s > b && s < a) return false;
      above = above || s > a;
      below = below || s < b;
    }
  }
  return !strict || (above && below);
}

enum class EnclosingMode {
  Strict,  // some upper negative strictly above a, some lower negative strictly below b
  Split,   // upper negatives strictly above b, lower negatives strictly below a
};

/// Enclosing pair with the negatives in `upper` on the upper side and those in
/// `lower` on the lower side. Unknowns (v, a, b).
inline std::optional<EnclosingWitness> enclosing_for_assignment(const Signomial& f, const std::vector<Vec>& upper,
                                                                const std::vector<Vec>& lower, EnclosingMode mode) {
  const std::size_t n = f.dimension();
  LinearSystem sys(n + 2);
  auto row = [&](const Vec& mu, int sv, int sa, int sb) {
    Vec r(n + 2);
    for (std::size_t i = 0; i < n; ++i) r[i] = sv * mu[i];
    r[n] = sa;
    r[n + 1] = sb;
    return r;
  };
  Vec sum_up = zeros(n + 2), sum_low = zeros(n + 2);
  for (const auto& beta : upper) {
    if (mode == EnclosingMode::Strict) {
      sys.add_ge(row(beta, 1, -1, 0), 0);
      sum_up = sum_up + row(beta, 1, -1, 0);
    } else {
      sys.add_ge(row(beta, 1, -1, 0), 0);
      sys.add_ge(row(beta, 1, 0, -1), 1);
    }
  }
  for (const auto& beta : lower) {
    if (mode == EnclosingMode::Strict) {
      sys.add_ge(row(beta, -1, 0, 1), 0);
      sum_low = sum_low + row(beta, -1, 0, 1);
    } else {
      sys.add_ge(row(beta, -1, 0, 1), 0);
      sys.add_ge(row(beta, -1, 1, 0), 1);
    }
  }
  for (const auto& t : f.terms()) {
    if (t.coefficient.sign() <= 0) continue;
    sys.add_ge(row(t.exponent, -1, 1, 0), 0);
    sys.add_ge(row(t.exponent, 1, 0, -1), 0);
  }
  sys.add_ge(row(zeros(n), 0, 1, -1), 0);
  if (mode == EnclosingMode::Strict) {
    sys.add_ge(sum_up, 1);
    sys.add_ge(sum_low, 1);
  }
  auto r = feasible(sys);
  if (!r) return std::nullopt;
  Vec joint = primitive(r.witness);
  EnclosingWitness w{Vec(joint.begin(), joint.begin() + n), joint[n], joint[n + 1],
                     mode == EnclosingMode::Strict};
  if (is_zero(w.normal)) return std::nullopt;
  return w;
}

/// Calls `visit(upper, lower)` for every split of the negatives into two
/// nonempty sides with the first negative on the upper side; stops when
/// `visit` returns true. Throws BudgetExceeded above `max_negatives`.
template <class Visit>
bool for_each_side_assignment(const std::vector<Vec>& negatives, std::size_t max_negatives, Visit&& visit) {
  const std::size_t k = negatives.size();
  if (k < 2) return false;
  if (k > max_negatives)
    throw BudgetExceeded("side-assignment search refused: " + std::to_string(k) +
                         " negative exponents exceed the limit of " + std::to_string(max_negatives));
  const unsigned long long full = (1ULL << (k - 1)) - 1;
  // bit i set: negatives[i + 1] goes to the lower side
  for (unsigned long long mask = 1; mask <= full; ++mask) {
    std::vector<Vec> upper{negatives[0]}, lower;
    for (std::size_t i = 0; i + 1 < k; ++i) ((mask >> i) & 1ULL ? lower : upper).push_back(negatives[i + 1]);
    if (visit(upper, lower)) return true;
  }
  return false;
}

inline std::optional<EnclosingWitness> find_strict_enclosing_pair(const Signomial& f, std::size_t max_negatives = 12) {
  auto ss = signed_support(f);
  if (ss.negatives.size() < 2 || ss.positives.empty()) return std::nullopt;
  std::optional<EnclosingWitness> found;
  for_each_side_assignment(ss.negatives, max_negatives, [&](const auto& up, const auto& low) {
    found = enclosing_for_assignment(f, up, low, EnclosingMode::Strict);
    return found.has_value();
  });
  return found;
}

/// Box criterion: a strict enclosing pair plus negatives beta1 above and beta2
/// below whose segment misses Conv(sigma_+).
inline std::optional<CriterionCertificate> check_box_criterion(const Signomial& f, std::size_t max_negatives = 12) {
  auto ss = signed_support(f);
  if (ss.negatives.size() < 2 || ss.positives.empty()) return std::nullopt;
  std::optional<CriterionCertificate> cert;
  for_each_side_assignment(ss.negatives, max_negatives, [&](const auto& up, const auto& low) {
    auto pair = enclosing_for_assignment(f, up, low, EnclosingMode::Strict);
    if (!pair) return false;
    for (const auto& b1 : ss.negatives) {
      if (dot(pair->normal, b1) < pair->upper) continue;
      for (const auto& b2 : ss.negatives) {
        if (dot(pair->normal, b2) > pair->lower) continue;
        auto sep = separate_segment_from_hull(b1, b2, ss.positives);
        if (!sep) continue;
        cert = CriterionCertificate{CriterionKind::Box, BoxWitness{*pair, b1, b2, *sep}, true};
        return true;
      }
    }
    return false;
  });
  return cert;
}

inline bool verify_box_witness(const Signomial& f, const BoxWitness& w) {
  auto ss = signed_support(f);
  auto is_neg = [&](const Vec& b) { return std::find(ss.negatives.begin(), ss.negatives.end(), b) != ss.negatives.end(); };
  if (!verify_enclosing_pair(f, w.pair.normal, w.pair.upper, w.pair.lower, true)) return false;
  if (!is_neg(w.beta1) || !is_neg(w.beta2)) return false;
  if (dot(w.pair.normal, w.beta1) < w.pair.upper || dot(w.pair.normal, w.beta2) > w.pair.lower) return false;
  return verify_segment_separation(w.beta1, w.beta2, ss.positives, w.separation);
}

// ---------------------------------------------------------------------------
// Simplex vertex cones

struct DegenerateSimplex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Outer halfspaces of an n-simplex; entry j is the facet omitting vertex j.
inline std::vector<Halfspace> simplex_h_rep(const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw DegenerateSimplex("simplex has no vertices");
  const std::size_t n = vertices.front().size();
  if (vertices.size() != n + 1) throw DegenerateSimplex("simplex needs n+1 vertices");
  if (affine_hull(vertices).dim() != n) throw DegenerateSimplex("simplex vertices are affinely dependent");
  std::vector<Halfspace> out;
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<Vec> rows;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == j) continue;
      Vec r = vertices[k];
      r.push_back(Rational(-1));
      rows.push_back(std::move(r));
    }
    Vec h = null_space(rows, n + 1).at(0);
    Vec v(h.begin(), h.begin() + n);
    Rational a = h[n];
    if (dot(v, vertices[j]) > a) {
      v = negated(v);
      a = -a;
    }
    Vec joint = v;
    joint.push_back(a);
    joint = primitive(joint);
    out.push_back({Vec(joint.begin(), joint.begin() + n), joint[n]});
  }
  return out;
}

inline bool in_simplex(const std::vector<Halfspace>& h, const Vec& mu) {
  return std::all_of(h.begin(), h.end(), [&](const Halfspace& s) { return dot(s.normal, mu) <= s.offset; });
}

/// Membership in the negative vertex cone at vertex k: v_j . mu >= a_j for all j != k.
inline bool in_vertex_cone(const std::vector<Halfspace>& h, std::size_t k, const Vec& mu, bool interior) {
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (j == k) continue;
    Rational s = dot(h[j].normal, mu);
    if (interior ? s <= h[j].offset : s < h[j].offset) return false;
  }
  return true;
}

inline bool in_vertex_cones(const std::vector<Halfspace>& h, const Vec& mu, bool interior) {
  for (std::size_t k = 0; k < h.size(); ++k)
    if (in_vertex_cone(h, k, mu, interior)) return true;
  return false;
}

namespace detail {
inline bool same_halfspace_up_to_scale(const Halfspace& x, const Halfspace& y) {
  if (x.normal.size() != y.normal.size()) return false;
  Vec jx = x.normal, jy = y.normal;
  jx.push_back(x.offset);
  jy.push_back(y.offset);
  if (is_zero(jx) || is_zero(jy)) return false;
  return primitive(jx) == primitive(jy);
}
}  // namespace detail

/// Exact check of a simplex witness against f. The H-representation is derived
/// from the vertices; a supplied one must agree with it up to positive scaling.
/// Throws DegenerateSimplex for affinely dependent vertices.
inline bool verify_simplex_witness(const Signomial& f, const SimplexWitness& w) {
  const std::size_t n = f.dimension();
  if (w.vertices.size() != n + 1) return false;
  for (const auto& p : w.vertices)
    if (p.size() != n) return false;
  auto h = simplex_h_rep(w.vertices);
  if (!w.h_rep.empty()) {
    if (w.h_rep.size() != h.size()) return false;
    std::vector<bool> matched(h.size(), false);
    for (const auto& given : w.h_rep) {
      bool ok = false;
      for (std::size_t j = 0; j < h.size() && !ok; ++j) {
        if (!matched[j] && detail::same_halfspace_up_to_scale(given, h[j])) matched[j] = ok = true;
      }
      if (!ok) return false;
    }
  }
  auto ss = signed_support(f);
  if (w.mode == SimplexMode::NegativesInside) {
    for (const auto& b : ss.negatives)
      if (!in_simplex(h, b)) return false;
    for (const auto& a : ss.positives)
      if (!in_vertex_cones(h, a, false)) return false;
    return true;
  }
  if (n < 2 || newton_dimension(f) != n) return false;
  for (const auto& a : ss.positives)
    if (!in_simplex(h, a)) return false;
  for (const auto& b : ss.negatives)
    if (!in_vertex_cones(h, b, false)) return false;
  if (w.interior_negative) {
    const Vec& b = *w.interior_negative;
    if (std::find(ss.negatives.begin(), ss.negatives.end(), b) == ss.negatives.end()) return false;
    return in_vertex_cones(h, b, true);
  }
  return std::any_of(ss.negatives.begin(), ss.negatives.end(),
                     [&](const Vec& b) { return in_vertex_cones(h, b, true); });
}

/// The witness with its H-representation and (for PositivesInside) an interior
/// negative filled in, or nullopt when it does not verify.
inline std::optional<SimplexWitness> complete_simplex_witness(const Signomial& f, SimplexWitness w) {
  try {
    if (!verify_simplex_witness(f, w)) return std::nullopt;
  } catch (const DegenerateSimplex&) {
    return std::nullopt;
  }
  w.h_rep = simplex_h_rep(w.vertices);
  if (w.mode == SimplexMode::PositivesInside && !w.interior_negative) {
    for (const auto& t : f.terms()) {
      if (t.coefficient.sign() < 0 && in_vertex_cones(w.h_rep, t.exponent, true)) {
        w.interior_negative = t.exponent;
        break;
      }
    }
  }
  return w;
}

/// Tries simplices spanned by support points, in lexicographic order of index
/// tuples, up to `max_candidates` subsets.
inline std::optional<SimplexWitness> search_simplex_witness(const Signomial& f, std::size_t max_candidates = 20000) {
  const std::size_t n = f.dimension();
  const auto support = f.support();
  if (support.size() < n + 1) return std::nullopt;
  std::vector<std::size_t> idx(n + 1);
  for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
  std::size_t tried = 0;
  for (;;) {
    if (++tried > max_candidates) return std::nullopt;
    std::vector<Vec> verts;
    for (auto i : idx) verts.push_back(support[i]);
    if (affine_hull(verts).dim() == n) {
      for (auto mode : {SimplexMode::NegativesInside, SimplexMode::PositivesInside}) {
        if (auto w = complete_simplex_witness(f, {verts, {}, mode, std::nullopt})) return w;
      }
    }
    // next combination
    std::size_t i = n + 1;
    while (i > 0 && idx[i - 1] == support.size() - (n + 1) + (i - 1)) --i;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
    for (std::size_t j = i; j <= n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------
// Nonemptiness from a negative vertex

struct VertexWitness {
  Vec point;
  Vec functional;  // exposes `point` as a vertex of N(f)

  bool operator==(const VertexWitness&) const = default;
};

/// A negative exponent that is a vertex of N(f). Along the exposing direction
/// its monomial dominates, so f takes negative values.
inline std::optional<VertexWitness> has_negative_vertex(const Signomial& f) {
  const auto support = f.support();
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (f.terms()[i].coefficient.sign() >= 0) continue;
    if (auto w = exposing_vertex_functional(support, i)) return VertexWitness{support[i], *w};
  }
  return std::nullopt;
}

inline bool verify_vertex_witness(const Signomial& f, const VertexWitness& w) {
  if (f.coefficient(w.point).sign() >= 0) return false;
  return verify_vertex_functional(f.support(), w.point, w.functional);
}

// ---------------------------------------------------------------------------
// CheckConnectivity

struct CriteriaConfig {
  bool enable_simplex_search = false;
  bool enable_box = false;
  std::size_t max_negatives = 12;
  std::optional<SimplexWitness> simplex;  // user-supplied witness
};

/// First applicable criterion, or nullopt. Order: no negatives, no positives,
/// one negative, strict separation, one positive, simplex, box.
inline std::optional<CriterionCertificate> check_connectivity(const Signomial& f, const CriteriaConfig& cfg = {}) {
  auto ss = signed_support(f);
  if (ss.negatives.empty()) return CriterionCertificate{CriterionKind::NoNegativeCoeff, {}, false};
  if (ss.positives.empty()) return CriterionCertificate{CriterionKind::NoPositiveCoeff, {}, true};
  if (ss.negatives.size() == 1)
    return CriterionCertificate{CriterionKind::OneNegativeCoeff, ss.negatives.front(), false};
  if (auto w = find_strict_separating_hyperplane(f))
    return CriterionCertificate{CriterionKind::StrictSeparating, *w, true};
  if (ss.positives.size() == 1 && newton_dimension(f) >= 2)
    return CriterionCertificate{CriterionKind::OnePositiveCoeff, ss.positives.front(), true};

  std::optional<SimplexWitness> simplex;
  if (cfg.simplex && cfg.simplex->vertices.size() == f.dimension() + 1)
    simplex = complete_simplex_witness(f, *cfg.simplex);
  if (!simplex && cfg.enable_simplex_search) simplex = search_simplex_witness(f);
  if (simplex) {
    bool pos = simplex->mode == SimplexMode::PositivesInside;
    return CriterionCertificate{pos ? CriterionKind::SimplexPosIn : CriterionKind::SimplexNegIn, *simplex, pos};
  }
  if (cfg.enable_box) return check_box_criterion(f, cfg.max_negatives);
  return std::nullopt;
}

/// Exact replay of a criterion certificate against f.
inline bool verify_criterion(const Signomial& f, const CriterionCertificate& c) {
  auto ss = signed_support(f);
  if (c.nonempty != guarantees_nonempty(c.kind)) return false;
  switch (c.kind) {
    case CriterionKind::NoNegativeCoeff:
      return ss.negatives.empty();
    case CriterionKind::NoPositiveCoeff:
      return ss.positives.empty() && !ss.negatives.empty();
    case CriterionKind::OneNegativeCoeff: {
      auto* b = std::get_if<Vec>(&c.witness);
      return ss.negatives.size() == 1 && b && *b == ss.negatives.front();
    }
    case CriterionKind::OnePositiveCoeff: {
      auto* a = std::get_if<Vec>(&c.witness);
      return ss.positives.size() == 1 && a && *a == ss.positives.front() && newton_dimension(f) >= 2;
    }
    case CriterionKind::StrictSeparating: {
      auto* w = std::get_if<SeparatingWitness>(&c.witness);
      if (!w || !verify_separating_hyperplane(f, w->normal, w->offset, true)) return false;
      if (w->strict_point) {
        if (f.coefficient(*w->strict_point).sign() >= 0) return false;
        if (dot(w->normal, *w->strict_point) <= w->offset) return false;
      }
      return true;
    }
    case CriterionKind::SimplexNegIn:
    case CriterionKind::SimplexPosIn: {
      auto* w = std::get_if<SimplexWitness>(&c.witness);
      if (!w) return false;
      bool pos = c.kind == CriterionKind::SimplexPosIn;
      if ((w->mode == SimplexMode::PositivesInside) != pos) return false;
      try {
        return verify_simplex_witness(f, *w);
      } catch (const DegenerateSimplex&) {
        return false;
      }
    }
    case CriterionKind::Box: {
      auto* w = std::get_if<BoxWitness>(&c.witness);
      return w && verify_box_witness(f, *w);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Closure property

struct ClosureReport {
  bool holds = false;
  std::string reason;  // which sufficient condition applied, or why none did
  std::optional<SeparatingWitness> separating;
  std::optional<FaceResult> negative_face;
};

/// Sufficient conditions only: holds == false means "not certified".
inline ClosureReport closure_report(const Signomial& f, std::size_t facet_budget = 100000) {
  ClosureReport r;
  auto ss = signed_support(f);
  if (f.empty()) {
    r.reason = "zero signomial";
    return r;
  }
  if (ss.negatives.empty()) {
    r.holds = true;
    r.reason = "no negative coefficients";
    return r;
  }
  if (ss.positives.empty()) {
    r.holds = true;
    r.reason = "no positive coefficients";
    return r;
  }
  if ((r.separating = find_strict_separating_hyperplane(f))) {
    r.holds = true;
    r.reason = "strict separating hyperplane";
    return r;
  }
  auto P = build_polytope(f.support(), facet_budget);
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.terms()[i].coefficient.sign() < 0) neg.push_back(i);
  r.negative_face = smallest_face_containing(P, neg);
  if (r.negative_face->proper) {
    r.holds = true;
    r.reason = "negative exponents lie in a proper face";
    return r;
  }
  r.reason = "no sufficient condition applies";
  return r;
}

inline bool closure_property(const Signomial& f) { return closure_report(f).holds; }

}  // namespace descr
