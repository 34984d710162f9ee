#pragma once

// Recursive certification that the negative set of a signomial has at most one
// connected component: criteria at each node, reduction to the smallest face
// containing the negative exponents, and splits along pairs of parallel faces
// joined by an edge with negative endpoints.

#include "criteria.hpp"
#include "oracle.hpp"
#include "polytope.hpp"
#include "signomial.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace descr {

enum class Outcome { CertifiedEmpty, CertifiedAtMostOne, CertifiedExactlyOne, Inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::CertifiedEmpty: return "CertifiedEmpty";
    case Outcome::CertifiedAtMostOne: return "CertifiedAtMostOne";
    case Outcome::CertifiedExactlyOne: return "CertifiedExactlyOne";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline bool certified(Outcome o) { return o != Outcome::Inconclusive; }

enum class NodeKind { Empty, Criterion, NegativeFaceReduction, ParallelSplit, EnclosingSplit, Inconclusive };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Empty: return "Empty";
    case NodeKind::Criterion: return "Criterion";
    case NodeKind::NegativeFaceReduction: return "NegativeFaceReduction";
    case NodeKind::ParallelSplit: return "ParallelSplit";
    case NodeKind::EnclosingSplit: return "EnclosingSplit";
    case NodeKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct EdgeWitness {
  Vec beta1;       // negative exponent on the face N(f)_v
  Vec beta2;       // negative exponent on the face N(f)_{-v}
  Vec functional;  // exposes Conv(beta1, beta2) as an edge of N(f)

  bool operator==(const EdgeWitness&) const = default;
};

/// Data of an EnclosingSplit node: the pair, and a segment between the
/// children's negatives that misses Conv(sigma_+).
struct SplitWitness {
  EnclosingWitness pair;
  Vec beta1;
  Vec beta2;
  SegmentSeparation separation;

  bool operator==(const SplitWitness&) const = default;
};

struct Certificate {
  NodeKind kind = NodeKind::Inconclusive;
  Outcome outcome = Outcome::Inconclusive;
  Signomial f;

  std::optional<CriterionCertificate> criterion;  // Criterion
  Vec normal;                                     // NegativeFaceReduction, ParallelSplit
  std::vector<Vec> face;                          // NegativeFaceReduction
  std::optional<EdgeWitness> edge;                // ParallelSplit
  std::optional<SplitWitness> split;              // EnclosingSplit
  std::optional<VertexWitness> nonempty;          // upgrades AtMostOne to ExactlyOne
  std::vector<Certificate> children;
  std::string reason;                             // Inconclusive
  std::vector<std::string> notes;

  bool operator==(const Certificate&) const = default;
};

struct CertifyConfig {
  std::size_t max_depth = 64;
  std::size_t facet_budget = 100000;
  bool enable_simplex_search = false;
  bool enable_enclosing_search = false;
  bool enable_box = false;
  std::size_t max_negatives = 12;
  std::optional<SimplexWitness> simplex;
};

inline CriteriaConfig criteria_config(const CertifyConfig& c) {
  return {c.enable_simplex_search, c.enable_box, c.max_negatives, c.simplex};
}

namespace detail {

inline std::vector<std::size_t> negative_indices(const Signomial& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.terms()[i].coefficient.sign() < 0) out.push_back(i);
  return out;
}

inline std::vector<Vec> points_of(const Signomial& f, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  for (auto i : idx) out.push_back(f.terms()[i].exponent);
  return out;
}

inline Certificate inconclusive(const Signomial& f, std::string reason, std::vector<std::string> notes = {}) {
  Certificate c;
  c.kind = NodeKind::Inconclusive;
  c.outcome = Outcome::Inconclusive;
  c.f = f;
  c.reason = std::move(reason);
  c.notes = std::move(notes);
  return c;
}

inline std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace detail

/// First pair beta1 in sigma_- on N(f)_v, beta2 in sigma_- on N(f)_{-v} spanning
/// an edge of N(f), in term order.
inline std::optional<EdgeWitness> intersection_nonempty(const Signomial& f, const Vec& v) {
  const auto support = f.support();
  auto top = face_in_direction(support, v);
  auto bottom = face_in_direction(support, negated(v));
  for (auto i : top) {
    if (f.terms()[i].coefficient.sign() >= 0) continue;
    for (auto j : bottom) {
      if (f.terms()[j].coefficient.sign() >= 0) continue;
      if (auto w = exposing_edge_functional(support, support[i], support[j]))
        return EdgeWitness{support[i], support[j], *w};
    }
  }
  return std::nullopt;
}

/// (f restricted to A, f restricted to B) for an enclosing pair (v, a, b).
struct NotEnclosing : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline std::pair<Signomial, Signomial> side_restrictions(const Signomial& f, const Vec& v, const Rational& a,
                                                         const Rational& b) {
  if (!verify_enclosing_pair(f, v, a, b, false)) throw NotEnclosing("not an enclosing pair of the positive support");
  std::vector<Term> A, B;
  for (const auto& t : f.terms()) {
    Rational s = dot(v, t.exponent);
    bool pos = t.coefficient.sign() > 0;
    if (pos || s >= a) A.push_back(t);
    if (pos || s <= b) B.push_back(t);
  }
  return {Signomial(f.dimension(), std::move(A)), Signomial(f.dimension(), std::move(B))};
}

namespace detail {

inline Certificate certify_rec(const Signomial& f, const CertifyConfig& cfg, std::size_t depth);

inline Certificate from_criterion(const Signomial& f, CriterionCertificate cc) {
  Certificate c;
  c.f = f;
  if (cc.kind == CriterionKind::NoNegativeCoeff) {
    c.kind = NodeKind::Empty;
    c.outcome = Outcome::CertifiedEmpty;
    return c;
  }
  c.kind = NodeKind::Criterion;
  c.outcome = cc.nonempty ? Outcome::CertifiedExactlyOne : Outcome::CertifiedAtMostOne;
  c.criterion = std::move(cc);
  return c;
}

inline std::optional<Certificate> try_enclosing_split(const Signomial& f, const CertifyConfig& cfg, std::size_t depth,
                                                      std::vector<std::string>& notes) {
  auto ss = signed_support(f);
  if (ss.positives.empty() || ss.negatives.size() < 2) return std::nullopt;
  std::optional<Certificate> result;
  try {
    for_each_side_assignment(ss.negatives, cfg.max_negatives, [&](const auto& up, const auto& low) {
      auto pair = enclosing_for_assignment(f, up, low, EnclosingMode::Split);
      if (!pair) return false;
      std::optional<SplitWitness> sw;
      for (const auto& b1 : up) {
        for (const auto& b2 : low) {
          if (auto sep = separate_segment_from_hull(b1, b2, ss.positives)) {
            sw = SplitWitness{*pair, b1, b2, *sep};
            break;
          }
        }
        if (sw) break;
      }
      if (!sw) return false;
      auto [fa, fb] = side_restrictions(f, pair->normal, pair->upper, pair->lower);
      Certificate ca = certify_rec(fa, cfg, depth + 1);
      if (!certified(ca.outcome)) return false;
      Certificate cb = certify_rec(fb, cfg, depth + 1);
      if (!certified(cb.outcome)) return false;
      Certificate c;
      c.kind = NodeKind::EnclosingSplit;
      c.f = f;
      c.normal = pair->normal;
      c.split = std::move(sw);
      c.outcome = Outcome::CertifiedAtMostOne;
      if (auto vw = has_negative_vertex(f)) {
        c.nonempty = std::move(vw);
        c.outcome = Outcome::CertifiedExactlyOne;
      }
      c.children.push_back(std::move(ca));
      c.children.push_back(std::move(cb));
      result = std::move(c);
      return true;
    });
  } catch (const BudgetExceeded& e) {
    notes.push_back(std::string("enclosing search skipped: ") + e.what());
  }
  return result;
}

inline Certificate certify_rec(const Signomial& f, const CertifyConfig& cfg, std::size_t depth) {
  if (f.empty()) return inconclusive(f, "zero signomial");
  if (depth > cfg.max_depth) return inconclusive(f, "maximum recursion depth reached");

  if (auto cc = check_connectivity(f, criteria_config(cfg))) return from_criterion(f, std::move(*cc));

  std::vector<std::string> notes;
  const auto support = f.support();
  Polytope P;
  try {
    P = build_polytope(support, cfg.facet_budget);
  } catch (const BudgetExceeded& e) {
    return inconclusive(f, std::string("facet budget exceeded: ") + e.what());
  }

  auto neg = negative_indices(f);
  auto face = smallest_face_containing(P, neg);
  if (face.proper) {
    Certificate c;
    c.kind = NodeKind::NegativeFaceReduction;
    c.f = f;
    c.normal = primitive(face.normal);
    c.face = points_of(f, face.face);
    c.children.push_back(certify_rec(restrict_indices(f, face.face), cfg, depth + 1));
    c.outcome = c.children.front().outcome;
    return c;
  }

  for (const auto& v : parallel_face_pairs(P)) {
    auto edge = intersection_nonempty(f, v);
    if (!edge) {
      notes.push_back("parallel faces at v=" + vec_text(v) + ": no edge with negative endpoints");
      continue;
    }
    auto top = restrict_indices(f, face_in_direction(support, v));
    auto bottom = restrict_indices(f, face_in_direction(support, negated(v)));
    Certificate ca = certify_rec(top, cfg, depth + 1);
    if (!certified(ca.outcome)) {
      notes.push_back("parallel faces at v=" + vec_text(v) + ": face N(f)_v inconclusive");
      continue;
    }
    Certificate cb = certify_rec(bottom, cfg, depth + 1);
    if (!certified(cb.outcome)) {
      notes.push_back("parallel faces at v=" + vec_text(v) + ": face N(f)_-v inconclusive");
      continue;
    }
    // edge endpoints are negative vertices of both faces, so neither child is empty
    if (!has_negative_vertex(top) || !has_negative_vertex(bottom))
      throw std::logic_error("parallel split: child without a negative vertex");
    Certificate c;
    c.kind = NodeKind::ParallelSplit;
    c.f = f;
    c.normal = v;
    c.edge = std::move(edge);
    c.outcome = Outcome::CertifiedExactlyOne;
    c.notes.push_back("parallel faces scanned over facet normals only");
    c.children.push_back(std::move(ca));
    c.children.push_back(std::move(cb));
    return c;
  }

  if (cfg.enable_enclosing_search) {
    if (auto c = try_enclosing_split(f, cfg, depth, notes)) return std::move(*c);
  }

  notes.push_back("parallel faces scanned over facet normals only");
  return inconclusive(f, "no criterion, proper negative face or certified parallel split applies", std::move(notes));
}

}  // namespace detail

inline Certificate certify_connectivity(const Signomial& f, const CertifyConfig& cfg = {}) {
  return detail::certify_rec(f, cfg, 0);
}

// ---------------------------------------------------------------------------
// Replay

/// Re-checks every witness in the tree exactly, without any search.
inline bool verify_certificate(const Certificate& c, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = std::string(to_string(c.kind)) + ": " + msg;
    return false;
  };
  const Signomial& f = c.f;
  const auto support = f.support();
  auto ss = signed_support(f);

  auto children_ok = [&]() {
    for (const auto& ch : c.children) {
      if (!verify_certificate(ch, why)) return false;
    }
    return true;
  };

  switch (c.kind) {
    case NodeKind::Empty:
      if (!ss.negatives.empty()) return fail("negative coefficients present");
      return c.outcome == Outcome::CertifiedEmpty ? true : fail("wrong outcome");

    case NodeKind::Inconclusive:
      return c.outcome == Outcome::Inconclusive ? true : fail("wrong outcome");

    case NodeKind::Criterion: {
      if (!c.criterion) return fail("missing criterion");
      if (!verify_criterion(f, *c.criterion)) return fail(std::string("criterion ") + to_string(c.criterion->kind));
      Outcome want = c.criterion->nonempty ? Outcome::CertifiedExactlyOne : Outcome::CertifiedAtMostOne;
      return c.outcome == want ? true : fail("wrong outcome");
    }

    case NodeKind::NegativeFaceReduction: {
      if (c.children.size() != 1) return fail("expected one child");
      auto idx = face_in_direction(support, c.normal);
      auto face = detail::points_of(f, idx);
      if (face != c.face) return fail("normal does not expose the recorded face");
      if (face.size() >= support.size()) return fail("face is not proper");
      for (const auto& b : ss.negatives)
        if (std::find(face.begin(), face.end(), b) == face.end()) return fail("negative exponent off the face");
      if (c.children[0].f != restrict_indices(f, idx)) return fail("child is not the face restriction");
      if (c.outcome != c.children[0].outcome) return fail("outcome differs from child");
      return children_ok();
    }

    case NodeKind::ParallelSplit: {
      if (c.children.size() != 2 || !c.edge) return fail("malformed split");
      std::set<Rational> values;
      for (const auto& mu : support) values.insert(dot(c.normal, mu));
      if (values.size() != 2) return fail("support not on two parallel faces");
      auto top = restrict_indices(f, face_in_direction(support, c.normal));
      auto bottom = restrict_indices(f, face_in_direction(support, negated(c.normal)));
      if (c.children[0].f != top || c.children[1].f != bottom) return fail("children are not the face restrictions");
      const auto& e = *c.edge;
      if (top.coefficient(e.beta1).sign() >= 0 || bottom.coefficient(e.beta2).sign() >= 0)
        return fail("edge endpoints are not negative on their faces");
      if (!verify_edge_functional(support, e.beta1, e.beta2, e.functional)) return fail("edge functional");
      for (const auto& ch : c.children)
        if (!certified(ch.outcome)) return fail("inconclusive child");
      if (c.outcome != Outcome::CertifiedExactlyOne) return fail("wrong outcome");
      return children_ok();
    }

    case NodeKind::EnclosingSplit: {
      if (c.children.size() != 2 || !c.split) return fail("malformed split");
      const auto& s = *c.split;
      if (s.pair.normal != c.normal) return fail("normal mismatch");
      if (!verify_enclosing_pair(f, s.pair.normal, s.pair.upper, s.pair.lower, false)) return fail("enclosing pair");
      auto [fa, fb] = side_restrictions(f, s.pair.normal, s.pair.upper, s.pair.lower);
      if (c.children[0].f != fa || c.children[1].f != fb) return fail("children are not the side restrictions");
      auto na = signed_support(fa).negatives, nb = signed_support(fb).negatives;
      if (na.size() >= ss.negatives.size() || nb.size() >= ss.negatives.size()) return fail("sides do not shrink");
      if (fa.coefficient(s.beta1).sign() >= 0 || fb.coefficient(s.beta2).sign() >= 0)
        return fail("segment endpoints are not negative on their sides");
      if (!verify_segment_separation(s.beta1, s.beta2, ss.positives, s.separation)) return fail("segment witness");
      for (const auto& ch : c.children)
        if (!certified(ch.outcome)) return fail("inconclusive child");
      if (c.nonempty) {
        if (!verify_vertex_witness(f, *c.nonempty)) return fail("negative vertex witness");
        if (c.outcome != Outcome::CertifiedExactlyOne) return fail("wrong outcome");
      } else if (c.outcome != Outcome::CertifiedAtMostOne) {
        return fail("wrong outcome");
      }
      return children_ok();
    }
  }
  return fail("unknown node kind");
}

inline std::size_t count_witnesses(const Certificate& c) {
  std::size_t n = (c.criterion ? 1 : 0) + (c.edge ? 1 : 0) + (c.split ? 1 : 0) + (c.nonempty ? 1 : 0) +
                  (c.kind == NodeKind::NegativeFaceReduction ? 1 : 0);
  for (const auto& ch : c.children) n += count_witnesses(ch);
  return n;
}

// ---------------------------------------------------------------------------
// Graph bounds

enum class BoundMethod { GraphParallel, GraphAB, Sum };

inline const char* to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::GraphParallel: return "GraphParallel";
    case BoundMethod::GraphAB: return "GraphAB";
    case BoundMethod::Sum: return "Sum";
  }
  return "?";
}

struct BoundReport {
  std::optional<std::size_t> bound;  // nullopt means Unknown
  BoundMethod method = BoundMethod::GraphParallel;
  std::vector<std::string> edges;    // descriptions of the intersection witnesses used
  std::string reason;
  std::vector<Certificate> children;
};

namespace detail {

// Graph with one vertex per nonempty child; an intersection witness joins them.
inline BoundReport graph_bound(BoundReport r, const Signomial& fa, const Signomial& fb,
                               const std::optional<std::string>& exact_edge, const GridSpec& grid) {
  for (const auto& ch : r.children) {
    if (!certified(ch.outcome)) {
      r.reason = "a child is inconclusive";
      return r;
    }
  }
  std::size_t vertices = 0;
  for (const auto& ch : r.children) vertices += ch.outcome != Outcome::CertifiedEmpty;
  if (r.method == BoundMethod::Sum) {
    r.bound = vertices;
    return r;
  }
  bool joined = false;
  if (vertices == 2) {
    if (exact_edge) {
      r.edges.push_back(*exact_edge);
      joined = true;
    } else if (auto p = intersection_witness(fa, fb, grid)) {
      std::string s = "sampled common negative point x=(";
      for (std::size_t i = 0; i < p->x.size(); ++i) s += (i ? "," : "") + std::to_string(p->x[i]);
      r.edges.push_back(s + ")");
      joined = true;
    }
  }
  r.bound = vertices - (joined ? 1 : 0);
  return r;
}

}  // namespace detail

/// Bound from the two faces N(f)_v and N(f)_{-v}; requires the support to lie on them.
inline BoundReport upper_bound_parallel(const Signomial& f, const Vec& v, const CertifyConfig& cfg = {},
                                        std::optional<GridSpec> grid = std::nullopt) {
  BoundReport r;
  r.method = BoundMethod::GraphParallel;
  const auto support = f.support();
  std::set<Rational> values;
  for (const auto& mu : support) values.insert(dot(v, mu));
  if (values.size() != 2) {
    r.reason = "support is not contained in two parallel faces";
    return r;
  }
  auto fa = restrict_indices(f, face_in_direction(support, v));
  auto fb = restrict_indices(f, face_in_direction(support, negated(v)));
  r.children.push_back(certify_connectivity(fa, cfg));
  r.children.push_back(certify_connectivity(fb, cfg));
  std::optional<std::string> exact;
  if (auto e = intersection_nonempty(f, v))
    exact = "edge " + detail::vec_text(e->beta1) + "-" + detail::vec_text(e->beta2);
  return detail::graph_bound(std::move(r), fa, fb, exact, grid ? *grid : default_grid(f.dimension()));
}

/// Bound from the side restrictions of an enclosing pair (v, a, b).
inline BoundReport upper_bound_enclosing(const Signomial& f, const Vec& v, const Rational& a, const Rational& b,
                                         BoundMethod method = BoundMethod::GraphAB, const CertifyConfig& cfg = {},
                                         std::optional<GridSpec> grid = std::nullopt) {
  BoundReport r;
  r.method = method;
  auto [fa, fb] = side_restrictions(f, v, a, b);
  r.children.push_back(certify_connectivity(fa, cfg));
  r.children.push_back(certify_connectivity(fb, cfg));
  std::optional<std::string> exact;
  auto pa = signed_support(fa), pb = signed_support(fb);
  auto positives = signed_support(f).positives;
  for (const auto& b1 : pa.negatives) {
    for (const auto& b2 : pb.negatives) {
      if (!exact && separate_segment_from_hull(b1, b2, positives))
        exact = "segment " + detail::vec_text(b1) + "-" + detail::vec_text(b2) + " misses Conv(sigma_+)";
    }
  }
  return detail::graph_bound(std::move(r), fa, fb, exact, grid ? *grid : default_grid(f.dimension()));
}

struct ClosureCertification {
  Certificate certificate;
  bool closure = false;
};

inline ClosureCertification certify_and_check_closure(const Signomial& f, const CertifyConfig& cfg = {}) {
  ClosureCertification out;
  out.certificate = certify_connectivity(f, cfg);
  try {
    out.closure = closure_report(f, cfg.facet_budget).holds;
  } catch (const BudgetExceeded&) {
    out.closure = false;
  }
  return out;
}

}  // namespace descr
