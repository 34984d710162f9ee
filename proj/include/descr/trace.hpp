#pragma once

// JSON form of certificates (schema 1). Rationals are written as "p/q"
// strings so that a trace can be replayed exactly.

#include "certify.hpp"
#include "oracle.hpp"
#include "parse.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace descr {

using json = nlohmann::json;

inline constexpr int kTraceSchema = 1;

namespace io {

inline json rat(const Rational& r) { return to_string(r); }

inline Rational rat(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return parse_rational(j.get<std::string>());
}

inline json vec(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat(x));
  return a;
}

inline Vec vec(const json& j) {
  Vec v;
  for (const auto& x : j) v.push_back(rat(x));
  return v;
}

inline json vecs(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

inline std::vector<Vec> vecs(const json& j) {
  std::vector<Vec> out;
  for (const auto& x : j) out.push_back(vec(x));
  return out;
}

inline json signomial(const Signomial& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back({{"coefficient", rat(t.coefficient)}, {"exponent", vec(t.exponent)}});
  return {{"dimension", f.dimension()}, {"terms", terms}, {"text", to_text(f)}};
}

inline Signomial signomial(const json& j) {
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) terms.push_back({rat(t.at("coefficient")), vec(t.at("exponent"))});
  return Signomial(j.at("dimension").get<std::size_t>(), std::move(terms));
}

inline json halfspace(const Halfspace& h) { return {{"normal", vec(h.normal)}, {"offset", rat(h.offset)}}; }
inline Halfspace halfspace(const json& j) { return {vec(j.at("normal")), rat(j.at("offset"))}; }

inline json enclosing(const EnclosingWitness& w) {
  return {{"normal", vec(w.normal)}, {"upper", rat(w.upper)}, {"lower", rat(w.lower)}, {"strict", w.strict}};
}
inline EnclosingWitness enclosing(const json& j) {
  return {vec(j.at("normal")), rat(j.at("upper")), rat(j.at("lower")), j.at("strict").get<bool>()};
}

inline json segment(const SegmentSeparation& s) { return {{"w", vec(s.w)}, {"c", rat(s.c)}}; }
inline SegmentSeparation segment(const json& j) { return {vec(j.at("w")), rat(j.at("c"))}; }

inline json simplex(const SimplexWitness& w) {
  json h = json::array();
  for (const auto& s : w.h_rep) h.push_back(halfspace(s));
  json j = {{"vertices", vecs(w.vertices)},
            {"hRep", h},
            {"mode", w.mode == SimplexMode::PositivesInside ? "PositivesInside" : "NegativesInside"}};
  j["interiorNegative"] = w.interior_negative ? vec(*w.interior_negative) : json(nullptr);
  return j;
}

inline SimplexWitness simplex(const json& j) {
  SimplexWitness w;
  w.vertices = vecs(j.at("vertices"));
  if (j.contains("hRep"))
    for (const auto& h : j.at("hRep")) w.h_rep.push_back(halfspace(h));
  std::string mode = j.value("mode", "NegativesInside");
  if (mode == "PositivesInside") w.mode = SimplexMode::PositivesInside;
  else if (mode == "NegativesInside") w.mode = SimplexMode::NegativesInside;
  else throw std::invalid_argument("unknown simplex mode: " + mode);
  if (j.contains("interiorNegative") && !j.at("interiorNegative").is_null())
    w.interior_negative = vec(j.at("interiorNegative"));
  return w;
}

inline CriterionKind criterion_kind(const std::string& s) {
  for (auto k : {CriterionKind::NoNegativeCoeff, CriterionKind::NoPositiveCoeff, CriterionKind::OneNegativeCoeff,
                 CriterionKind::OnePositiveCoeff, CriterionKind::StrictSeparating, CriterionKind::SimplexNegIn,
                 CriterionKind::SimplexPosIn, CriterionKind::Box})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown criterion kind: " + s);
}

inline json criterion(const CriterionCertificate& c) {
  json j = {{"kind", to_string(c.kind)}, {"nonempty", c.nonempty}};
  json w = nullptr;
  if (auto* p = std::get_if<Vec>(&c.witness)) w = {{"exponent", vec(*p)}};
  if (auto* p = std::get_if<SeparatingWitness>(&c.witness)) {
    w = {{"normal", vec(p->normal)}, {"offset", rat(p->offset)}, {"strict", p->strict}};
    w["strictPoint"] = p->strict_point ? vec(*p->strict_point) : json(nullptr);
  }
  if (auto* p = std::get_if<SimplexWitness>(&c.witness)) w = simplex(*p);
  if (auto* p = std::get_if<BoxWitness>(&c.witness))
    w = {{"pair", enclosing(p->pair)}, {"beta1", vec(p->beta1)}, {"beta2", vec(p->beta2)},
         {"separation", segment(p->separation)}};
  j["witness"] = w;
  return j;
}

inline CriterionCertificate criterion(const json& j) {
  CriterionCertificate c;
  c.kind = criterion_kind(j.at("kind").get<std::string>());
  c.nonempty = j.at("nonempty").get<bool>();
  const json& w = j.at("witness");
  switch (c.kind) {
    case CriterionKind::OneNegativeCoeff:
    case CriterionKind::OnePositiveCoeff:
      c.witness = vec(w.at("exponent"));
      break;
    case CriterionKind::StrictSeparating: {
      SeparatingWitness s{vec(w.at("normal")), rat(w.at("offset")), w.at("strict").get<bool>(), std::nullopt};
      if (!w.at("strictPoint").is_null()) s.strict_point = vec(w.at("strictPoint"));
      c.witness = s;
      break;
    }
    case CriterionKind::SimplexNegIn:
    case CriterionKind::SimplexPosIn:
      c.witness = simplex(w);
      break;
    case CriterionKind::Box:
      c.witness = BoxWitness{enclosing(w.at("pair")), vec(w.at("beta1")), vec(w.at("beta2")),
                             segment(w.at("separation"))};
      break;
    default:
      break;
  }
  return c;
}

template <class E>
E enum_from(const std::string& s, std::initializer_list<E> all, const char* what) {
  for (auto e : all)
    if (s == to_string(e)) return e;
  throw std::invalid_argument(std::string("unknown ") + what + ": " + s);
}

inline json node(const Certificate& c) {
  json j = {{"kind", to_string(c.kind)}, {"outcome", to_string(c.outcome)}, {"signomial", signomial(c.f)}};
  if (c.criterion) j["criterion"] = criterion(*c.criterion);
  if (c.kind == NodeKind::NegativeFaceReduction || c.kind == NodeKind::ParallelSplit ||
      c.kind == NodeKind::EnclosingSplit)
    j["normal"] = vec(c.normal);
  if (c.kind == NodeKind::NegativeFaceReduction) j["face"] = vecs(c.face);
  if (c.edge)
    j["edge"] = {{"beta1", vec(c.edge->beta1)}, {"beta2", vec(c.edge->beta2)}, {"functional", vec(c.edge->functional)}};
  if (c.split)
    j["split"] = {{"pair", enclosing(c.split->pair)}, {"beta1", vec(c.split->beta1)}, {"beta2", vec(c.split->beta2)},
                  {"separation", segment(c.split->separation)}};
  if (c.nonempty) j["negativeVertex"] = {{"point", vec(c.nonempty->point)}, {"functional", vec(c.nonempty->functional)}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  if (!c.notes.empty()) j["notes"] = c.notes;
  json kids = json::array();
  for (const auto& ch : c.children) kids.push_back(node(ch));
  j["children"] = kids;
  return j;
}

inline Certificate node(const json& j) {
  Certificate c;
  c.kind = enum_from<NodeKind>(j.at("kind").get<std::string>(),
                               {NodeKind::Empty, NodeKind::Criterion, NodeKind::NegativeFaceReduction,
                                NodeKind::ParallelSplit, NodeKind::EnclosingSplit, NodeKind::Inconclusive},
                               "node kind");
  c.outcome = enum_from<Outcome>(j.at("outcome").get<std::string>(),
                                 {Outcome::CertifiedEmpty, Outcome::CertifiedAtMostOne, Outcome::CertifiedExactlyOne,
                                  Outcome::Inconclusive},
                                 "outcome");
  c.f = signomial(j.at("signomial"));
  if (j.contains("criterion")) c.criterion = criterion(j.at("criterion"));
  if (j.contains("normal")) c.normal = vec(j.at("normal"));
  if (j.contains("face")) c.face = vecs(j.at("face"));
  if (j.contains("edge")) {
    const auto& e = j.at("edge");
    c.edge = EdgeWitness{vec(e.at("beta1")), vec(e.at("beta2")), vec(e.at("functional"))};
  }
  if (j.contains("split")) {
    const auto& s = j.at("split");
    c.split = SplitWitness{enclosing(s.at("pair")), vec(s.at("beta1")), vec(s.at("beta2")), segment(s.at("separation"))};
  }
  if (j.contains("negativeVertex")) {
    const auto& v = j.at("negativeVertex");
    c.nonempty = VertexWitness{vec(v.at("point")), vec(v.at("functional"))};
  }
  c.reason = j.value("reason", "");
  if (j.contains("notes")) c.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& ch : j.at("children")) c.children.push_back(node(ch));
  return c;
}

inline json config(const CertifyConfig& c) {
  json j = {{"maxDepth", c.max_depth},
            {"facetBudget", c.facet_budget},
            {"enableSimplexSearch", c.enable_simplex_search},
            {"enableEnclosingSearch", c.enable_enclosing_search},
            {"enableBox", c.enable_box},
            {"maxNegatives", c.max_negatives}};
  j["simplex"] = c.simplex ? simplex(*c.simplex) : json(nullptr);
  return j;
}

inline CertifyConfig config(const json& j) {
  CertifyConfig c;
  c.max_depth = j.value("maxDepth", c.max_depth);
  c.facet_budget = j.value("facetBudget", c.facet_budget);
  c.enable_simplex_search = j.value("enableSimplexSearch", false);
  c.enable_enclosing_search = j.value("enableEnclosingSearch", false);
  c.enable_box = j.value("enableBox", false);
  c.max_negatives = j.value("maxNegatives", c.max_negatives);
  if (j.contains("simplex") && !j.at("simplex").is_null()) c.simplex = simplex(j.at("simplex"));
  return c;
}

inline json sample_point(const SamplePoint& p) { return {{"logX", p.y}, {"x", p.x}}; }

inline json component_report(const ComponentReport& r) {
  json w = json::array();
  for (const auto& p : r.witnesses) w.push_back(sample_point(p));
  return {{"componentCount", r.component_count},
          {"negativeCellCount", r.negative_cells},
          {"witnesses", w},
          {"grid", {{"lo", r.grid.lo}, {"hi", r.grid.hi}, {"resolution", r.grid.resolution},
                    {"tolerance", r.grid.tolerance}}}};
}

}  // namespace io

struct TraceDocument {
  std::string input;
  Signomial f;
  CertifyConfig config;
  Certificate tree;
};

inline json trace_to_json(const TraceDocument& d) {
  return {{"schema", kTraceSchema},
          {"input", d.input},
          {"dimension", d.f.dimension()},
          {"config", io::config(d.config)},
          {"outcome", to_string(d.tree.outcome)},
          {"tree", io::node(d.tree)}};
}

inline TraceDocument trace_from_json(const json& j) {
  if (j.value("schema", 0) != kTraceSchema) throw std::invalid_argument("unsupported trace schema");
  TraceDocument d;
  d.input = j.value("input", "");
  d.config = io::config(j.at("config"));
  d.tree = io::node(j.at("tree"));
  d.f = d.tree.f;
  if (j.at("outcome").get<std::string>() != to_string(d.tree.outcome))
    throw std::invalid_argument("trace outcome disagrees with its tree");
  return d;
}

/// Replays a parsed trace: the root signomial must match the input text when
/// the text is present, and every witness must re-verify.
inline bool verify_trace(const TraceDocument& d, std::string* why = nullptr) {
  if (!d.input.empty()) {
    Signomial g = parse_signomial(d.input, d.f.dimension());
    if (g != d.tree.f) {
      if (why) *why = "root signomial does not match the input text";
      return false;
    }
  }
  return verify_certificate(d.tree, why);
}

}  // namespace descr
