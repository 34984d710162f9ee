// desc_regions: certify, sample, analyze and plot the negative region of a
// signomial given in a .poly text file.
//
// Exit codes: 0 certified (or command succeeded), 2 inconclusive, 1 bad input,
// 3 a trace failed re-verification.

#include "descr/descr.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace descr;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitBadTrace = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

Signomial load_signomial(const std::string& path, std::optional<std::size_t> vars, std::string* text = nullptr) {
  std::string src = read_file(path);
  Signomial f;
  try {
    f = parse_signomial(src, vars);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (f.empty()) throw InputError(path + ": the polynomial has empty support");
  if (text) *text = src;
  return f;
}

std::optional<std::size_t> opt_vars(std::size_t v) { return v == 0 ? std::nullopt : std::optional<std::size_t>(v); }

GridSpec make_grid(std::size_t n, const std::vector<double>& box, std::size_t grid, double tol) {
  GridSpec g = default_grid(n);
  if (!box.empty()) {
    if (box.size() != 2 && box.size() != 2 * n) throw InputError("--box takes lo,hi or one lo,hi pair per variable");
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = box.size() == 2 ? 0 : 2 * i;
      g.lo[i] = box[k];
      g.hi[i] = box[k + 1];
    }
  }
  if (grid) g.resolution = grid;
  if (tol >= 0) g.tolerance = tol;
  return g;
}

void print_text(const Certificate& c, std::ostream& out, int depth = 0) {
  std::string pad(2 * depth, ' ');
  out << pad << to_string(c.kind);
  if (c.criterion) out << " " << to_string(c.criterion->kind);
  if (!c.normal.empty()) {
    out << " v=(";
    for (std::size_t i = 0; i < c.normal.size(); ++i) out << (i ? "," : "") << c.normal[i];
    out << ")";
  }
  out << " -> " << to_string(c.outcome) << "   [" << to_text(c.f) << "]\n";
  if (!c.reason.empty()) out << pad << "  reason: " << c.reason << "\n";
  for (const auto& ch : c.children) print_text(ch, out, depth + 1);
}

int cmd_certify(const std::string& file, const CertifyConfig& cfg, const std::string& format, std::size_t vars,
                const std::string& simplex_file, bool verify) {
  if (verify) {
    json j;
    try {
      j = json::parse(read_file(file));
    } catch (const json::exception& e) {
      throw InputError(file + ": " + e.what());
    }
    TraceDocument d;
    try {
      d = trace_from_json(j);
    } catch (const std::exception& e) {
      throw InputError(file + ": malformed trace: " + e.what());
    }
    std::string why;
    if (!verify_trace(d, &why)) {
      std::cerr << "trace verification failed: " << why << "\n";
      return kExitBadTrace;
    }
    std::cout << "trace verified: " << count_witnesses(d.tree) << " witnesses, outcome " << to_string(d.tree.outcome)
              << "\n";
    return kExitOk;
  }

  std::string text;
  Signomial f = load_signomial(file, opt_vars(vars), &text);
  CertifyConfig c = cfg;
  if (!simplex_file.empty()) {
    try {
      c.simplex = io::simplex(json::parse(read_file(simplex_file)));
    } catch (const std::exception& e) {
      throw InputError(simplex_file + ": " + e.what());
    }
  }
  Certificate cert = certify_connectivity(f, c);
  TraceDocument doc{text, f, c, cert};
  if (format == "text") print_text(cert, std::cout);
  else std::cout << trace_to_json(doc).dump(2) << "\n";
  return certified(cert.outcome) ? kExitOk : kExitInconclusive;
}

int cmd_oracle(const std::string& file, std::size_t vars, const std::vector<double>& box, std::size_t grid, double tol) {
  Signomial f = load_signomial(file, opt_vars(vars));
  GridSpec g = make_grid(f.dimension(), box, grid, tol);
  ComponentReport r;
  try {
    r = count_negative_components(f, g);
  } catch (const BudgetExceeded& e) {
    throw InputError(e.what());
  }
  std::cout << io::component_report(r).dump(2) << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& file, std::size_t vars, std::size_t budget) {
  Signomial f = load_signomial(file, opt_vars(vars));
  auto ss = signed_support(f);
  json j;
  j["variables"] = f.dimension();
  j["terms"] = f.size();
  j["positiveCount"] = ss.positives.size();
  j["negativeCount"] = ss.negatives.size();
  j["dimension"] = newton_dimension(f);
  j["budgetExceeded"] = false;
  auto sep = find_strict_separating_hyperplane(f);
  j["strictSeparatingHyperplane"] =
      sep ? json{{"normal", io::vec(sep->normal)}, {"offset", io::rat(sep->offset)}} : json(nullptr);
  try {
    Polytope P = build_polytope(f.support(), budget);
    j["vertexCount"] = P.vertices.size();
    j["facetCount"] = P.facets.size();
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f.terms()[i].coefficient.sign() < 0) neg.push_back(i);
    if (!neg.empty()) {
      auto face = smallest_face_containing(P, neg);
      std::vector<Vec> pts;
      for (auto i : face.face) pts.push_back(P.points[i]);
      j["smallestNegativeFace"] = {{"proper", face.proper},
                                   {"normal", face.proper ? io::vec(primitive(face.normal)) : json(nullptr)},
                                   {"support", io::vecs(pts)}};
    } else {
      j["smallestNegativeFace"] = nullptr;
    }
    json pairs = json::array();
    for (const auto& v : parallel_face_pairs(P)) pairs.push_back(io::vec(v));
    j["parallelFacePairs"] = pairs;
    auto cl = closure_report(f, budget);
    j["closureProperty"] = cl.holds;
    j["closureReason"] = cl.reason;
  } catch (const BudgetExceeded& e) {
    j["budgetExceeded"] = true;
    j["budgetMessage"] = e.what();
    j["closureProperty"] = sep.has_value() || ss.negatives.empty() || ss.positives.empty();
    j["closureReason"] = sep ? "strict separating hyperplane" : "facet budget exceeded";
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_plot(const std::string& file, std::size_t vars, const std::vector<double>& box, std::size_t grid,
             const std::string& out_path, const std::vector<std::string>& lines) {
  Signomial f = load_signomial(file, opt_vars(vars));
  if (f.dimension() != 2) throw InputError("plot supports exactly two variables");
  PlotOptions opt;
  opt.grid = make_grid(2, box, grid ? grid : 200, -1);
  opt.title = to_text(f);
  for (const auto& spec : lines) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw InputError("--hyperplane takes v1,v2,a");
    try {
      opt.lines.push_back({{parse_rational(parts[0]), parse_rational(parts[1])}, parse_rational(parts[2])});
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("--hyperplane: ") + e.what());
    }
  }
  std::string svg = render_svg(f, opt);
  if (out_path.empty() || out_path == "-") {
    std::cout << svg;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    out << svg;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify connectivity of the negative region of a signomial"};
  app.require_subcommand(1);

  std::string file;
  std::size_t vars = 0;

  CertifyConfig cfg;
  std::string format = "json", simplex_file;
  bool verify = false;
  auto* certify = app.add_subcommand("certify", "run the recursive certification and print a trace");
  certify->add_option("file", file, "polynomial file, or a trace with --verify-trace")->required();
  certify->add_option("--max-depth", cfg.max_depth, "recursion depth cap")->check(CLI::PositiveNumber);
  certify->add_option("--facet-budget", cfg.facet_budget, "convex hull size cap");
  certify->add_flag("--enable-simplex-search", cfg.enable_simplex_search, "search simplices spanned by the support");
  certify->add_flag("--enable-enclosing-search", cfg.enable_enclosing_search, "split along enclosing hyperplane pairs");
  certify->add_flag("--enable-box", cfg.enable_box, "try the box criterion at every node");
  certify->add_option("--max-negatives", cfg.max_negatives, "limit for side-assignment searches");
  certify->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  certify->add_option("--simplex", simplex_file, "JSON simplex witness to verify at the root");
  certify->add_flag("--verify-trace", verify, "re-verify a JSON trace instead of certifying");
  certify->add_option("--vars", vars, "number of variables");

  std::vector<double> box;
  std::size_t grid = 0;
  double tol = -1;
  auto* oracle = app.add_subcommand("oracle", "count negative components on a log-coordinate grid");
  oracle->add_option("file", file)->required();
  oracle->add_option("--box", box, "lo,hi in log coordinates (or one pair per variable)")->delimiter(',');
  oracle->add_option("--grid", grid, "samples per axis");
  oracle->add_option("--tol", tol, "relative sign tolerance");
  oracle->add_option("--vars", vars, "number of variables");

  auto* analyze = app.add_subcommand("analyze", "support and Newton polytope statistics");
  analyze->add_option("file", file)->required();
  analyze->add_option("--facet-budget", cfg.facet_budget, "convex hull size cap");
  analyze->add_option("--vars", vars, "number of variables");

  std::string out_path;
  std::vector<std::string> lines;
  auto* plot = app.add_subcommand("plot", "SVG of the negative region and the signed support (two variables)");
  plot->add_option("file", file)->required();
  plot->add_option("--box", box, "lo,hi in log coordinates")->delimiter(',');
  plot->add_option("--grid", grid, "samples per axis");
  plot->add_option("--out", out_path, "output SVG path (stdout if omitted)");
  plot->add_option("--hyperplane", lines, "overlay the line v1*m1 + v2*m2 = a, given as v1,v2,a");
  plot->add_option("--vars", vars, "number of variables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*certify) return cmd_certify(file, cfg, format, vars, simplex_file, verify);
    if (*oracle) return cmd_oracle(file, vars, box, grid, tol);
    if (*analyze) return cmd_analyze(file, vars, cfg.facet_budget);
    if (*plot) return cmd_plot(file, vars, box, grid, out_path, lines);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
