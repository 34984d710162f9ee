#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace descr;
using oracle::V;

TEST(Parse, Grammar) {
  auto f = parse_signomial("-101*x^3*y^2 + 50*x^2*y^3 + (19/2)*y^3");
  EXPECT_EQ(f.dimension(), 2u);
  EXPECT_EQ(f.coefficient(V({3, 2})), -101);
  EXPECT_EQ(f.coefficient(V({0, 3})), Rational(19, 2));

  auto g = parse_signomial("x1^(1/2)*x3 - 2.25");
  EXPECT_EQ(g.dimension(), 3u);
  EXPECT_EQ(g.coefficient(Vec{Rational(1, 2), 0, 1}), 1);
  EXPECT_EQ(g.coefficient(V({0, 0, 0})), Rational(-9, 4));

  auto h = parse_signomial("x + x", 3);
  EXPECT_EQ(h.dimension(), 3u);
  EXPECT_EQ(h.coefficient(V({1, 0, 0})), 2);

  EXPECT_EQ(parse_signomial("9.5*x").coefficient(V({1})), Rational(19, 2));
  EXPECT_EQ(to_string(parse_signomial("9.5*x").terms()[0].coefficient), "19/2");
}

TEST(Parse, CommentsAndLines) {
  auto f = parse_signomial("# header\n1 + x\n  - y # trailing\n");
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.coefficient(V({0, 1})), -1);
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_signomial("1 + x^2*\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_GE(e.column, 1u);
  }
  try {
    parse_signomial("1 +\n  3*q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2u);
    EXPECT_EQ(e.column, 5u);
  }
  EXPECT_THROW(parse_signomial("x3", 2), ParseError);
  EXPECT_THROW(parse_signomial("x^(1/0)"), ParseError);
}

TEST(Parse, RoundTripsAllFixtures) {
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    if (entry.path().extension() != ".poly") continue;
    auto f = oracle::fixture(entry.path().filename().string());
    auto back = parse_signomial(to_text(f), f.dimension());
    EXPECT_EQ(back, f) << entry.path();
  }
}

TEST(Trace, JsonRoundTripAndReplay) {
  for (const char* name : {"cube.poly", "cube4d.poly", "eq2.poly", "proof24.poly", "ex_box.poly"}) {
    auto f = oracle::fixture(name);
    CertifyConfig cfg;
    cfg.enable_box = true;
    auto cert = certify_connectivity(f, cfg);
    TraceDocument doc{to_text(f), f, cfg, cert};
    json j = trace_to_json(doc);
    EXPECT_EQ(j["schema"], 1);
    auto back = trace_from_json(json::parse(j.dump()));
    EXPECT_EQ(trace_to_json(back), j) << name;
    std::string why;
    EXPECT_TRUE(verify_trace(back, &why)) << name << ": " << why;
  }
}

TEST(Trace, RationalsAreStrings) {
  auto f = oracle::fixture("eq2.poly");
  json s = io::signomial(f);
  for (const auto& t : s["terms"]) {
    EXPECT_TRUE(t["coefficient"].is_string());
    for (const auto& e : t["exponent"]) EXPECT_TRUE(e.is_string());
  }
}

TEST(Trace, TamperedWitnessIsRejected) {
  auto f = oracle::fixture("cube.poly");
  auto cert = certify_connectivity(f);
  TraceDocument doc{to_text(f), f, {}, cert};
  json j = trace_to_json(doc);
  j["tree"]["edge"]["beta1"] = json::array({"1", "1", "1"});
  std::string why;
  EXPECT_FALSE(verify_trace(trace_from_json(j), &why));
  EXPECT_FALSE(why.empty());

  json k = trace_to_json(doc);
  k["input"] = "x - 1";
  EXPECT_FALSE(verify_trace(trace_from_json(k)));
}

namespace {
std::string shaded_group(const std::string& svg) {
  auto a = svg.find("<g id=\"negative-region\"");
  auto b = svg.find("</g>", a);
  return svg.substr(a, b - a);
}
}  // namespace

TEST(Svg, Shading) {
  PlotOptions opt;
  opt.grid = default_grid(2);
  opt.grid.resolution = 60;
  auto pos = render_svg(parse_signomial("3 + 0*x*y", 2), opt);
  EXPECT_EQ(shaded_group(pos).find("<rect"), std::string::npos);
  auto neg = render_svg(oracle::fixture("eq2.poly"), opt);
  EXPECT_NE(shaded_group(neg).find("<rect"), std::string::npos);
  EXPECT_NE(neg.find("</svg>"), std::string::npos);
  opt.lines.push_back({V({1, 0}), 2});
  auto with_line = render_svg(oracle::fixture("eq2.poly"), opt);
  EXPECT_NE(with_line.find("<line"), std::string::npos);
  EXPECT_EQ(render_svg(oracle::fixture("eq2.poly"), opt), with_line);
  EXPECT_THROW(render_svg(oracle::fixture("cube.poly"), opt), std::invalid_argument);
}
