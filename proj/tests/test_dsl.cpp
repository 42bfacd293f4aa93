#include <doctest.h>

#include "forge/errors.hpp"
#include "forge/model_dsl.hpp"

using namespace forge;

TEST_CASE("a small mixed model parses") {
  const char* text =
      "# three sites, two couplings\n"
      "site a spin\n"
      "site b spin\n"
      "site q potts3\n"
      "site r potts3\n"
      "term { a b } 0.5\n"
      "term delta { q r } 1.25+0.5i\n"
      "term { a } -3*i*pi/4   # field on a\n";
  const SpinModel m = parse_model(text);
  CHECK(m.sites.size() == 4);
  CHECK(m.terms.size() == 3);
  CHECK(m.sites[2].kind == SiteKind::Potts3);
  CHECK(m.terms[0].sites == std::vector<int>{0, 1});
  CHECK_FALSE(m.terms[0].is_delta);
  CHECK(m.terms[1].is_delta);
  CHECK(m.terms[1].coupling == canonical(ComplexField{1.25, 0, 0.5}));
  CHECK(m.terms[1].coupling.value() == std::complex<double>(1.25, 0.5));
  CHECK(m.terms[2].coupling == canonical(ComplexField::quarter(-3)));
  CHECK_FALSE(m.pure_spin());
}

TEST_CASE("coupling literals") {
  CHECK(parse_coupling("0.5") == ComplexField::real(0.5));
  CHECK(parse_coupling("-2") == ComplexField::real(-2.0));
  CHECK(parse_coupling("1e-3") == ComplexField::real(1e-3));
  CHECK(parse_coupling("0.25-0.75i") == canonical(ComplexField{0.25, 0, -0.75}));
  CHECK(parse_coupling("2*i*pi/4") == ComplexField::quarter(2));
  // quarter turns canonicalize on entry
  CHECK(parse_coupling("13*i*pi/4") == ComplexField::quarter(-3));
  CHECK(parse_coupling("-4*i*pi/4") == ComplexField::quarter(4));
  CHECK_THROWS_AS(parse_coupling("abc"), ParseError);
  CHECK_THROWS_AS(parse_coupling("1+2j"), ParseError);
  CHECK_THROWS_AS(parse_coupling("2*i*pi/8"), ParseError);
  CHECK_THROWS_AS(parse_coupling("1.5 2"), ParseError);
}

TEST_CASE("render/parse round-trip preserves the model") {
  const char* text =
      "site a spin\n"
      "site b spin\n"
      "site c spin\n"
      "site p potts4\n"
      "site q potts4\n"
      "term { a b c } 0.125\n"
      "term { b } 1*i*pi/4\n"
      "term delta { p q } 0.7\n";
  const SpinModel m = parse_model(text);
  const SpinModel back = parse_model(render_model(m));
  REQUIRE(back.sites.size() == m.sites.size());
  REQUIRE(back.terms.size() == m.terms.size());
  for (std::size_t i = 0; i < m.sites.size(); ++i) {
    CHECK(back.sites[i].name == m.sites[i].name);
    CHECK(back.sites[i].kind == m.sites[i].kind);
  }
  for (std::size_t i = 0; i < m.terms.size(); ++i) {
    CHECK(back.terms[i].sites == m.terms[i].sites);
    CHECK(back.terms[i].coupling == m.terms[i].coupling);
    CHECK(back.terms[i].is_delta == m.terms[i].is_delta);
  }
}

TEST_CASE("parse errors point at the offending line") {
  try {
    parse_model("site a spin\nsite b spinx\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(parse_model(""), ParseError);
  CHECK_THROWS_AS(parse_model("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm { a } 0.5 0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm { a\n"), ParseError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm { a }\n"), ParseError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm {} 1\n"), ParseError);
  CHECK_THROWS_AS(parse_model("frobnicate\n"), ParseError);
}

TEST_CASE("semantic violations are rejected") {
  CHECK_THROWS_AS(parse_model("site a spin\nsite a spin\n"), SemanticError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm { zz } 1\n"), SemanticError);
  CHECK_THROWS_AS(parse_model("site a spin\nterm { a a } 1\n"), SemanticError);
  CHECK_THROWS_AS(
      parse_model("site a spin\nterm { a } 1\nterm { a } 2\n"), SemanticError);
  // potts outside a delta term
  CHECK_THROWS_AS(parse_model("site p potts3\nterm { p } 1\n"), SemanticError);
  // delta between mismatched arities
  CHECK_THROWS_AS(
      parse_model("site p potts3\nsite q potts4\nterm delta { p q } 1\n"),
      SemanticError);
  // delta needs exactly two members
  CHECK_THROWS_AS(
      parse_model("site p potts3\nsite q potts3\nsite r potts3\n"
                  "term delta { p q r } 1\n"),
      SemanticError);
}

TEST_CASE("add_term merges identical subsets") {
  SpinModel m;
  m.add_site("a", SiteKind::Spin);
  m.add_site("b", SiteKind::Spin);
  m.add_term({0, 1}, ComplexField::real(0.25));
  m.add_term({1, 0}, ComplexField::real(0.5));
  REQUIRE(m.terms.size() == 1);
  CHECK(m.terms[0].coupling == ComplexField::real(0.75));
}
