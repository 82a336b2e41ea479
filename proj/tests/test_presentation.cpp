#include "doctest.h"
#include "qcert/presentation.hpp"

using namespace qcert;

static const char* kSample =
    "# two-generator sample\n"
    "gens a b c d\n"
    "field cyclotomic 3\n"
    "order deglex a b c d\n"
    "rel b*a - (1/q)*a*b\n"
    "rel a^3 - 1\n";

TEST_CASE("parses the documented sample") {
  Presentation p = parse_presentation(kSample);
  CHECK(p.N == 3);
  REQUIRE(p.names.size() == 4);
  CHECK(p.names[0] == "a");
  REQUIRE(p.rels.size() == 2);
  const CycField& F = *p.field;
  // b*a - q^-1 a*b with a=0, b=1
  NcPoly want = NcPoly::mono(F, word_of({1, 0})) -
                NcPoly::mono(word_of({0, 1}), Cyc::zeta(F, 1).inv());
  CHECK(p.rels[0] == want);
  NcPoly cube = NcPoly::mono(F, word_of({0, 0, 0}));
  cube.add_term(Word(), -Cyc::one(F));
  CHECK(p.rels[1] == cube);
}

TEST_CASE("z and q denote the same root of unity") {
  Presentation p = parse_presentation(
      "gens u v\nfield cyclotomic 5\nrel u*v - (z^2)*v*u\nrel u*v - "
      "(q^2)*v*u\n");
  CHECK(p.rels[0] == p.rels[1]);
}

TEST_CASE("scalar grammar: fractions, powers, signed sums") {
  Presentation p = parse_presentation(
      "gens u\nfield cyclotomic 3\n"
      "rel (1/2 + z - z^2)*u - (3/6 + q - q^2)*u\n");
  CHECK(p.rels[0].is_zero());
}

TEST_CASE("order line permutes generator priority") {
  Presentation p = parse_presentation(
      "gens a b\nfield cyclotomic 3\norder deglex b a\nrel a*b - b*a\n");
  // names follow the order line: b is generator 0
  CHECK(p.names[0] == "b");
  CHECK(p.names[1] == "a");
  // a*b = word {1,0}
  CHECK(p.rels[0].lead() == word_of({1, 0}));
}

TEST_CASE("diagnostics carry line and column") {
  try {
    parse_presentation("gens a b\nfield cyclotomic 3\nrel a*e\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col == 7);
    CHECK(std::string(e.what()).find("unknown symbol 'e'") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_presentation("gens a\nfield cyclotomic 4\nrel a\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a q\nfield cyclotomic 3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a a\nfield cyclotomic 3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a b\nfield cyclotomic 3\norder "
                                     "deglex a\nrel a\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_presentation("bogus directive\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nfield cyclotomic 3\nrel a +\n"),
                  ParseError);
}

TEST_CASE("canonical text re-parses to itself") {
  Presentation p = parse_presentation(kSample);
  std::string c1 = p.canonical_text();
  Presentation q = parse_presentation(c1);
  CHECK(q.canonical_text() == c1);
  CHECK(q.N == p.N);
  CHECK(q.rels.size() == p.rels.size());
  for (size_t i = 0; i < q.rels.size(); ++i) CHECK(q.rels[i] == p.rels[i]);
}

TEST_CASE("hash distinguishes presentations and versions") {
  Presentation p = parse_presentation(kSample);
  Presentation q = parse_presentation(
      "gens a b c d\nfield cyclotomic 3\norder deglex a b c d\n"
      "rel b*a - (q)*a*b\nrel a^3 - 1\n");
  CHECK(presentation_hash(p, "1.0.0") != presentation_hash(q, "1.0.0"));
  CHECK(presentation_hash(p, "1.0.0") != presentation_hash(p, "1.0.1"));
  CHECK(presentation_hash(p, "1.0.0") ==
        presentation_hash(parse_presentation(kSample), "1.0.0"));
}
