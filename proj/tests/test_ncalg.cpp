#include "doctest.h"
#include "qcert/ncalg.hpp"

#include <random>
#include <sstream>

using namespace qcert;

namespace {

// Two-generator system of Taft type: yx = q^-1 xy, x^N = 1, y^N = s.
std::vector<NcPoly> qplane_relations(const CycField& F, const Cyc& s) {
  const Cyc q = Cyc::zeta(F, 1);
  std::vector<NcPoly> rels;
  rels.push_back(NcPoly::mono(F, word_of({1, 0})) -
                 NcPoly::mono(word_of({0, 1}), q.inv()));
  NcPoly xN = NcPoly::mono(F, word_pow(0, int(F.order())));
  xN.add_term(Word(), -Cyc::one(F));
  rels.push_back(xN);
  NcPoly yN = NcPoly::mono(F, word_pow(1, int(F.order())));
  yN.add_term(Word(), -s);
  rels.push_back(yN);
  return rels;
}

}  // namespace

TEST_CASE("deglex orders by length then letters") {
  DegLex lt;
  CHECK(lt(word_of({}), word_of({0})));
  CHECK(lt(word_of({3}), word_of({0, 0})));
  CHECK(lt(word_of({0, 1}), word_of({1, 0})));
  CHECK_FALSE(lt(word_of({1, 0}), word_of({0, 1})));
  CHECK_FALSE(lt(word_of({2}), word_of({2})));
}

TEST_CASE("polynomial arithmetic and lead terms") {
  CycField F(3);
  NcPoly p = NcPoly::mono(F, word_of({0, 1}));
  NcPoly q = NcPoly::mono(word_of({1, 0}), Cyc::zeta(F, 1));
  NcPoly s = p + q;
  CHECK(s.size() == 2);
  CHECK(s.lead() == word_of({1, 0}));
  CHECK(s.lead_coeff() == Cyc::zeta(F, 1));
  CHECK((p - p).is_zero());
  // (xy + z*yx) * x
  NcPoly t = s * NcPoly::mono(F, word_of({0}));
  CHECK(t.size() == 2);
  CHECK(t.coeff(F, word_of({1, 0, 0})) == Cyc::zeta(F, 1));
  CHECK(NcPoly().is_zero());
  CHECK_THROWS_AS(NcPoly().lead(), std::logic_error);
}

TEST_CASE("completion of the q-plane quotient: dimension N^2") {
  CycField F(3);
  auto rels = qplane_relations(F, Cyc::one(F));
  CompletionResult res = complete(F, 2, rels, 9);
  CHECK(res.status == CompletionStatus::Complete);
  BasisEnum be = enum_basis(res.rs);
  CHECK(be.finite);
  CHECK(be.words.size() == 9);
  // x^i y^j ordering: every basis word has all 0s before all 1s
  for (const Word& w : be.words) {
    bool seen1 = false;
    for (char ch : w) {
      if (ch == 1) seen1 = true;
      if (seen1) CHECK(ch == 1);
    }
  }
}

TEST_CASE("normal forms respect the q-commutation") {
  CycField F(3);
  const Cyc q = Cyc::zeta(F, 1);
  auto rels = qplane_relations(F, Cyc::one(F));
  CompletionResult res = complete(F, 2, rels, 9);
  RewriteSystem& rs = res.rs;
  // yx -> q^-1 xy
  CHECK(rs.nf(NcPoly::mono(F, word_of({1, 0}))) ==
        NcPoly::mono(word_of({0, 1}), q.inv()));
  // y x^2 -> q^-2 x^2 y
  CHECK(rs.nf(NcPoly::mono(F, word_of({1, 0, 0}))) ==
        NcPoly::mono(word_of({0, 0, 1}), q.pow(-2)));
  // x^3 = 1
  CHECK(rs.nf(NcPoly::mono(F, word_pow(0, 3))) == NcPoly::mono(F, Word()));
  // nf is idempotent
  NcPoly p = NcPoly::mono(F, word_of({1, 1, 0, 0})) +
             NcPoly::mono(word_of({1, 0, 1, 0}), q);
  CHECK(rs.nf(rs.nf(p)) == rs.nf(p));
}

TEST_CASE("confluence in practice: products reduce associatively") {
  CycField F(5);
  auto rels = qplane_relations(F, Cyc::zeta(F, 1));
  CompletionResult res = complete(F, 2, rels, 15);
  REQUIRE(res.status == CompletionStatus::Complete);
  BasisEnum be = enum_basis(res.rs);
  REQUIRE(be.finite);
  REQUIRE(be.words.size() == 25);
  FDAlgebra A(std::move(res.rs), std::move(be.words));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int i = int(rng() % unsigned(A.dim()));
    int j = int(rng() % unsigned(A.dim()));
    int k = int(rng() % unsigned(A.dim()));
    SparseVec ij_k = A.mul_vec(A.mul_basis(i, j), A.vec_word(A.word(k)));
    SparseVec i_jk = A.mul_vec(A.vec_word(A.word(i)), A.mul_basis(j, k));
    CHECK(sv_equal(ij_k, i_jk));
  }
}

TEST_CASE("degree bound produces an honest Bounded status") {
  CycField F(3);
  auto rels = qplane_relations(F, Cyc::one(F));
  // power relations have length 3; bound 2 forces discards
  CompletionResult res = complete(F, 2, rels, 2);
  CHECK(res.status == CompletionStatus::Bounded);
}

TEST_CASE("free algebra basis grows without bound") {
  CycField F(3);
  RewriteSystem rs(F, 2);
  BasisEnum be = enum_basis(rs, 3);
  CHECK_FALSE(be.finite);
  CHECK(be.words.size() == 15);  // 1 + 2 + 4 + 8
}

TEST_CASE("rule storage round-trips through the text form") {
  CycField F(3);
  auto rels = qplane_relations(F, Cyc::integer(F, 2));
  CompletionResult res = complete(F, 2, rels, 9);
  std::ostringstream os;
  res.rs.save(os);
  std::istringstream is(os.str());
  RewriteSystem back = RewriteSystem::load(F, is);
  auto r1 = res.rs.active_rules();
  auto r2 = back.active_rules();
  REQUIRE(r1.size() == r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].first == r2[i].first);
    CHECK(r1[i].second == r2[i].second);
  }
  // and the reloaded system reduces identically
  NcPoly probe = NcPoly::mono(F, word_of({1, 1, 0, 0, 1}));
  CHECK(res.rs.nf(probe) == back.nf(probe));
}

TEST_CASE("completion is deterministic") {
  CycField F(3);
  auto rels = qplane_relations(F, Cyc::one(F));
  CompletionResult a = complete(F, 2, rels, 9);
  CompletionResult b = complete(F, 2, rels, 9);
  auto ra = a.rs.active_rules();
  auto rb = b.rs.active_rules();
  REQUIRE(ra.size() == rb.size());
  for (size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].first == rb[i].first);
    CHECK(ra[i].second == rb[i].second);
  }
}

TEST_CASE("reduction prefers the leftmost occurrence, then the lowest rule") {
  CycField F(3);
  // Two overlapping-free rules on disjoint words: 10 -> 0, 21 -> 0 (as
  // monomial annihilations), probing the match-selection order.
  RewriteSystem rs(F, 3);
  rs.add_rule(word_of({1, 0}), NcPoly());
  rs.add_rule(word_of({2, 1}), NcPoly());
  // word 2 1 0: position 0 matches rule 1 (21), position 1 matches rule 0
  // (10); leftmost wins, so everything dies via rule 1 first. Either path
  // gives zero here; the point is it must not throw and must be stable.
  CHECK(rs.nf(NcPoly::mono(F, word_of({2, 1, 0}))).is_zero());
  // A shared-position probe: rules at the same position, lower index wins.
  RewriteSystem rs2(F, 2);
  rs2.add_rule(word_of({0, 0}), NcPoly::mono(F, word_of({1})));
  rs2.add_rule(word_of({0, 0, 1}), NcPoly());
  // 0 0 1: leftmost occurrences at position 0 for both rules (lengths 2 and
  // 3); rule 0 has the lower index, so 001 -> (nf of) 11.
  CHECK(rs2.nf(NcPoly::mono(F, word_of({0, 0, 1}))) ==
        NcPoly::mono(F, word_of({1, 1})));
}

TEST_CASE("word helpers") {
  CHECK(word_pow(2, 3) == word_of({2, 2, 2}));
  CHECK(word_name(word_of({0, 1, 0}), {"a", "b"}) == "aba");
  CHECK(word_name(Word(), {"a"}) == "1");
}
