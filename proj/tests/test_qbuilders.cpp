#include "doctest.h"
#include "qcert/qbuilders.hpp"

#include <algorithm>
#include <memory>

using namespace qcert;

namespace {

std::shared_ptr<CycField> field3() { return std::make_shared<CycField>(3); }
std::shared_ptr<CycField> field5() { return std::make_shared<CycField>(5); }

// find the active rule whose lhs spells `txt` in a,b,c,d (n=2 names)
const RewriteRule* rule_for(const RewriteSystem& rs, const std::string& txt) {
  Word w;
  for (char ch : txt) w.push_back(char(ch - 'a'));
  for (const auto& r : rs.rules())
    if (r.active && r.lhs == w) return &r;
  return nullptr;
}

Word wd(const std::string& txt) {
  Word w;
  for (char ch : txt) w.push_back(char(ch - 'a'));
  return w;
}

std::vector<size_t> length_profile(const std::vector<Word>& words,
                                   size_t maxlen) {
  std::vector<size_t> prof(maxlen + 1, 0);
  for (const auto& w : words)
    if (w.size() <= maxlen) ++prof[w.size()];
  return prof;
}

}  // namespace

TEST_CASE("exact 2x2 matrices: det, product, inverse") {
  auto Fp = field3();
  const CycField& F = *Fp;
  SLMatrix m;
  m.n = 2;
  m.e = {Cyc::integer(F, 2), Cyc::integer(F, 3), Cyc::integer(F, 1),
         Cyc::integer(F, 2)};
  CHECK(m.det() == Cyc::one(F));
  SLMatrix inv = m.inverse();
  CHECK(m * inv == SLMatrix::identity(F, 2));
  CHECK(inv * m == SLMatrix::identity(F, 2));
  CHECK(!m.is_diagonal());
  CHECK(SLMatrix::scalar(F, 2, Cyc::zeta(F, 1)).is_scalar());
  SLMatrix sing;
  sing.n = 2;
  sing.e = {Cyc::one(F), Cyc::one(F), Cyc::one(F), Cyc::one(F)};
  CHECK_THROWS_AS(sing.inverse(), std::domain_error);

  // 3x3 Leibniz sanity: det of diag(1, 2, 1/2) is 1
  SLMatrix d3;
  d3.n = 3;
  d3.e.assign(9, Cyc::zero(F));
  d3.at(0, 0) = Cyc::one(F);
  d3.at(1, 1) = Cyc::integer(F, 2);
  d3.at(2, 2) = Cyc::rational(F, Rat(1, 2));
  CHECK(d3.det() == Cyc::one(F));
  CHECK(d3.is_diagonal());
  CHECK(!d3.is_scalar());
}

TEST_CASE("quantum determinant at n=2 is ad - q bc") {
  auto Fp = field3();
  const CycField& F = *Fp;
  Cyc q = Cyc::zeta(F, 1);
  NcPoly want = NcPoly::mono(F, wd("ad")) - NcPoly::mono(wd("bc"), q);
  CHECK(quantum_det(F, 2, q) == want);
}

TEST_CASE("quantum coordinate algebra of SL_2: seven rules, classical Hilbert "
          "series") {
  for (unsigned N : {3u, 5u}) {
    auto Fp = std::make_shared<CycField>(N);
    GradedBuild gb = build_oslq(Fp, 2);
    CHECK(gb.status == CompletionStatus::Complete);
    CHECK(gb.rs.active_count() == 7);

    BasisEnum be = enum_basis(gb.rs, 6, 200000);
    CHECK(!be.finite);
    auto prof = length_profile(be.words, 6);
    std::vector<size_t> want = {1, 4, 9, 16, 25, 36, 49};
    CHECK(prof == want);

    // low-degree normal forms shared by every odd N
    const CycField& F = *Fp;
    Cyc qi = Cyc::zeta(F, 1).inv();
    CHECK(gb.rs.nf(NcPoly::mono(F, wd("ba"))) ==
          NcPoly::mono(wd("ab"), qi));
    CHECK(gb.rs.nf(NcPoly::mono(F, wd("cb"))) ==
          gb.rs.nf(NcPoly::mono(F, wd("bc"))));
    NcPoly rhs = NcPoly::mono(wd("bc"), qi);
    rhs.add_term(Word(), Cyc::one(F));
    CHECK(gb.rs.nf(NcPoly::mono(F, wd("da"))) == gb.rs.nf(rhs));
  }
}

TEST_CASE("finite quotient at N=3: rules, basis, normal forms") {
  auto Fp = field3();
  const CycField& F = *Fp;
  Cyc z = Cyc::zeta(F, 1);
  FDBuild b = build_uqstar(Fp, 2);
  CHECK(b.status == CompletionStatus::Complete);
  const RewriteSystem& rs = b.alg.rs();
  CHECK(rs.active_count() == 21);
  CHECK(b.alg.dim() == 27);

  auto names = matrix_names(2);
  std::vector<std::string> got;
  for (const auto& w : b.alg.words()) got.push_back(word_name(w, names));
  std::vector<std::string> want = {
      "1",   "a",   "b",   "c",   "d",   "aa",  "ab",  "ac",  "ad",
      "bb",  "bd",  "cc",  "cd",  "dd",  "aab", "aac", "aad", "abb",
      "abd", "acc", "acd", "add", "bbd", "bdd", "ccd", "cdd", "aadd"};
  CHECK(got == want);

  // spot-check the completed rule set
  const RewriteRule* r = rule_for(rs, "ba");
  REQUIRE(r != nullptr);
  CHECK(r->rhs == NcPoly::mono(wd("ab"), -Cyc::one(F) - z));

  r = rule_for(rs, "bc");
  REQUIRE(r != nullptr);
  {
    NcPoly want_rhs = NcPoly::mono(wd("ad"), -Cyc::one(F) - z);
    want_rhs.add_term(Word(), Cyc::one(F) + z);
    CHECK(r->rhs == want_rhs);
  }

  // stored right-hand sides are not retroactively renormalized: the da rule
  // keeps a bc factor even though bc itself reduces
  r = rule_for(rs, "da");
  REQUIRE(r != nullptr);
  {
    NcPoly want_rhs = NcPoly::mono(wd("bc"), -Cyc::one(F) - z - z);
    want_rhs.add_term(wd("ad"), Cyc::one(F));
    CHECK(r->rhs == want_rhs);
    CHECK(!rs.is_irreducible(wd("bc")));
  }

  r = rule_for(rs, "aaa");
  REQUIRE(r != nullptr);
  CHECK(r->rhs == NcPoly::mono(F, Word()));
  r = rule_for(rs, "bbb");
  REQUIRE(r != nullptr);
  CHECK(r->rhs.is_zero());
  r = rule_for(rs, "aabd");
  REQUIRE(r != nullptr);
  {
    NcPoly want_rhs = NcPoly::mono(wd("bdd"), -z);
    want_rhs.add_term(wd("ab"), Cyc::one(F) + z);
    CHECK(r->rhs == want_rhs);
  }
  r = rule_for(rs, "bbdd");
  REQUIRE(r != nullptr);
  CHECK(r->rhs == NcPoly::mono(wd("abb"), z));

  // normal-form oracles
  CHECK(rs.nf(NcPoly::mono(F, wd("ba"))) ==
        NcPoly::mono(wd("ab"), z.inv()));
  NcPoly alt = NcPoly::mono(wd("bc"), z.inv());
  alt.add_term(Word(), Cyc::one(F));
  CHECK(rs.nf(NcPoly::mono(F, wd("da"))) == rs.nf(alt));

  // a * a^2 multiplies back to the unit
  int ia = b.alg.index_of(wd("a"));
  int iaa = b.alg.index_of(wd("aa"));
  REQUIRE(ia >= 0);
  REQUIRE(iaa >= 0);
  SparseVec prod = b.alg.mul_basis(size_t(ia), size_t(iaa));
  REQUIRE(prod.size() == 1);
  CHECK(prod.begin()->first == b.alg.index_of(Word()));
  CHECK(prod.begin()->second == Cyc::one(F));
}

TEST_CASE("finite quotient at N=5: dimensions only") {
  FDBuild b = build_uqstar(field5(), 2);
  CHECK(b.status == CompletionStatus::Complete);
  CHECK(b.alg.rs().active_count() == 39);
  CHECK(b.alg.dim() == 125);
}

TEST_CASE("twisted quotients T_g") {
  auto Fp = field3();
  const CycField& F = *Fp;

  SUBCASE("identity matrix reproduces the untwisted quotient") {
    FDBuild ti = build_T_g(Fp, 2, SLMatrix::identity(F, 2));
    FDBuild u = build_uqstar(Fp, 2);
    CHECK(ti.alg.dim() == u.alg.dim());
    REQUIRE(ti.alg.rs().rules().size() == u.alg.rs().rules().size());
    for (size_t i = 0; i < u.alg.rs().rules().size(); ++i) {
      const auto& r1 = ti.alg.rs().rules()[i];
      const auto& r2 = u.alg.rs().rules()[i];
      CHECK(r1.active == r2.active);
      CHECK(r1.lhs == r2.lhs);
      CHECK(r1.rhs == r2.rhs);
    }
    CHECK(ti.alg.words() == u.alg.words());
  }

  SUBCASE("diagonal twist diag(8, 1/8)") {
    SLMatrix g;
    g.n = 2;
    g.e = {Cyc::integer(F, 8), Cyc::zero(F), Cyc::zero(F),
           Cyc::rational(F, Rat(1, 8))};
    FDBuild t = build_T_g(Fp, 2, g);
    CHECK(t.status == CompletionStatus::Complete);
    CHECK(t.alg.dim() == 27);
    // a^3 = 8 in this quotient
    CHECK(t.alg.rs().nf(NcPoly::mono(F, wd("aaa"))) ==
          NcPoly::mono(Word(), Cyc::integer(F, 8)));
  }

  SUBCASE("unipotent twist [[1,1],[0,1]]") {
    SLMatrix g;
    g.n = 2;
    g.e = {Cyc::one(F), Cyc::one(F), Cyc::zero(F), Cyc::one(F)};
    FDBuild t = build_T_g(Fp, 2, g);
    CHECK(t.status == CompletionStatus::Complete);
    CHECK(t.alg.dim() == 27);
    CHECK(t.alg.rs().nf(NcPoly::mono(F, wd("bbb"))) ==
          NcPoly::mono(F, Word()));
    CHECK(t.alg.rs().nf(NcPoly::mono(F, wd("ccc"))).is_zero());
  }

  SUBCASE("determinant must be one") {
    SLMatrix bad;
    bad.n = 2;
    bad.e = {Cyc::integer(F, 2), Cyc::zero(F), Cyc::zero(F), Cyc::one(F)};
    CHECK_THROWS_AS(build_T_g(Fp, 2, bad), std::invalid_argument);
  }
}

TEST_CASE("two-generator quotients") {
  auto Fp = field3();
  const CycField& F = *Fp;
  Cyc q = Cyc::zeta(F, 1);

  FDBuild taft = build_taft(Fp);
  CHECK(taft.alg.dim() == 9);
  // basis is g^i x^j; generator 0 is g, generator 1 is x
  const RewriteSystem& rs = taft.alg.rs();
  // xg reduces to q^{-1} gx
  NcPoly xg = NcPoly::mono(F, word_of({1, 0}));
  CHECK(rs.nf(xg) == NcPoly::mono(word_of({0, 1}), q.inv()));
  CHECK(rs.nf(NcPoly::mono(F, word_pow(0, 3))) == NcPoly::mono(F, Word()));
  CHECK(rs.nf(NcPoly::mono(F, word_pow(1, 3))).is_zero());

  Cyc s = Cyc::integer(F, 2);
  FDBuild cleft = build_cleft_A(Fp, s);
  CHECK(cleft.alg.dim() == 9);
  CHECK(cleft.alg.rs().nf(NcPoly::mono(F, word_pow(1, 3))) ==
        NcPoly::mono(Word(), s));
}

TEST_CASE("Frobenius ladder at n=2, N=3") {
  auto Fp = field3();
  FrobeniusSequence seq = build_frobenius_sequence(Fp, 2);
  CHECK(seq.classical.status == CompletionStatus::Complete);
  CHECK(seq.quantum.status == CompletionStatus::Complete);

  FrobeniusReport rep = verify_frobenius_sequence(seq, 9);
  CHECK(rep.centrality);
  CHECK(rep.counit_compat);
  CHECK(rep.injective_bounded);
  CHECK(rep.rank_classical == 30);
  CHECK(rep.rank_quantum == 30);
  CHECK(rep.pass());
}
