#include "qcert/qbuilders.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qcert {

SLMatrix SLMatrix::identity(const CycField& F, int n) {
  SLMatrix m;
  m.n = n;
  m.e.assign(size_t(n) * size_t(n), Cyc::zero(F));
  for (int i = 0; i < n; ++i) m.at(i, i) = Cyc::one(F);
  return m;
}

SLMatrix SLMatrix::scalar(const CycField& F, int n, const Cyc& lambda) {
  SLMatrix m = identity(F, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = lambda;
  return m;
}

Cyc SLMatrix::det() const {
  if (n <= 0 || e.empty()) throw std::logic_error("SLMatrix::det on empty matrix");
  const CycField& F = *e[0].field();
  // Leibniz sum over permutations; n is at most 3 in practice.
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Cyc acc = Cyc::zero(F);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[size_t(i)] > perm[size_t(j)]) ++inv;
    Cyc term = (inv % 2 == 0) ? Cyc::one(F) : -Cyc::one(F);
    for (int i = 0; i < n; ++i) term *= at(i, perm[size_t(i)]);
    acc += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

SLMatrix SLMatrix::operator*(const SLMatrix& o) const {
  if (n != o.n) throw std::logic_error("SLMatrix: size mismatch");
  const CycField& F = *e[0].field();
  SLMatrix r;
  r.n = n;
  r.e.assign(size_t(n) * size_t(n), Cyc::zero(F));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cyc s = Cyc::zero(F);
      for (int k = 0; k < n; ++k) s += at(i, k) * o.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

SLMatrix SLMatrix::inverse() const {
  const CycField& F = *e[0].field();
  Cyc d = det();
  if (d.is_zero()) throw std::domain_error("SLMatrix: singular matrix");
  Cyc dinv = d.inv();
  SLMatrix r;
  r.n = n;
  r.e.assign(size_t(n) * size_t(n), Cyc::zero(F));
  if (n == 1) {
    r.at(0, 0) = dinv;
    return r;
  }
  // Adjugate: cofactor of (i,j) goes to (j,i).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      SLMatrix sub;
      sub.n = n - 1;
      for (int a = 0; a < n; ++a) {
        if (a == i) continue;
        for (int b = 0; b < n; ++b) {
          if (b == j) continue;
          sub.e.push_back(at(a, b));
        }
      }
      Cyc cof = sub.det();
      if ((i + j) % 2 == 1) cof = -cof;
      r.at(j, i) = cof * dinv;
    }
  }
  return r;
}

bool SLMatrix::operator==(const SLMatrix& o) const {
  if (n != o.n) return false;
  for (size_t k = 0; k < e.size(); ++k)
    if (e[k] != o.e[k]) return false;
  return true;
}

bool SLMatrix::is_diagonal() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

bool SLMatrix::is_scalar() const {
  if (!is_diagonal()) return false;
  for (int i = 1; i < n; ++i)
    if (at(i, i) != at(0, 0)) return false;
  return true;
}

std::string SLMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < n; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n; ++j) {
      if (j) s += ",";
      s += at(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

std::vector<std::string> matrix_names(int n) {
  if (n == 2) return {"a", "b", "c", "d"};
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      out.push_back("x" + std::to_string(i) + std::to_string(j));
  return out;
}

std::vector<NcPoly> frt_relations(const CycField& F, int n, const Cyc& q) {
  std::vector<NcPoly> rels;
  const Cyc qi = q.inv();
  auto X = [n](int i, int j) { return Word(1, char(gen_xij(n, i, j))); };
  // same row: x_ki x_kj = q x_kj x_ki for i < j
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        rels.push_back(NcPoly::mono(F, X(k, i) + X(k, j)) -
                       NcPoly::mono(X(k, j) + X(k, i), q));
  // same column: x_ik x_jk = q x_jk x_ik for i < j
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        rels.push_back(NcPoly::mono(F, X(i, k) + X(j, k)) -
                       NcPoly::mono(X(j, k) + X(i, k), q));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          // NE/SW commute: x_il x_jk = x_jk x_il
          rels.push_back(NcPoly::mono(F, X(i, l) + X(j, k)) -
                         NcPoly::mono(F, X(j, k) + X(i, l)));
          // NW/SE straighten: x_ik x_jl - x_jl x_ik = (q - q^-1) x_il x_jk
          rels.push_back(NcPoly::mono(F, X(i, k) + X(j, l)) -
                         NcPoly::mono(F, X(j, l) + X(i, k)) -
                         NcPoly::mono(X(i, l) + X(j, k), q - qi));
        }
  return rels;
}

NcPoly quantum_det(const CycField& F, int n, const Cyc& q) {
  (void)F;  // the coefficients carry the field
  NcPoly p;
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[size_t(i)] > perm[size_t(j)]) ++inv;
    Cyc coef = (-q).pow(inv);
    Word w;
    for (int i = 0; i < n; ++i) w.push_back(char(gen_xij(n, i, perm[size_t(i)])));
    p.add_term(w, coef);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

NcPoly power_relation(const CycField& F, int gen, unsigned Npow, const Cyc& value) {
  NcPoly p = NcPoly::mono(F, word_pow(gen, int(Npow)));
  p.add_term(Word(), -value);
  return p;
}

namespace {

std::vector<NcPoly> oslq_relations(const CycField& F, int n, const Cyc& q) {
  std::vector<NcPoly> rels = frt_relations(F, n, q);
  NcPoly dq = quantum_det(F, n, q);
  dq.add_term(Word(), -Cyc::one(F));
  rels.push_back(dq);
  return rels;
}

GradedBuild graded_build(std::shared_ptr<CycField> F, int n, const Cyc& q,
                         size_t bound) {
  auto rels = oslq_relations(*F, n, q);
  CompletionResult comp = complete(*F, n * n, rels, bound);
  Presentation pres = make_presentation(matrix_names(n), F->order(), F, rels);
  return GradedBuild{std::move(pres), std::move(comp.rs), comp.status};
}

}  // namespace

GradedBuild build_oslq(std::shared_ptr<CycField> F, int n, size_t bound) {
  return graded_build(F, n, Cyc::zeta(*F, 1), bound);
}

GradedBuild build_classical_sl(std::shared_ptr<CycField> F, int n, size_t bound) {
  return graded_build(F, n, Cyc::one(*F), bound);
}

FDBuild build_T_g(std::shared_ptr<CycField> F, int n, const SLMatrix& g,
                  size_t bound, size_t max_rules) {
  if (g.n != n) throw std::invalid_argument("build_T_g: matrix size mismatch");
  if (!g.det().is_one())
    throw std::invalid_argument("build_T_g: matrix must have determinant 1");
  const Cyc q = Cyc::zeta(*F, 1);
  std::vector<NcPoly> rels = oslq_relations(*F, n, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rels.push_back(power_relation(*F, gen_xij(n, i, j), F->order(), g.at(i, j)));
  CompletionOptions opt;
  opt.max_rules = max_rules;
  CompletionResult comp = complete(*F, n * n, rels, bound, opt);
  BasisEnum be = enum_basis(comp.rs);
  if (!be.finite)
    throw std::runtime_error("build_T_g: basis not finite (bound too small?)");
  Presentation pres = make_presentation(matrix_names(n), F->order(), F, rels);
  return FDBuild{std::move(pres), comp.status,
                 FDAlgebra(std::move(comp.rs), std::move(be.words))};
}

FDBuild build_uqstar(std::shared_ptr<CycField> F, int n, size_t bound,
                     size_t max_rules) {
  return build_T_g(F, n, SLMatrix::identity(*F, n), bound, max_rules);
}

namespace {

FDBuild two_generator_build(std::shared_ptr<CycField> F,
                            std::vector<std::string> names, const Cyc& xN_value) {
  const Cyc q = Cyc::zeta(*F, 1);
  const unsigned N = F->order();
  // generators: 0 = grouplike, 1 = skew-primitive; relation xg = q^{-1} gx
  std::vector<NcPoly> rels;
  rels.push_back(NcPoly::mono(*F, word_of({1, 0})) -
                 NcPoly::mono(word_of({0, 1}), q.inv()));
  rels.push_back(power_relation(*F, 0, N, Cyc::one(*F)));
  rels.push_back(power_relation(*F, 1, N, xN_value));
  CompletionResult comp = complete(*F, 2, rels, 3 * size_t(N));
  BasisEnum be = enum_basis(comp.rs);
  if (comp.status != CompletionStatus::Complete || !be.finite ||
      be.words.size() != size_t(N) * N)
    throw std::runtime_error("two-generator build: unexpected completion shape");
  Presentation pres = make_presentation(std::move(names), N, F, rels);
  return FDBuild{std::move(pres), comp.status,
                 FDAlgebra(std::move(comp.rs), std::move(be.words))};
}

}  // namespace

FDBuild build_taft(std::shared_ptr<CycField> F) {
  return two_generator_build(F, {"g", "x"}, Cyc::zero(*F));
}

FDBuild build_cleft_A(std::shared_ptr<CycField> F, const Cyc& s) {
  return two_generator_build(F, {"G", "X"}, s);
}

FrobeniusSequence build_frobenius_sequence(std::shared_ptr<CycField> F, int n,
                                           size_t bound) {
  FrobeniusSequence seq{n,
                        F->order(),
                        F,
                        build_classical_sl(F, n, bound),
                        build_oslq(F, n, bound),
                        build_uqstar(F, n, bound)};
  return seq;
}

FrobeniusReport verify_frobenius_sequence(FrobeniusSequence& seq,
                                          size_t degree_bound) {
  FrobeniusReport rep;
  const CycField& F = *seq.F;
  const int nn = seq.n * seq.n;
  const unsigned N = seq.N;
  RewriteSystem& H = seq.quantum.rs;
  auto names = matrix_names(seq.n);

  // (a) centrality of each x_ij^N against each generator, exact.
  rep.centrality = true;
  for (int gidx = 0; gidx < nn && rep.centrality; ++gidx) {
    Word p = word_pow(gidx, int(N));
    for (int k = 0; k < nn; ++k) {
      Word gk(1, char(k));
      NcPoly diff = NcPoly::mono(F, p + gk) - NcPoly::mono(F, gk + p);
      if (!H.nf(diff).is_zero()) {
        rep.centrality = false;
        rep.detail += "centrality fails for " + names[size_t(gidx)] + "^" +
                      std::to_string(N) + " vs " + names[size_t(k)] + "; ";
        break;
      }
    }
  }

  // (b) the projection to the finite quotient sends x_ij^N to delta_ij.
  rep.counit_compat = true;
  RewriteSystem& L = seq.small.alg.rs();
  for (int i = 0; i < seq.n; ++i) {
    for (int j = 0; j < seq.n; ++j) {
      NcPoly img = L.nf(NcPoly::mono(F, word_pow(gen_xij(seq.n, i, j), int(N))));
      NcPoly want =
          i == j ? NcPoly::mono(F, Word()) : NcPoly();
      if (!(img == want)) {
        rep.counit_compat = false;
        rep.detail += "projection of " + names[size_t(gen_xij(seq.n, i, j))] +
                      "^" + std::to_string(N) + " is not its counit value; ";
      }
    }
  }

  // (c) bounded injectivity: classical irreducible monomials of degree
  // <= degree_bound / N lift through X_ij -> x_ij^N; their quantum normal
  // forms must stay linearly independent, with rank equal to the classical
  // filtration dimension.
  const size_t class_deg = degree_bound / N;
  BasisEnum cb = enum_basis(seq.classical.rs, class_deg);
  std::vector<Word> cwords;
  for (const Word& w : cb.words)
    if (w.size() <= class_deg) cwords.push_back(w);
  rep.rank_classical = int(cwords.size());
  // Column indices assigned to quantum normal-form words on first sight.
  std::unordered_map<Word, int> col;
  RowSpace rows(F);
  int rank = 0;
  for (const Word& w : cwords) {
    Word lifted;
    for (char ch : w) lifted += word_pow(int(static_cast<unsigned char>(ch)), int(N));
    NcPoly nf = H.nf(NcPoly::mono(F, lifted));
    SparseVec v;
    for (const auto& [mw, mc] : nf.terms()) {
      auto it = col.find(mw);
      int c;
      if (it == col.end()) {
        c = int(col.size());
        col.emplace(mw, c);
      } else {
        c = it->second;
      }
      sv_add(v, c, mc);
    }
    if (rows.insert(std::move(v))) ++rank;
  }
  rep.rank_quantum = rank;
  rep.injective_bounded = (rank == rep.rank_classical);
  if (!rep.injective_bounded)
    rep.detail += "lifted monomial rank " + std::to_string(rank) +
                  " below classical filtration dimension " +
                  std::to_string(rep.rank_classical) + "; ";
  return rep;
}

}  // namespace qcert
