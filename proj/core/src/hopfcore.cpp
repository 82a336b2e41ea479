#include "qcert/hopfcore.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcert {

TensorElem tp_mul(const TensorElem& t1, const TensorElem& t2,
                  const FDAlgebra& L, const FDAlgebra& R) {
  TensorElem out;
  for (const auto& [p1, c1] : t1) {
    for (const auto& [p2, c2] : t2) {
      Cyc c12 = c1 * c2;
      const NcPoly& pa = L.rs().nf_word(p1.first + p2.first);
      const NcPoly& pb = R.rs().nf_word(p1.second + p2.second);
      for (const auto& [wa, ca] : pa.terms()) {
        for (const auto& [wb, cb] : pb.terms()) {
          WordPair k{wa, wb};
          auto it = out.find(k);
          Cyc v = (it == out.end() ? Cyc::zero(*c12.field()) : it->second) +
                  c12 * ca * cb;
          if (v.is_zero()) {
            if (it != out.end()) out.erase(it);
          } else {
            out[k] = v;
          }
        }
      }
    }
  }
  return out;
}

void tp_scale_add(TensorElem& acc, const TensorElem& t, const Cyc& c) {
  if (c.is_zero()) return;
  for (const auto& [k, v] : t) {
    auto it = acc.find(k);
    Cyc s = (it == acc.end() ? Cyc::zero(*c.field()) : it->second) + v * c;
    if (s.is_zero()) {
      if (it != acc.end()) acc.erase(it);
    } else {
      acc[k] = s;
    }
  }
}

std::string tp_to_string(const TensorElem& t,
                         const std::vector<std::string>& lnames,
                         const std::vector<std::string>& rnames) {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : t) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + word_name(k.first, lnames) + "(x)" +
           word_name(k.second, rnames);
  }
  return out;
}

std::map<Word, TensorElem> tensor_table(const std::vector<Word>& domain_words,
                                        const std::vector<TensorElem>& gen_images,
                                        const FDAlgebra& L, const FDAlgebra& R) {
  std::map<Word, TensorElem> tab;
  const CycField& F = L.rs().field();
  for (const Word& w : domain_words) {
    TensorElem t;
    t[{Word(), Word()}] = Cyc::one(F);
    for (char ch : w) {
      size_t g = size_t(static_cast<unsigned char>(ch));
      if (g >= gen_images.size())
        throw std::logic_error("tensor_table: word uses an unknown generator");
      t = tp_mul(t, gen_images[g], L, R);
    }
    tab[w] = std::move(t);
  }
  return tab;
}

TensorElem HopfAlgebra::delta_of(const NcPoly& p) const {
  TensorElem out;
  SparseVec v = alg.vec(p);
  for (const auto& [i, c] : v)
    tp_scale_add(out, delta.at(alg.word(size_t(i))), c);
  return out;
}

Cyc HopfAlgebra::counit_of(const NcPoly& p) const {
  Cyc acc = Cyc::zero(*F);
  SparseVec v = alg.vec(p);
  for (const auto& [i, c] : v) acc += c * counit.at(alg.word(size_t(i)));
  return acc;
}

NcPoly HopfAlgebra::antipode_of(const NcPoly& p) const {
  NcPoly acc;
  SparseVec v = alg.vec(p);
  for (const auto& [i, c] : v)
    acc = acc + antipode.at(alg.word(size_t(i))).scale(c);
  return alg.rs().nf(acc);
}

NcPoly quantum_minor(const CycField& F, int n, const Cyc& q, int del_row,
                     int del_col) {
  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    if (i != del_row) rows.push_back(i);
    if (i != del_col) cols.push_back(i);
  }
  int m = n - 1;
  NcPoly p;
  if (m == 0) {
    p.add_term(Word(), Cyc::one(F));
    return p;
  }
  std::vector<int> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (perm[size_t(i)] > perm[size_t(j)]) ++inv;
    Word w;
    for (int i = 0; i < m; ++i)
      w.push_back(char(gen_xij(n, rows[size_t(i)], cols[size_t(perm[size_t(i)])])));
    p.add_term(w, (-q).pow(inv));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

namespace {

// shared table construction once generator-level data is fixed
void finish_tables(HopfAlgebra& H) {
  H.delta = tensor_table(H.alg.words(), H.delta_gen, H.alg, H.alg);
  for (const Word& w : H.alg.words()) {
    Cyc e = Cyc::one(*H.F);
    for (char ch : w) e *= H.counit_gen[size_t(static_cast<unsigned char>(ch))];
    H.counit[w] = e;
    NcPoly s = NcPoly::mono(*H.F, Word());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      s = s * H.antipode_gen[size_t(static_cast<unsigned char>(*it))];
    H.antipode[w] = H.alg.rs().nf(s);
  }
}

}  // namespace

HopfAlgebra make_matrix_hopf(std::shared_ptr<CycField> F, int n, FDBuild build) {
  HopfAlgebra H{F, std::move(build.pres), std::move(build.alg),
                matrix_names(n), {}, {}, {}, {}, {}, {}};
  Cyc q = Cyc::zeta(*F, 1);
  Cyc one = Cyc::one(*F);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TensorElem d;
      for (int k = 0; k < n; ++k) {
        Word l(1, char(gen_xij(n, i, k)));
        Word r(1, char(gen_xij(n, k, j)));
        d[{l, r}] = one;
      }
      H.delta_gen.push_back(std::move(d));
      H.counit_gen.push_back(i == j ? one : Cyc::zero(*F));
      NcPoly minor = quantum_minor(*F, n, q, j, i);
      H.antipode_gen.push_back(minor.scale((-q).pow(long(i) - long(j))));
    }
  }
  finish_tables(H);
  return H;
}

HopfAlgebra make_taft_hopf(std::shared_ptr<CycField> F, FDBuild build) {
  HopfAlgebra H{F, std::move(build.pres), std::move(build.alg),
                {},   {}, {}, {}, {}, {}, {}};
  H.names = H.pres.names;
  unsigned N = F->order();
  Cyc q = Cyc::zeta(*F, 1);
  Cyc one = Cyc::one(*F);
  Word g(1, char(0)), x(1, char(1));
  Word ginv(size_t(N - 1), char(0));

  TensorElem dg;
  dg[{g, g}] = one;
  TensorElem dx;
  dx[{g, x}] = one;
  dx[{x, ginv}] = one;
  H.delta_gen = {dg, dx};
  H.counit_gen = {one, Cyc::zero(*F)};
  // S(g) = g^{N-1}; S(x) = -g^{N-1} x g which reduces to -q^{-1} x
  H.antipode_gen = {NcPoly::mono(*F, ginv), NcPoly::mono(x, -q.inv())};
  finish_tables(H);
  return H;
}

AxiomReport verify_hopf_axioms(const HopfAlgebra& H) {
  AxiomReport rep;
  rep.delta_alg_map = true;
  rep.counit_alg_map = true;
  rep.coassoc = true;
  rep.counit_law = true;
  rep.antipode_law = true;
  rep.antipode_antihom = true;
  std::ostringstream detail;
  const CycField& F = *H.F;
  const auto& words = H.words();
  const FDAlgebra& A = H.alg;

  // multiplicativity of Delta and eps on all basis pairs
  for (const Word& u : words) {
    for (const Word& v : words) {
      SparseVec uv = A.mul_words(u, v);
      TensorElem lhs;
      Cyc elhs = Cyc::zero(F);
      for (const auto& [i, c] : uv) {
        const Word& w = A.word(size_t(i));
        tp_scale_add(lhs, H.delta.at(w), c);
        elhs += c * H.counit.at(w);
      }
      TensorElem rhs = tp_mul(H.delta.at(u), H.delta.at(v), A, A);
      if (rep.delta_alg_map && lhs != rhs) {
        rep.delta_alg_map = false;
        detail << "Delta not multiplicative at (" << H.word_str(u) << ", "
               << H.word_str(v) << "); ";
      }
      if (rep.counit_alg_map && elhs != H.counit.at(u) * H.counit.at(v)) {
        rep.counit_alg_map = false;
        detail << "eps not multiplicative at (" << H.word_str(u) << ", "
               << H.word_str(v) << "); ";
      }
      // antipode reverses products
      NcPoly slhs;
      for (const auto& [i, c] : uv)
        slhs = slhs + H.antipode.at(A.word(size_t(i))).scale(c);
      slhs = A.rs().nf(slhs);
      NcPoly srhs = A.rs().nf(H.antipode.at(v) * H.antipode.at(u));
      if (rep.antipode_antihom && slhs != srhs) {
        rep.antipode_antihom = false;
        detail << "S not anti-multiplicative at (" << H.word_str(u) << ", "
               << H.word_str(v) << "); ";
      }
    }
  }

  for (const Word& w : words) {
    const TensorElem& dw = H.delta.at(w);
    // coassociativity
    Tensor3 left, right;
    for (const auto& [p, c] : dw) {
      for (const auto& [p2, c2] : H.delta.at(p.first)) {
        std::array<Word, 3> k{p2.first, p2.second, p.second};
        Cyc v = (left.count(k) ? left[k] : Cyc::zero(F)) + c * c2;
        if (v.is_zero()) left.erase(k); else left[k] = v;
      }
      for (const auto& [p2, c2] : H.delta.at(p.second)) {
        std::array<Word, 3> k{p.first, p2.first, p2.second};
        Cyc v = (right.count(k) ? right[k] : Cyc::zero(F)) + c * c2;
        if (v.is_zero()) right.erase(k); else right[k] = v;
      }
    }
    if (rep.coassoc && left != right) {
      rep.coassoc = false;
      detail << "coassociativity fails at " << H.word_str(w) << "; ";
    }

    // counit law both sides
    NcPoly l, r;
    for (const auto& [p, c] : dw) {
      l.add_term(p.second, c * H.counit.at(p.first));
      r.add_term(p.first, c * H.counit.at(p.second));
    }
    NcPoly idw = NcPoly::mono(F, w);
    if (rep.counit_law && !(A.rs().nf(l) == idw && A.rs().nf(r) == idw)) {
      rep.counit_law = false;
      detail << "counit law fails at " << H.word_str(w) << "; ";
    }

    // antipode law both sides
    NcPoly sa, sb;
    for (const auto& [p, c] : dw) {
      sa = sa + (H.antipode.at(p.first) * NcPoly::mono(F, p.second)).scale(c);
      sb = sb + (NcPoly::mono(F, p.first) * H.antipode.at(p.second)).scale(c);
    }
    NcPoly want;
    if (!H.counit.at(w).is_zero()) want.add_term(Word(), H.counit.at(w));
    if (rep.antipode_law &&
        !(A.rs().nf(sa) == want && A.rs().nf(sb) == want)) {
      rep.antipode_law = false;
      detail << "antipode law fails at " << H.word_str(w) << "; ";
    }
  }
  rep.detail = detail.str();
  return rep;
}

MutationOutcome antipode_mutation_probe(const HopfAlgebra& H) {
  MutationOutcome out;
  // flip the sign of S on generator 1 (e.g. S(b) := +1/q b) and re-certify;
  // the checker must pinpoint a counterexample, else it is vacuous
  HopfAlgebra M = H;
  size_t victim = M.antipode_gen.size() > 1 ? 1 : 0;
  M.antipode_gen[victim] = M.antipode_gen[victim].scale(-Cyc::one(*M.F));
  M.delta.clear();
  M.counit.clear();
  M.antipode.clear();
  M.delta = tensor_table(M.alg.words(), M.delta_gen, M.alg, M.alg);
  for (const Word& w : M.alg.words()) {
    Cyc e = Cyc::one(*M.F);
    for (char ch : w) e *= M.counit_gen[size_t(static_cast<unsigned char>(ch))];
    M.counit[w] = e;
    NcPoly s = NcPoly::mono(*M.F, Word());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      s = s * M.antipode_gen[size_t(static_cast<unsigned char>(*it))];
    M.antipode[w] = M.alg.rs().nf(s);
  }
  AxiomReport rep = verify_hopf_axioms(M);
  out.detected = !rep.antipode_law;
  out.where = rep.detail;
  return out;
}

LinMap identity_map(const HopfAlgebra& H) {
  LinMap f;
  for (const Word& w : H.words()) f.push_back(NcPoly::mono(*H.F, w));
  return f;
}

LinMap antipode_map(const HopfAlgebra& H) {
  LinMap f;
  for (const Word& w : H.words()) f.push_back(H.antipode.at(w));
  return f;
}

LinMap unit_counit_map(const HopfAlgebra& H, const FDAlgebra& A) {
  LinMap f;
  for (const Word& w : H.words()) {
    NcPoly p;
    Cyc e = H.counit.at(w);
    if (!e.is_zero()) p.add_term(Word(), e);
    f.push_back(p);
    (void)A;
  }
  return f;
}

NcPoly apply_map(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                 const NcPoly& p) {
  NcPoly acc;
  SparseVec v = H.alg.vec(p);
  for (const auto& [i, c] : v) acc = acc + f[size_t(i)].scale(c);
  return A.rs().nf(acc);
}

LinMap convolve(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                const LinMap& g) {
  LinMap out;
  for (const Word& w : H.words()) {
    NcPoly acc;
    for (const auto& [p, c] : H.delta.at(w)) {
      size_t i1 = size_t(H.alg.index_of(p.first));
      size_t i2 = size_t(H.alg.index_of(p.second));
      acc = acc + (f[i1] * g[i2]).scale(c);
    }
    out.push_back(A.rs().nf(acc));
  }
  return out;
}

std::optional<LinMap> convolution_inverse(const HopfAlgebra& H,
                                          const FDAlgebra& A, const LinMap& f) {
  const CycField& F = *H.F;
  size_t nH = H.dim(), nA = A.dim();
  ExactMatrix M(F, int(nH * nA), int(nH * nA));
  std::vector<Cyc> rhs(nH * nA, Cyc::zero(F));
  for (size_t bi = 0; bi < nH; ++bi) {
    const Word& b = H.alg.word(bi);
    for (const auto& [p, c] : H.delta.at(b)) {
      const NcPoly& fb1 = f[size_t(H.alg.index_of(p.first))];
      size_t b2i = size_t(H.alg.index_of(p.second));
      for (const auto& [wa, ca] : fb1.terms()) {
        for (size_t k = 0; k < nA; ++k) {
          SparseVec prod = A.mul_words(wa, A.word(k));
          for (const auto& [pi, pc] : prod)
            M.add(int(bi * nA + size_t(pi)), int(b2i * nA + k), c * ca * pc);
        }
      }
    }
    rhs[bi * nA + size_t(A.index_of(Word()))] = H.counit.at(b);
  }
  auto sol = M.solve(rhs);
  if (!sol) return std::nullopt;
  LinMap g;
  for (size_t j = 0; j < nH; ++j) {
    NcPoly p;
    for (size_t k = 0; k < nA; ++k)
      if (!(*sol)[j * nA + k].is_zero())
        p.add_term(A.word(k), (*sol)[j * nA + k]);
    g.push_back(p);
  }
  // certify two-sided: f * g = eta eps = g * f
  LinMap e = unit_counit_map(H, A);
  auto same = [&](const LinMap& a, const LinMap& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  };
  if (!same(convolve(H, A, f, g), e) || !same(convolve(H, A, g, f), e))
    return std::nullopt;
  return g;
}

bool is_algebra_map(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                    std::string* where) {
  for (const Word& u : H.words()) {
    for (const Word& v : H.words()) {
      NcPoly lhs;
      for (const auto& [i, c] : H.alg.mul_words(u, v))
        lhs = lhs + f[size_t(i)].scale(c);
      lhs = A.rs().nf(lhs);
      NcPoly rhs = A.rs().nf(f[size_t(H.alg.index_of(u))] *
                             f[size_t(H.alg.index_of(v))]);
      if (!(lhs == rhs)) {
        if (where)
          *where = "(" + H.word_str(u) + ", " + H.word_str(v) + ")";
        return false;
      }
    }
  }
  // unit preserved
  NcPoly funit = f[size_t(H.alg.index_of(Word()))];
  if (!(funit == NcPoly::mono(*H.F, Word()))) {
    if (where) *where = "(unit)";
    return false;
  }
  return true;
}

bool is_coalgebra_endomap(const HopfAlgebra& H, const LinMap& f,
                          std::string* where) {
  for (const Word& w : H.words()) {
    TensorElem lhs = H.delta_of(f[size_t(H.alg.index_of(w))]);
    TensorElem rhs;
    for (const auto& [p, c] : H.delta.at(w)) {
      const NcPoly& f1 = f[size_t(H.alg.index_of(p.first))];
      const NcPoly& f2 = f[size_t(H.alg.index_of(p.second))];
      for (const auto& [w1, c1] : f1.terms())
        for (const auto& [w2, c2] : f2.terms()) {
          WordPair k{w1, w2};
          auto it = rhs.find(k);
          Cyc v = (it == rhs.end() ? Cyc::zero(*H.F) : it->second) + c * c1 * c2;
          if (v.is_zero()) {
            if (it != rhs.end()) rhs.erase(it);
          } else {
            rhs[k] = v;
          }
        }
    }
    if (lhs != rhs) {
      if (where) *where = H.word_str(w);
      return false;
    }
    Cyc el = H.counit_of(f[size_t(H.alg.index_of(w))]);
    if (!(el == H.counit.at(w))) {
      if (where) *where = H.word_str(w) + " (counit)";
      return false;
    }
  }
  return true;
}

Cyc Character::word_value(const CycField& F, const Word& w) const {
  Cyc acc = Cyc::one(F);
  for (char ch : w) acc *= gen_values[size_t(static_cast<unsigned char>(ch))];
  return acc;
}

Cyc Character::poly_value(const CycField& F, const NcPoly& p) const {
  Cyc acc = Cyc::zero(F);
  for (const auto& [w, c] : p.terms()) acc += c * word_value(F, w);
  return acc;
}

namespace {

// u = c * zeta^k with rational c? returns (c, k) for the smallest such k
std::optional<std::pair<Rat, long>> decompose_rat_zeta(const CycField& F,
                                                       const Cyc& u) {
  for (long k = 0; k < long(F.order()); ++k) {
    Cyc v = u * Cyc::zeta(F, -k);
    if (v.is_rational()) return std::make_pair(v.rational_part(), k);
  }
  return std::nullopt;
}

std::optional<Rat> rational_nth_root(const Rat& c, unsigned long N) {
  mpz_class num = c.get_num(), den = c.get_den();
  mpz_class rn, rd;
  // exact root; for odd N negative numerators are handled directly
  int exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), N);
  int exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), N);
  if (!exact_n || !exact_d) return std::nullopt;
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

bool is_prime_order(unsigned N) {
  mpz_class n(N);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

}  // namespace

RootWitness nth_root_in_field(const CycField& F, const Cyc& u) {
  RootWitness out;
  unsigned long N = F.order();
  if (u.is_zero()) {
    out.exists = true;
    out.decided = true;
    out.root = Cyc::zero(F);
    return out;
  }
  auto dec = decompose_rat_zeta(F, u);
  if (!dec) {
    out.decided = false;
    out.detail = "value is not rational times a root of unity; not decided";
    return out;
  }
  auto [c, k] = *dec;
  auto r = rational_nth_root(c, N);
  if (r) {
    if (k % long(N) == 0) {
      out.exists = true;
      out.decided = true;
      out.root = Cyc::rational(F, *r);
      if (!(out.root.pow(long(N)) == u))
        throw std::logic_error("nth_root_in_field: witness failed recheck");
      return out;
    }
    // any root t would make (t/r)^N a primitive-ish power of zeta; but
    // (t/r)^(N^2) = 1 forces t/r into the roots of unity of Q(zeta_N),
    // which are {+-zeta^j} for odd N, whose N-th powers are +-1 only
    out.exists = false;
    out.decided = true;
    out.detail = "zeta part is a nontrivial root of unity";
    return out;
  }
  if (!is_prime_order(unsigned(N))) {
    out.decided = false;
    out.detail = "no rational root and composite order; not decided";
    return out;
  }
  // N prime: field norm of t^N = u gives N(t)^N = +-c^(N-1); since
  // gcd(N, N-1) = 1 every prime valuation of c would be divisible by N,
  // i.e. c would have a rational N-th root. It does not.
  out.exists = false;
  out.decided = true;
  out.detail = "rational part is not a perfect power";
  return out;
}

namespace {

// all solutions of rows * m = rhs over Z/N (N prime), up to cap
std::optional<std::vector<std::vector<long>>> solve_mod(
    std::vector<std::vector<long>> rows, std::vector<long> rhs, long N,
    size_t nvar, size_t cap, bool* overflow) {
  auto norm = [N](long v) { return ((v % N) + N) % N; };
  auto pw = [N](long a, long e) {
    long r = 1, b = ((a % N) + N) % N;
    while (e) {
      if (e & 1) r = r * b % N;
      b = b * b % N;
      e >>= 1;
    }
    return r;
  };
  size_t nr = rows.size();
  std::vector<long> pivot_of_col(nvar, -1);
  size_t piv = 0;
  for (size_t col = 0; col < nvar && piv < nr; ++col) {
    size_t sel = piv;
    while (sel < nr && norm(rows[sel][col]) == 0) ++sel;
    if (sel == nr) continue;
    std::swap(rows[piv], rows[sel]);
    std::swap(rhs[piv], rhs[sel]);
    long inv = pw(rows[piv][col], N - 2);
    for (size_t j = 0; j < nvar; ++j) rows[piv][j] = norm(rows[piv][j] * inv);
    rhs[piv] = norm(rhs[piv] * inv);
    for (size_t r = 0; r < nr; ++r) {
      if (r == piv) continue;
      long f = norm(rows[r][col]);
      if (!f) continue;
      for (size_t j = 0; j < nvar; ++j)
        rows[r][j] = norm(rows[r][j] - f * rows[piv][j]);
      rhs[r] = norm(rhs[r] - f * rhs[piv]);
    }
    pivot_of_col[col] = long(piv);
    ++piv;
  }
  for (size_t r = piv; r < nr; ++r)
    if (norm(rhs[r]) != 0) return std::nullopt;  // inconsistent

  std::vector<size_t> free_cols;
  for (size_t col = 0; col < nvar; ++col)
    if (pivot_of_col[col] < 0) free_cols.push_back(col);
  size_t count = 1;
  for (size_t i = 0; i < free_cols.size(); ++i) {
    count *= size_t(N);
    if (count > cap) {
      *overflow = true;
      return std::vector<std::vector<long>>{};
    }
  }
  std::vector<std::vector<long>> sols;
  std::vector<long> t(free_cols.size(), 0);
  for (;;) {
    std::vector<long> m(nvar, 0);
    for (size_t i = 0; i < free_cols.size(); ++i) m[free_cols[i]] = t[i];
    for (size_t col = 0; col < nvar; ++col) {
      if (pivot_of_col[col] < 0) continue;
      size_t r = size_t(pivot_of_col[col]);
      long v = rhs[r];
      for (size_t fc : free_cols) v -= rows[r][fc] * m[fc];
      m[col] = norm(v);
    }
    sols.push_back(std::move(m));
    size_t i = 0;
    for (; i < t.size(); ++i) {
      if (++t[i] < N) break;
      t[i] = 0;
    }
    if (i == t.size() && !t.empty()) break;
    if (t.empty()) break;
  }
  return sols;
}

}  // namespace

CharacterSearch solve_characters(const CycField& F, int n, const SLMatrix& g) {
  CharacterSearch out;
  std::ostringstream detail;
  unsigned N = F.order();
  Cyc q = Cyc::zeta(F, 1);
  size_t ngen = size_t(n) * size_t(n);

  std::vector<NcPoly> rels = frt_relations(F, n, q);
  NcPoly dq = quantum_det(F, n, q);
  dq.add_term(Word(), -Cyc::one(F));
  rels.push_back(dq);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rels.push_back(power_relation(F, gen_xij(n, i, j), N, g.at(i, j)));

  for (size_t mask = 0; mask < (size_t(1) << ngen); ++mask) {
    auto in_support = [&](size_t gi) { return (mask >> gi) & 1; };

    // evaluate each relation with non-support generators sent to zero;
    // terms are grouped by their commutative exponent vector
    bool reject = false, undecided = false;
    // equations prod v_i^{e_i} = value
    std::vector<std::pair<std::vector<unsigned>, Cyc>> eqs;
    for (const NcPoly& rel : rels) {
      std::map<std::vector<unsigned>, Cyc> acc;
      for (const auto& [w, c] : rel.terms()) {
        std::vector<unsigned> e(ngen, 0);
        bool dead = false;
        for (char ch : w) {
          size_t gi = size_t(static_cast<unsigned char>(ch));
          if (!in_support(gi)) {
            dead = true;
            break;
          }
          ++e[gi];
        }
        if (dead) continue;
        auto it = acc.find(e);
        Cyc v = (it == acc.end() ? Cyc::zero(F) : it->second) + c;
        if (v.is_zero()) {
          if (it != acc.end()) acc.erase(it);
        } else {
          acc[e] = v;
        }
      }
      if (acc.empty()) continue;
      if (acc.size() == 1) {
        // single surviving monomial with nonzero coefficient: impossible,
        // support variables are nonzero by definition
        reject = true;
        break;
      }
      if (acc.size() == 2) {
        auto it = acc.begin();
        auto jt = std::next(it);
        const std::vector<unsigned> zero(ngen, 0);
        if (it->first == zero && !(jt->first == zero)) {
          eqs.push_back({jt->first, -(it->second) * jt->second.inv()});
          continue;
        }
        if (jt->first == zero && !(it->first == zero)) {
          eqs.push_back({it->first, -(jt->second) * it->second.inv()});
          continue;
        }
      }
      undecided = true;
      break;
    }
    if (reject) continue;
    if (undecided) {
      out.complete = false;
      detail << "pattern " << mask << " not reduced to monomial equations; ";
      continue;
    }

    // every supported generator needs its power equation v^N = target
    std::vector<Rat> rad(ngen, Rat(0));  // rational part of the chosen root
    bool ok = true;
    for (size_t gi = 0; gi < ngen && ok; ++gi) {
      if (!in_support(gi)) continue;
      bool have = false;
      for (const auto& [e, val] : eqs) {
        bool pure = e[gi] == N;
        for (size_t o = 0; o < ngen && pure; ++o)
          if (o != gi && e[o] != 0) pure = false;
        if (!pure) continue;
        have = true;
        RootWitness rw = nth_root_in_field(F, val);
        if (!rw.decided) {
          out.complete = false;
          detail << "root decision failed for generator " << gi << ": "
                 << rw.detail << "; ";
          ok = false;
          break;
        }
        if (!rw.exists) {
          ok = false;  // no character with this support over this field
          if (!val.is_zero()) out.closure_only = true;
          break;
        }
        if (!rw.root.is_rational())
          throw std::logic_error("character search: unexpected root shape");
        rad[gi] = rw.root.rational_part();
        if (rad[gi] == 0) ok = false;  // support demands a nonzero value
        break;
      }
      if (!have) {
        out.complete = false;
        detail << "generator " << gi << " lacks a power equation; ";
        ok = false;
      }
    }
    if (!ok) continue;

    // remaining equations become linear congruences for the zeta exponents:
    // with v_i = rad_i * zeta^{m_i}, prod v_i^{e_i} = c * zeta^k needs
    // prod rad_i^{e_i} = c and sum e_i m_i = k (mod N)
    std::vector<std::vector<long>> crows;
    std::vector<long> crhs;
    bool consistent = true;
    for (const auto& [e, val] : eqs) {
      bool pure_power = false;
      for (size_t gi = 0; gi < ngen; ++gi) {
        bool pure = e[gi] == N;
        for (size_t o = 0; o < ngen && pure; ++o)
          if (o != gi && e[o] != 0) pure = false;
        if (pure) pure_power = true;
      }
      if (pure_power) continue;  // handled above (m drops out mod N)
      auto dec = decompose_rat_zeta(F, val);
      if (!dec) {
        out.complete = false;
        detail << "closure value not rational times zeta; ";
        consistent = false;
        break;
      }
      Rat lhs_rad(1);
      std::vector<long> row(ngen, 0);
      for (size_t gi = 0; gi < ngen; ++gi) {
        for (unsigned t = 0; t < e[gi]; ++t) lhs_rad *= rad[gi];
        row[gi] = long(e[gi] % N);
      }
      if (!(lhs_rad == dec->first)) {
        consistent = false;  // rational magnitudes cannot match
        break;
      }
      crows.push_back(std::move(row));
      crhs.push_back(dec->second % long(N));
    }
    if (!consistent) continue;

    bool overflow = false;
    auto sols = solve_mod(crows, crhs, long(N), ngen, 200000, &overflow);
    if (overflow) {
      out.complete = false;
      detail << "congruence solution set too large; ";
      continue;
    }
    if (!sols) continue;  // inconsistent congruences: no character here
    for (const auto& m : *sols) {
      // non-support exponents are spurious free columns; pin them to zero
      bool spurious = false;
      for (size_t gi = 0; gi < ngen; ++gi)
        if (!in_support(gi) && m[gi] != 0) spurious = true;
      if (spurious) continue;
      Character chi;
      for (size_t gi = 0; gi < ngen; ++gi) {
        if (!in_support(gi)) {
          chi.gen_values.push_back(Cyc::zero(F));
        } else {
          chi.gen_values.push_back(Cyc::rational(F, rad[gi]) *
                                   Cyc::zeta(F, m[gi]));
        }
      }
      // final certificate: every defining relation evaluates to zero
      bool certified = true;
      for (const NcPoly& rel : rels)
        if (!chi.poly_value(F, rel).is_zero()) certified = false;
      if (!certified) {
        out.complete = false;
        detail << "candidate failed direct re-verification; ";
        continue;
      }
      out.found.push_back(std::move(chi));
    }
  }
  out.detail = detail.str();
  return out;
}

LinMap rescale_map(const HopfAlgebra& H, int n, const std::vector<Cyc>& r) {
  Cyc prod = Cyc::one(*H.F);
  for (const Cyc& ri : r) {
    if (ri.is_zero())
      throw std::invalid_argument("rescale_map: torus factors must be nonzero");
    prod *= ri;
  }
  // normalized torus parameter: the map only depends on the ratios r_j/r_i
  if (!prod.is_one())
    throw std::invalid_argument("rescale_map: torus factors must multiply to 1");
  LinMap f;
  for (const Word& w : H.words()) {
    Cyc c = Cyc::one(*H.F);
    for (char ch : w) {
      int gi = int(static_cast<unsigned char>(ch));
      c *= r[size_t(gi / n)].inv() * r[size_t(gi % n)];
    }
    f.push_back(NcPoly::mono(w, c));
  }
  return f;
}

CoinnerResult is_coinner(const HopfAlgebra& H, const LinMap& f,
                         const std::vector<Character>& chars) {
  CoinnerResult out;
  const CycField& F = *H.F;
  for (size_t ci = 0; ci < chars.size(); ++ci) {
    const Character& chi = chars[ci];
    bool all = true;
    for (const Word& w : H.words()) {
      // sum over Delta^2: chi(w1) w2 chi(S(w3))
      NcPoly acc;
      for (const auto& [p, c] : H.delta.at(w)) {
        for (const auto& [p2, c2] : H.delta.at(p.first)) {
          Cyc coef = c * c2 * chi.word_value(F, p2.first) *
                     chi.poly_value(F, H.antipode.at(p.second));
          if (!coef.is_zero()) acc.add_term(p2.second, coef);
        }
      }
      acc = H.alg.rs().nf(acc);
      if (!(acc == f[size_t(H.alg.index_of(w))])) {
        all = false;
        break;
      }
    }
    if (all) {
      out.coinner = true;
      out.chi_index = ci;
      return out;
    }
  }
  out.detail = "no character conjugation reproduces the map (" +
               std::to_string(chars.size()) + " characters tried)";
  return out;
}

}  // namespace qcert
