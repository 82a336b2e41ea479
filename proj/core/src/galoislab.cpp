#include "qcert/galoislab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcert {

namespace {

void tp_add(TensorElem& out, const Word& a, const Word& b, const Cyc& c) {
  if (c.is_zero()) return;
  WordPair k{a, b};
  auto it = out.find(k);
  if (it == out.end()) {
    out.emplace(std::move(k), c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) out.erase(it);
  }
}

void t3_add(Tensor3& out, std::array<Word, 3> k, const Cyc& c) {
  if (c.is_zero()) return;
  auto it = out.find(k);
  if (it == out.end()) {
    out.emplace(std::move(k), c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) out.erase(it);
  }
}

std::string pair_name(const ComoduleAlgebra& T, const Word& a, const Word& b) {
  return word_name(a, T.pres.names) + " (x) " + word_name(b, T.H->names);
}

}  // namespace

TensorElem tp_mul_rs(const TensorElem& t1, const TensorElem& t2,
                     const RewriteSystem& L, const RewriteSystem& R) {
  TensorElem out;
  for (const auto& [p1, c1] : t1) {
    for (const auto& [p2, c2] : t2) {
      Cyc c12 = c1 * c2;
      const NcPoly& pa = L.nf_word(p1.first + p2.first);
      const NcPoly& pb = R.nf_word(p1.second + p2.second);
      for (const auto& [wa, ca] : pa.terms())
        for (const auto& [wb, cb] : pb.terms())
          tp_add(out, wa, wb, c12 * ca * cb);
    }
  }
  return out;
}

TensorElem ComoduleAlgebra::rho_of(const NcPoly& p) const {
  TensorElem out;
  for (const auto& [i, c] : alg.vec(p)) tp_scale_add(out, rho[size_t(i)], c);
  return out;
}

TensorElem ComoduleAlgebra::lam_of(const NcPoly& p) const {
  TensorElem out;
  for (const auto& [i, c] : alg.vec(p)) tp_scale_add(out, lam[size_t(i)], c);
  return out;
}

ComoduleAlgebra make_matrix_comodule(std::shared_ptr<CycField> F,
                                     const HopfAlgebra& H, int n,
                                     const SLMatrix& g) {
  FDBuild build = build_T_g(F, n, g);
  std::vector<TensorElem> rho_gen(size_t(n) * size_t(n));
  std::vector<TensorElem> lam_gen(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TensorElem r, l;
      for (int k = 0; k < n; ++k) {
        r[{Word(1, char(gen_xij(n, i, k))), Word(1, char(gen_xij(n, k, j)))}] =
            Cyc::one(*F);
        l[{Word(1, char(gen_xij(n, i, k))), Word(1, char(gen_xij(n, k, j)))}] =
            Cyc::one(*F);
      }
      rho_gen[size_t(gen_xij(n, i, j))] = std::move(r);
      lam_gen[size_t(gen_xij(n, i, j))] = std::move(l);
    }
  }
  std::map<Word, TensorElem> rho_tab =
      tensor_table(build.alg.words(), rho_gen, build.alg, H.alg);
  std::map<Word, TensorElem> lam_tab =
      tensor_table(build.alg.words(), lam_gen, H.alg, build.alg);
  ComoduleAlgebra T{F,  &H, n, g, "T[" + g.to_string() + "]",
                    std::move(build.pres), std::move(build.alg), {}, {}};
  T.rho.reserve(size_t(T.dim()));
  T.lam.reserve(size_t(T.dim()));
  for (const Word& w : T.words()) {
    T.rho.push_back(rho_tab.at(w));
    T.lam.push_back(lam_tab.at(w));
  }
  return T;
}

ComoduleAlgebra make_trivial_comodule(std::shared_ptr<CycField> F,
                                      const HopfAlgebra& H) {
  ComoduleAlgebra T{F, &H, 0, SLMatrix{}, "trivial", H.pres, H.alg, {}, {}};
  T.rho.reserve(H.dim());
  T.lam.reserve(H.dim());
  for (const Word& w : H.words()) {
    T.rho.push_back(H.delta.at(w));
    T.lam.push_back(H.delta.at(w));
  }
  return T;
}

CoactionReport verify_comodule(const ComoduleAlgebra& T) {
  CoactionReport rep;
  const HopfAlgebra& H = *T.H;
  const int nT = T.dim();
  std::ostringstream why;

  rep.right_alg_map = true;
  rep.left_alg_map = true;
  for (int i = 0; i < nT && (rep.right_alg_map || rep.left_alg_map); ++i) {
    for (int j = 0; j < nT; ++j) {
      const SparseVec& prod = T.alg.mul_basis(i, j);
      if (rep.right_alg_map) {
        TensorElem lhs =
            tp_mul(T.rho[size_t(i)], T.rho[size_t(j)], T.alg, H.alg);
        TensorElem rhs;
        for (const auto& [k, c] : prod) tp_scale_add(rhs, T.rho[size_t(k)], c);
        if (lhs != rhs) {
          rep.right_alg_map = false;
          why << "right coaction not multiplicative at ("
              << word_name(T.alg.word(i), T.pres.names) << ", "
              << word_name(T.alg.word(j), T.pres.names) << "); ";
        }
      }
      if (rep.left_alg_map) {
        TensorElem lhs =
            tp_mul(T.lam[size_t(i)], T.lam[size_t(j)], H.alg, T.alg);
        TensorElem rhs;
        for (const auto& [k, c] : prod) tp_scale_add(rhs, T.lam[size_t(k)], c);
        if (lhs != rhs) {
          rep.left_alg_map = false;
          why << "left coaction not multiplicative at ("
              << word_name(T.alg.word(i), T.pres.names) << ", "
              << word_name(T.alg.word(j), T.pres.names) << "); ";
        }
      }
      if (!rep.right_alg_map && !rep.left_alg_map) break;
    }
  }

  rep.right_coassoc = true;
  rep.right_counit = true;
  rep.left_coassoc = true;
  rep.left_counit = true;
  rep.commute = true;
  for (int i = 0; i < nT; ++i) {
    const Word& wi = T.alg.word(i);
    if (rep.right_coassoc) {
      Tensor3 lhs, rhs;  // in T (x) H (x) H
      for (const auto& [p, c] : T.rho[size_t(i)]) {
        int t = T.alg.index_of(p.first);
        for (const auto& [p2, c2] : T.rho[size_t(t)])
          t3_add(lhs, {p2.first, p2.second, p.second}, c * c2);
        for (const auto& [p2, c2] : H.delta.at(p.second))
          t3_add(rhs, {p.first, p2.first, p2.second}, c * c2);
      }
      if (lhs != rhs) {
        rep.right_coassoc = false;
        why << "right coaction not coassociative at "
            << word_name(wi, T.pres.names) << "; ";
      }
    }
    if (rep.left_coassoc) {
      Tensor3 lhs, rhs;  // in H (x) H (x) T
      for (const auto& [p, c] : T.lam[size_t(i)]) {
        int t = T.alg.index_of(p.second);
        for (const auto& [p2, c2] : H.delta.at(p.first))
          t3_add(lhs, {p2.first, p2.second, p.second}, c * c2);
        for (const auto& [p2, c2] : T.lam[size_t(t)])
          t3_add(rhs, {p.first, p2.first, p2.second}, c * c2);
      }
      if (lhs != rhs) {
        rep.left_coassoc = false;
        why << "left coaction not coassociative at "
            << word_name(wi, T.pres.names) << "; ";
      }
    }
    if (rep.right_counit) {
      SparseVec got;
      for (const auto& [p, c] : T.rho[size_t(i)])
        sv_add(got, T.alg.index_of(p.first), c * H.counit.at(p.second));
      SparseVec want{{i, Cyc::one(*T.F)}};
      if (!sv_equal(got, want)) {
        rep.right_counit = false;
        why << "right counit law fails at " << word_name(wi, T.pres.names)
            << "; ";
      }
    }
    if (rep.left_counit) {
      SparseVec got;
      for (const auto& [p, c] : T.lam[size_t(i)])
        sv_add(got, T.alg.index_of(p.second), c * H.counit.at(p.first));
      SparseVec want{{i, Cyc::one(*T.F)}};
      if (!sv_equal(got, want)) {
        rep.left_counit = false;
        why << "left counit law fails at " << word_name(wi, T.pres.names)
            << "; ";
      }
    }
    if (rep.commute) {
      Tensor3 lhs, rhs;  // in H (x) T (x) H
      for (const auto& [p, c] : T.rho[size_t(i)]) {
        int t = T.alg.index_of(p.first);
        for (const auto& [p2, c2] : T.lam[size_t(t)])
          t3_add(lhs, {p2.first, p2.second, p.second}, c * c2);
      }
      for (const auto& [p, c] : T.lam[size_t(i)]) {
        int t = T.alg.index_of(p.second);
        for (const auto& [p2, c2] : T.rho[size_t(t)])
          t3_add(rhs, {p.first, p2.first, p2.second}, c * c2);
      }
      if (lhs != rhs) {
        rep.commute = false;
        why << "coactions do not commute at " << word_name(wi, T.pres.names)
            << "; ";
      }
    }
  }
  rep.detail = why.str();
  return rep;
}

namespace {

// kap_r(e_i (x) e_j) as codomain coordinates (row = t * dimH + h).
SparseVec kappa_right_col(const ComoduleAlgebra& T, int i, int j) {
  const HopfAlgebra& H = *T.H;
  const int nH = int(H.dim());
  SparseVec out;
  for (const auto& [p, c] : T.rho[size_t(j)]) {
    int h = H.alg.index_of(p.second);
    SparseVec prod = T.alg.mul_words(T.alg.word(i), p.first);
    for (const auto& [t, ct] : prod) sv_add(out, t * nH + h, c * ct);
  }
  return out;
}

// kap_l(e_i (x) e_j) as codomain coordinates (row = h * dimT + t).
SparseVec kappa_left_col(const ComoduleAlgebra& T, int i, int j) {
  const HopfAlgebra& H = *T.H;
  const int nT = T.dim();
  SparseVec out;
  for (const auto& [p, c] : T.lam[size_t(i)]) {
    int h = H.alg.index_of(p.first);
    SparseVec prod = T.alg.mul_words(p.second, T.alg.word(j));
    for (const auto& [t, ct] : prod) sv_add(out, h * nT + t, c * ct);
  }
  return out;
}

SparseVec apply_kappa(const ComoduleAlgebra& T, bool right,
                      const TensorElem& x) {
  SparseVec out;
  for (const auto& [p, c] : x) {
    int i = T.alg.index_of(p.first);
    int j = T.alg.index_of(p.second);
    SparseVec col =
        right ? kappa_right_col(T, i, j) : kappa_left_col(T, i, j);
    sv_axpy(out, c, col);
  }
  return out;
}

}  // namespace

GaloisCertificate certify_galois(const ComoduleAlgebra& T, bool right_side) {
  const HopfAlgebra& H = *T.H;
  const int nT = T.dim();
  const int nH = int(H.dim());
  GaloisCertificate cert;
  cert.right_side = right_side;
  cert.dim_domain = nT * nT;

  ExactMatrix M(*T.F, nT * nH, nT * nT);
  for (int i = 0; i < nT; ++i) {
    for (int j = 0; j < nT; ++j) {
      SparseVec col = right_side ? kappa_right_col(T, i, j)
                                 : kappa_left_col(T, i, j);
      for (const auto& [r, c] : col) M.add(r, i * nT + j, c);
    }
  }

  // Targets: 1 (x) e_h (right) or e_h (x) 1 (left). The unit of T is basis
  // word 0 (the empty word), so the codomain coordinate is just h (right)
  // or h * nT (left).
  std::vector<SparseVec> targets;
  targets.reserve(size_t(nH));
  for (int h = 0; h < nH; ++h) {
    SparseVec b;
    b.emplace(right_side ? h : h * nT, Cyc::one(*T.F));
    targets.push_back(std::move(b));
  }
  ExactMatrix::ColumnSolve cs = M.solve_columns(targets);
  cert.rank = cs.rank;
  cert.bijective = (cs.rank == nT * nT);
  std::ostringstream why;
  if (!cert.bijective) {
    auto ker = M.kernel();
    if (!ker.empty()) cert.kernel_witness = ker.front();
    why << "canonical map rank " << cs.rank << " of " << nT * nT << "; ";
    cert.detail = why.str();
    return cert;
  }

  cert.inv_unit.resize(size_t(nH));
  for (int h = 0; h < nH; ++h) {
    if (!cs.sols[size_t(h)]) {
      cert.bijective = false;
      why << "no preimage for unit target " << H.word_str(H.alg.word(h))
          << "; ";
      cert.detail = why.str();
      return cert;
    }
    TensorElem te;
    for (const auto& [col, c] : *cs.sols[size_t(h)])
      tp_add(te, T.alg.word(col / nT), T.alg.word(col % nT), c);
    cert.inv_unit[size_t(h)] = std::move(te);
  }

  // Round trip on every basis pair, using T-linearity of the canonical
  // map: kap^{-1}(t (x) h) = (t (x) 1) kap^{-1}(1 (x) h) on the right,
  // kap^{-1}(h (x) t) = kap^{-1}(h (x) 1)(1 (x) t) on the left.
  cert.inverse_round_trip = true;
  for (int t = 0; t < nT && cert.inverse_round_trip; ++t) {
    for (int h = 0; h < nH; ++h) {
      TensorElem shifted;
      if (right_side) {
        for (const auto& [p, c] : cert.inv_unit[size_t(h)]) {
          SparseVec prod = T.alg.mul_words(T.alg.word(t), p.first);
          for (const auto& [k, ck] : prod)
            tp_add(shifted, T.alg.word(k), p.second, c * ck);
        }
      } else {
        for (const auto& [p, c] : cert.inv_unit[size_t(h)]) {
          SparseVec prod = T.alg.mul_words(p.second, T.alg.word(t));
          for (const auto& [k, ck] : prod)
            tp_add(shifted, p.first, T.alg.word(k), c * ck);
        }
      }
      SparseVec got = apply_kappa(T, right_side, shifted);
      SparseVec want;
      want.emplace(right_side ? t * nH + h : h * nT + t, Cyc::one(*T.F));
      if (!sv_equal(got, want)) {
        cert.inverse_round_trip = false;
        why << "round trip fails at "
            << word_name(T.alg.word(t), T.pres.names) << " (x) "
            << H.word_str(H.alg.word(h)) << "; ";
        break;
      }
    }
  }
  cert.detail = why.str();
  return cert;
}

CoactionMutation coaction_mutation_probe(const ComoduleAlgebra& T) {
  CoactionMutation out;
  ComoduleAlgebra M = T;
  // First generator's basis slot; drop the last stored term of its right
  // coaction. The tables of longer words keep the uncorrupted extension,
  // so exactly one structure constant block is wrong.
  int gen_idx = M.alg.index_of(Word(1, char(0)));
  if (gen_idx < 0 || M.rho[size_t(gen_idx)].empty())
    throw std::logic_error("mutation probe: no generator coaction to corrupt");
  auto& te = M.rho[size_t(gen_idx)];
  te.erase(std::prev(te.end()));

  CoactionReport axioms = verify_comodule(M);
  GaloisCertificate cert = certify_galois(M, true);
  out.rank = cert.rank;
  out.detected = !axioms.pass() || !cert.pass();
  std::ostringstream why;
  if (!axioms.pass()) why << "axioms: " << axioms.detail;
  if (!cert.pass()) {
    why << "canonical map: rank " << cert.rank << " of " << cert.dim_domain;
    if (!cert.kernel_witness.empty()) {
      auto [col, c] = *cert.kernel_witness.begin();
      why << ", kernel witness touches "
          << pair_name(M, M.alg.word(col / M.dim()), M.alg.word(col % M.dim()));
    }
    why << "; ";
  }
  out.where = why.str();
  return out;
}

MuAction mu_action(const ComoduleAlgebra& T, const GaloisCertificate& cert) {
  if (!cert.right_side || !cert.pass())
    throw std::invalid_argument(
        "mu_action needs a passing right-side certificate");
  const int nT = T.dim();
  const int nH = int(T.H->dim());
  MuAction M;
  M.act.assign(size_t(nT), std::vector<SparseVec>(size_t(nH)));
  for (int h = 0; h < nH; ++h) {
    for (const auto& [p, c] : cert.inv_unit[size_t(h)]) {
      int p2 = T.alg.index_of(p.second);
      for (int t = 0; t < nT; ++t) {
        SparseVec left = T.alg.mul_words(p.first, T.alg.word(t));
        SparseVec full;
        for (const auto& [k, ck] : left)
          sv_axpy(full, ck, T.alg.mul_basis(k, p2));
        sv_axpy(M.act[size_t(t)][size_t(h)], c, full);
      }
    }
  }
  return M;
}

MuReport verify_mu_module_algebra(const ComoduleAlgebra& T,
                                  const MuAction& M) {
  MuReport rep;
  const HopfAlgebra& H = *T.H;
  const int nT = T.dim();
  const int nH = int(H.dim());
  std::ostringstream why;

  rep.unit_acts_trivially = true;
  for (int t = 0; t < nT; ++t) {
    SparseVec want{{t, Cyc::one(*T.F)}};
    if (!sv_equal(M.act[size_t(t)][0], want)) {
      rep.unit_acts_trivially = false;
      why << "1 does not act as identity at "
          << word_name(T.alg.word(t), T.pres.names) << "; ";
      break;
    }
  }

  rep.unit_relation = true;
  for (int h = 0; h < nH; ++h) {
    SparseVec want;
    sv_add(want, 0, H.counit.at(H.alg.word(h)));
    if (!sv_equal(M.act[0][size_t(h)], want)) {
      rep.unit_relation = false;
      why << "action on the unit is not the counit at "
          << H.word_str(H.alg.word(h)) << "; ";
      break;
    }
  }

  rep.action_assoc = true;
  for (int t = 0; t < nT && rep.action_assoc; ++t) {
    for (int h = 0; h < nH && rep.action_assoc; ++h) {
      for (int h2 = 0; h2 < nH; ++h2) {
        SparseVec lhs;
        for (const auto& [k, c] : M.act[size_t(t)][size_t(h)])
          sv_axpy(lhs, c, M.act[size_t(k)][size_t(h2)]);
        SparseVec rhs;
        for (const auto& [m, c] : H.alg.mul_basis(h, h2))
          sv_axpy(rhs, c, M.act[size_t(t)][size_t(m)]);
        if (!sv_equal(lhs, rhs)) {
          rep.action_assoc = false;
          why << "action not associative at ("
              << word_name(T.alg.word(t), T.pres.names) << ", "
              << H.word_str(H.alg.word(h)) << ", "
              << H.word_str(H.alg.word(h2)) << "); ";
          break;
        }
      }
    }
  }

  rep.algebra_compat = true;
  for (int t = 0; t < nT && rep.algebra_compat; ++t) {
    for (int t2 = 0; t2 < nT && rep.algebra_compat; ++t2) {
      for (int h = 0; h < nH; ++h) {
        SparseVec lhs;
        for (const auto& [k, c] : T.alg.mul_basis(t, t2))
          sv_axpy(lhs, c, M.act[size_t(k)][size_t(h)]);
        SparseVec rhs;
        for (const auto& [p, c] : H.delta.at(H.alg.word(h))) {
          int h1 = H.alg.index_of(p.first);
          int h2 = H.alg.index_of(p.second);
          SparseVec prod = T.alg.mul_vec(M.act[size_t(t)][size_t(h1)],
                                         M.act[size_t(t2)][size_t(h2)]);
          sv_axpy(rhs, c, prod);
        }
        if (!sv_equal(lhs, rhs)) {
          rep.algebra_compat = false;
          why << "module-algebra law fails at ("
              << word_name(T.alg.word(t), T.pres.names) << ", "
              << word_name(T.alg.word(t2), T.pres.names) << ", "
              << H.word_str(H.alg.word(h)) << "); ";
          break;
        }
      }
    }
  }
  rep.detail = why.str();
  return rep;
}

CotensorResult cotensor(const ComoduleAlgebra& T, const ComoduleAlgebra& Z) {
  if (T.H != Z.H)
    throw std::invalid_argument("cotensor: different coacting algebras");
  const HopfAlgebra& H = *T.H;
  const int nT = T.dim();
  const int nZ = Z.dim();
  const int nH = int(H.dim());
  CotensorResult out;

  ExactMatrix M(*T.F, nT * nH * nZ, nT * nZ);
  for (int i = 0; i < nT; ++i) {
    for (int j = 0; j < nZ; ++j) {
      const int col = i * nZ + j;
      for (const auto& [p, c] : T.rho[size_t(i)]) {
        int t = T.alg.index_of(p.first);
        int h = H.alg.index_of(p.second);
        M.add((t * nH + h) * nZ + j, col, c);
      }
      for (const auto& [p, c] : Z.lam[size_t(j)]) {
        int h = H.alg.index_of(p.first);
        int z = Z.alg.index_of(p.second);
        M.add((i * nH + h) * nZ + z, col, Cyc::zero(*T.F) - c);
      }
    }
  }
  out.basis_coords = M.kernel();
  out.dim = int(out.basis_coords.size());
  out.basis.reserve(out.basis_coords.size());
  for (const SparseVec& v : out.basis_coords) {
    TensorElem te;
    for (const auto& [col, c] : v)
      tp_add(te, T.alg.word(col / nZ), Z.alg.word(col % nZ), c);
    out.basis.push_back(std::move(te));
  }

  SolvedBasis sb(*T.F);
  for (const SparseVec& v : out.basis_coords) sb.insert(v);
  SparseVec unit{{0, Cyc::one(*T.F)}};
  out.unit_member = sb.express(unit).has_value();

  out.closed_under_mult = true;
  out.mult.assign(size_t(out.dim), std::vector<SparseVec>(size_t(out.dim)));
  std::ostringstream why;
  for (int a = 0; a < out.dim; ++a) {
    for (int b = 0; b < out.dim; ++b) {
      TensorElem prod =
          tp_mul(out.basis[size_t(a)], out.basis[size_t(b)], T.alg, Z.alg);
      SparseVec coords;
      for (const auto& [p, c] : prod)
        sv_add(coords, T.alg.index_of(p.first) * nZ + Z.alg.index_of(p.second),
               c);
      auto expr = sb.express(coords);
      if (!expr) {
        out.closed_under_mult = false;
        why << "product of basis elements " << a << " and " << b
            << " leaves the kernel; ";
        out.detail = why.str();
        return out;
      }
      out.mult[size_t(a)][size_t(b)] = std::move(*expr);
    }
  }
  out.detail = why.str();
  return out;
}

TrivialityCheck is_right_trivial(const CycField& F, int n, const SLMatrix& g) {
  CharacterSearch cs = solve_characters(F, n, g);
  TrivialityCheck out;
  out.decided = cs.complete;
  out.in_field = !cs.found.empty();
  out.over_closure = out.in_field || cs.closure_only;
  if (out.in_field) out.witness = cs.found.front();
  std::ostringstream why;
  why << cs.found.size() << " character(s) over the field";
  if (!out.in_field && cs.closure_only)
    why << "; a support pattern survives over the closure "
           "(blocked only by a missing root)";
  if (!cs.complete) why << "; search incomplete: " << cs.detail;
  out.detail = why.str();
  return out;
}

TrivialityCheck is_bitrivial(const CycField& F, int n, const SLMatrix& g) {
  CharacterSearch cs = solve_characters(F, n, g);
  TrivialityCheck out;
  out.decided = cs.complete;
  std::ostringstream why;

  // Field level: a character whose value matrix V satisfies V X = X V
  // where X is the generator matrix. Generators are linearly independent
  // basis elements, so the (i, j) entry of the commutator vanishes iff
  // every generator coefficient does.
  for (const Character& ch : cs.found) {
    bool commutes = true;
    for (int i = 0; i < n && commutes; ++i) {
      for (int j = 0; j < n && commutes; ++j) {
        std::map<int, Cyc> coeff;  // generator index -> coefficient
        for (int k = 0; k < n; ++k) {
          sv_add(coeff, gen_xij(n, k, j),
                 ch.gen_values[size_t(gen_xij(n, i, k))]);
          sv_add(coeff, gen_xij(n, i, k),
                 Cyc::zero(F) - ch.gen_values[size_t(gen_xij(n, k, j))]);
        }
        if (!coeff.empty()) commutes = false;
      }
    }
    if (commutes) {
      out.in_field = true;
      out.witness = ch;
      break;
    }
  }

  // Closure level. Commuting with the generator matrix forces the value
  // matrix to be scalar tI; the quantum determinant then gives t^n = 1 and
  // the power relations give t^N = g_ii for every i. So a witness exists
  // over the closure iff g = lambda I and lambda is an N-th power of an
  // n-th root of unity, i.e. lambda^(n / gcd(n, N)) = 1.
  if (g.is_scalar()) {
    const long gc = std::gcd(long(n), long(F.order()));
    Cyc lam_pow = g.at(0, 0).pow(long(n) / gc);
    out.over_closure = lam_pow.is_one();
  } else {
    out.over_closure = false;
  }
  if (out.in_field && !out.over_closure)
    throw std::logic_error("bitriviality: field witness without closure case");

  why << (out.in_field ? "commuting character over the field"
                       : "no commuting character over the field");
  why << "; over the closure "
      << (out.over_closure ? "a scalar witness exists" : "none can exist");
  if (!cs.complete) why << "; search incomplete: " << cs.detail;
  out.detail = why.str();
  return out;
}

bool equal_quotients(const RewriteSystem& A, const RewriteSystem& B,
                     std::string* why) {
  if (A.ngen() != B.ngen()) {
    if (why) *why = "different generator counts";
    return false;
  }
  BasisEnum ba = enum_basis(A);
  BasisEnum bb = enum_basis(B);
  if (ba.finite != bb.finite || ba.words != bb.words) {
    if (why) *why = "different irreducible-word bases";
    return false;
  }
  for (const auto& [lhs, rhs] : A.active_rules()) {
    NcPoly p = NcPoly::mono(A.field(), lhs) - rhs;
    if (!B.nf(p).is_zero()) {
      if (why) *why = "rule of the first system does not vanish in the second";
      return false;
    }
  }
  for (const auto& [lhs, rhs] : B.active_rules()) {
    NcPoly p = NcPoly::mono(B.field(), lhs) - rhs;
    if (!A.nf(p).is_zero()) {
      if (why) *why = "rule of the second system does not vanish in the first";
      return false;
    }
  }
  if (why) why->clear();
  return true;
}

TransgressionResult transgress(std::shared_ptr<CycField> F, int n,
                               const SLMatrix& g, size_t bound) {
  const Cyc q = Cyc::zeta(*F, 1);
  const unsigned N = F->order();
  std::vector<NcPoly> rels = frt_relations(*F, n, q);
  NcPoly dq = quantum_det(*F, n, q);
  dq.add_term(Word(), -Cyc::one(*F));
  rels.push_back(dq);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      NcPoly rel;
      for (int k = 0; k < n; ++k)
        rel.add_term(word_pow(gen_xij(n, k, j), int(N)), g.at(i, k));
      if (i == j) rel.add_term(Word(), -Cyc::one(*F));
      rels.push_back(rel);
    }
  }
  CompletionResult comp = complete(*F, n * n, rels, bound);
  BasisEnum be = enum_basis(comp.rs);
  TransgressionResult out{
      FDBuild{make_presentation(matrix_names(n), N, F, rels), comp.status,
              FDAlgebra(std::move(comp.rs), std::move(be.words))},
      comp.status == CompletionStatus::Complete && be.finite, false, ""};

  FDBuild direct = build_T_g(F, n, g.inverse(), bound);
  std::string why;
  out.matches_direct = equal_quotients(out.built.alg.rs(), direct.alg.rs(), &why);
  std::ostringstream det;
  det << "quotient dim " << out.built.alg.dim() << ", direct dim "
      << direct.alg.dim();
  if (!why.empty()) det << "; " << why;
  out.detail = det.str();
  return out;
}

GroupLawWitness group_law_witness(const ComoduleAlgebra& Tg,
                                  const ComoduleAlgebra& Th,
                                  const ComoduleAlgebra& Tgh) {
  const int n = Tg.n;
  const int nTg = Tg.dim();
  const int nTh = Th.dim();
  GroupLawWitness out;
  std::ostringstream why;

  // Generator images x_ij |-> sum_k x_ik (x) x_kj, extended to every basis
  // word multiplicatively.
  std::vector<TensorElem> gen_img(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TensorElem te;
      for (int k = 0; k < n; ++k)
        te[{Word(1, char(gen_xij(n, i, k))), Word(1, char(gen_xij(n, k, j)))}] =
            Cyc::one(*Tg.F);
      gen_img[size_t(gen_xij(n, i, j))] = std::move(te);
    }
  }
  std::map<Word, TensorElem> img =
      tensor_table(Tgh.alg.words(), gen_img, Tg.alg, Th.alg);

  // Defining relations of T_{gh} map to zero.
  out.relations_vanish = true;
  for (const NcPoly& rel : Tgh.pres.rels) {
    TensorElem acc;
    for (const auto& [w, c] : rel.terms()) {
      TensorElem prod{{{Word(), Word()}, Cyc::one(*Tg.F)}};
      for (char ch : w)
        prod = tp_mul(prod, gen_img[size_t(ch)], Tg.alg, Th.alg);
      tp_scale_add(acc, prod, c);
    }
    if (!acc.empty()) {
      out.relations_vanish = false;
      why << "relation " << rel.to_string(Tgh.pres.names)
          << " has nonzero image; ";
      break;
    }
  }

  CotensorResult C = cotensor(Tg, Th);
  out.cotensor_dim = C.dim;
  SolvedBasis sb(*Tg.F);
  for (const SparseVec& v : C.basis_coords) sb.insert(v);

  // Images expressed in cotensor coordinates.
  out.in_cotensor = true;
  std::vector<SparseVec> coords(size_t(Tgh.dim()));
  RowSpace indep(*Tg.F);
  int indep_rank = 0;
  for (int w = 0; w < Tgh.dim(); ++w) {
    SparseVec raw;
    for (const auto& [p, c] : img.at(Tgh.alg.word(w)))
      sv_add(raw, Tg.alg.index_of(p.first) * nTh + Th.alg.index_of(p.second),
             c);
    if (indep.insert(raw)) ++indep_rank;
    auto expr = sb.express(raw);
    if (!expr) {
      out.in_cotensor = false;
      why << "image of " << word_name(Tgh.alg.word(w), Tgh.pres.names)
          << " is outside the cotensor; ";
      break;
    }
    coords[size_t(w)] = std::move(*expr);
  }

  if (out.in_cotensor) {
    out.alg_map = C.closed_under_mult;
    for (int u = 0; u < Tgh.dim() && out.alg_map; ++u) {
      for (int v = 0; v < Tgh.dim(); ++v) {
        SparseVec lhs;
        for (const auto& [a, ca] : coords[size_t(u)])
          for (const auto& [b, cb] : coords[size_t(v)])
            sv_axpy(lhs, ca * cb, C.mult[size_t(a)][size_t(b)]);
        SparseVec rhs;
        for (const auto& [z, c] : Tgh.alg.mul_basis(u, v))
          sv_axpy(rhs, c, coords[size_t(z)]);
        if (!sv_equal(lhs, rhs)) {
          out.alg_map = false;
          why << "multiplicativity fails at ("
              << word_name(Tgh.alg.word(u), Tgh.pres.names) << ", "
              << word_name(Tgh.alg.word(v), Tgh.pres.names) << "); ";
          break;
        }
      }
    }
  }

  // Bicolinearity: lambda of the composite vs lambda of the first factor,
  // rho of the composite vs rho of the second factor.
  out.left_colinear = true;
  out.right_colinear = true;
  const HopfAlgebra& H = *Tg.H;
  const int nH = int(H.dim());
  for (int w = 0; w < Tgh.dim(); ++w) {
    const TensorElem& mw = img.at(Tgh.alg.word(w));
    if (out.left_colinear) {
      SparseVec lhs, rhs;  // coords (h * nTg + i) * nTh + j
      for (const auto& [p, c] : Tgh.lam[size_t(w)]) {
        int h = H.alg.index_of(p.first);
        for (const auto& [p2, c2] : img.at(p.second))
          sv_add(lhs,
                 (h * nTg + Tg.alg.index_of(p2.first)) * nTh +
                     Th.alg.index_of(p2.second),
                 c * c2);
      }
      for (const auto& [p, c] : mw) {
        int j = Th.alg.index_of(p.second);
        for (const auto& [p2, c2] : Tg.lam[size_t(Tg.alg.index_of(p.first))])
          sv_add(rhs,
                 (H.alg.index_of(p2.first) * nTg +
                  Tg.alg.index_of(p2.second)) *
                         nTh +
                     j,
                 c * c2);
      }
      if (!sv_equal(lhs, rhs)) {
        out.left_colinear = false;
        why << "left colinearity fails at "
            << word_name(Tgh.alg.word(w), Tgh.pres.names) << "; ";
      }
    }
    if (out.right_colinear) {
      SparseVec lhs, rhs;  // coords (i * nTh + j) * nH + h
      for (const auto& [p, c] : Tgh.rho[size_t(w)]) {
        int h = H.alg.index_of(p.second);
        for (const auto& [p2, c2] : img.at(p.first))
          sv_add(lhs,
                 (Tg.alg.index_of(p2.first) * nTh +
                  Th.alg.index_of(p2.second)) *
                         nH +
                     h,
                 c * c2);
      }
      for (const auto& [p, c] : mw) {
        int i = Tg.alg.index_of(p.first);
        for (const auto& [p2, c2] : Th.rho[size_t(Th.alg.index_of(p.second))])
          sv_add(rhs,
                 (i * nTh + Th.alg.index_of(p2.first)) * nH +
                     H.alg.index_of(p2.second),
                 c * c2);
      }
      if (!sv_equal(lhs, rhs)) {
        out.right_colinear = false;
        why << "right colinearity fails at "
            << word_name(Tgh.alg.word(w), Tgh.pres.names) << "; ";
      }
    }
  }

  out.bijective = out.in_cotensor && indep_rank == Tgh.dim() &&
                  C.dim == Tgh.dim();
  if (!out.bijective)
    why << "rank " << indep_rank << " of " << Tgh.dim() << " into cotensor dim "
        << C.dim << "; ";
  out.detail = why.str();
  return out;
}

ComoduleAlgebra twist_left(const ComoduleAlgebra& T, const LinMap& f) {
  const HopfAlgebra& H = *T.H;
  ComoduleAlgebra out = T;
  out.label = T.label + " twisted";
  for (size_t i = 0; i < out.lam.size(); ++i) {
    TensorElem nl;
    for (const auto& [p, c] : T.lam[i]) {
      int h = H.alg.index_of(p.first);
      for (const auto& [w, cw] : f[size_t(h)].terms())
        tp_add(nl, w, p.second, c * cw);
    }
    out.lam[i] = std::move(nl);
  }
  return out;
}

TwistWitness rescale_twist_witness(std::shared_ptr<CycField> F,
                                   const HopfAlgebra& H, int n,
                                   const SLMatrix& g,
                                   const std::vector<Cyc>& r) {
  if (int(r.size()) != n)
    throw std::invalid_argument("rescale_twist_witness: wrong tuple size");
  TwistWitness out;
  std::ostringstream why;
  const unsigned N = F->order();

  std::vector<Cyc> rinv;
  rinv.reserve(r.size());
  for (const Cyc& c : r) rinv.push_back(c.inv());

  LinMap f = rescale_map(H, n, r);
  LinMap finv = rescale_map(H, n, rinv);
  out.f_automorphism = is_algebra_map(H, H.alg, f, nullptr) &&
                       is_coalgebra_endomap(H, f, nullptr);
  if (out.f_automorphism) {
    for (size_t w = 0; w < H.dim(); ++w) {
      if (apply_map(H, H.alg, f, finv[w]) !=
          NcPoly::mono(*F, H.alg.word(int(w)))) {
        out.f_automorphism = false;
        why << "f composed with its inverse misses "
            << H.word_str(H.alg.word(int(w))) << "; ";
        break;
      }
    }
  } else {
    why << "rescale map is not a Hopf endomap; ";
  }

  out.g_prime = g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.g_prime.at(i, j) = r[size_t(i)].pow(long(N)) * g.at(i, j);

  ComoduleAlgebra Tg = make_matrix_comodule(F, H, n, g);
  ComoduleAlgebra TT = twist_left(Tg, f);
  ComoduleAlgebra Tp = make_matrix_comodule(F, H, n, out.g_prime);

  out.same_basis = Tp.words() == Tg.words();
  if (!out.same_basis) {
    why << "basis word sets differ; ";
    out.detail = why.str();
    return out;
  }

  const int nT = Tp.dim();
  out.word_scale.reserve(size_t(nT));
  for (const Word& w : Tp.words()) {
    Cyc s = Cyc::one(*F);
    for (char ch : w) s = s * r[size_t(int(ch) / n)];
    out.word_scale.push_back(s);
  }

  out.alg_map = true;
  for (int u = 0; u < nT && out.alg_map; ++u) {
    for (int v = 0; v < nT; ++v) {
      SparseVec lhs = Tg.alg.mul_basis(u, v);
      SparseVec scaled_lhs;
      Cyc cs = out.word_scale[size_t(u)] * out.word_scale[size_t(v)];
      for (const auto& [k, c] : lhs) sv_add(scaled_lhs, k, cs * c);
      SparseVec rhs;
      for (const auto& [k, c] : Tp.alg.mul_basis(u, v))
        sv_add(rhs, k, c * out.word_scale[size_t(k)]);
      if (!sv_equal(scaled_lhs, rhs)) {
        out.alg_map = false;
        why << "multiplicativity fails at ("
            << word_name(Tp.alg.word(u), Tp.pres.names) << ", "
            << word_name(Tp.alg.word(v), Tp.pres.names) << "); ";
        break;
      }
    }
  }

  out.left_colinear = true;
  out.right_colinear = true;
  for (int i = 0; i < nT; ++i) {
    if (out.left_colinear) {
      TensorElem lhs;  // (id (x) W) lam_{T'}
      for (const auto& [p, c] : Tp.lam[size_t(i)]) {
        int t = Tp.alg.index_of(p.second);
        tp_add(lhs, p.first, p.second, c * out.word_scale[size_t(t)]);
      }
      TensorElem rhs;  // lam_twisted (W e_i)
      tp_scale_add(rhs, TT.lam[size_t(i)], out.word_scale[size_t(i)]);
      if (lhs != rhs) {
        out.left_colinear = false;
        why << "left colinearity fails at "
            << word_name(Tp.alg.word(i), Tp.pres.names) << "; ";
      }
    }
    if (out.right_colinear) {
      TensorElem lhs;  // (W (x) id) rho_{T'}
      for (const auto& [p, c] : Tp.rho[size_t(i)]) {
        int t = Tp.alg.index_of(p.first);
        tp_add(lhs, p.first, p.second, c * out.word_scale[size_t(t)]);
      }
      TensorElem rhs;  // rho_T (W e_i); the twist keeps rho
      tp_scale_add(rhs, TT.rho[size_t(i)], out.word_scale[size_t(i)]);
      if (lhs != rhs) {
        out.right_colinear = false;
        why << "right colinearity fails at "
            << word_name(Tp.alg.word(i), Tp.pres.names) << "; ";
      }
    }
  }

  out.bijective = true;
  for (const Cyc& s : out.word_scale) {
    if (s.is_zero()) {
      out.bijective = false;
      why << "zero scale; ";
      break;
    }
  }
  out.detail = why.str();
  return out;
}

namespace {

// Comultiplication tables on the irreducible words of the graded system,
// extended multiplicatively one letter at a time.
std::map<Word, TensorElem> graded_delta_table(const GradedBuild& Hq, int n,
                                              const std::vector<Word>& words) {
  const CycField& F = Hq.rs.field();
  std::vector<TensorElem> dgen(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TensorElem te;
      for (int k = 0; k < n; ++k)
        te[{Word(1, char(gen_xij(n, i, k))), Word(1, char(gen_xij(n, k, j)))}] =
            Cyc::one(F);
      dgen[size_t(gen_xij(n, i, j))] = std::move(te);
    }
  }
  std::map<Word, TensorElem> tab;
  tab[Word()] = TensorElem{{{Word(), Word()}, Cyc::one(F)}};
  for (const Word& w : words) {
    if (w.empty()) continue;
    Word head = w.substr(0, w.size() - 1);
    // Every prefix of an irreducible word is irreducible, so the head's
    // table entry exists already (words come in increasing deglex order).
    tab[w] = tp_mul_rs(tab.at(head), dgen[size_t(w.back())], Hq.rs, Hq.rs);
  }
  return tab;
}

struct PushforwardData {
  std::vector<Word> words;            // irreducible words within the bound
  std::map<Word, int> index;
  std::map<Word, TensorElem> delta;   // on those words
  // images Phi(w) = pi_T(w_1) (x) w_2 in coordinates t * #words + h
  std::vector<SparseVec> img;
};

PushforwardData pushforward_images(const GradedBuild& Hq,
                                   const ComoduleAlgebra& T, int n,
                                   size_t bound) {
  PushforwardData d;
  BasisEnum be = enum_basis(Hq.rs, bound, 2000000);
  d.words = std::move(be.words);
  for (size_t i = 0; i < d.words.size(); ++i)
    d.index.emplace(d.words[i], int(i));
  d.delta = graded_delta_table(Hq, n, d.words);
  const int NW = int(d.words.size());
  d.img.resize(d.words.size());
  for (int wi = 0; wi < NW; ++wi) {
    SparseVec v;
    for (const auto& [p, c] : d.delta.at(d.words[size_t(wi)])) {
      SparseVec tco = T.alg.vec(T.alg.rs().nf_word(p.first));
      int h = d.index.at(p.second);
      for (const auto& [t, ct] : tco) sv_add(v, t * NW + h, c * ct);
    }
    d.img[size_t(wi)] = std::move(v);
  }
  return d;
}

}  // namespace

PushforwardReport pushforward_bounded(const GradedBuild& Hq,
                                      const HopfAlgebra& L,
                                      const ComoduleAlgebra& T,
                                      size_t degree_bound) {
  PushforwardReport rep;
  rep.degree_bound = degree_bound;
  // The graded source has one generator per matrix entry; the trivial
  // object carries no matrix, so read the size off the source instead.
  const int n = int(std::lround(std::sqrt(double(Hq.rs.ngen()))));
  const CycField& F = *T.F;
  PushforwardData d = pushforward_images(Hq, T, n, degree_bound);
  const int NW = int(d.words.size());
  rep.words_checked = NW;
  std::ostringstream why;

  // Multiplicative on pairs whose product still fits in the bound.
  rep.alg_map = true;
  for (int u = 0; u < NW && rep.alg_map; ++u) {
    if (d.words[size_t(u)].empty()) continue;
    for (int v = 0; v < NW; ++v) {
      if (d.words[size_t(v)].empty()) continue;
      if (d.words[size_t(u)].size() + d.words[size_t(v)].size() > degree_bound)
        continue;
      SparseVec lhs;
      for (const auto& [cu, ccu] : d.img[size_t(u)]) {
        for (const auto& [cv, ccv] : d.img[size_t(v)]) {
          Cyc c = ccu * ccv;
          const SparseVec& tprod = T.alg.mul_basis(cu / NW, cv / NW);
          const NcPoly& hprod =
              Hq.rs.nf_word(d.words[size_t(cu % NW)] + d.words[size_t(cv % NW)]);
          for (const auto& [t, ct] : tprod)
            for (const auto& [hw, ch] : hprod.terms())
              sv_add(lhs, t * NW + d.index.at(hw), c * ct * ch);
        }
      }
      SparseVec rhs;
      const NcPoly& uv =
          Hq.rs.nf_word(d.words[size_t(u)] + d.words[size_t(v)]);
      for (const auto& [w, c] : uv.terms())
        sv_axpy(rhs, c, d.img[size_t(d.index.at(w))]);
      if (!sv_equal(lhs, rhs)) {
        rep.alg_map = false;
        why << "multiplicativity fails at ("
            << word_name(d.words[size_t(u)], T.pres.names) << ", "
            << word_name(d.words[size_t(v)], T.pres.names) << "); ";
        break;
      }
    }
  }

  // (Phi (x) id) Delta = (id (x) Delta) Phi.
  rep.colinear = true;
  for (int wi = 0; wi < NW && rep.colinear; ++wi) {
    std::map<std::array<int, 3>, Cyc> lhs, rhs;
    auto add3 = [](std::map<std::array<int, 3>, Cyc>& m, std::array<int, 3> k,
                   const Cyc& c) {
      if (c.is_zero()) return;
      auto it = m.find(k);
      if (it == m.end()) {
        m.emplace(k, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& [p, c] : d.delta.at(d.words[size_t(wi)])) {
      int h2 = d.index.at(p.second);
      for (const auto& [co, cc] : d.img[size_t(d.index.at(p.first))])
        add3(lhs, {co / NW, co % NW, h2}, c * cc);
    }
    for (const auto& [co, cc] : d.img[size_t(wi)]) {
      for (const auto& [p, c] : d.delta.at(d.words[size_t(co % NW)]))
        add3(rhs, {co / NW, d.index.at(p.first), d.index.at(p.second)},
             cc * c);
    }
    if (lhs != rhs) {
      rep.colinear = false;
      why << "comultiplication compatibility fails at "
          << word_name(d.words[size_t(wi)], T.pres.names) << "; ";
    }
  }

  // rho_T (x) id = id (x) lam on every image, lam = (pi_L (x) id) Delta.
  rep.in_cotensor = true;
  for (int wi = 0; wi < NW && rep.in_cotensor; ++wi) {
    std::map<std::array<int, 3>, Cyc> res;  // (t, l, h)
    auto add3 = [](std::map<std::array<int, 3>, Cyc>& m, std::array<int, 3> k,
                   const Cyc& c) {
      if (c.is_zero()) return;
      auto it = m.find(k);
      if (it == m.end()) {
        m.emplace(k, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& [co, cc] : d.img[size_t(wi)]) {
      for (const auto& [p, c] : T.rho[size_t(co / NW)])
        add3(res,
             {T.alg.index_of(p.first), L.alg.index_of(p.second), co % NW},
             cc * c);
      for (const auto& [p, c] : d.delta.at(d.words[size_t(co % NW)])) {
        SparseVec lco = L.alg.vec(L.alg.rs().nf_word(p.first));
        for (const auto& [l, cl] : lco)
          add3(res, {co / NW, l, d.index.at(p.second)},
               Cyc::zero(F) - cc * c * cl);
      }
    }
    if (!res.empty()) {
      rep.in_cotensor = false;
      why << "image of " << word_name(d.words[size_t(wi)], T.pres.names)
          << " misses the cotensor; ";
    }
  }

  rep.independent = true;
  RowSpace rs(F);
  for (int wi = 0; wi < NW; ++wi) {
    if (!rs.insert(d.img[size_t(wi)])) {
      rep.independent = false;
      why << "image of " << word_name(d.words[size_t(wi)], T.pres.names)
          << " is dependent; ";
      break;
    }
  }
  rep.detail = why.str();
  return rep;
}

PushforwardMutation pushforward_mutation_probe(const GradedBuild& Hq,
                                               const HopfAlgebra& L,
                                               std::shared_ptr<CycField> F,
                                               int n, const SLMatrix& g,
                                               size_t degree_bound) {
  PushforwardMutation out;
  // Flip the sign of the first nonzero power target.
  SLMatrix bad = g;
  for (int i = 0; i < n * n; ++i) {
    if (!bad.e[size_t(i)].is_zero()) {
      bad.e[size_t(i)] = Cyc::zero(*F) - bad.e[size_t(i)];
      break;
    }
  }
  try {
    const Cyc q = Cyc::zeta(*F, 1);
    std::vector<NcPoly> rels = frt_relations(*F, n, q);
    NcPoly dq = quantum_det(*F, n, q);
    dq.add_term(Word(), -Cyc::one(*F));
    rels.push_back(dq);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rels.push_back(
            power_relation(*F, gen_xij(n, i, j), F->order(), bad.at(i, j)));
    CompletionResult comp = complete(*F, n * n, rels, 12);
    BasisEnum be = enum_basis(comp.rs);
    if (!be.finite) {
      out.detected = true;
      out.where = "corrupted quotient has no finite basis";
      return out;
    }
    FDBuild build{make_presentation(matrix_names(n), F->order(), F, rels),
                  comp.status, FDAlgebra(std::move(comp.rs), std::move(be.words))};
    // Assemble the comodule structure on the corrupted quotient and probe
    // the bounded checks degree by degree.
    std::vector<TensorElem> rho_gen(size_t(n) * size_t(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        TensorElem r;
        for (int k = 0; k < n; ++k)
          r[{Word(1, char(gen_xij(n, i, k))),
             Word(1, char(gen_xij(n, k, j)))}] = Cyc::one(*F);
        rho_gen[size_t(gen_xij(n, i, j))] = std::move(r);
      }
    std::map<Word, TensorElem> rho_tab =
        tensor_table(build.alg.words(), rho_gen, build.alg, L.alg);
    ComoduleAlgebra T{F, &L, n, bad, "corrupted",
                      std::move(build.pres), std::move(build.alg), {}, {}};
    for (const Word& w : T.words()) {
      T.rho.push_back(rho_tab.at(w));
      T.lam.push_back(TensorElem{});
    }
    for (size_t deg = 1; deg <= degree_bound; ++deg) {
      PushforwardReport rep = pushforward_bounded(Hq, L, T, deg);
      if (!rep.pass()) {
        out.detected = true;
        out.first_fail_degree = int(deg);
        out.where = rep.detail;
        return out;
      }
    }
    out.where = "bounded checks did not notice the corruption";
  } catch (const std::exception& e) {
    // The corrupted ideal can collapse the quotient entirely; the
    // completion reports the unit ideal, which also counts as detection.
    out.detected = true;
    out.where = e.what();
  }
  return out;
}

MuFormulaReport verify_mu_formula_on_pushforward(
    const GradedBuild& Hq, const HopfAlgebra& L, const ComoduleAlgebra& T,
    const GaloisCertificate& right_cert, size_t wdeg, size_t hdeg) {
  if (!right_cert.right_side || !right_cert.pass())
    throw std::invalid_argument("mu formula needs a passing right certificate");
  MuFormulaReport rep;
  const CycField& F = *T.F;
  const int n = int(std::lround(std::sqrt(double(Hq.rs.ngen()))));
  const size_t bound = 3 * std::max(wdeg, hdeg) + wdeg;
  PushforwardData d = pushforward_images(Hq, T, n, bound);
  const int NW = int(d.words.size());

  // Antipode on the graded side: signed quantum minors, anti-extended.
  const Cyc q = Cyc::zeta(F, 1);
  std::vector<NcPoly> sgen(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sgen[size_t(gen_xij(n, i, j))] =
          quantum_minor(F, n, q, j, i).scale((Cyc::zero(F) - q).pow(long(i) - long(j)));
  auto S_word = [&](const Word& w) {
    NcPoly acc = NcPoly::mono(F, Word());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      acc = acc * sgen[size_t(*it)];
    return Hq.rs.nf(acc);
  };

  // Linear extension of the bounded images to polynomials.
  auto phi_poly = [&](const NcPoly& p) {
    SparseVec out;
    for (const auto& [w, c] : p.terms())
      sv_axpy(out, c, d.img[size_t(d.index.at(w))]);
    return out;
  };

  // Product of two image vectors (coordinates t * NW + h).
  auto xmul = [&](const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    for (const auto& [ca, va] : a) {
      for (const auto& [cb, vb] : b) {
        Cyc c = va * vb;
        const SparseVec& tp = T.alg.mul_basis(ca / NW, cb / NW);
        const NcPoly& hp =
            Hq.rs.nf_word(d.words[size_t(ca % NW)] + d.words[size_t(cb % NW)]);
        for (const auto& [t, ct] : tp)
          for (const auto& [hw, ch] : hp.terms())
            sv_add(out, t * NW + d.index.at(hw), c * ct * ch);
      }
    }
    return out;
  };

  std::ostringstream why;
  rep.preimage_valid = true;
  rep.matches = true;

  std::vector<int> hsamples, wsamples;
  for (int i = 0; i < NW; ++i) {
    if (d.words[size_t(i)].size() <= hdeg) hsamples.push_back(i);
    if (d.words[size_t(i)].size() <= wdeg) wsamples.push_back(i);
  }

  for (int hi : hsamples) {
    const Word& hw = d.words[size_t(hi)];
    // Preimage sum Phi(S h_1) (x) Phi(h_2) of 1 (x) h under the canonical
    // map of the cotensor.
    std::vector<std::pair<std::pair<SparseVec, SparseVec>, Cyc>> pre;
    for (const auto& [p, c] : d.delta.at(hw))
      pre.push_back({{phi_poly(S_word(p.first)),
                      d.img[size_t(d.index.at(p.second))]},
                     c});
    // Validate: kap(sum a (x) b) = sum a b_(0) (x) b_(1) = 1 (x) 1 (x) h,
    // with b_(0) (x) b_(1) = (id (x) Delta) b.
    std::map<std::pair<int, Word>, Cyc> got;
    for (const auto& [ab, c] : pre) {
      for (const auto& [cb, vb] : ab.second) {
        for (const auto& [p, cd] : d.delta.at(d.words[size_t(cb % NW)])) {
          // b_(0) = (t-part of b) (x) p.first, b_(1) = p.second
          SparseVec bvec;
          bvec.emplace(int(cb / NW) * NW + d.index.at(p.first), vb * cd);
          SparseVec prod = xmul(ab.first, bvec);
          for (const auto& [co, cc] : prod) {
            auto key = std::make_pair(co, d.words[size_t(d.index.at(p.second))]);
            auto it = got.find(key);
            Cyc v = (it == got.end() ? Cyc::zero(F) : it->second) + c * cc;
            if (v.is_zero()) {
              if (it != got.end()) got.erase(it);
            } else {
              got[key] = v;
            }
          }
        }
      }
    }
    std::map<std::pair<int, Word>, Cyc> want;
    want.emplace(std::make_pair(0 * NW + 0, hw), Cyc::one(F));
    if (got != want) {
      rep.preimage_valid = false;
      why << "preimage of 1 (x) " << word_name(hw, T.pres.names)
          << " fails the canonical-map check; ";
      break;
    }

    // Delta^2 h, left nested.
    std::vector<std::tuple<Word, Word, Word, Cyc>> d2;
    for (const auto& [p, c] : d.delta.at(hw))
      for (const auto& [p2, c2] : d.delta.at(p.first))
        d2.emplace_back(p2.first, p2.second, p.second, c * c2);

    for (int wi : wsamples) {
      const SparseVec& u = d.img[size_t(wi)];
      // Direct action through the exhibited preimage.
      SparseVec direct;
      for (const auto& [ab, c] : pre)
        sv_axpy(direct, c, xmul(xmul(ab.first, u), ab.second));

      // Closed formula: sum pi(h_2)^[1] t_i pi(h_2)^[2]
      //                     (x) S(h_1) h_i h_3 over u = sum t_i (x) h_i.
      std::map<std::pair<int, Word>, Cyc> formula;
      for (const auto& [h1, h2, h3, c] : d2) {
        SparseVec lco = L.alg.vec(L.alg.rs().nf_word(h2));
        NcPoly sh1 = S_word(h1);
        for (const auto& [ui, cu] : u) {
          const int ti = ui / NW;
          const Word& hi = d.words[size_t(ui % NW)];
          // T leg: pi(h_2)^[1] e_ti pi(h_2)^[2] via the certificate.
          SparseVec tleg;
          for (const auto& [l, cl] : lco) {
            for (const auto& [pp, ci] : right_cert.inv_unit[size_t(l)]) {
              SparseVec left = T.alg.mul_words(pp.first, T.alg.word(ti));
              for (const auto& [k, ck] : left)
                sv_axpy(tleg, cl * ci * ck,
                        T.alg.mul_basis(k, T.alg.index_of(pp.second)));
            }
          }
          // H leg: S(h_1) h_i h_3.
          NcPoly hleg = Hq.rs.nf(sh1 * NcPoly::mono(F, hi + h3));
          for (const auto& [t, ct] : tleg) {
            for (const auto& [hwd, ch] : hleg.terms()) {
              auto key = std::make_pair(t, hwd);
              auto it = formula.find(key);
              Cyc v = (it == formula.end() ? Cyc::zero(F) : it->second) +
                      c * cu * ct * ch;
              if (v.is_zero()) {
                if (it != formula.end()) formula.erase(it);
              } else {
                formula[key] = v;
              }
            }
          }
        }
      }
      std::map<std::pair<int, Word>, Cyc> dm;
      for (const auto& [co, c] : direct)
        dm.insert_or_assign(std::make_pair(co / NW, d.words[size_t(co % NW)]),
                            c);
      if (dm != formula) {
        rep.matches = false;
        why << "formula mismatch acting by " << word_name(hw, T.pres.names)
            << " on the image of " << word_name(d.words[size_t(wi)], T.pres.names)
            << "; ";
      }
      ++rep.samples;
      if (!rep.matches) break;
    }
    if (!rep.preimage_valid || !rep.matches) break;
  }
  rep.detail = why.str();
  return rep;
}

bool mu_equivariant(const ComoduleAlgebra& A, const MuAction& MA,
                    const ComoduleAlgebra& B, const MuAction& MB,
                    const std::vector<SparseVec>& images, std::string* why) {
  const int nA = A.dim();
  const int nH = int(A.H->dim());
  if (int(images.size()) != nA) {
    if (why) *why = "image list does not cover the domain basis";
    return false;
  }
  for (const SparseVec& v : images) {
    if (!v.empty() && v.rbegin()->first >= B.dim()) {
      if (why) *why = "image coordinates exceed the codomain dimension";
      return false;
    }
  }
  for (int t = 0; t < nA; ++t) {
    for (int h = 0; h < nH; ++h) {
      SparseVec lhs;
      for (const auto& [k, c] : MA.act[size_t(t)][size_t(h)])
        sv_axpy(lhs, c, images[size_t(k)]);
      SparseVec rhs;
      for (const auto& [m, c] : images[size_t(t)])
        sv_axpy(rhs, c, MB.act[size_t(m)][size_t(h)]);
      if (!sv_equal(lhs, rhs)) {
        if (why)
          *why = "images do not intertwine the actions at (" +
                 word_name(A.alg.word(t), A.pres.names) + ", " +
                 A.H->word_str(A.H->alg.word(h)) + ")";
        return false;
      }
    }
  }
  if (why) why->clear();
  return true;
}

}  // namespace qcert
