#include "qcert/lazycoh.hpp"

#include <array>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qcert {

namespace {

void tp_add(TensorElem& acc, const Word& l, const Word& r, const Cyc& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(l, r);
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void t3_add(Tensor3& acc, std::array<Word, 3> key, const Cyc& c) {
  if (c.is_zero()) return;
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::string wlab(const HopfAlgebra& H, int i) {
  return H.word_str(H.alg.word(i));
}

std::string pair_label(const HopfAlgebra& H, int i, int j) {
  return "(" + wlab(H, i) + ", " + wlab(H, j) + ")";
}

// sigma-weighted product table over basis pairs:
//   weight_first:  out[i][j] = sum a b sigma(x1, y1) * coords(x2 y2)
//   !weight_first: out[i][j] = sum a b sigma(x2, y2) * coords(x1 y1)
// where Delta e_i = sum a x1 (x) x2 and Delta e_j = sum b y1 (x) y2.
// The first form is both the left side of the centrality condition and the
// inner convolution of the cocycle identity.
std::vector<std::vector<SparseVec>> sigma_weighted(const HopfAlgebra& H,
                                                   const CocycleGrid& sigma,
                                                   bool weight_first) {
  const int D = int(H.dim());
  std::vector<std::vector<SparseVec>> out(
      static_cast<size_t>(D), std::vector<SparseVec>(static_cast<size_t>(D)));
  for (int i = 0; i < D; ++i) {
    const TensorElem& dx = H.delta.at(H.alg.word(i));
    for (int j = 0; j < D; ++j) {
      const TensorElem& dy = H.delta.at(H.alg.word(j));
      SparseVec acc;
      for (const auto& [xp, a] : dx) {
        const int x1 = H.alg.index_of(xp.first);
        const int x2 = H.alg.index_of(xp.second);
        for (const auto& [yp, b] : dy) {
          const int y1 = H.alg.index_of(yp.first);
          const int y2 = H.alg.index_of(yp.second);
          const Cyc& w = weight_first ? sigma[size_t(x1)][size_t(y1)]
                                      : sigma[size_t(x2)][size_t(y2)];
          if (w.is_zero()) continue;
          const Cyc c = a * b * w;
          if (c.is_zero()) continue;
          const SparseVec& prod = weight_first ? H.alg.mul_basis(x2, y2)
                                               : H.alg.mul_basis(x1, y1);
          sv_axpy(acc, c, prod);
        }
      }
      out[size_t(i)][size_t(j)] = std::move(acc);
    }
  }
  return out;
}

bool grid_shape_ok(const HopfAlgebra& H, const CocycleGrid& sigma) {
  if (sigma.size() != H.dim()) return false;
  for (const auto& row : sigma)
    if (row.size() != H.dim()) return false;
  return true;
}

}  // namespace

CocycleGrid trivial_cocycle(const HopfAlgebra& H) {
  const int D = int(H.dim());
  CocycleGrid grid(static_cast<size_t>(D),
                   std::vector<Cyc>(static_cast<size_t>(D)));
  for (int i = 0; i < D; ++i) {
    const Cyc ei = H.counit.at(H.alg.word(i));
    for (int j = 0; j < D; ++j)
      grid[size_t(i)][size_t(j)] = ei * H.counit.at(H.alg.word(j));
  }
  return grid;
}

Cyc cocycle_eval(const CocycleGrid& sigma, const SparseVec& p,
                 const SparseVec& q) {
  const CycField* Fp = nullptr;
  for (const auto& row : sigma) {
    for (const Cyc& v : row)
      if (v.field() != nullptr) {
        Fp = v.field();
        break;
      }
    if (Fp != nullptr) break;
  }
  if (Fp == nullptr)
    throw std::invalid_argument("cocycle_eval: grid carries no field");
  Cyc acc = Cyc::zero(*Fp);
  for (const auto& [i, a] : p)
    for (const auto& [j, b] : q)
      acc += a * b * sigma[size_t(i)][size_t(j)];
  return acc;
}

CocycleReport is_cocycle(const HopfAlgebra& H, const CocycleGrid& sigma) {
  CocycleReport rep;
  if (!grid_shape_ok(H, sigma)) {
    rep.detail = "grid shape does not match the basis";
    return rep;
  }
  std::ostringstream os;
  const CycField& F = *H.F;
  const int D = int(H.dim());
  const int unit = H.alg.index_of(Word());

  // Unitality: sigma(1, h) = sigma(h, 1) = eps(h).
  rep.normalized = true;
  for (int i = 0; i < D; ++i) {
    const Cyc eps = H.counit.at(H.alg.word(i));
    if (sigma[size_t(unit)][size_t(i)] != eps ||
        sigma[size_t(i)][size_t(unit)] != eps) {
      rep.normalized = false;
      os << "unitality fails at " << wlab(H, i) << "; ";
      break;
    }
  }

  // Cocycle identity on every basis triple, via the precomputed table
  // P[i][j] = sum sigma(x1, y1) x2 y2:
  //   sum_k P[x][y]_k sigma(e_k, z) = sum_k P[y][z]_k sigma(x, e_k).
  const auto P = sigma_weighted(H, sigma, true);
  rep.identity = true;
  for (int x = 0; x < D && rep.identity; ++x)
    for (int y = 0; y < D && rep.identity; ++y)
      for (int z = 0; z < D; ++z) {
        Cyc lhs = Cyc::zero(F);
        for (const auto& [k, c] : P[size_t(x)][size_t(y)])
          lhs += c * sigma[size_t(k)][size_t(z)];
        Cyc rhs = Cyc::zero(F);
        for (const auto& [k, c] : P[size_t(y)][size_t(z)])
          rhs += c * sigma[size_t(x)][size_t(k)];
        if (lhs != rhs) {
          rep.identity = false;
          os << "identity fails at (" << wlab(H, x) << ", " << wlab(H, y)
             << ", " << wlab(H, z) << "); ";
          break;
        }
      }

  // Convolution invertibility on H (x) H: solve sigma * tau = eps (x) eps
  // over all basis pairs, then confirm tau * sigma directly.
  const int DD = D * D;
  ExactMatrix M(F, DD, DD);
  for (int x = 0; x < D; ++x) {
    const TensorElem& dx = H.delta.at(H.alg.word(x));
    for (int y = 0; y < D; ++y) {
      const TensorElem& dy = H.delta.at(H.alg.word(y));
      const int row = x * D + y;
      for (const auto& [xp, a] : dx) {
        const int x1 = H.alg.index_of(xp.first);
        const int x2 = H.alg.index_of(xp.second);
        for (const auto& [yp, b] : dy) {
          const int y1 = H.alg.index_of(yp.first);
          const int y2 = H.alg.index_of(yp.second);
          const Cyc c = a * b * sigma[size_t(x1)][size_t(y1)];
          if (!c.is_zero()) M.add(row, x2 * D + y2, c);
        }
      }
    }
  }
  SparseVec rhs;
  for (int x = 0; x < D; ++x) {
    const Cyc ex = H.counit.at(H.alg.word(x));
    if (ex.is_zero()) continue;
    for (int y = 0; y < D; ++y) {
      const Cyc e = ex * H.counit.at(H.alg.word(y));
      if (!e.is_zero()) rhs[x * D + y] = e;
    }
  }
  const auto cs = M.solve_columns({rhs});
  if (!cs.sols[0].has_value()) {
    os << "no right convolution inverse on the tensor square; ";
  } else {
    const SparseVec& tau = *cs.sols[0];
    bool two_sided = true;
    for (int x = 0; x < D && two_sided; ++x) {
      const TensorElem& dx = H.delta.at(H.alg.word(x));
      for (int y = 0; y < D && two_sided; ++y) {
        const TensorElem& dy = H.delta.at(H.alg.word(y));
        Cyc acc = Cyc::zero(F);
        for (const auto& [xp, a] : dx) {
          const int x1 = H.alg.index_of(xp.first);
          const int x2 = H.alg.index_of(xp.second);
          for (const auto& [yp, b] : dy) {
            const int y1 = H.alg.index_of(yp.first);
            const int y2 = H.alg.index_of(yp.second);
            const auto it = tau.find(x1 * D + y1);
            if (it == tau.end()) continue;
            acc += a * b * it->second * sigma[size_t(x2)][size_t(y2)];
          }
        }
        if (acc != H.counit.at(H.alg.word(x)) * H.counit.at(H.alg.word(y))) {
          two_sided = false;
          os << "right inverse is not a left inverse at "
             << pair_label(H, x, y) << "; ";
        }
      }
    }
    rep.invertible = two_sided;
  }

  if (rep.pass())
    os << "normalized, identity on " << D << "^3 triples, invertible";
  rep.detail = os.str();
  return rep;
}

LazyReport is_lazy(const HopfAlgebra& H, const CocycleGrid& sigma) {
  LazyReport rep;
  if (!grid_shape_ok(H, sigma)) {
    rep.detail = "grid shape does not match the basis";
    return rep;
  }
  const int D = int(H.dim());
  const auto P = sigma_weighted(H, sigma, true);   // sigma on the first legs
  const auto R = sigma_weighted(H, sigma, false);  // sigma on the second legs
  std::ostringstream os;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      if (sv_equal(P[size_t(i)][size_t(j)], R[size_t(i)][size_t(j)])) continue;
      if (rep.fail_count == 0) {
        rep.first_i = i;
        rep.first_j = j;
        SparseVec diff = P[size_t(i)][size_t(j)];
        for (const auto& [k, c] : R[size_t(i)][size_t(j)]) sv_add(diff, k, -c);
        rep.difference = std::move(diff);
        os << "first central failure at " << pair_label(H, i, j);
      }
      ++rep.fail_count;
    }
  rep.lazy = (rep.fail_count == 0);
  if (rep.lazy)
    os << "central on all " << D * D << " basis pairs";
  else
    os << "; " << rep.fail_count << " of " << D * D << " pairs fail";
  rep.detail = os.str();
  return rep;
}

CocycleMutation cocycle_mutation_probe(const HopfAlgebra& H,
                                       const CocycleGrid& sigma) {
  CocycleMutation out;
  if (!grid_shape_ok(H, sigma) || H.dim() < 2) {
    out.where = "grid unsuitable for the probe";
    return out;
  }
  const CycField& F = *H.F;
  const int D = int(H.dim());
  CocycleGrid bad = sigma;
  Cyc& slot = bad[size_t(D - 1)][size_t(D - 1)];
  slot = (slot.field() != nullptr) ? slot + Cyc::one(F) : Cyc::one(F);
  const CocycleReport rep = is_cocycle(H, bad);
  out.detected = !rep.pass();
  std::ostringstream os;
  os << "corrupted " << pair_label(H, D - 1, D - 1) << ": ";
  if (!rep.identity)
    os << "identity check caught it (" << rep.detail << ")";
  else if (!rep.normalized)
    os << "unitality check caught it (" << rep.detail << ")";
  else if (!rep.invertible)
    os << "invertibility check caught it (" << rep.detail << ")";
  else
    os << "corruption was not detected";
  out.where = os.str();
  return out;
}

CleftExtension make_cleft_extension(std::shared_ptr<CycField> F,
                                    const HopfAlgebra& B, const Cyc& s) {
  const unsigned N = F->order();
  FDBuild bd = build_cleft_A(F, s);
  if (bd.status != CompletionStatus::Complete)
    throw std::runtime_error("cleft extension: presentation did not complete");

  // Coaction on generators: G -> G (x) g, X -> G (x) x + X (x) g^{N-1}.
  std::vector<TensorElem> rho_gen(2);
  const Cyc one = Cyc::one(*F);
  rho_gen[0].emplace(std::make_pair(Word(1, char(0)), Word(1, char(0))), one);
  rho_gen[1].emplace(std::make_pair(Word(1, char(0)), Word(1, char(1))), one);
  rho_gen[1].emplace(std::make_pair(Word(1, char(1)), word_pow(0, int(N) - 1)),
                     one);
  const auto table = tensor_table(bd.alg.words(), rho_gen, bd.alg, B.alg);
  std::vector<TensorElem> rho;
  rho.reserve(bd.alg.words().size());
  for (const Word& w : bd.alg.words()) rho.push_back(table.at(w));

  CleftExtension A{std::move(F), &B,      "A(" + s.to_string() + ")",
                   std::move(bd.pres),    std::move(bd.alg),
                   std::move(rho)};
  const FDAlgebra& AA = A.alg;
  const FDAlgebra& BB = B.alg;
  const int nA = AA.dim();

  // Counit axiom: (id (x) eps) rho = id.
  for (int i = 0; i < nA; ++i) {
    SparseVec got;
    for (const auto& [p, c] : A.rho[size_t(i)]) {
      const Cyc e = c * B.counit.at(p.second);
      if (!e.is_zero()) sv_add(got, AA.index_of(p.first), e);
    }
    SparseVec want;
    want[i] = one;
    if (!sv_equal(got, want))
      throw std::runtime_error("cleft extension: coaction counit axiom fails");
  }

  // Coassociativity: (rho (x) id) rho = (id (x) Delta) rho.
  for (int i = 0; i < nA; ++i) {
    Tensor3 lhs, rhs;
    for (const auto& [p, c] : A.rho[size_t(i)]) {
      const TensorElem& rp = A.rho[size_t(AA.index_of(p.first))];
      for (const auto& [pp, d] : rp)
        t3_add(lhs, {pp.first, pp.second, p.second}, c * d);
      for (const auto& [bp, e] : B.delta.at(p.second))
        t3_add(rhs, {p.first, bp.first, bp.second}, c * e);
    }
    if (lhs != rhs)
      throw std::runtime_error(
          "cleft extension: coaction coassociativity fails");
  }

  // The coaction is an algebra map.
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nA; ++j) {
      const TensorElem prod = tp_mul(A.rho[size_t(i)], A.rho[size_t(j)], AA, BB);
      TensorElem lin;
      for (const auto& [k, c] : AA.mul_basis(i, j))
        tp_scale_add(lin, A.rho[size_t(k)], c);
      if (prod != lin)
        throw std::runtime_error(
            "cleft extension: coaction is not an algebra map");
    }

  return A;
}

std::vector<NcPoly> basis_section(const CleftExtension& A) {
  std::vector<NcPoly> sec;
  sec.reserve(A.B->dim());
  for (const Word& w : A.B->words()) {
    if (A.alg.index_of(w) < 0)
      throw std::runtime_error(
          "basis section: a basis word of the quotient is not a basis word "
          "of the extension");
    sec.push_back(NcPoly::mono(*A.F, w));
  }
  return sec;
}

CleftCocycle cocycle_from_cleft(const CleftExtension& A,
                                const std::vector<NcPoly>& section) {
  CleftCocycle out;
  std::ostringstream os;
  const HopfAlgebra& B = *A.B;
  const CycField& F = *A.F;
  const FDAlgebra& AA = A.alg;
  const FDAlgebra& BB = B.alg;
  const int nB = int(B.dim());
  if (int(section.size()) != nB) {
    out.detail = "section size does not match the quotient basis";
    return out;
  }

  // The section must intertwine the coactions: rho(sec(b)) =
  // (sec (x) id)(Delta b).
  out.colinear = true;
  for (int i = 0; i < nB; ++i) {
    TensorElem lhs;
    for (const auto& [t, c] : AA.vec(section[size_t(i)]))
      tp_scale_add(lhs, A.rho[size_t(t)], c);
    TensorElem rhs;
    for (const auto& [bp, c] : B.delta.at(BB.word(i))) {
      const int u = BB.index_of(bp.first);
      for (const auto& [t, d] : AA.vec(section[size_t(u)]))
        tp_add(rhs, AA.word(t), bp.second, c * d);
    }
    if (lhs != rhs) {
      out.colinear = false;
      os << "section not colinear at " << B.word_str(BB.word(i)) << "; ";
      break;
    }
  }

  const auto inv = convolution_inverse(B, AA, section);
  if (!inv.has_value()) {
    os << "section has no convolution inverse";
    out.detail = os.str();
    return out;
  }
  out.invertible = true;
  out.section_inverse = *inv;

  // sigma(u, v) = sec(u1) sec(v1) inv(u2 v2), which must land in k * 1.
  out.sigma.assign(size_t(nB), std::vector<Cyc>(size_t(nB), Cyc::zero(F)));
  out.scalar_values = true;
  const int unit = AA.index_of(Word());
  for (int i = 0; i < nB; ++i) {
    const TensorElem& du = B.delta.at(BB.word(i));
    for (int j = 0; j < nB; ++j) {
      const TensorElem& dv = B.delta.at(BB.word(j));
      SparseVec val;
      for (const auto& [up, a] : du) {
        const int u1 = BB.index_of(up.first);
        for (const auto& [vp, b] : dv) {
          const int v1 = BB.index_of(vp.first);
          NcPoly tail;
          for (const auto& [k, e] : BB.mul_words(up.second, vp.second))
            tail = tail + (*inv)[size_t(k)].scale(e);
          if (tail.is_zero()) continue;
          const NcPoly prod = section[size_t(u1)] * section[size_t(v1)] * tail;
          sv_axpy(val, a * b, AA.vec(prod));
        }
      }
      bool scalar = true;
      Cyc value = Cyc::zero(F);
      for (const auto& [t, c] : val) {
        if (t == unit) {
          value = c;
        } else {
          scalar = false;
          break;
        }
      }
      if (scalar) {
        out.sigma[size_t(i)][size_t(j)] = value;
      } else {
        if (out.scalar_values)
          os << "value at (" << B.word_str(BB.word(i)) << ", "
             << B.word_str(BB.word(j)) << ") is not scalar; ";
        out.scalar_values = false;
      }
    }
  }
  if (out.pass())
    os << "colinear section, invertible, all " << nB * nB
       << " values scalar";
  out.detail = os.str();
  return out;
}

HopfSurjection certify_hopf_surjection(
    const HopfAlgebra& H, const HopfAlgebra& B,
    const std::vector<NcPoly>& gen_images) {
  HopfSurjection out;
  std::ostringstream os;
  const CycField& F = *H.F;
  const FDAlgebra& BB = B.alg;
  const int DH = int(H.dim());
  if (int(gen_images.size()) != H.alg.rs().ngen()) {
    out.detail = "generator image count mismatch";
    return out;
  }

  // Multiplicative extension to every basis word, reduced in the target.
  out.images.reserve(size_t(DH));
  for (int i = 0; i < DH; ++i) {
    NcPoly acc = NcPoly::mono(F, Word());
    for (const char ch : H.alg.word(i))
      acc = BB.rs().nf(acc * gen_images[size_t(ch)]);
    out.images.push_back(std::move(acc));
  }
  std::vector<SparseVec> co(static_cast<size_t>(DH));
  for (int i = 0; i < DH; ++i) co[size_t(i)] = BB.vec(out.images[size_t(i)]);

  out.alg_map = true;
  for (int i = 0; i < DH && out.alg_map; ++i)
    for (int j = 0; j < DH; ++j) {
      const SparseVec lhs = BB.vec(out.images[size_t(i)] * out.images[size_t(j)]);
      SparseVec rhs;
      for (const auto& [k, c] : H.alg.mul_basis(i, j))
        sv_axpy(rhs, c, co[size_t(k)]);
      if (!sv_equal(lhs, rhs)) {
        out.alg_map = false;
        os << "multiplicativity fails at " << pair_label(H, i, j) << "; ";
        break;
      }
    }

  out.counit_map = true;
  for (int i = 0; i < DH; ++i) {
    Cyc lhs = Cyc::zero(F);
    for (const auto& [t, c] : co[size_t(i)])
      lhs += c * B.counit.at(BB.word(t));
    if (lhs != H.counit.at(H.alg.word(i))) {
      out.counit_map = false;
      os << "counit fails at " << wlab(H, i) << "; ";
      break;
    }
  }

  out.coalg_map = true;
  for (int i = 0; i < DH; ++i) {
    TensorElem lhs;
    for (const auto& [t, c] : co[size_t(i)])
      tp_scale_add(lhs, B.delta.at(BB.word(t)), c);
    TensorElem rhs;
    for (const auto& [hp, c] : H.delta.at(H.alg.word(i))) {
      const SparseVec& cu = co[size_t(H.alg.index_of(hp.first))];
      const SparseVec& cv = co[size_t(H.alg.index_of(hp.second))];
      for (const auto& [sidx, a] : cu)
        for (const auto& [tidx, b] : cv)
          tp_add(rhs, BB.word(sidx), BB.word(tidx), c * a * b);
    }
    if (lhs != rhs) {
      out.coalg_map = false;
      os << "comultiplication fails at " << wlab(H, i) << "; ";
      break;
    }
  }

  RowSpace span(F);
  for (int i = 0; i < DH; ++i) span.insert(co[size_t(i)]);
  out.surjective = (int(span.rank()) == BB.dim());
  if (!out.surjective)
    os << "images span rank " << span.rank() << " of " << BB.dim() << "; ";

  if (out.pass())
    os << "algebra, coalgebra and counit map; image spans the target";
  out.detail = os.str();
  return out;
}

CocycleGrid pullback_cocycle(const HopfAlgebra& H, const HopfAlgebra& B,
                             const HopfSurjection& p,
                             const CocycleGrid& sigma) {
  const CycField& F = *H.F;
  const int DH = int(H.dim());
  if (int(p.images.size()) != DH)
    throw std::invalid_argument("pullback: image table size mismatch");
  if (!grid_shape_ok(B, sigma))
    throw std::invalid_argument("pullback: grid shape mismatch");
  std::vector<SparseVec> co(static_cast<size_t>(DH));
  for (int i = 0; i < DH; ++i) co[size_t(i)] = B.alg.vec(p.images[size_t(i)]);
  CocycleGrid out(size_t(DH), std::vector<Cyc>(size_t(DH), Cyc::zero(F)));
  for (int i = 0; i < DH; ++i)
    for (int j = 0; j < DH; ++j)
      out[size_t(i)][size_t(j)] = cocycle_eval(sigma, co[size_t(i)], co[size_t(j)]);
  return out;
}

}  // namespace qcert
