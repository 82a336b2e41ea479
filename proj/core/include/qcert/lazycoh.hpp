#pragma once
// Scalar two-cocycles on a finite-dimensional Hopf algebra H: grids of
// exact values over the basis, the cocycle identity and unitality checks,
// convolution invertibility, the central ("lazy") condition with witness
// extraction, extraction of a cocycle from a cleft comodule algebra, and
// pullback along a certified quotient map of Hopf algebras.

#include "qcert/galoislab.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcert {

// sigma(e_i, e_j) = grid[i][j]; extended bilinearly.
using CocycleGrid = std::vector<std::vector<Cyc>>;

// The counit in both slots: the unit of the convolution algebra on
// H (x) H and the cocycle of the trivial twist.
CocycleGrid trivial_cocycle(const HopfAlgebra& H);

// sigma(p, q) for vectors of basis coordinates.
Cyc cocycle_eval(const CocycleGrid& sigma, const SparseVec& p,
                 const SparseVec& q);

struct CocycleReport {
  bool normalized = false;   // sigma(1,h) = sigma(h,1) = eps(h)
  bool identity = false;     // sigma(x1,y1) sigma(x2 y2, z)
                             //   = sigma(y1,z1) sigma(x, y2 z2), all triples
  bool invertible = false;   // convolution inverse on H (x) H exists and
                             //   works from both sides
  std::string detail;
  bool pass() const { return normalized && identity && invertible; }
};
CocycleReport is_cocycle(const HopfAlgebra& H, const CocycleGrid& sigma);

struct LazyReport {
  bool lazy = false;
  int fail_count = 0;       // number of basis pairs violating centrality
  int first_i = -1;         // first violating pair in basis order
  int first_j = -1;
  SparseVec difference;     // sigma(x1,y1) x2 y2 - sigma(x2,y2) x1 y1 there
  std::string detail;
};
// Centrality scan: sigma(x1,y1) x2 y2 = sigma(x2,y2) x1 y1 on all pairs.
LazyReport is_lazy(const HopfAlgebra& H, const CocycleGrid& sigma);

struct CocycleMutation {
  bool detected = false;
  std::string where;
};
// Corrupts one interior grid entry and re-runs the cocycle checks.
CocycleMutation cocycle_mutation_probe(const HopfAlgebra& H,
                                       const CocycleGrid& sigma);

// A comodule algebra over B presented like the cleft extensions in scope:
// same generator count as B, right coaction only.
struct CleftExtension {
  std::shared_ptr<CycField> F;
  const HopfAlgebra* B;
  std::string label;
  Presentation pres;
  FDAlgebra alg;
  std::vector<TensorElem> rho;  // legs (A, B)

  int dim() const { return alg.dim(); }
};
// The extension with G, X satisfying GX = q XG, G^N = 1, X^N = s over the
// quotient B (g, x with gx = q xg, g^N = 1, x^N = 0), coaction
// G -> G (x) g, X -> G (x) x + X (x) g^{-1}. Throws if the coaction fails
// an axiom.
CleftExtension make_cleft_extension(std::shared_ptr<CycField> F,
                                    const HopfAlgebra& B, const Cyc& s);

// The section sending each irreducible word of B to the same word in the
// extension's generators.
std::vector<NcPoly> basis_section(const CleftExtension& A);

struct CleftCocycle {
  bool colinear = false;        // section intertwines the coactions
  bool invertible = false;      // convolution inverse of the section exists
  bool scalar_values = false;   // every extracted value lies in k*1
  std::vector<NcPoly> section_inverse;  // values in the extension
  CocycleGrid sigma;            // meaningful when scalar_values
  std::string detail;
  bool pass() const { return colinear && invertible && scalar_values; }
};
// sigma(u, v) = sec(u1) sec(v1) sec^{-1}(u2 v2), certified step by step.
CleftCocycle cocycle_from_cleft(const CleftExtension& A,
                                const std::vector<NcPoly>& section);

struct HopfSurjection {
  std::vector<NcPoly> images;  // H-basis word -> value in B
  bool alg_map = false;
  bool coalg_map = false;      // Delta_B(p(w)) = (p (x) p)(Delta_H(w))
  bool counit_map = false;
  bool surjective = false;     // images span B
  std::string detail;
  bool pass() const {
    return alg_map && coalg_map && counit_map && surjective;
  }
};
// Extends generator images multiplicatively and certifies the quotient
// map property on every basis element.
HopfSurjection certify_hopf_surjection(const HopfAlgebra& H,
                                       const HopfAlgebra& B,
                                       const std::vector<NcPoly>& gen_images);

// sigma_p(x, y) = sigma(p(x), p(y)).
CocycleGrid pullback_cocycle(const HopfAlgebra& H, const HopfAlgebra& B,
                             const HopfSurjection& p,
                             const CocycleGrid& sigma);

}  // namespace qcert
