#pragma once
// Constructors for every presented algebra in play: the quantum coordinate
// algebra O(SL_q(n)), its finite quotient u_q(sl(n))*, the twisted quotients
// T_g, the Taft quotient B, the two-generator comodule algebras A(s), the
// classical q=1 coordinate ring, and the Frobenius sequence data that ties
// the classical and quantum sides together.

#include "qcert/ncalg.hpp"
#include "qcert/presentation.hpp"

#include <memory>

namespace qcert {

struct SLMatrix {
  int n = 0;
  std::vector<Cyc> e;  // row-major entries

  const Cyc& at(int i, int j) const { return e[size_t(i * n + j)]; }
  Cyc& at(int i, int j) { return e[size_t(i * n + j)]; }

  static SLMatrix identity(const CycField& F, int n);
  static SLMatrix scalar(const CycField& F, int n, const Cyc& lambda);

  Cyc det() const;  // classical Leibniz determinant
  SLMatrix operator*(const SLMatrix& o) const;
  SLMatrix inverse() const;  // adjugate over determinant
  bool operator==(const SLMatrix& o) const;
  bool is_scalar() const;
  bool is_diagonal() const;
  std::string to_string() const;  // [[..,..],[..,..]] with exact literals
};

inline int gen_xij(int n, int i, int j) { return i * n + j; }
// n=2 uses the traditional a,b,c,d; larger n uses x11, x12, ...
std::vector<std::string> matrix_names(int n);

// The quantum-matrix relations for an n x n generator matrix: same-row and
// same-column q-commutation, commuting antidiagonal (NE/SW) pairs, and the
// (q - q^{-1}) straightening of NW/SE pairs.
std::vector<NcPoly> frt_relations(const CycField& F, int n, const Cyc& q);
// sum over permutations of (-q)^{inversions} x_{1,s(1)} ... x_{n,s(n)}
NcPoly quantum_det(const CycField& F, int n, const Cyc& q);
// x_gen^Npow - value
NcPoly power_relation(const CycField& F, int gen, unsigned Npow, const Cyc& value);

// Completed presentation of an algebra that is not finite-dimensional;
// holds the rewrite system for bounded normal-form arithmetic.
struct GradedBuild {
  Presentation pres;
  RewriteSystem rs;
  CompletionStatus status;
};

// Finite-dimensional quotient with its enumerated basis.
struct FDBuild {
  Presentation pres;
  CompletionStatus status;
  FDAlgebra alg;
};

GradedBuild build_oslq(std::shared_ptr<CycField> F, int n, size_t bound = 12);
// Same presentation shape at q = 1: the commutative coordinate ring of SL(n).
GradedBuild build_classical_sl(std::shared_ptr<CycField> F, int n,
                               size_t bound = 12);

FDBuild build_uqstar(std::shared_ptr<CycField> F, int n, size_t bound = 12,
                     size_t max_rules = 20000);
FDBuild build_T_g(std::shared_ptr<CycField> F, int n, const SLMatrix& g,
                  size_t bound = 12, size_t max_rules = 20000);

// Taft quotient B: generators g, x with gx = q xg, g^N = 1, x^N = 0.
FDBuild build_taft(std::shared_ptr<CycField> F);
// A(s): generators G, X with GX = q XG, G^N = 1, X^N = s.
FDBuild build_cleft_A(std::shared_ptr<CycField> F, const Cyc& s);

struct FrobeniusSequence {
  int n;
  unsigned N;
  std::shared_ptr<CycField> F;
  GradedBuild classical;  // O(SL(n)) at q = 1, generators X_ij
  GradedBuild quantum;    // O(SL_q(n)), generators x_ij
  FDBuild small;          // u_q(sl(n))*
};
FrobeniusSequence build_frobenius_sequence(std::shared_ptr<CycField> F, int n,
                                           size_t bound = 12);

struct FrobeniusReport {
  bool centrality = false;        // every x_ij^N commutes with every x_kl
  bool counit_compat = false;     // projection of x_ij^N equals delta_ij 1
  bool injective_bounded = false; // rank of lifted monomial images is full
  int rank_classical = 0;
  int rank_quantum = 0;
  std::string detail;
  bool pass() const { return centrality && counit_compat && injective_bounded; }
};
// degree_bound caps the quantum-side word length; the classical monomials
// lifted through X_ij -> x_ij^N thus run to degree_bound / N.
FrobeniusReport verify_frobenius_sequence(FrobeniusSequence& seq,
                                          size_t degree_bound);

}  // namespace qcert
