#pragma once
// Coalgebra and Hopf structure on top of the finite-dimensional algebras:
// comultiplication / counit / antipode tables on basis words, exhaustive
// axiom certification, the convolution algebra of linear maps, characters
// (algebra maps to the base field) found by support-pattern enumeration,
// and diagonal rescale automorphisms.

#include "qcert/exactmatrix.hpp"
#include "qcert/ncalg.hpp"
#include "qcert/qbuilders.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qcert {

// Element of a tensor product A (x) B; both legs are kept in normal form
// with respect to their own rewrite systems.
using WordPair = std::pair<Word, Word>;
using TensorElem = std::map<WordPair, Cyc>;
using Tensor3 = std::map<std::array<Word, 3>, Cyc>;

TensorElem tp_mul(const TensorElem& t1, const TensorElem& t2,
                  const FDAlgebra& L, const FDAlgebra& R);
void tp_scale_add(TensorElem& acc, const TensorElem& t, const Cyc& c);
std::string tp_to_string(const TensorElem& t,
                         const std::vector<std::string>& lnames,
                         const std::vector<std::string>& rnames);

// Multiplicative extension of generator images: for each domain word
// g_1...g_k the table entry is gen_images[g_1] * ... * gen_images[g_k]
// with legs reduced in L and R. Used for comultiplications and coactions.
std::map<Word, TensorElem> tensor_table(const std::vector<Word>& domain_words,
                                        const std::vector<TensorElem>& gen_images,
                                        const FDAlgebra& L, const FDAlgebra& R);

struct HopfAlgebra {
  std::shared_ptr<CycField> F;
  Presentation pres;
  FDAlgebra alg;
  std::vector<std::string> names;

  std::vector<TensorElem> delta_gen;  // comultiplication on generators
  std::vector<Cyc> counit_gen;
  std::vector<NcPoly> antipode_gen;

  std::map<Word, TensorElem> delta;  // on basis words
  std::map<Word, Cyc> counit;        // on basis words (monoidal extension)
  std::map<Word, NcPoly> antipode;   // on basis words (anti-multiplicative)

  size_t dim() const { return alg.dim(); }
  const std::vector<Word>& words() const { return alg.words(); }

  // Linear extensions over normal-form coordinates.
  TensorElem delta_of(const NcPoly& p) const;
  Cyc counit_of(const NcPoly& p) const;
  NcPoly antipode_of(const NcPoly& p) const;
  std::string word_str(const Word& w) const { return word_name(w, names); }
};

// u_q(sl(n))* with the matrix coalgebra structure Delta x_ij = sum_k
// x_ik (x) x_kj, counit delta_ij, and antipode by signed quantum minors.
HopfAlgebra make_matrix_hopf(std::shared_ptr<CycField> F, int n, FDBuild build);
// Taft algebra: Delta g = g (x) g, Delta x = g (x) x + x (x) g^{N-1}.
HopfAlgebra make_taft_hopf(std::shared_ptr<CycField> F, FDBuild build);

// Quantum determinant of the submatrix that deletes del_row and del_col,
// in the position ordering of the remaining rows and columns.
NcPoly quantum_minor(const CycField& F, int n, const Cyc& q, int del_row,
                     int del_col);

struct AxiomReport {
  bool delta_alg_map = false;
  bool counit_alg_map = false;
  bool coassoc = false;
  bool counit_law = false;
  bool antipode_law = false;
  bool antipode_antihom = false;
  std::string detail;  // first counterexample per failing axiom
  bool pass() const {
    return delta_alg_map && counit_alg_map && coassoc && counit_law &&
           antipode_law && antipode_antihom;
  }
};
AxiomReport verify_hopf_axioms(const HopfAlgebra& H);

// Corrupt the antipode on one generator and confirm the axiom checker
// pinpoints a counterexample; guards against a vacuous checker.
struct MutationOutcome {
  bool detected = false;
  std::string where;
};
MutationOutcome antipode_mutation_probe(const HopfAlgebra& H);

// ---- convolution algebra of linear maps H -> A ----
// A map is stored by its images of the H basis words, as normal-form
// polynomials of the codomain algebra.
using LinMap = std::vector<NcPoly>;

LinMap identity_map(const HopfAlgebra& H);
LinMap antipode_map(const HopfAlgebra& H);
LinMap unit_counit_map(const HopfAlgebra& H, const FDAlgebra& A);  // eta∘eps
NcPoly apply_map(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                 const NcPoly& p);

LinMap convolve(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                const LinMap& g);
// Solve f * g = eta eps = g * f in the convolution algebra; nullopt when f
// has no convolution inverse. The returned inverse is verified two-sided.
std::optional<LinMap> convolution_inverse(const HopfAlgebra& H,
                                          const FDAlgebra& A, const LinMap& f);

bool is_algebra_map(const HopfAlgebra& H, const FDAlgebra& A, const LinMap& f,
                    std::string* where = nullptr);
bool is_coalgebra_endomap(const HopfAlgebra& H, const LinMap& f,
                          std::string* where = nullptr);

// ---- characters: algebra maps to the base field ----
struct Character {
  std::vector<Cyc> gen_values;
  Cyc word_value(const CycField& F, const Word& w) const;
  Cyc poly_value(const CycField& F, const NcPoly& p) const;
};

// Does t^N = u have a solution t in Q(zeta_N)? Decides exactly for
// u = c * zeta^k with c rational (covers every diagonal entry the tool
// accepts); the negative branch additionally needs N prime.
struct RootWitness {
  bool exists = false;
  bool decided = false;
  Cyc root;  // meaningful when exists
  std::string detail;
};
RootWitness nth_root_in_field(const CycField& F, const Cyc& u);

// All algebra maps T_g -> k found by enumerating which generators can be
// nonzero. Every relation is evaluated commutatively per pattern; the
// surviving patterns reduce to monomial equations whose exponents are
// solved as linear congruences mod N. Each returned character is
// re-verified against the full relation list by direct evaluation.
// complete=false flags any pattern the reducer could not decide.
struct CharacterSearch {
  std::vector<Character> found;
  bool complete = true;
  // Some support pattern was ruled out only because an N-th root lies
  // outside Q(zeta_N); over the algebraic closure such a pattern still
  // carries characters (all N-th roots of a nonzero value exist there).
  bool closure_only = false;
  std::string detail;
};
CharacterSearch solve_characters(const CycField& F, int n, const SLMatrix& g);

// Torus rescale x_ij -> r_i^{-1} r_j x_ij on a matrix Hopf algebra; a Hopf
// automorphism for any nonzero r_i (the determinant picks up no factor).
LinMap rescale_map(const HopfAlgebra& H, int n, const std::vector<Cyc>& r);

// Is f convolution-conjugation by some character chi:
// f(h) = sum chi(h1) h2 chi(S h3)? Searches the supplied character list.
struct CoinnerResult {
  bool coinner = false;
  size_t chi_index = 0;  // witness index into chars when coinner
  std::string detail;
};
CoinnerResult is_coinner(const HopfAlgebra& H, const LinMap& f,
                         const std::vector<Character>& chars);

}  // namespace qcert
