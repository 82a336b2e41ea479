#pragma once
// Noncommutative polynomial arithmetic over Q(zeta_N) and a rewriting
// engine: deglex-ordered rules, memoized normal forms, critical-pair
// completion, basis enumeration for the finite-dimensional quotients.

#include "qcert/cyclotomic.hpp"
#include "qcert/exactmatrix.hpp"

#include <deque>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcert {

// A word in the free monoid: one byte per generator index (0-based).
using Word = std::string;

inline Word word_of(std::initializer_list<int> gs) {
  Word w;
  for (int g : gs) w.push_back(char(g));
  return w;
}
Word word_pow(int gen, int k);
std::string word_name(const Word& w, const std::vector<std::string>& names);

// Graded lexicographic order: by length first, then lexicographically by
// generator index (string compare is unsigned per char_traits<char>).
struct DegLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class NcPoly {
 public:
  using Terms = std::map<Word, Cyc, DegLex>;

  NcPoly() = default;
  static NcPoly mono(const CycField& F, const Word& w);       // coeff 1
  static NcPoly mono(const Word& w, const Cyc& c);

  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Terms& terms() const { return t_; }
  Cyc coeff(const CycField& F, const Word& w) const;

  void add_term(const Word& w, const Cyc& c);  // accumulate, drop zeros
  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly scale(const Cyc& c) const;

  const Word& lead() const;        // deglex-largest word; throws on zero
  const Cyc& lead_coeff() const;

  bool operator==(const NcPoly& o) const { return t_ == o.t_; }
  bool operator!=(const NcPoly& o) const { return !(*this == o); }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Terms t_;
};

struct RewriteRule {
  Word lhs;     // deglex-largest word of the relation, monic
  NcPoly rhs;   // strictly smaller terms
  bool active;
};

enum class CompletionStatus { Complete, Bounded };

// Rewrite system with word-level memoized normal forms. Reduction strategy
// matches the reference semantics exactly: the leftmost occurrence of any
// active left-hand side is rewritten first; among rules matching at that
// position the lowest rule index wins. Reduction of the replacement terms
// proceeds by an explicit work stack (no recursion), caching each word's
// normal form until the rule set changes.
class RewriteSystem {
 public:
  RewriteSystem(const CycField& F, int ngen);

  const CycField& field() const { return *F_; }
  int ngen() const { return ngen_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::vector<std::pair<Word, NcPoly>> active_rules() const;
  size_t active_count() const;

  void add_rule(Word lhs, NcPoly rhs);
  void deactivate(size_t idx);
  void invalidate();  // drops the normal-form cache; called on rule changes

  // Normal forms are logically const: the memo and the pattern automaton are
  // internal caches.
  const NcPoly& nf_word(const Word& w) const;
  NcPoly nf(const NcPoly& p) const;
  bool is_irreducible(const Word& w) const;

  size_t memo_size() const { return memo_.size(); }

  void save(std::ostream& os) const;  // active rules only
  static RewriteSystem load(const CycField& F, std::istream& is);

 private:
  struct Match {
    long pos = -1;       // leftmost start position, -1 = no match
    size_t rule = 0;
  };
  Match find_best(const Word& w) const;
  void rebuild_automaton() const;

  const CycField* F_;
  int ngen_;
  std::vector<RewriteRule> rules_;
  mutable std::unordered_map<Word, NcPoly> memo_;

  // Aho-Corasick automaton over the active left-hand sides; rebuilt lazily.
  struct AcNode {
    std::vector<int> next;
    int fail = 0;
    int depth = 0;
    long rule = -1;       // active rule whose lhs ends at this node
    int best_depth = 0;   // deepest terminal among this node and its suffixes
    long best_rule = -1;
  };
  mutable std::vector<AcNode> ac_;
  mutable size_t ac_max_depth_ = 0;
  mutable bool ac_dirty_ = true;
};

struct CompletionOptions {
  size_t max_rules = 20000;
  bool verbose = false;
  // Progress callback: (active rules, pending, last lhs length). Optional.
  void (*progress)(size_t, size_t, size_t) = nullptr;
};

struct CompletionResult {
  RewriteSystem rs;
  CompletionStatus status;
};

// Critical-pair completion with a degree bound: relation queue is FIFO; a
// new rule whose left-hand side would exceed `bound` letters is discarded
// and the run is flagged Bounded. Rules subsumed by a new rule are
// deactivated and their content re-queued. On Complete, every overlap of
// the final active rules reduced to zero, so normal forms are unique.
CompletionResult complete(const CycField& F, int ngen,
                          const std::vector<NcPoly>& rels, size_t bound,
                          const CompletionOptions& opt = {});

// Words with no active left-hand side as a factor, by increasing deglex.
// finite == true when some length level was empty (so the list is all of
// them); false when maxlen or cap was hit first.
struct BasisEnum {
  std::vector<Word> words;
  bool finite;
};
BasisEnum enum_basis(const RewriteSystem& rs, size_t maxlen = 60,
                     size_t cap = 200000);

// A finite-dimensional quotient: a completed (or at least basis-finite)
// rewrite system together with its irreducible-word basis. Products of
// basis elements are cached.
class FDAlgebra {
 public:
  FDAlgebra(RewriteSystem rs, std::vector<Word> words);

  const CycField& field() const { return rs_.field(); }
  int dim() const { return int(words_.size()); }
  const std::vector<Word>& words() const { return words_; }
  const Word& word(int i) const { return words_[size_t(i)]; }
  int index_of(const Word& w) const;  // -1 when not a basis word

  // Coordinates of nf(p) in the basis; throws if a normal-form word is
  // missing from the basis (cannot happen when the basis is finite).
  // Products are memoized, so these are logically const.
  SparseVec vec(const NcPoly& p) const;
  SparseVec vec_word(const Word& w) const;
  const SparseVec& mul_basis(int i, int j) const;  // cached
  SparseVec mul_words(const Word& a, const Word& b) const;
  SparseVec mul_vec(const SparseVec& x, const SparseVec& y) const;

  RewriteSystem& rs() { return rs_; }
  const RewriteSystem& rs() const { return rs_; }

 private:
  RewriteSystem rs_;
  std::vector<Word> words_;
  std::unordered_map<Word, int> idx_;
  mutable std::unordered_map<long long, SparseVec> mulcache_;
};

}  // namespace qcert
