#pragma once
// Exact sparse linear algebra over Q(zeta_N): rank, kernel, solve.
// Elimination is plain exact Gaussian elimination with a deterministic
// pivot rule (lowest column, then lowest row), no floating point anywhere.

#include "qcert/cyclotomic.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qcert {

// Sparse vector: sorted map coordinate -> nonzero scalar.
using SparseVec = std::map<int, Cyc>;

void sv_add(SparseVec& acc, int i, const Cyc& v);
void sv_axpy(SparseVec& acc, const Cyc& c, const SparseVec& x);  // acc += c*x
bool sv_equal(const SparseVec& a, const SparseVec& b);

class ExactMatrix {
 public:
  ExactMatrix(const CycField& F, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const CycField& field() const { return *F_; }

  void add(int r, int c, const Cyc& v);  // accumulates; drops explicit zeros
  const SparseVec& row(int r) const { return data_[r]; }
  void set_row(int r, SparseVec v) { data_[r] = std::move(v); }

  int rank() const;
  // Basis of the right kernel {x : Mx = 0}; deterministic order.
  std::vector<SparseVec> kernel() const;
  // Solves M x = b; returns std::nullopt if inconsistent.
  std::optional<std::vector<Cyc>> solve(const std::vector<Cyc>& b) const;
  // Solves M x = b for many right-hand sides with a single elimination.
  // Free variables are fixed to zero; inconsistent systems come back empty.
  struct ColumnSolve {
    int rank = 0;
    std::vector<std::optional<SparseVec>> sols;
  };
  ColumnSolve solve_columns(const std::vector<SparseVec>& bs) const;
  // Applies the matrix to a sparse vector.
  SparseVec apply(const SparseVec& x) const;

 private:
  struct Echelon {
    // reduced rows, each with leading (pivot) column strictly increasing
    std::vector<SparseVec> rows;
    std::vector<int> pivot_col;
    std::vector<SparseVec> rhs;  // parallel combination bookkeeping when requested
  };
  Echelon eliminate(bool with_history) const;

  const CycField* F_;
  int rows_, cols_;
  std::vector<SparseVec> data_;
};

// Incremental row-space container: feed rows one at a time, tracks rank.
// Used where constraint systems have many more rows than columns.
class RowSpace {
 public:
  explicit RowSpace(const CycField& F) : F_(&F) {}
  // Reduces v against the current space; if independent, inserts and
  // returns true.
  bool insert(SparseVec v);
  // Only reduces; returns the remainder.
  SparseVec reduce(SparseVec v) const;
  int rank() const { return int(rows_.size()); }

 private:
  const CycField* F_;
  std::map<int, SparseVec> rows_;  // pivot column -> monic row
};

// Row space that remembers how each stored row was built from the inserted
// vectors, so members can be rewritten as combinations of the originals.
class SolvedBasis {
 public:
  explicit SolvedBasis(const CycField& F) : F_(&F) {}
  // Returns false (and inserts nothing) when v already lies in the span.
  bool insert(const SparseVec& v);
  // Coordinates of v over the inserted vectors, nullopt when outside.
  std::optional<SparseVec> express(SparseVec v) const;
  int rank() const { return int(rows_.size()); }
  int inserted() const { return count_; }

 private:
  const CycField* F_;
  int count_ = 0;
  // pivot column -> (monic row, same combination of inserted vectors)
  std::map<int, std::pair<SparseVec, SparseVec>> rows_;
};

}  // namespace qcert
