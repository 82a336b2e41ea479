#include "qcert/exactmatrix.hpp"

#include <stdexcept>

namespace qcert {

void sv_add(SparseVec& acc, int i, const Cyc& v) {
  if (v.is_zero()) return;
  auto it = acc.find(i);
  if (it == acc.end()) {
    acc.emplace(i, v);
  } else {
    it->second = it->second + v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void sv_axpy(SparseVec& acc, const Cyc& c, const SparseVec& x) {
  if (c.is_zero()) return;
  for (const auto& [i, v] : x) sv_add(acc, i, c * v);
}

bool sv_equal(const SparseVec& a, const SparseVec& b) {
  return a == b;
}

ExactMatrix::ExactMatrix(const CycField& F, int rows, int cols)
    : F_(&F), rows_(rows), cols_(cols), data_(rows) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("ExactMatrix: negative shape");
}

void ExactMatrix::add(int r, int c, const Cyc& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("ExactMatrix::add: index out of range");
  sv_add(data_[r], c, v);
}

// Incremental reduced row echelon form. Invariant kept throughout: every
// stored pivot row is monic and has no entry at any other pivot column, so
// fully reducing an incoming row is one sweep over its pivot-column entries.
// Rows are consumed in input order, making all downstream results
// deterministic.
ExactMatrix::Echelon ExactMatrix::eliminate(bool with_history) const {
  Echelon e;
  std::map<int, int> pivot_of_col;  // col -> index into e.rows
  for (int r = 0; r < rows_; ++r) {
    SparseVec v = data_[r];
    SparseVec h;
    if (with_history) h.emplace(r, Cyc::one(*F_));
    // Eliminate every entry of v sitting at an existing pivot column. Since
    // pivot rows carry only free columns besides their own pivot, each step
    // removes one pivot-column entry and introduces none.
    for (;;) {
      auto hit = v.end();
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (pivot_of_col.count(it->first)) { hit = it; break; }
      }
      if (hit == v.end()) break;
      const int pr = pivot_of_col[hit->first];
      Cyc c = hit->second;
      sv_axpy(v, Cyc::zero(*F_) - c, e.rows[size_t(pr)]);
      if (with_history) sv_axpy(h, Cyc::zero(*F_) - c, e.rhs[size_t(pr)]);
    }
    if (v.empty()) continue;
    // New pivot at the leading column: normalize to monic, then clear that
    // column from every stored row.
    const int lead = v.begin()->first;
    Cyc inv = v.begin()->second.inv();
    SparseVec mv;
    for (const auto& [i, c] : v) mv.emplace(i, inv * c);
    SparseVec mh;
    if (with_history)
      for (const auto& [i, c] : h) mh.emplace(i, inv * c);
    for (auto& [col, idx] : pivot_of_col) {
      (void)col;
      auto old = e.rows[size_t(idx)].find(lead);
      if (old == e.rows[size_t(idx)].end()) continue;
      Cyc c = old->second;
      sv_axpy(e.rows[size_t(idx)], Cyc::zero(*F_) - c, mv);
      if (with_history) sv_axpy(e.rhs[size_t(idx)], Cyc::zero(*F_) - c, mh);
    }
    pivot_of_col.emplace(lead, int(e.rows.size()));
    e.rows.push_back(std::move(mv));
    e.pivot_col.push_back(lead);
    if (with_history) e.rhs.push_back(std::move(mh));
  }
  // Reorder rows by pivot column so the echelon shape is canonical.
  Echelon out;
  for (const auto& [col, idx] : pivot_of_col) {
    (void)col;
    out.rows.push_back(std::move(e.rows[size_t(idx)]));
    out.pivot_col.push_back(e.pivot_col[size_t(idx)]);
    if (with_history) out.rhs.push_back(std::move(e.rhs[size_t(idx)]));
  }
  return out;
}

int ExactMatrix::rank() const { return int(eliminate(false).rows.size()); }

std::vector<SparseVec> ExactMatrix::kernel() const {
  Echelon e = eliminate(false);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    SparseVec x;
    x.emplace(free, Cyc::one(*F_));
    for (size_t r = 0; r < e.rows.size(); ++r) {
      auto it = e.rows[r].find(free);
      if (it != e.rows[r].end())
        sv_add(x, e.pivot_col[r], Cyc::zero(*F_) - it->second);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Cyc>> ExactMatrix::solve(const std::vector<Cyc>& b) const {
  if (int(b.size()) != rows_) throw std::invalid_argument("ExactMatrix::solve: rhs size");
  // Augment with the rhs as an extra column and eliminate.
  ExactMatrix aug(*F_, rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    aug.data_[r] = data_[r];
    sv_add(aug.data_[r], cols_, b[size_t(r)]);
  }
  Echelon e = aug.eliminate(false);
  std::vector<Cyc> x(size_t(cols_), Cyc::zero(*F_));
  for (size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivot_col[r] == cols_) return std::nullopt;  // 0 = 1 row
  }
  // Back-read: each pivot row is monic and fully reduced, so the pivot
  // variable equals rhs-entry minus free-variable terms; set free vars to 0.
  std::vector<bool> is_pivot(cols_ + 1, false);
  for (int c : e.pivot_col) is_pivot[c] = true;
  for (size_t r = 0; r < e.rows.size(); ++r) {
    Cyc val = Cyc::zero(*F_);
    for (const auto& [i, c] : e.rows[r]) {
      if (i == cols_) {
        val = val + c;
      } else if (i != e.pivot_col[r] && !is_pivot[i]) {
        // free variable fixed to zero: contributes nothing
      }
    }
    x[size_t(e.pivot_col[r])] = val;
  }
  return x;
}

ExactMatrix::ColumnSolve ExactMatrix::solve_columns(
    const std::vector<SparseVec>& bs) const {
  // One elimination with combination history. Every reduced pivot row r
  // satisfies row_r = hist_r * M (as a row combination), so M x = b gives
  // the pivot variable of row r the value hist_r * b once free variables
  // are pinned to zero. Rows that reduce away yield null combinations
  // hist * M = 0; each b must satisfy hist * b = 0 to be consistent.
  std::map<int, int> pivot_of_col;
  std::vector<SparseVec> rows, hist;
  std::vector<int> pivots;
  std::vector<SparseVec> nulls;
  const Cyc minus_one = Cyc::zero(*F_) - Cyc::one(*F_);
  for (int r = 0; r < rows_; ++r) {
    SparseVec v = data_[size_t(r)];
    SparseVec h;
    h.emplace(r, Cyc::one(*F_));
    for (;;) {
      auto hit = v.end();
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (pivot_of_col.count(it->first)) { hit = it; break; }
      }
      if (hit == v.end()) break;
      const int pr = pivot_of_col[hit->first];
      Cyc c = minus_one * hit->second;
      sv_axpy(v, c, rows[size_t(pr)]);
      sv_axpy(h, c, hist[size_t(pr)]);
    }
    if (v.empty()) {
      nulls.push_back(std::move(h));
      continue;
    }
    const int lead = v.begin()->first;
    Cyc inv = v.begin()->second.inv();
    SparseVec mv, mh;
    for (const auto& [i, c] : v) mv.emplace(i, inv * c);
    for (const auto& [i, c] : h) mh.emplace(i, inv * c);
    for (auto& [col, idx] : pivot_of_col) {
      (void)col;
      auto old = rows[size_t(idx)].find(lead);
      if (old == rows[size_t(idx)].end()) continue;
      Cyc c = minus_one * old->second;
      sv_axpy(rows[size_t(idx)], c, mv);
      sv_axpy(hist[size_t(idx)], c, mh);
    }
    pivot_of_col.emplace(lead, int(rows.size()));
    rows.push_back(std::move(mv));
    pivots.push_back(lead);
    hist.push_back(std::move(mh));
  }
  ColumnSolve out;
  out.rank = int(rows.size());
  out.sols.reserve(bs.size());
  auto dot = [&](const SparseVec& a, const SparseVec& b) {
    Cyc acc = Cyc::zero(*F_);
    const SparseVec& small = a.size() <= b.size() ? a : b;
    const SparseVec& big = a.size() <= b.size() ? b : a;
    for (const auto& [i, c] : small) {
      auto it = big.find(i);
      if (it != big.end()) acc = acc + c * it->second;
    }
    return acc;
  };
  for (const SparseVec& b : bs) {
    bool ok = true;
    for (const SparseVec& nl : nulls) {
      if (!dot(nl, b).is_zero()) { ok = false; break; }
    }
    if (!ok) {
      out.sols.emplace_back(std::nullopt);
      continue;
    }
    SparseVec x;
    for (size_t r = 0; r < rows.size(); ++r)
      sv_add(x, pivots[r], dot(hist[r], b));
    out.sols.emplace_back(std::move(x));
  }
  return out;
}

SparseVec ExactMatrix::apply(const SparseVec& xin) const {
  SparseVec out;
  for (int r = 0; r < rows_; ++r) {
    Cyc acc = Cyc::zero(*F_);
    for (const auto& [c, v] : data_[r]) {
      auto it = xin.find(c);
      if (it != xin.end()) acc = acc + v * it->second;
    }
    sv_add(out, r, acc);
  }
  return out;
}

SparseVec RowSpace::reduce(SparseVec v) const {
  while (!v.empty()) {
    int lead = v.begin()->first;
    auto it = rows_.find(lead);
    if (it == rows_.end()) break;
    Cyc c = v.begin()->second;
    sv_axpy(v, Cyc::zero(*F_) - c, it->second);
  }
  return v;
}

bool RowSpace::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Cyc inv = v.begin()->second.inv();
  SparseVec mv;
  for (const auto& [i, c] : v) mv.emplace(i, inv * c);
  rows_.emplace(mv.begin()->first, std::move(mv));
  return true;
}

bool SolvedBasis::insert(const SparseVec& v) {
  SparseVec w = v;
  SparseVec combo;
  combo.emplace(count_, Cyc::one(*F_));
  const Cyc minus_one = Cyc::zero(*F_) - Cyc::one(*F_);
  while (!w.empty()) {
    auto it = rows_.find(w.begin()->first);
    if (it == rows_.end()) break;
    Cyc c = minus_one * w.begin()->second;
    sv_axpy(w, c, it->second.first);
    sv_axpy(combo, c, it->second.second);
  }
  ++count_;
  if (w.empty()) { --count_; return false; }
  Cyc inv = w.begin()->second.inv();
  SparseVec mw, mc;
  for (const auto& [i, c] : w) mw.emplace(i, inv * c);
  for (const auto& [i, c] : combo) mc.emplace(i, inv * c);
  const int piv = mw.begin()->first;
  rows_.emplace(piv, std::make_pair(std::move(mw), std::move(mc)));
  return true;
}

std::optional<SparseVec> SolvedBasis::express(SparseVec v) const {
  SparseVec combo;
  const Cyc minus_one = Cyc::zero(*F_) - Cyc::one(*F_);
  while (!v.empty()) {
    auto it = rows_.find(v.begin()->first);
    if (it == rows_.end()) return std::nullopt;
    Cyc c = v.begin()->second;
    sv_axpy(v, minus_one * c, it->second.first);
    sv_axpy(combo, c, it->second.second);
  }
  return combo;
}

}  // namespace qcert
