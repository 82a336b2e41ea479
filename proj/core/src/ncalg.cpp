#include "qcert/ncalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qcert {

Word word_pow(int gen, int k) {
  return Word(size_t(k), char(gen));
}

std::string word_name(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (char ch : w) {
    size_t g = size_t(static_cast<unsigned char>(ch));
    if (g < names.size()) {
      out += names[g];
    } else {
      out += "g" + std::to_string(g);
    }
  }
  return out;
}

NcPoly NcPoly::mono(const CycField& F, const Word& w) {
  NcPoly p;
  p.t_.emplace(w, Cyc::one(F));
  return p;
}

NcPoly NcPoly::mono(const Word& w, const Cyc& c) {
  NcPoly p;
  if (!c.is_zero()) p.t_.emplace(w, c);
  return p;
}

Cyc NcPoly::coeff(const CycField& F, const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? Cyc::zero(F) : it->second;
}

void NcPoly::add_term(const Word& w, const Cyc& c) {
  if (c.is_zero()) return;
  auto it = t_.find(w);
  if (it == t_.end()) {
    t_.emplace(w, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  NcPoly r = *this;
  for (const auto& [w, c] : o.t_) r.add_term(w, c);
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const {
  NcPoly r = *this;
  for (const auto& [w, c] : o.t_) r.add_term(w, -c);
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  NcPoly r;
  for (const auto& [w1, c1] : t_)
    for (const auto& [w2, c2] : o.t_) r.add_term(w1 + w2, c1 * c2);
  return r;
}

NcPoly NcPoly::scale(const Cyc& c) const {
  NcPoly r;
  if (c.is_zero()) return r;
  for (const auto& [w, cc] : t_) r.t_.emplace(w, cc * c);
  return r;
}

const Word& NcPoly::lead() const {
  if (t_.empty()) throw std::logic_error("NcPoly::lead: zero polynomial");
  return t_.rbegin()->first;
}

const Cyc& NcPoly::lead_coeff() const {
  if (t_.empty()) throw std::logic_error("NcPoly::lead_coeff: zero polynomial");
  return t_.rbegin()->second;
}

std::string NcPoly::to_string(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.to_string() + ")*" + word_name(it->first, names);
  }
  return out;
}

RewriteSystem::RewriteSystem(const CycField& F, int ngen) : F_(&F), ngen_(ngen) {
  if (ngen <= 0 || ngen > 200)
    throw std::invalid_argument("RewriteSystem: generator count out of range");
}

std::vector<std::pair<Word, NcPoly>> RewriteSystem::active_rules() const {
  std::vector<std::pair<Word, NcPoly>> out;
  for (const auto& r : rules_)
    if (r.active) out.emplace_back(r.lhs, r.rhs);
  return out;
}

size_t RewriteSystem::active_count() const {
  size_t n = 0;
  for (const auto& r : rules_)
    if (r.active) ++n;
  return n;
}

void RewriteSystem::add_rule(Word lhs, NcPoly rhs) {
  if (lhs.empty())
    throw std::runtime_error("RewriteSystem: empty left-hand side (unit in ideal)");
  rules_.push_back(RewriteRule{std::move(lhs), std::move(rhs), true});
  invalidate();
}

void RewriteSystem::deactivate(size_t idx) {
  rules_.at(idx).active = false;
  invalidate();
}

void RewriteSystem::invalidate() {
  memo_.clear();
  ac_dirty_ = true;
}

// Dense-transition Aho-Corasick over the active left-hand sides. Per node
// we keep the deepest terminal among the node and its proper suffixes;
// scanning a word left to right then yields, at each end position, the
// match with the smallest start, which is exactly what the reduction
// strategy needs (no active lhs is a factor of another, so starts are
// distinct per end position).
void RewriteSystem::rebuild_automaton() const {
  ac_.clear();
  ac_.push_back(AcNode{std::vector<int>(size_t(ngen_), -1), 0, 0, -1, 0, -1});
  ac_max_depth_ = 0;
  for (size_t ri = 0; ri < rules_.size(); ++ri) {
    if (!rules_[ri].active) continue;
    const Word& pat = rules_[ri].lhs;
    ac_max_depth_ = std::max(ac_max_depth_, pat.size());
    int cur = 0;
    for (char ch : pat) {
      int c = int(static_cast<unsigned char>(ch));
      if (c >= ngen_) throw std::logic_error("rewrite lhs has foreign generator");
      int& slot = ac_[size_t(cur)].next[size_t(c)];
      if (slot < 0) {
        slot = int(ac_.size());
        AcNode node;
        node.next.assign(size_t(ngen_), -1);
        node.depth = ac_[size_t(cur)].depth + 1;
        cur = slot;
        ac_.push_back(std::move(node));
      } else {
        cur = slot;
      }
    }
    if (ac_[size_t(cur)].rule < 0 || long(ri) < ac_[size_t(cur)].rule)
      ac_[size_t(cur)].rule = long(ri);
  }
  // BFS: fail links, dense goto completion, deepest-terminal propagation.
  std::deque<int> bfs;
  for (int c = 0; c < ngen_; ++c) {
    int& slot = ac_[0].next[size_t(c)];
    if (slot < 0) {
      slot = 0;
    } else {
      ac_[size_t(slot)].fail = 0;
      bfs.push_back(slot);
    }
  }
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop_front();
    AcNode& nu = ac_[size_t(u)];
    if (nu.rule >= 0) {
      nu.best_depth = nu.depth;
      nu.best_rule = nu.rule;
    } else {
      nu.best_depth = ac_[size_t(nu.fail)].best_depth;
      nu.best_rule = ac_[size_t(nu.fail)].best_rule;
    }
    for (int c = 0; c < ngen_; ++c) {
      int v = nu.next[size_t(c)];
      if (v < 0) {
        nu.next[size_t(c)] = ac_[size_t(nu.fail)].next[size_t(c)];
      } else {
        ac_[size_t(v)].fail = ac_[size_t(nu.fail)].next[size_t(c)];
        bfs.push_back(v);
      }
    }
  }
  ac_dirty_ = false;
}

RewriteSystem::Match RewriteSystem::find_best(const Word& w) const {
  if (ac_dirty_) rebuild_automaton();
  Match best;
  long best_rule = -1;
  int state = 0;
  const long n = long(w.size());
  for (long i = 0; i < n; ++i) {
    if (best.pos >= 0 && i - long(ac_max_depth_) + 1 > best.pos) break;
    state = ac_[size_t(state)].next[size_t(static_cast<unsigned char>(w[size_t(i)]))];
    const AcNode& nd = ac_[size_t(state)];
    if (nd.best_rule >= 0) {
      long start = i - long(nd.best_depth) + 1;
      if (best.pos < 0 || start < best.pos ||
          (start == best.pos && nd.best_rule < best_rule)) {
        best.pos = start;
        best_rule = nd.best_rule;
      }
    }
  }
  if (best.pos >= 0) best.rule = size_t(best_rule);
  return best;
}

const NcPoly& RewriteSystem::nf_word(const Word& w0) const {
  {
    auto hit = memo_.find(w0);
    if (hit != memo_.end()) return hit->second;
  }
  struct Frame {
    Word w;
    std::vector<std::pair<Word, Cyc>> rep;
    size_t next = 0;
    bool expanded = false;
  };
  std::vector<Frame> st;
  st.push_back(Frame{w0, {}, 0, false});
  while (!st.empty()) {
    Frame& f = st.back();
    if (memo_.count(f.w)) {
      st.pop_back();
      continue;
    }
    if (!f.expanded) {
      Match m = find_best(f.w);
      if (m.pos < 0) {
        memo_.emplace(f.w, NcPoly::mono(*F_, f.w));
        st.pop_back();
        continue;
      }
      const RewriteRule& R = rules_[m.rule];
      Word left = f.w.substr(0, size_t(m.pos));
      Word right = f.w.substr(size_t(m.pos) + R.lhs.size());
      f.rep.reserve(R.rhs.size());
      for (const auto& [rw, rc] : R.rhs.terms())
        f.rep.emplace_back(left + rw + right, rc);
      f.expanded = true;
    }
    while (f.next < f.rep.size() && memo_.count(f.rep[f.next].first)) ++f.next;
    if (f.next < f.rep.size()) {
      Word child = f.rep[f.next].first;
      st.push_back(Frame{std::move(child), {}, 0, false});
      continue;
    }
    NcPoly out;
    for (const auto& [cw, cc] : f.rep) {
      const NcPoly& sub = memo_.at(cw);
      for (const auto& [sw, sc] : sub.terms()) out.add_term(sw, cc * sc);
    }
    Word key = std::move(f.w);
    st.pop_back();
    memo_.emplace(std::move(key), std::move(out));
  }
  return memo_.at(w0);
}

NcPoly RewriteSystem::nf(const NcPoly& p) const {
  NcPoly out;
  for (const auto& [w, c] : p.terms()) {
    const NcPoly& sub = nf_word(w);
    for (const auto& [sw, sc] : sub.terms()) out.add_term(sw, c * sc);
  }
  return out;
}

bool RewriteSystem::is_irreducible(const Word& w) const {
  return find_best(w).pos < 0;
}

void RewriteSystem::save(std::ostream& os) const {
  auto put_word = [&os](const Word& w) {
    if (w.empty()) {
      os << "-";
      return;
    }
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << ",";
      os << int(static_cast<unsigned char>(w[i]));
    }
  };
  os << "qcert-rewrite 1\n";
  os << "field " << F_->order() << "\n";
  os << "ngen " << ngen_ << "\n";
  auto act = active_rules();
  os << "rules " << act.size() << "\n";
  for (const auto& [lhs, rhs] : act) {
    put_word(lhs);
    os << " ->";
    for (const auto& [w, c] : rhs.terms()) {
      os << " ";
      put_word(w);
      // literals must be single tokens for the loader; the grammar does not
      // care about spaces
      std::string lit = c.to_string();
      lit.erase(std::remove(lit.begin(), lit.end(), ' '), lit.end());
      os << " * " << lit << " ;";
    }
    os << "\n";
  }
}

RewriteSystem RewriteSystem::load(const CycField& F, std::istream& is) {
  auto fail = [](const std::string& why) -> void {
    throw std::runtime_error("rewrite-system load: " + why);
  };
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "qcert-rewrite" || version != 1)
    fail("bad header");
  unsigned order = 0;
  int ngen = 0;
  size_t nrules = 0;
  if (!(is >> tag >> order) || tag != "field") fail("bad field line");
  if (order != F.order()) fail("field order mismatch");
  if (!(is >> tag >> ngen) || tag != "ngen") fail("bad ngen line");
  if (!(is >> tag >> nrules) || tag != "rules") fail("bad rules line");
  auto parse_word = [&fail](const std::string& s) -> Word {
    Word w;
    if (s == "-") return w;
    size_t pos = 0;
    while (pos < s.size()) {
      size_t comma = s.find(',', pos);
      std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
      try {
        int g = std::stoi(piece);
        if (g < 0 || g > 255) throw std::out_of_range("gen");
        w.push_back(char(g));
      } catch (...) {
        fail("bad word token '" + piece + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return w;
  };
  RewriteSystem rs(F, ngen);
  for (size_t r = 0; r < nrules; ++r) {
    std::string ls, arrow;
    if (!(is >> ls >> arrow) || arrow != "->") fail("bad rule line");
    Word lhs = parse_word(ls);
    NcPoly rhs;
    // terms: WORD * LITERAL ; ... ended by the next rule's lhs or eof; the
    // serializer always writes "word * literal ;" triples, so read greedily.
    for (;;) {
      std::streampos mark = is.tellg();
      std::string ws, star;
      if (!(is >> ws)) break;
      if (!(is >> star) || star != "*") {
        is.clear();
        is.seekg(mark);
        break;
      }
      std::string lit, semi;
      if (!(is >> lit >> semi) || semi != ";") fail("bad term");
      rhs.add_term(parse_word(ws), Cyc::parse(F, lit));
    }
    rs.add_rule(std::move(lhs), std::move(rhs));
  }
  return rs;
}

namespace {

std::vector<NcPoly> overlap_pairs(const RewriteSystem& rs, size_t idx) {
  std::vector<NcPoly> out;
  const auto& rules = rs.rules();
  const Word& l1 = rules[idx].lhs;
  const NcPoly& r1 = rules[idx].rhs;
  for (size_t jdx = 0; jdx < rules.size(); ++jdx) {
    if (!rules[jdx].active) continue;
    const Word& l2 = rules[jdx].lhs;
    const NcPoly& r2 = rules[jdx].rhs;
    const Word* las[2] = {&l1, &l2};
    const NcPoly* ras[2] = {&r1, &r2};
    const Word* lbs[2] = {&l2, &l1};
    const NcPoly* rbs[2] = {&r2, &r1};
    for (int side = 0; side < 2; ++side) {
      const Word& la = *las[side];
      const NcPoly& ra = *ras[side];
      const Word& lb = *lbs[side];
      const NcPoly& rb = *rbs[side];
      const size_t kmax = std::min(la.size(), lb.size());
      for (size_t k = 1; k < kmax; ++k) {
        if (la.compare(la.size() - k, k, lb, 0, k) != 0) continue;
        // Ambiguous word la + lb[k:]: reduce the la-part vs the lb-part.
        Word tail = lb.substr(k);
        Word head = la.substr(0, la.size() - k);
        NcPoly p1 = ra * NcPoly::mono(rs.field(), tail);
        NcPoly p2 = NcPoly::mono(rs.field(), head) * rb;
        out.push_back(p1 - p2);
      }
    }
  }
  return out;
}

}  // namespace

CompletionResult complete(const CycField& F, int ngen,
                          const std::vector<NcPoly>& rels, size_t bound,
                          const CompletionOptions& opt) {
  RewriteSystem rs(F, ngen);
  std::deque<NcPoly> pend(rels.begin(), rels.end());
  CompletionStatus status = CompletionStatus::Complete;
  while (!pend.empty()) {
    NcPoly p = rs.nf(pend.front());
    pend.pop_front();
    if (p.is_zero()) continue;
    const Word lw = p.lead();
    if (lw.empty())
      throw std::runtime_error("completion: constant relation (algebra is zero)");
    const Cyc lc = p.lead_coeff();
    NcPoly rhs = NcPoly::mono(F, lw) - p.scale(lc.inv());
    if (lw.size() > bound) {
      status = CompletionStatus::Bounded;
      continue;
    }
    // Deactivate rules whose lhs the new rule reduces; requeue their content.
    const auto& rules = rs.rules();
    for (size_t i = 0; i < rules.size(); ++i) {
      if (!rules[i].active) continue;
      if (rules[i].lhs.find(lw) == Word::npos) continue;
      NcPoly requeue = NcPoly::mono(F, rules[i].lhs) - rules[i].rhs;
      rs.deactivate(i);
      pend.push_back(std::move(requeue));
    }
    rs.add_rule(lw, std::move(rhs));
    const size_t nact = rs.active_count();
    if (nact > opt.max_rules)
      throw std::runtime_error("completion: rule count exceeded limit");
    if (opt.progress && nact % 20 == 0)
      opt.progress(nact, pend.size(), lw.size());
    for (auto& sp : overlap_pairs(rs, rs.rules().size() - 1))
      pend.push_back(std::move(sp));
  }
  return CompletionResult{std::move(rs), status};
}

BasisEnum enum_basis(const RewriteSystem& rs, size_t maxlen, size_t cap) {
  std::vector<Word> lhs;
  for (const auto& r : rs.rules())
    if (r.active) lhs.push_back(r.lhs);
  BasisEnum out;
  out.words.push_back(Word());
  out.finite = false;
  std::vector<Word> level{Word()};
  for (size_t L = 1; L <= maxlen; ++L) {
    std::vector<Word> nxt;
    for (const Word& w : level) {
      for (int g = 0; g < rs.ngen(); ++g) {
        Word u = w;
        u.push_back(char(g));
        // w was irreducible, so a new occurrence must end at the last
        // letter, i.e. be a suffix of u.
        bool ok = true;
        for (const Word& pat : lhs) {
          if (pat.size() <= u.size() &&
              u.compare(u.size() - pat.size(), pat.size(), pat) == 0) {
            ok = false;
            break;
          }
        }
        if (ok) nxt.push_back(std::move(u));
      }
    }
    if (nxt.empty()) {
      out.finite = true;
      return out;
    }
    out.words.insert(out.words.end(), nxt.begin(), nxt.end());
    level = std::move(nxt);
    if (out.words.size() > cap) return out;
  }
  return out;
}

FDAlgebra::FDAlgebra(RewriteSystem rs, std::vector<Word> words)
    : rs_(std::move(rs)), words_(std::move(words)) {
  idx_.reserve(words_.size() * 2);
  for (size_t i = 0; i < words_.size(); ++i) idx_.emplace(words_[i], int(i));
}

int FDAlgebra::index_of(const Word& w) const {
  auto it = idx_.find(w);
  return it == idx_.end() ? -1 : it->second;
}

SparseVec FDAlgebra::vec(const NcPoly& p) const {
  NcPoly n = rs_.nf(p);
  SparseVec out;
  for (const auto& [w, c] : n.terms()) {
    int i = index_of(w);
    if (i < 0)
      throw std::logic_error("FDAlgebra::vec: normal form outside basis: " +
                             word_name(w, {}));
    sv_add(out, i, c);
  }
  return out;
}

SparseVec FDAlgebra::vec_word(const Word& w) const {
  return vec(NcPoly::mono(rs_.field(), w));
}

const SparseVec& FDAlgebra::mul_basis(int i, int j) const {
  long long key = (long long)i * dim() + j;
  auto it = mulcache_.find(key);
  if (it != mulcache_.end()) return it->second;
  SparseVec v = vec(NcPoly::mono(rs_.field(), words_[size_t(i)] + words_[size_t(j)]));
  return mulcache_.emplace(key, std::move(v)).first->second;
}

SparseVec FDAlgebra::mul_words(const Word& a, const Word& b) const {
  int i = index_of(a), j = index_of(b);
  if (i >= 0 && j >= 0) return mul_basis(i, j);
  return vec(NcPoly::mono(rs_.field(), a + b));
}

SparseVec FDAlgebra::mul_vec(const SparseVec& x, const SparseVec& y) const {
  SparseVec out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) sv_axpy(out, ci * cj, mul_basis(i, j));
  return out;
}

}  // namespace qcert
