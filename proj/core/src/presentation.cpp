#include "qcert/presentation.hpp"

#include <map>
#include <sstream>

namespace qcert {

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// Relation rendering that the DSL parser accepts back: '*'-separated
// generator factors with a parenthesized scalar up front.
std::string rel_text(const NcPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "(" + it->second.to_string() + ")";
    for (char ch : it->first)
      out += "*" + names.at(size_t(static_cast<unsigned char>(ch)));
  }
  return out;
}

}  // namespace

std::string Presentation::canonical_text() const {
  std::ostringstream os;
  os << "gens";
  for (const auto& nm : names) os << " " << nm;
  os << "\nfield cyclotomic " << N << "\norder deglex";
  for (const auto& nm : names) os << " " << nm;
  os << "\n";
  for (const auto& r : rels) os << "rel " << rel_text(r, names) << "\n";
  return os.str();
}

Presentation make_presentation(std::vector<std::string> names, unsigned N,
                               std::shared_ptr<CycField> field,
                               std::vector<NcPoly> rels) {
  Presentation p;
  p.names = std::move(names);
  p.N = N;
  p.field = std::move(field);
  p.rels = std::move(rels);
  return p;
}

std::uint64_t presentation_hash(const Presentation& p,
                                const std::string& tool_version) {
  return fnv1a64(p.canonical_text() + "\nversion " + tool_version + "\n");
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  int line;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, int(i) + 1, msg);
  }
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (i == start) fail("expected a name");
    return s.substr(start, i - start);
  }
  mpz_class integer() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected an integer");
    return mpz_class(s.substr(start, i - start));
  }
  long small_int() {
    bool neg = eat('-');
    mpz_class v = integer();
    if (!v.fits_slong_p()) fail("exponent too large");
    long out = v.get_si();
    return neg ? -out : out;
  }
};

class LineParser {
 public:
  LineParser(const CycField& F, const std::map<std::string, int>& genidx)
      : F_(F), genidx_(genidx) {}

  NcPoly relation(Cursor& c) {
    NcPoly acc;
    bool neg = false;
    if (c.eat('-')) {
      neg = true;
    } else {
      c.eat('+');
    }
    for (;;) {
      auto [coef, w] = term(c);
      acc.add_term(w, neg ? Cyc::zero(F_) - coef : coef);
      if (c.done()) break;
      if (c.eat('-')) {
        neg = true;
      } else if (c.eat('+')) {
        neg = false;
      } else {
        c.fail(std::string("unexpected character '") + c.peek() + "'");
      }
    }
    return acc;
  }

 private:
  std::pair<Cyc, Word> term(Cursor& c) {
    Cyc coef = Cyc::one(F_);
    Word w;
    for (;;) {
      factor(c, coef, w);
      if (!c.eat('*')) break;
    }
    return {coef, w};
  }

  void factor(Cursor& c, Cyc& coef, Word& w) {
    char p = c.peek();
    if (p == '(') {
      c.eat('(');
      coef = coef * scalar_sum(c);
      if (!c.eat(')')) c.fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(p))) {
      coef = coef * scalar_number(c);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(p)) || p == '_') {
      size_t at = c.i;
      std::string nm = c.ident();
      if (nm == "z" || nm == "q") {
        coef = coef * zeta_power(c);
        return;
      }
      auto it = genidx_.find(nm);
      if (it == genidx_.end()) {
        c.i = at;
        c.fail("unknown symbol '" + nm + "'");
      }
      long e = 1;
      if (c.eat('^')) {
        e = c.small_int();
        if (e < 0) c.fail("negative power of a generator");
      }
      for (long k = 0; k < e; ++k) w.push_back(char(it->second));
      return;
    }
    c.fail(std::string("unexpected character '") + p + "'");
  }

  Cyc zeta_power(Cursor& c) {
    // the name was already consumed
    long e = 1;
    if (c.eat('^')) e = c.small_int();
    return Cyc::zeta(F_, 1).pow(e);
  }

  Cyc scalar_number(Cursor& c) {
    mpz_class num = c.integer();
    if (c.eat('/')) {
      mpz_class den = c.integer();
      if (den == 0) c.fail("division by zero");
      return Cyc::rational(F_, Rat(num, den));
    }
    return Cyc::rational(F_, Rat(num));
  }

  // Inside parentheses: signed sums of scalar products/quotients.
  Cyc scalar_sum(Cursor& c) {
    Cyc acc = Cyc::zero(F_);
    bool neg = false;
    if (c.eat('-')) {
      neg = true;
    } else {
      c.eat('+');
    }
    for (;;) {
      Cyc t = scalar_product(c);
      acc = neg ? acc - t : acc + t;
      if (c.eat('-')) {
        neg = true;
      } else if (c.eat('+')) {
        neg = false;
      } else {
        return acc;
      }
    }
  }

  Cyc scalar_product(Cursor& c) {
    Cyc acc = scalar_atom(c);
    for (;;) {
      if (c.eat('*')) {
        acc = acc * scalar_atom(c);
      } else if (c.eat('/')) {
        Cyc d = scalar_atom(c);
        if (d.is_zero()) c.fail("division by zero");
        acc = acc * d.inv();
      } else {
        return acc;
      }
    }
  }

  Cyc scalar_atom(Cursor& c) {
    char p = c.peek();
    if (p == '(') {
      c.eat('(');
      Cyc v = scalar_sum(c);
      if (!c.eat(')')) c.fail("expected ')'");
      return v;
    }
    if (p == '-') {
      c.eat('-');
      return Cyc::zero(F_) - scalar_atom(c);
    }
    if (std::isdigit(static_cast<unsigned char>(p))) {
      mpz_class num = c.integer();
      return Cyc::rational(F_, Rat(num));
    }
    if (std::isalpha(static_cast<unsigned char>(p))) {
      size_t at = c.i;
      std::string nm = c.ident();
      if (nm == "z" || nm == "q") return zeta_power(c);
      c.i = at;
      c.fail("unknown symbol '" + nm + "' in scalar");
    }
    c.fail(std::string("unexpected character '") + p + "' in scalar");
  }

  const CycField& F_;
  const std::map<std::string, int>& genidx_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::vector<std::string> declared;
  std::vector<std::string> order;
  unsigned N = 0;
  struct RelLine {
    int lineno;
    std::string raw;
    size_t offset;  // position just past the `rel` keyword
  };
  std::vector<RelLine> rel_lines;

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    Cursor c{raw, 0, lineno};
    if (c.done() || c.peek() == '#') continue;
    std::string kw = c.ident();
    if (kw == "gens") {
      if (!declared.empty()) c.fail("duplicate gens line");
      while (!c.done()) {
        std::string nm = c.ident();
        if (nm == "z" || nm == "q")
          c.fail("generator name '" + nm + "' is reserved for the root of unity");
        for (const auto& d : declared)
          if (d == nm) c.fail("duplicate generator '" + nm + "'");
        declared.push_back(nm);
      }
      if (declared.empty()) c.fail("gens line declares nothing");
    } else if (kw == "field") {
      std::string kind = c.ident();
      if (kind != "cyclotomic") c.fail("unknown field kind '" + kind + "'");
      mpz_class v = c.integer();
      if (!v.fits_uint_p()) c.fail("field order too large");
      N = static_cast<unsigned>(v.get_ui());
      if (N < 2 || N % 2 == 0) c.fail("field order must be odd and > 1");
      if (!c.done()) c.fail("trailing input after field order");
    } else if (kw == "order") {
      std::string kind = c.ident();
      if (kind != "deglex") c.fail("unknown order kind '" + kind + "'");
      while (!c.done()) order.push_back(c.ident());
    } else if (kw == "rel") {
      c.skip_ws();
      rel_lines.push_back(RelLine{lineno, raw, c.i});
    } else {
      c.i -= kw.size();
      c.fail("unknown directive '" + kw + "'");
    }
  }

  if (declared.empty()) throw ParseError(1, 1, "missing gens line");
  if (N == 0) throw ParseError(1, 1, "missing field line");
  if (order.empty()) order = declared;
  if (order.size() != declared.size())
    throw ParseError(1, 1, "order line must list every generator exactly once");
  {
    std::map<std::string, int> seen;
    for (const auto& nm : order) {
      bool known = false;
      for (const auto& d : declared) known = known || d == nm;
      if (!known) throw ParseError(1, 1, "order lists unknown generator '" + nm + "'");
      if (seen.count(nm))
        throw ParseError(1, 1, "order repeats generator '" + nm + "'");
      seen.emplace(nm, 1);
    }
  }

  Presentation p;
  p.names = order;
  p.N = N;
  p.field = std::make_shared<CycField>(N);
  std::map<std::string, int> genidx;
  for (size_t i = 0; i < order.size(); ++i) genidx.emplace(order[i], int(i));
  LineParser lp(*p.field, genidx);
  for (const auto& rl : rel_lines) {
    Cursor c{rl.raw, rl.offset, rl.lineno};
    if (c.done()) c.fail("empty relation");
    p.rels.push_back(lp.relation(c));
  }
  return p;
}

}  // namespace qcert
