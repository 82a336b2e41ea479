#include "qcert/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace qcert {

namespace {

// Quotient of the exact polynomial division a / b for monic b.
std::vector<Rat> poly_divide_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
  int db = int(b.size()) - 1;
  int da = int(a.size()) - 1;
  std::vector<Rat> q(std::max(0, da - db + 1), Rat(0));
  for (int d = da; d >= db; --d) {
    Rat c = a[d];
    if (c == 0) continue;
    q[d - db] = c;
    for (int i = 0; i <= db; ++i) a[d - db + i] -= c * b[i];
  }
  for (const Rat& r : a)
    if (r != 0) throw std::logic_error("cyclotomic: non-exact polynomial division");
  return q;
}

std::vector<Rat> cyclotomic_poly(unsigned N, std::vector<std::vector<Rat>>& cache) {
  if (!cache[N].empty()) return cache[N];
  // x^N - 1 divided by the product of Phi_d over proper divisors d | N.
  std::vector<Rat> num(N + 1, Rat(0));
  num[0] = -1;
  num[N] = 1;
  for (unsigned d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    num = poly_divide_exact(std::move(num), cyclotomic_poly(d, cache));
  }
  cache[N] = num;
  return num;
}

}  // namespace

CycField::CycField(unsigned N) : N_(N) {
  if (N < 2 || N % 2 == 0)
    throw std::invalid_argument("CycField: order must be odd and > 1");
  std::vector<std::vector<Rat>> cache(N + 1);
  phi_ = cyclotomic_poly(N, cache);
  deg_ = unsigned(phi_.size() - 1);
  // zeta powers: reduce x^k mod Phi_N
  zpows_.assign(N, std::vector<Rat>(deg_, Rat(0)));
  std::vector<Rat> cur(deg_, Rat(0));
  cur[0] = 1;
  zpows_[0] = cur;
  for (unsigned k = 1; k < N; ++k) {
    // multiply by x, reduce by monic phi
    std::vector<Rat> nxt(deg_ + 1, Rat(0));
    for (unsigned i = 0; i < deg_; ++i) nxt[i + 1] = cur[i];
    Rat lead = nxt[deg_];
    if (lead != 0)
      for (unsigned i = 0; i < deg_; ++i) nxt[i] -= lead * phi_[i];
    nxt.resize(deg_);
    cur = nxt;
    zpows_[k] = cur;
  }
}

Cyc Cyc::zero(const CycField& F) { return Cyc(&F, std::vector<Rat>(F.degree(), Rat(0))); }

Cyc Cyc::one(const CycField& F) {
  std::vector<Rat> c(F.degree(), Rat(0));
  c[0] = 1;
  return Cyc(&F, std::move(c));
}

Cyc Cyc::rational(const CycField& F, const Rat& r) {
  std::vector<Rat> c(F.degree(), Rat(0));
  c[0] = r;
  c[0].canonicalize();  // callers may pass mpq values built from raw num/den
  return Cyc(&F, std::move(c));
}

Cyc Cyc::integer(const CycField& F, long v) { return rational(F, Rat(v)); }

Cyc Cyc::zeta(const CycField& F, long k) {
  long N = long(F.order());
  long kk = ((k % N) + N) % N;
  return Cyc(&F, F.zeta_power(unsigned(kk)));
}

bool Cyc::is_zero() const {
  for (const Rat& r : c_)
    if (r != 0) return false;
  return true;
}

bool Cyc::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_part() const { return c_.empty() ? Rat(0) : c_[0]; }

bool Cyc::operator==(const Cyc& o) const {
  if (f_ == nullptr || o.f_ == nullptr) return f_ == o.f_;
  check_field(o);
  return c_ == o.c_;
}

void Cyc::check_field(const Cyc& o) const {
  if (f_ == nullptr || o.f_ == nullptr)
    throw std::logic_error("Cyc: operation on detached value");
  if (!(*f_ == *o.f_))
    throw std::logic_error("Cyc: modulus mismatch");
}

Cyc Cyc::operator+(const Cyc& o) const {
  check_field(o);
  std::vector<Rat> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return Cyc(f_, std::move(c));
}

Cyc Cyc::operator-(const Cyc& o) const {
  check_field(o);
  std::vector<Rat> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return Cyc(f_, std::move(c));
}

Cyc Cyc::operator-() const {
  std::vector<Rat> c(c_);
  for (Rat& r : c) r = -r;
  return Cyc(f_, std::move(c));
}

Cyc Cyc::operator*(const Cyc& o) const {
  check_field(o);
  unsigned deg = f_->degree();
  std::vector<Rat> prod(2 * deg - 1, Rat(0));
  for (unsigned i = 0; i < deg; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      if (o.c_[j] == 0) continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  // reduce modulo monic Phi_N
  const std::vector<Rat>& phi = f_->modulus();
  for (int d = int(prod.size()) - 1; d >= int(deg); --d) {
    Rat lead = prod[d];
    if (lead == 0) continue;
    prod[d] = 0;
    for (unsigned i = 0; i < deg; ++i) prod[d - deg + i] -= lead * phi[i];
  }
  prod.resize(deg);
  return Cyc(f_, std::move(prod));
}

Cyc& Cyc::operator+=(const Cyc& o) { return *this = *this + o; }
Cyc& Cyc::operator-=(const Cyc& o) { return *this = *this - o; }
Cyc& Cyc::operator*=(const Cyc& o) { return *this = *this * o; }

Cyc Cyc::inv() const {
  if (f_ == nullptr || is_zero()) throw std::domain_error("Cyc: division by zero");
  // extended Euclid in Q[x] against Phi_N
  unsigned deg = f_->degree();
  std::vector<Rat> r0 = f_->modulus();   // length deg+1
  std::vector<Rat> r1 = c_;
  std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));  // coefficients of *this
  auto degree_of = [](const std::vector<Rat>& p) {
    for (int i = int(p.size()) - 1; i >= 0; --i)
      if (p[i] != 0) return i;
    return -1;
  };
  while (true) {
    int d1 = degree_of(r1);
    if (d1 < 0) throw std::logic_error("Cyc: gcd degenerated (non-invertible residue)");
    if (d1 == 0) {
      Rat c = r1[0];
      std::vector<Rat> out(deg, Rat(0));
      for (std::size_t i = 0; i < s1.size() && i < deg; ++i) out[i] = s1[i] / c;
      return Cyc(f_, std::move(out));
    }
    int d0 = degree_of(r0);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    Rat c = r0[d0] / r1[d1];
    int sh = d0 - d1;
    if (int(r0.size()) < d1 + sh + 1) r0.resize(d1 + sh + 1, Rat(0));
    for (int i = 0; i <= d1; ++i) r0[i + sh] -= c * r1[i];
    if (s0.size() < s1.size() + sh) s0.resize(s1.size() + sh, Rat(0));
    for (std::size_t i = 0; i < s1.size(); ++i) s0[i + sh] -= c * s1[i];
  }
}

Cyc Cyc::pow(long e) const {
  if (f_ == nullptr) throw std::logic_error("Cyc: pow on detached value");
  Cyc base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Cyc acc = Cyc::one(*f_);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::string Cyc::to_string() const {
  if (f_ == nullptr || is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rat& r = c_[i];
    if (r == 0) continue;
    Rat a = r;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    bool unit_coeff = (a == 1) && i > 0;
    if (!unit_coeff) out << a.get_str();
    if (i > 0) {
      if (!unit_coeff) out << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

namespace {

struct LiteralParser {
  const std::string& s;
  std::size_t pos = 0;
  const CycField& F;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("scalar literal: " + what + " at position " +
                             std::to_string(pos) + " in \"" + s + "\"");
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  mpz_class parse_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return mpz_class(s.substr(start, pos - start));
  }
  // factor := integer ['/' integer] | 'z' ['^' ['-'] integer]
  Cyc parse_factor() {
    skip_ws();
    if (pos >= s.size()) fail("expected factor");
    if (s[pos] == 'z') {
      ++pos;
      long e = 1;
      if (eat('^')) {
        bool neg = eat('-');
        mpz_class v = parse_int();
        if (!v.fits_slong_p()) fail("exponent too large");
        e = v.get_si();
        if (neg) e = -e;
      }
      return Cyc::zeta(F, e);
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      mpz_class num = parse_int();
      if (eat('/')) {
        mpz_class den = parse_int();
        if (den == 0) fail("zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return Cyc::rational(F, r);
      }
      return Cyc::rational(F, Rat(num));
    }
    fail(std::string("unexpected character '") + s[pos] + "'");
  }
  Cyc parse_term() {
    Cyc acc = parse_factor();
    while (eat('*')) acc *= parse_factor();
    return acc;
  }
  Cyc parse_sum() {
    skip_ws();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Cyc acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) {
        acc += parse_term();
      } else if (eat('-')) {
        acc -= parse_term();
      } else {
        fail(std::string("unexpected character '") + s[pos] + "'");
      }
    }
    return acc;
  }
};

}  // namespace

Cyc Cyc::parse(const CycField& F, const std::string& text) {
  LiteralParser p{text, 0, F};
  return p.parse_sum();
}

std::size_t Cyc::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  };
  for (const Rat& r : c_) {
    mix(r.get_str());
    mix(",");
  }
  return h;
}

}  // namespace qcert
