#pragma once
// Exact arithmetic in the cyclotomic field Q(zeta_N), N odd > 1.
// Elements are canonical residues modulo the N-th cyclotomic polynomial
// Phi_N, i.e. rational coefficient vectors of length phi(N).

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcert {

using Rat = mpq_class;

class CycField {
 public:
  explicit CycField(unsigned N);

  unsigned order() const { return N_; }
  unsigned degree() const { return deg_; }  // phi(N)
  // Monic Phi_N, coefficient list of length degree()+1 (constant term first).
  const std::vector<Rat>& modulus() const { return phi_; }
  // Reduced representation of zeta^k for k in [0, N).
  const std::vector<Rat>& zeta_power(unsigned k) const { return zpows_.at(k); }

  bool operator==(const CycField& o) const { return N_ == o.N_; }

 private:
  unsigned N_ = 0, deg_ = 0;
  std::vector<Rat> phi_;
  std::vector<std::vector<Rat>> zpows_;
};

class Cyc {
 public:
  Cyc() = default;  // detached zero; usable only as a target of assignment

  static Cyc zero(const CycField& F);
  static Cyc one(const CycField& F);
  static Cyc rational(const CycField& F, const Rat& r);
  static Cyc integer(const CycField& F, long v);
  static Cyc zeta(const CycField& F, long k);  // zeta^k, any integer k

  const CycField* field() const { return f_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;  // lies in Q
  Rat rational_part() const; // constant coefficient

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc inv() const;  // throws std::domain_error on zero
  Cyc pow(long e) const;

  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);

  // Canonical literal over {integers, '/', 'z'}, e.g. "3 - z + 1/2*z^2".
  std::string to_string() const;
  // Parses the literal language; throws std::runtime_error with a
  // position-annotated message on bad input.
  static Cyc parse(const CycField& F, const std::string& text);

  std::size_t hash() const;

 private:
  Cyc(const CycField* f, std::vector<Rat> c) : f_(f), c_(std::move(c)) {}
  void check_field(const Cyc& o) const;

  const CycField* f_ = nullptr;
  std::vector<Rat> c_;
};

}  // namespace qcert
