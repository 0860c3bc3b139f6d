#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace dsum {

/// An element of the coefficient field: an exact rational, or a residue
/// modulo a prime p.
///
/// A scalar with modulus 0 is a rational number. Combining a rational with a
/// residue mod p promotes the rational into F_p, so integer and rational
/// literals can be mixed freely with field elements. Combining residues with
/// two different moduli throws FieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}
  Scalar(long v) : q_(v) {}
  Scalar(long long v);
  Scalar(const mpz_class& v) : q_(v) {}
  Scalar(mpq_class v);

  static Scalar fraction(const mpz_class& num, const mpz_class& den);
  /// Residue of v modulo p. Rationals are mapped through num * den^{-1}.
  static Scalar modular(const Scalar& v, std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  /// The canonical representative: reduced rational, or integer in [0, p).
  const mpq_class& value() const noexcept { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  /// *this -= a * b without a temporary scalar.
  void sub_product(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// "3", "-1/2"; residues print as their representative in [0, p).
  std::string to_string() const;

 private:
  void adopt_modulus(std::uint64_t p);
  void reduce();

  mpq_class q_{0};
  std::uint64_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// n! as a rational scalar.
Scalar factorial(unsigned n);

/// Deterministic primality test valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace dsum
