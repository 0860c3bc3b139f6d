#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

namespace dsum {

/// Dense univariate polynomial over Z; entry i is the coefficient of x^i.
/// Normalized polynomials carry no trailing zeros; the zero polynomial is empty.
using ZPoly = std::vector<mpz_class>;

/// Dense univariate polynomial over F_p with entries in [0, p).
using FpPoly = std::vector<std::uint64_t>;

namespace fp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);

void trim(FpPoly& a);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly scale(const FpPoly& a, std::uint64_t c, std::uint64_t p);
/// Quotient and remainder; b must be nonzero.
void divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& q, FpPoly& r);
FpPoly rem(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly monic(const FpPoly& a, std::uint64_t p);
/// Monic gcd (zero when both inputs are zero).
FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p);
/// s with s * a = 1 mod m; a and m coprime.
FpPoly inverse_mod(const FpPoly& a, const FpPoly& m, std::uint64_t p);
FpPoly derivative(const FpPoly& a, std::uint64_t p);
FpPoly powmod(const FpPoly& a, const mpz_class& e, const FpPoly& m, std::uint64_t p);

/// Irreducible monic factors of a monic squarefree f over F_p (p odd).
std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t p, std::mt19937_64& rng);

}  // namespace fp

void trim(ZPoly& a);
int degree(const ZPoly& a);
mpz_class content(const ZPoly& a);
/// Divides out the content and makes the leading coefficient positive.
ZPoly primitive_part(const ZPoly& a);
ZPoly mul(const ZPoly& a, const ZPoly& b);
FpPoly reduce(const ZPoly& a, std::uint64_t p);

/// Irreducible factors over Z of a primitive squarefree f with deg f >= 1,
/// each primitive with positive leading coefficient. Their product is f up to
/// sign.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& f, std::mt19937_64& rng);

}  // namespace dsum
