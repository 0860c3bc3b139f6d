#include "dsum/upoly.hpp"

#include <utility>

#include "dsum/error.hpp"

namespace dsum::fp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero mod p");
  return pow(a, p - 2, p);
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) {
    r[i] += b[i];
    if (r[i] >= p || r[i] < b[i]) r[i] -= p;
  }
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] >= b[i] ? r[i] - b[i] : r[i] + (p - b[i]);
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j]) % p);
    }
  }
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, std::uint64_t c, std::uint64_t p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c, p);
  trim(r);
  return r;
}

void divmod(const FpPoly& a, const FpPoly& b, std::uint64_t p, FpPoly& q, FpPoly& r) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  r = a;
  trim(r);
  const int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  const std::uint64_t lc_inv = inv(b.back(), p);
  for (int k = degree(r); k >= db; --k) {
    const std::uint64_t c = mul(r[k], lc_inv, p);
    q[k - db] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j) {
      const std::uint64_t t = mul(c, b[j], p);
      auto& x = r[k - db + j];
      x = x >= t ? x - t : x + (p - t);
    }
  }
  trim(r);
  trim(q);
}

FpPoly rem(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly q, r;
  divmod(a, b, p, q, r);
  return r;
}

FpPoly monic(const FpPoly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, inv(a.back(), p), p);
}

FpPoly gcd(FpPoly a, FpPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

FpPoly inverse_mod(const FpPoly& a, const FpPoly& m, std::uint64_t p) {
  // extended Euclid tracking only the coefficient of a
  FpPoly r0 = m, r1 = rem(a, m, p);
  FpPoly s0, s1{1};
  while (!r1.empty()) {
    FpPoly q, r;
    divmod(r0, r1, p, q, r);
    FpPoly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r0) != 0) throw Error(ErrorKind::InternalInconsistency, "polynomials not coprime mod p");
  return rem(scale(s0, inv(r0[0], p), p), m, p);
}

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p, p);
  trim(r);
  return r;
}

FpPoly powmod(const FpPoly& a, const mpz_class& e, const FpPoly& m, std::uint64_t p) {
  FpPoly result{1 % p};
  result = rem(result, m, p);
  FpPoly base = rem(a, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, p), m, p);
  }
  return result;
}

namespace {

void equal_degree(const FpPoly& g, int d, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  for (;;) {
    FpPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (degree(a) < 1) continue;
    FpPoly b = sub(powmod(a, e, g, p), FpPoly{1}, p);
    FpPoly c = gcd(b, g, p);
    if (degree(c) > 0 && degree(c) < degree(g)) {
      FpPoly q, r;
      divmod(g, c, p, q, r);
      equal_degree(c, d, p, rng, out);
      equal_degree(monic(q, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t p, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  FpPoly rest = monic(f, p);
  if (degree(rest) <= 0) return out;
  const FpPoly x{0, 1};
  FpPoly h = x;
  const mpz_class pz(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= degree(rest); ++d) {
    h = powmod(h, pz, rest, p);
    FpPoly g = gcd(sub(h, x, p), rest, p);
    if (degree(g) > 0) {
      equal_degree(g, d, p, rng, out);
      FpPoly q, r;
      divmod(rest, g, p, q, r);
      rest = monic(q, p);
      h = rem(h, rest, p);
    }
  }
  if (degree(rest) > 0) out.push_back(rest);
  return out;
}

}  // namespace dsum::fp
