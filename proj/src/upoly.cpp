#include "dsum/upoly.hpp"

namespace dsum {

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive_part(const ZPoly& a) {
  ZPoly r = a;
  trim(r);
  if (r.empty()) return r;
  mpz_class g = content(r);
  if (sgn(r.back()) < 0) g = -g;
  for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

FpPoly reduce(const ZPoly& a, std::uint64_t p) {
  FpPoly r(a.size());
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(t.get_mpz_t(), a[i].get_mpz_t(), pz.get_mpz_t());
    r[i] = t.get_ui();
  }
  fp::trim(r);
  return r;
}

}  // namespace dsum
