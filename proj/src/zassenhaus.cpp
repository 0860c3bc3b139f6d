#include "dsum/upoly.hpp"

#include <algorithm>
#include <optional>

#include "dsum/error.hpp"
#include "dsum/scalar.hpp"

namespace dsum {

namespace {

constexpr int kPrimeTrials = 5;

ZPoly lift_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZPoly derivative(const ZPoly& a) {
  ZPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

// Exact quotient a / b over Z, or nullopt.
std::optional<ZPoly> divide_z(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  if (degree(a) < db) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
  if (b[0] != 0 && a[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), b[0].get_mpz_t())) {
    return std::nullopt;
  }
  ZPoly q(a.size() - b.size() + 1, 0);
  for (int k = degree(a); k >= db; --k) {
    if (a[k] == 0) continue;
    if (!mpz_divisible_p(a[k].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), a[k].get_mpz_t(), b.back().get_mpz_t());
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

void symmetric_mod(ZPoly& a, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
}

std::uint64_t random_prime(std::mt19937_64& rng) {
  for (;;) {
    const std::uint64_t c = (1ULL << 15) + rng() % ((1ULL << 20) - (1ULL << 15));
    if (is_prime_u64(c)) return c;
  }
}

// Lifts f = lc * prod g_i (mod p), g_i monic, to the same identity mod p^k
// with p^k >= target. Returns p^k.
mpz_class hensel_lift(const ZPoly& f, std::vector<ZPoly>& g, std::uint64_t p,
                      const mpz_class& target) {
  const std::size_t r = g.size();
  std::vector<FpPoly> gbar(r);
  for (std::size_t i = 0; i < r; ++i) gbar[i] = reduce(g[i], p);
  std::vector<FpPoly> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    FpPoly others{1};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = fp::mul(others, gbar[j], p);
    s[i] = fp::inverse_mod(others, gbar[i], p);
  }
  const mpz_class lc = f.back();
  const std::uint64_t lc_inv = fp::inv(reduce(ZPoly{lc}, p)[0], p);
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class pk = pz;
  while (pk < target) {
    ZPoly prod{lc};
    for (const auto& gi : g) prod = mul(prod, gi);
    ZPoly e = f;
    e.resize(std::max(e.size(), prod.size()), 0);
    for (std::size_t i = 0; i < prod.size(); ++i) e[i] -= prod[i];
    trim(e);
    if (e.empty()) break;
    for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    const FpPoly ebar = fp::scale(reduce(e, p), lc_inv, p);
    const mpz_class next = pk * pz;
    for (std::size_t i = 0; i < r; ++i) {
      const FpPoly sigma = fp::rem(fp::mul(ebar, s[i], p), gbar[i], p);
      g[i].resize(std::max(g[i].size(), sigma.size()), 0);
      for (std::size_t j = 0; j < sigma.size(); ++j)
        g[i][j] += pk * static_cast<unsigned long>(sigma[j]);
      for (auto& c : g[i]) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), next.get_mpz_t());
    }
    pk = next;
  }
  return pk;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_z(const ZPoly& input, std::mt19937_64& rng) {
  ZPoly f = primitive_part(input);
  const int n = degree(f);
  if (n < 1) throw Error(ErrorKind::InternalInconsistency, "factoring a constant");
  if (n == 1) return {f};

  // choose the prime giving the fewest modular factors
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  const ZPoly df = derivative(f);
  for (int trial = 0, attempts = 0; trial < kPrimeTrials && attempts < 200; ++attempts) {
    const std::uint64_t p = random_prime(rng);
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    const FpPoly fb = reduce(f, p);
    if (fp::degree(fp::gcd(fb, reduce(df, p), p)) != 0) continue;
    ++trial;
    auto facs = fp::factor_squarefree(fb, p, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw Error(ErrorKind::UnluckyEvaluationExhausted, "no good prime found");
  if (best.size() == 1) return {f};

  // Landau-Mignotte: coefficients of lc(f)/lc(g) * g for g | f
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class norm = sqrt(norm2) + 1;
  mpz_class bound = abs(f.back()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  const mpz_class target = 2 * bound + 1;

  std::vector<ZPoly> g;
  for (const auto& b : best) g.push_back(lift_fp(b));
  const mpz_class pk = hensel_lift(f, g, best_p, target);

  std::vector<ZPoly> out;
  std::vector<std::size_t> remaining(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) remaining[i] = i;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<char> pick(remaining.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), 1);
    do {
      ZPoly cand{f.back()};
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (pick[i]) cand = mul(cand, g[remaining[i]]);
      symmetric_mod(cand, pk);
      cand = primitive_part(cand);
      if (degree(cand) < 1) continue;
      if (auto q = divide_z(f, cand)) {
        out.push_back(cand);
        f = primitive_part(*q);
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (!pick[i]) rest.push_back(remaining[i]);
        remaining = std::move(rest);
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  if (degree(f) >= 1) out.push_back(f);
  return out;
}

}  // namespace dsum
