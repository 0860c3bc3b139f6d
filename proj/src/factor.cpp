#include <algorithm>
#include <map>
#include <optional>
#include <random>

#include "dsum/apolarity.hpp"
#include "dsum/error.hpp"
#include "dsum/factor.hpp"
#include "dsum/upoly.hpp"
#include "lift_gcd.hpp"

namespace dsum {

namespace {

constexpr int kMaxAttempts = 40;

// ---- dense univariate polynomials over the coefficient field

using KPoly = std::vector<Scalar>;

void ktrim(KPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int kdeg(const KPoly& a) { return static_cast<int>(a.size()) - 1; }

KPoly kmul(const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1, Scalar::modular(Scalar(0), a.back().modulus()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ktrim(r);
  return r;
}

KPoly ksub(KPoly a, const KPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Scalar::modular(Scalar(0), b.back().modulus()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ktrim(a);
  return a;
}

void kdivmod(const KPoly& a, const KPoly& b, KPoly& q, KPoly& r) {
  r = a;
  ktrim(r);
  q.clear();
  const int db = kdeg(b);
  if (kdeg(r) < db) return;
  q.assign(r.size() - b.size() + 1, Scalar::modular(Scalar(0), b.back().modulus()));
  const Scalar inv = b.back().inverse();
  for (int k = kdeg(r); k >= db; --k) {
    if (r[k].is_zero()) continue;
    const Scalar c = r[k] * inv;
    q[k - db] = c;
    for (int j = 0; j <= db; ++j) r[k - db + j].sub_product(c, b[j]);
  }
  ktrim(r);
  ktrim(q);
}

KPoly krem(const KPoly& a, const KPoly& b) {
  KPoly q, r;
  kdivmod(a, b, q, r);
  return r;
}

KPoly kmonic(const KPoly& a) {
  KPoly r = a;
  const Scalar inv = a.back().inverse();
  for (auto& c : r) c *= inv;
  return r;
}

KPoly kgcd(KPoly a, KPoly b) {
  ktrim(a);
  ktrim(b);
  while (!b.empty()) {
    KPoly r = krem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : kmonic(a);
}

KPoly kderivative(const KPoly& a) {
  KPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * Scalar(static_cast<long>(i)));
  ktrim(r);
  return r;
}

KPoly kinverse_mod(const KPoly& a, const KPoly& m) {
  const std::uint64_t p = m.back().modulus();
  KPoly r0 = m, r1 = krem(a, m);
  KPoly s0, s1{Scalar::modular(Scalar(1), p)};
  while (!r1.empty()) {
    KPoly q, r;
    kdivmod(r0, r1, q, r);
    KPoly s = ksub(s0, kmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (kdeg(r0) != 0) throw Error(ErrorKind::InternalInconsistency, "Hensel images not coprime");
  const Scalar inv = r0[0].inverse();
  for (auto& c : s0) c *= inv;
  return krem(s0, m);
}

KPoly to_kpoly(const Poly& p, std::size_t var) {
  KPoly r;
  const Scalar zero = Scalar::modular(Scalar(0), p.modulus());
  for (const auto& [m, c] : p.terms()) {
    const auto e = static_cast<std::size_t>(m[var]);
    if (r.size() <= e) r.resize(e + 1, zero);
    r[e] = c;
  }
  ktrim(r);
  return r;
}

Poly from_kpoly(const KPoly& a, std::size_t nvars, std::size_t var) {
  Poly r(nvars);
  for (std::size_t i = 0; i < a.size(); ++i)
    r.add_term(Monomial::unit(nvars, var, static_cast<int>(i)), a[i]);
  return r;
}

// Monic irreducible factors of a monic squarefree univariate polynomial.
std::vector<KPoly> factor_monic_squarefree(const KPoly& f, std::mt19937_64& rng) {
  if (kdeg(f) <= 1) return {f};
  const std::uint64_t p = f.back().modulus();
  std::vector<KPoly> out;
  if (p != 0) {
    FpPoly g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i].value().get_num().get_ui();
    for (const auto& h : fp::factor_squarefree(g, p, rng)) {
      KPoly k(h.size());
      for (std::size_t i = 0; i < h.size(); ++i)
        k[i] = Scalar::modular(Scalar(mpz_class(static_cast<unsigned long>(h[i]))), p);
      out.push_back(std::move(k));
    }
    return out;
  }
  mpz_class den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
  ZPoly z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpq_class t = f[i].value() * den;
    z[i] = t.get_num();
  }
  for (const auto& h : factor_squarefree_z(z, rng)) {
    KPoly k(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) k[i] = Scalar(h[i]);
    out.push_back(kmonic(k));
  }
  return out;
}

// ---- multivariate helpers

Scalar random_scalar(std::mt19937_64& rng, std::uint64_t p, int range) {
  if (p != 0) return Scalar::modular(Scalar(static_cast<long long>(rng() % p)), p);
  const long span = 2L * range + 1;
  return Scalar(static_cast<long>(rng() % static_cast<std::uint64_t>(span)) - range);
}

// Degree in all variables except `main`.
int rest_degree(const Monomial& m, std::size_t main) { return m.degree() - m[main]; }

Poly truncate(const Poly& a, std::size_t main, int k) {
  Poly r(a.nvars());
  for (const auto& [m, c] : a.terms())
    if (rest_degree(m, main) <= k) r.add_term(m, c);
  return r;
}

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t main, int k) {
  Poly r(a.nvars());
  for (const auto& [ma, ca] : a.terms()) {
    const int da = rest_degree(ma, main);
    if (da > k) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (da + rest_degree(mb, main) > k) continue;
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

Poly linear(std::size_t nvars, const std::vector<std::pair<std::size_t, Scalar>>& terms) {
  Poly r(nvars);
  for (const auto& [v, c] : terms) r.add_term(Monomial::unit(nvars, v), c);
  return r;
}

// Lifts q = prod u_i (mod the ideal of the non-main variables) to a
// factorization modulo total degree `bound` + 1 in those variables. q is
// monic in `main` and the u_i are monic, pairwise coprime.
std::vector<Poly> hensel_lift(const Poly& q, const std::vector<KPoly>& u, std::size_t main,
                              int bound) {
  const std::size_t nv = q.nvars();
  const std::size_t r = u.size();
  std::vector<KPoly> s(r);
  for (std::size_t i = 0; i < r; ++i) {
    KPoly others{u[i].back() * u[i].back().inverse()};
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others = kmul(others, u[j]);
    s[i] = kinverse_mod(others, u[i]);
  }
  std::vector<Poly> f;
  for (const auto& ui : u) f.push_back(from_kpoly(ui, nv, main));

  for (int k = 1; k <= bound; ++k) {
    Poly prod = f[0];
    for (std::size_t i = 1; i < r; ++i) prod = mul_trunc(prod, f[i], main, k);
    const Poly err = truncate(q, main, k) - prod;
    // group the degree-k part by its monomial in the non-main variables
    std::map<std::vector<int>, Poly> groups;
    for (const auto& [m, c] : err.terms()) {
      if (rest_degree(m, main) != k) continue;
      std::vector<int> key = m.exponents();
      key[main] = 0;
      Monomial z = Monomial::unit(nv, main, m[main]);
      groups.try_emplace(key, Poly(nv)).first->second.add_term(z, c);
    }
    for (const auto& [key, cpoly] : groups) {
      const KPoly c = to_kpoly(cpoly, main);
      const Monomial w(key);
      for (std::size_t i = 0; i < r; ++i) {
        const KPoly sigma = krem(kmul(c, s[i]), u[i]);
        for (std::size_t e = 0; e < sigma.size(); ++e) {
          if (sigma[e].is_zero()) continue;
          f[i].add_term(w * Monomial::unit(nv, main, static_cast<int>(e)), sigma[e]);
        }
      }
    }
  }
  return f;
}

// Irreducible factors of q (monic in `main`, squarefree) from lifted local
// factors, by exhaustive subset recombination.
std::vector<Poly> recombine(Poly q, const std::vector<Poly>& lifted, std::size_t main, int bound) {
  std::vector<Poly> out;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) remaining[i] = i;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<char> pick(remaining.size(), 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), 1);
    do {
      std::optional<Poly> cand;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (!pick[i]) continue;
        cand = cand ? mul_trunc(*cand, lifted[remaining[i]], main, bound) : lifted[remaining[i]];
      }
      if (auto quo = divide_exact(q, *cand)) {
        out.push_back(*cand);
        q = *quo;
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
  if (!q.is_constant()) out.push_back(q);
  return out;
}

// Affine chart w_1 = 1 of Q, keeping the variable slot.
Poly dehomogenize(const Poly& Q) {
  Poly q(Q.nvars());
  for (const auto& [m, c] : Q.terms()) {
    Monomial r = m;
    r[1] = 0;
    q.add_term(r, c);
  }
  return q;
}

// Irreducible factors of a squarefree homogeneous polynomial without monomial
// content, all of whose variables are active.
std::vector<Poly> factor_squarefree_homogeneous(const Poly& P, std::mt19937_64& rng) {
  const std::size_t k = P.nvars();
  const int t = P.total_degree();
  if (t <= 1 || k < 2) return {P};
  const std::uint64_t p = P.modulus();
  const std::size_t z = 0;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const int range = 2 + attempt;
    // y_0 = z, y_j = w_j + a_j z; then the coefficient of z^t is P(1, a)
    std::vector<Scalar> a(k, Scalar(0));
    a[0] = Scalar(1);
    for (std::size_t j = 1; j < k; ++j) a[j] = random_scalar(rng, p, range);
    std::vector<Poly> images;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == 0) images.push_back(Poly::variable(k, 0));
      else images.push_back(linear(k, {{j, Scalar(1)}, {0, a[j]}}));
    }
    Poly Q = compose(P, images);
    Scalar lc = Q.coefficient(Monomial::unit(k, z, t));
    if (lc.is_zero()) continue;
    Q = Q * lc.inverse();

    std::vector<Poly> factors;
    // the w_1 content is at most linear since P is squarefree
    if (Q.min_degree_in(1) > 0) {
      factors.push_back(linear(k, {{1, Scalar(1)}}));
      Q = *divide_exact(Q, factors.back());
    }
    const Poly q = dehomogenize(Q);

    std::vector<Poly> affine;
    if (k == 2) {
      for (const auto& g : factor_monic_squarefree(to_kpoly(q, z), rng))
        affine.push_back(from_kpoly(g, k, z));
    } else {
      std::vector<Scalar> b(k, Scalar(0));
      std::vector<Poly> eval_images, shift_images, unshift_images;
      for (std::size_t j = 0; j < k; ++j) {
        if (j >= 2) b[j] = random_scalar(rng, p, range);
        eval_images.push_back(j >= 2 ? Poly::constant(k, b[j]) : Poly::variable(k, j));
        shift_images.push_back(j >= 2 ? linear(k, {{j, Scalar(1)}}) + Poly::constant(k, b[j])
                                      : Poly::variable(k, j));
        unshift_images.push_back(j >= 2 ? linear(k, {{j, Scalar(1)}}) - Poly::constant(k, b[j])
                                        : Poly::variable(k, j));
      }
      const KPoly image = to_kpoly(compose(q, eval_images), z);
      if (kdeg(kgcd(image, kderivative(image))) != 0) continue;
      const auto locals = factor_monic_squarefree(image, rng);
      if (locals.size() == 1) {
        affine.push_back(q);
      } else {
        const Poly shifted = compose(q, shift_images);
        int bound = 0;
        for (const auto& [m, c] : shifted.terms()) bound = std::max(bound, rest_degree(m, z));
        const auto lifted = hensel_lift(shifted, locals, z, bound);
        for (const auto& g : recombine(shifted, lifted, z, bound))
          affine.push_back(compose(g, unshift_images));
      }
    }

    // rehomogenize with w_1 and return to the original variables
    std::vector<Poly> back;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == 0) back.push_back(Poly::variable(k, 0));
      else back.push_back(linear(k, {{j, Scalar(1)}, {0, -a[j]}}));
    }
    std::vector<Poly> out;
    for (const auto& g : factors) out.push_back(compose(g, back));
    for (const auto& g : affine) {
      const int e = g.degree_in(z);
      Poly h(k);
      for (const auto& [m, c] : g.terms()) {
        Monomial r = m;
        r[1] = e - m.degree();
        h.add_term(r, c);
      }
      out.push_back(compose(h, back));
    }
    return out;
  }
  throw Error(ErrorKind::UnluckyEvaluationExhausted,
              "no usable evaluation point after " + std::to_string(kMaxAttempts) + " attempts");
}

Poly restrict_to(const Poly& p, const std::vector<std::size_t>& vars) {
  Poly r(vars.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial s(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) s[i] = m[vars[i]];
    r.add_term(s, c);
  }
  return r;
}

Poly extend_from(const Poly& p, const std::vector<std::size_t>& vars, std::size_t nvars) {
  Poly r(nvars);
  for (const auto& [m, c] : p.terms()) {
    Monomial s(nvars);
    for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = m[i];
    r.add_term(s, c);
  }
  return r;
}

bool factor_less(const Factor& a, const Factor& b) {
  if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
  const auto& ta = a.poly.terms();
  const auto& tb = b.poly.terms();
  return std::lexicographical_compare(
      ta.begin(), ta.end(), tb.begin(), tb.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return grevlex_greater(x.first, y.first);
        return x.second.value() < y.second.value();
      });
}

}  // namespace

std::optional<Poly> lift_gcd(const Poly& A, const Poly& B) {
  const std::size_t k = A.nvars();
  const std::uint64_t p = A.modulus();
  const std::size_t z = 0;
  const int ta = A.total_degree();
  const int tb = B.total_degree();
  std::mt19937_64 rng(derive_seed(kDefaultSeed, static_cast<std::uint64_t>(ta * 64 + tb)));
  const Poly one = Poly::constant(k, Scalar::modular(Scalar(1), p));

  for (int attempt = 0; attempt < 4; ++attempt) {
    const int range = 20 + 10 * attempt;
    std::vector<Poly> images, back;
    for (std::size_t j = 0; j < k; ++j) {
      const Scalar aj = random_scalar(rng, p, range);
      images.push_back(j == 0 ? Poly::variable(k, 0) : linear(k, {{j, Scalar(1)}, {0, aj}}));
      back.push_back(j == 0 ? Poly::variable(k, 0) : linear(k, {{j, Scalar(1)}, {0, -aj}}));
    }
    Poly Qa = compose(A, images);
    Poly Qb = compose(B, images);
    const Scalar la = Qa.coefficient(Monomial::unit(k, z, ta));
    const Scalar lb = Qb.coefficient(Monomial::unit(k, z, tb));
    if (la.is_zero() || lb.is_zero()) continue;
    const Poly qa = dehomogenize(Qa * la.inverse());
    const Poly qb = dehomogenize(Qb * lb.inverse());

    std::vector<Poly> eval_images, shift_images, unshift_images;
    for (std::size_t j = 0; j < k; ++j) {
      const Scalar bj = j >= 2 ? random_scalar(rng, p, range) : Scalar(0);
      eval_images.push_back(j >= 2 ? Poly::constant(k, bj) : Poly::variable(k, j));
      shift_images.push_back(j >= 2 ? linear(k, {{j, Scalar(1)}}) + Poly::constant(k, bj)
                                    : Poly::variable(k, j));
      unshift_images.push_back(j >= 2 ? linear(k, {{j, Scalar(1)}}) - Poly::constant(k, bj)
                                      : Poly::variable(k, j));
    }
    const KPoly ua = to_kpoly(compose(qa, eval_images), z);
    const KPoly ub = to_kpoly(compose(qb, eval_images), z);
    const KPoly gi = kgcd(ua, ub);
    if (kdeg(gi) == 0) return one;

    const Poly* lift_from = nullptr;
    KPoly cofactor, rem;
    kdivmod(ua, gi, cofactor, rem);
    if (kdeg(kgcd(gi, cofactor)) == 0) {
      lift_from = &qa;
    } else {
      kdivmod(ub, gi, cofactor, rem);
      if (kdeg(kgcd(gi, cofactor)) == 0) lift_from = &qb;
    }
    if (!lift_from) continue;

    Poly g;
    if (kdeg(cofactor) <= 0) {
      g = *lift_from;
    } else {
      const Poly shifted = compose(*lift_from, shift_images);
      int bound = 0;
      for (const auto& [m, c] : shifted.terms()) bound = std::max(bound, rest_degree(m, z));
      g = compose(hensel_lift(shifted, {gi, cofactor}, z, bound)[0], unshift_images);
    }
    const int e = kdeg(gi);
    Poly h(k);
    bool ok = true;
    for (const auto& [m, c] : g.terms()) {
      if (m.degree() > e) {
        ok = false;
        break;
      }
      Monomial r = m;
      r[1] = e - m.degree();
      h.add_term(r, c);
    }
    if (!ok) continue;
    const Poly G = compose(h, back);
    if (divide_exact(A, G) && divide_exact(B, G)) return normalize_poly(G);
  }
  return std::nullopt;
}

Form FactorList::expand() const {
  if (factors.empty()) return Form(Poly::constant(0, unit), Side::D, 0);
  const std::size_t n = factors.front().poly.nvars();
  Poly r = Poly::constant(n, unit);
  for (const auto& f : factors) r = r * power(f.poly.poly(), static_cast<unsigned>(f.multiplicity));
  return Form(std::move(r), factors.front().poly.side());
}

UnivariateFactorization factor_univariate(const Poly& p, std::uint64_t seed) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroForm, "factoring zero");
  std::size_t var = 0;
  std::size_t involved = 0;
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (p.involves(v)) {
      var = v;
      ++involved;
    }
  }
  if (involved > 1) throw Error(ErrorKind::ShapeMismatch, "polynomial is not univariate");
  UnivariateFactorization out;
  KPoly f = to_kpoly(p, var);
  const std::uint64_t mod = p.modulus();
  if (mod != 0 && static_cast<long long>(mod) <= kdeg(f)) {
    throw Error(ErrorKind::CharacteristicGuard, "univariate factoring needs p > degree");
  }
  std::mt19937_64 rng(seed);
  // Yun
  std::map<int, KPoly> parts;
  if (kdeg(f) > 0) {
    const KPoly m = kmonic(f);
    const KPoly d = kderivative(m);
    const KPoly a = kgcd(m, d);
    KPoly q, r;
    KPoly b, c;
    kdivmod(m, a, b, r);
    kdivmod(d, a, c, r);
    KPoly dd = ksub(c, kderivative(b));
    for (int i = 1; kdeg(b) > 0; ++i) {
      const KPoly g = kgcd(b, dd);
      if (kdeg(g) > 0) parts[i] = g;
      kdivmod(b, g, q, r);
      b = q;
      kdivmod(dd, g, q, r);
      dd = ksub(q, kderivative(b));
    }
  }
  Poly prod = Poly::constant(p.nvars(), Scalar::modular(Scalar(1), mod));
  for (const auto& [e, part] : parts) {
    for (const auto& g : factor_monic_squarefree(part, rng)) {
      Poly fp = normalize_poly(from_kpoly(g, p.nvars(), var));
      prod = prod * power(fp, static_cast<unsigned>(e));
      out.factors.push_back({std::move(fp), e});
    }
  }
  out.unit = p.leading_coefficient() / prod.leading_coefficient();
  return out;
}

FactorList factor_multivariate(const Form& F, std::uint64_t seed, const FactorGuards& guards) {
  if (F.is_zero()) throw Error(ErrorKind::ZeroForm, "factoring the zero form");
  const std::size_t n = F.nvars();
  if (n > guards.max_vars || F.degree() > guards.max_degree) {
    throw Error(ErrorKind::GuardExceeded,
                "factorization limited to n <= " + std::to_string(guards.max_vars) +
                    " and degree <= " + std::to_string(guards.max_degree));
  }
  std::mt19937_64 rng(seed);
  std::vector<PolyFactor> found;

  // monomial content
  Poly rest = F.poly();
  Monomial content(n);
  for (std::size_t v = 0; v < n; ++v) content[v] = rest.min_degree_in(v);
  if (content.degree() > 0) {
    rest = *divide_exact(rest, Poly::term(content, Scalar(1)));
    for (std::size_t v = 0; v < n; ++v)
      if (content[v] > 0) found.push_back({Poly::variable(n, v), content[v]});
  }

  if (!rest.is_constant()) {
    for (const auto& [part, e] : squarefree_decomposition(Form(rest, F.side()))) {
      std::vector<std::size_t> active;
      for (std::size_t v = 0; v < n; ++v)
        if (part.poly().involves(v)) active.push_back(v);
      const Poly local = restrict_to(part.poly(), active);
      for (const auto& g : factor_squarefree_homogeneous(local, rng))
        found.push_back({normalize_poly(extend_from(g, active, n)), e});
    }
  }

  FactorList out;
  Poly prod = Poly::constant(n, Scalar::modular(Scalar(1), F.modulus()));
  for (const auto& pf : found) {
    prod = prod * power(pf.poly, static_cast<unsigned>(pf.multiplicity));
    Form g(pf.poly, F.side());
    Subspace ess = essential_space(g);
    out.factors.push_back({std::move(g), pf.multiplicity, std::move(ess)});
  }
  out.unit = F.poly().leading_coefficient() / prod.leading_coefficient();
  if (!(prod * out.unit == F.poly())) {
    throw Error(ErrorKind::InternalInconsistency, "factorization does not expand to the input");
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_less);
  return out;
}

}  // namespace dsum
