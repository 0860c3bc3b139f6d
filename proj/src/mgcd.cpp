#include <map>
#include <random>

#include "dsum/error.hpp"
#include "dsum/factor.hpp"
#include "lift_gcd.hpp"

namespace dsum {

namespace {

// Coefficients of p as a polynomial in `var`: exponent -> coefficient
// (with `var` removed from the monomials).
std::map<int, Poly> coefficients_in(const Poly& p, std::size_t var) {
  std::map<int, Poly> out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r[var] = 0;
    auto it = out.try_emplace(m[var], Poly(p.nvars())).first;
    it->second.add_term(r, c);
  }
  return out;
}

long highest_variable(const Poly& a, const Poly& b) {
  for (std::size_t v = std::max(a.nvars(), b.nvars()); v-- > 0;) {
    if ((v < a.nvars() && a.involves(v)) || (v < b.nvars() && b.involves(v))) {
      return static_cast<long>(v);
    }
  }
  return -1;
}

std::size_t active_variables(const Poly& a, const Poly& b) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < a.nvars(); ++v) n += a.involves(v) || b.involves(v);
  return n;
}

Poly one_like(const Poly& p) {
  return Poly::constant(p.nvars(), Scalar::modular(Scalar(1), p.modulus()));
}

Poly content_in(const Poly& p, std::size_t var) {
  Poly g(p.nvars());
  for (const auto& [e, c] : coefficients_in(p, var)) {
    g = poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorKind::InternalInconsistency, "inexact polynomial division in gcd");
  return *q;
}

// prem(a, b) in `var`: lc(b)^k a - q b with deg_var < deg_var b.
Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const auto bc = coefficients_in(b, var);
  const Poly& lcb = bc.rbegin()->second;
  while (!a.is_zero()) {
    const int da = a.degree_in(var);
    if (da < db) break;
    const Poly lca = coefficients_in(a, var).rbegin()->second;
    Poly shift = lca * Poly::term(Monomial::unit(a.nvars(), var, da - db), Scalar(1));
    a = lcb * a - shift * b;
  }
  return a;
}

Poly primitive_in(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return normalize_poly(exact_quotient(p, content_in(p, var)));
}

// True when the restriction of the homogeneous p to some random line is a
// squarefree polynomial of full degree, which certifies p squarefree.
bool certified_squarefree(const Poly& p) {
  const int t = p.total_degree();
  const std::uint64_t mod = p.modulus();
  std::mt19937_64 rng(derive_seed(kDefaultSeed, static_cast<std::uint64_t>(t)));
  auto pick = [&]() {
    const long v = static_cast<long>(rng() % 201) - 100;
    return Scalar::modular(Scalar(v), mod);
  };
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Poly> images;
    for (std::size_t j = 0; j < p.nvars(); ++j) {
      Poly img = Poly::constant(1, pick());
      img.add_term(Monomial::unit(1, 0), pick());
      images.push_back(std::move(img));
    }
    const Poly u = compose(p, images);
    if (u.total_degree() != t) continue;
    if (poly_gcd(u, derivative(u, 0)).is_constant()) return true;
  }
  return false;
}

}  // namespace

Poly normalize_poly(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.modulus() != 0) return p * p.leading_coefficient().inverse();
  mpz_class den = 1;
  mpz_class num = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.value().get_num_mpz_t());
  }
  mpq_class s(den, num);
  s.canonicalize();
  if (sgn(p.leading_coefficient().value()) < 0) s = -s;
  return p * Scalar(s);
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_poly(b);
  if (b.is_zero()) return normalize_poly(a);
  const long hv = highest_variable(a, b);
  if (hv < 0) return one_like(a);
  const auto v = static_cast<std::size_t>(hv);
  if (a.nvars() == b.nvars() && active_variables(a, b) >= 3 && a.is_homogeneous() &&
      b.is_homogeneous()) {
    if (auto g = lift_gcd(a, b)) return *g;
  }
  if (!a.involves(v)) return poly_gcd(a, content_in(b, v));
  if (!b.involves(v)) return poly_gcd(content_in(a, v), b);

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  Poly pa = normalize_poly(exact_quotient(a, ca));
  Poly pb = normalize_poly(exact_quotient(b, cb));
  const Poly c = poly_gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // subresultant PRS
  Poly g = one_like(pa);
  Poly h = one_like(pa);
  for (;;) {
    const int delta = pa.degree_in(v) - pb.degree_in(v);
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (!r.involves(v)) return normalize_poly(c);
    pa = std::move(pb);
    pb = exact_quotient(r, g * power(h, static_cast<unsigned>(delta)));
    g = coefficients_in(pa, v).rbegin()->second;
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_quotient(power(g, static_cast<unsigned>(delta)),
                         power(h, static_cast<unsigned>(delta - 1)));
    }
  }
  return normalize_poly(c * primitive_in(pb, v));
}

std::vector<std::pair<Form, int>> squarefree_decomposition(const Form& F) {
  if (F.is_zero()) throw Error(ErrorKind::ZeroForm, "squarefree decomposition of zero");
  const std::uint64_t p = F.modulus();
  if (p != 0 && static_cast<long long>(p) <= F.degree()) {
    throw Error(ErrorKind::CharacteristicGuard,
                "squarefree decomposition needs p > deg F = " + std::to_string(F.degree()));
  }
  std::map<int, Poly> parts;
  auto merge = [&](int e, const Poly& q) {
    if (q.is_constant()) return;
    auto it = parts.find(e);
    if (it == parts.end()) parts.emplace(e, q);
    else it->second = it->second * q;
  };

  if (certified_squarefree(F.poly())) return {{Form(normalize_poly(F.poly()), F.side()), 1}};

  // Yun with respect to each variable in turn; factors free of the current
  // variable stay in its content and are handled by the next one.
  Poly rest = F.poly();
  for (std::size_t v = 0; v < F.nvars() && !rest.is_constant(); ++v) {
    if (!rest.involves(v)) continue;
    const Poly cont = content_in(rest, v);
    const Poly prim = exact_quotient(rest, cont);
    Poly d = derivative(prim, v);
    Poly a = poly_gcd(prim, d);
    Poly b = exact_quotient(prim, a);
    Poly c = exact_quotient(d, a);
    Poly dd = c - derivative(b, v);
    for (int i = 1; !b.is_constant(); ++i) {
      const Poly g = poly_gcd(b, dd);
      merge(i, g);
      b = exact_quotient(b, g);
      c = exact_quotient(dd, g);
      dd = c - derivative(b, v);
    }
    rest = cont;
  }

  std::vector<std::pair<Form, int>> out;
  for (const auto& [e, q] : parts) out.emplace_back(Form(normalize_poly(q), F.side()), e);
  return out;
}

}  // namespace dsum
