#include "dsum/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "dsum/apolarity.hpp"
#include "dsum/error.hpp"

namespace dsum {

namespace {

Scalar random_coefficient(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 9) + 1;
  if (rng() & 1U) num = -num;
  const long den = static_cast<long>(rng() % 4) + 1;
  return Scalar::fraction(num, den);
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

// Perfect matchings of {0..2m-1}, each as the flattened pair list with the
// smallest free vertex matched first.
void matchings(std::vector<char>& used, std::vector<std::size_t>& cur,
               std::vector<std::vector<std::size_t>>& out) {
  const auto first = std::find(used.begin(), used.end(), 0);
  if (first == used.end()) {
    out.push_back(cur);
    return;
  }
  const auto i = static_cast<std::size_t>(first - used.begin());
  used[i] = 1;
  for (std::size_t j = i + 1; j < used.size(); ++j) {
    if (used[j]) continue;
    used[j] = 1;
    cur.push_back(i);
    cur.push_back(j);
    matchings(used, cur, out);
    cur.pop_back();
    cur.pop_back();
    used[j] = 0;
  }
  used[i] = 0;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t size) {
  // lexicographic index of {i < j} among pairs of {0..size-1}
  return i * size - i * (i + 1) / 2 + (j - i - 1);
}

Form random_form(std::size_t n, int degree, const std::vector<std::size_t>& vars,
                 std::mt19937_64& rng) {
  const MonomialBasis mb(vars.size(), degree);
  Poly p(n);
  for (const auto& m : mb.monomials()) {
    if (rng() % 3 == 0) continue;
    Monomial full(n);
    for (std::size_t i = 0; i < vars.size(); ++i) full[vars[i]] = m[i];
    p.add_term(full, Scalar(static_cast<long>(rng() % 7) - 3));
  }
  if (p.is_zero()) p.add_term(Monomial::unit(n, vars.front(), degree), Scalar(1));
  return Form(std::move(p), Side::S);
}

}  // namespace

StateSet state_of(const Form& f) {
  StateSet s;
  s.degree = f.degree();
  for (const auto& [m, c] : f.terms()) s.members.insert(m.exponents());
  return s;
}

const char* criterion_result_name(CriterionResult r) {
  return r == CriterionResult::NotDirectSum ? "not_direct_sum" : "inconclusive";
}

const char* structured_kind_name(StructuredKind k) {
  switch (k) {
    case StructuredKind::Determinant: return "determinant";
    case StructuredKind::Permanent: return "permanent";
    case StructuredKind::Pfaffian: return "pfaffian";
  }
  return "unknown";
}

CriterionVerdict factor_criterion(const Form& f, std::uint64_t seed, const FactorGuards& guards) {
  CriterionVerdict v;
  if (f.is_zero()) throw Error(ErrorKind::ZeroForm, "criterion on the zero form");
  const std::uint64_t p = f.modulus();
  const long long deg = f.degree();
  if (p != 0 && static_cast<long double>(p) <= 2.0L * deg * deg) {
    v.reason = "disabled over F_" + std::to_string(p) + ": needs p > 2*deg^2 = " +
               std::to_string(2 * deg * deg);
    return v;
  }
  const FactorList fl = factor_multivariate(f, seed, guards);
  for (const auto& fac : fl.factors) {
    if (fac.multiplicity >= 2) {
      v.result = CriterionResult::NotDirectSum;
      v.reason = "repeated factor (" + std::to_string(fac.multiplicity) + ")";
      return v;
    }
  }
  const std::size_t b = gradient_point(f).span.dim();
  const std::size_t limit = b >= 1 ? (b - 1) / 2 : 0;
  if (fl.factors.size() >= 2) {
    for (const auto& fac : fl.factors) {
      const std::size_t gb = gradient_point(fac.poly).span.dim();
      if (gb <= limit) {
        v.result = CriterionResult::NotDirectSum;
        v.reason = "factor of degree " + std::to_string(fac.poly.degree()) + " with dim <grad g> = " +
                   std::to_string(gb) + " <= floor((b-1)/2) = " + std::to_string(limit);
        return v;
      }
    }
  }
  v.reason = "no repeated factor and no factor with a small gradient space";
  return v;
}

CriterionVerdict state_criterion(const Form& f) {
  CriterionVerdict v;
  const std::size_t n = f.nvars();
  const std::uint64_t p = f.modulus();
  if (p == 2) {
    v.reason = "not applicable over F_2";
    return v;
  }
  if (f.degree() < 3) {
    v.reason = "needs degree >= 3";
    return v;
  }
  std::vector<StateSet> partial(n);
  std::set<std::vector<int>> all;
  for (std::size_t i = 0; i < n; ++i) {
    partial[i] = state_of(partial_derivative(f, i));
    if (partial[i].members.empty()) {
      v.reason = "condition (1) fails: d f/d x" + std::to_string(i + 1) + " = 0";
      return v;
    }
    for (const auto& m : partial[i].members) {
      if (!all.insert(m).second) {
        v.reason = "condition (2) fails: partial states overlap";
        return v;
      }
    }
  }
  // recoverable states: candidates are u + e_i for u in some partial state
  std::set<std::vector<int>> recoverable;
  for (const auto& u : all) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> cand = u;
      cand[i] += 1;
      if (recoverable.count(cand)) continue;
      bool some_unit = false;
      bool inside = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (cand[j] == 0) continue;
        if (p != 0 && cand[j] % static_cast<long long>(p) == 0) continue;
        some_unit = true;
        std::vector<int> d = cand;
        d[j] -= 1;
        if (!all.count(d)) {
          inside = false;
          break;
        }
      }
      if (some_unit && inside) recoverable.insert(cand);
    }
  }
  if (recoverable != state_of(f).members) {
    v.reason = "condition (3) fails: the state is not the recoverable set";
    return v;
  }
  // connectivity of the graph of nonzero mixed second partials
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (std::size_t i = 0; i < n; ++i) {
    const Form di = partial_derivative(f, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (partial_derivative(di, j).is_zero()) continue;
      const std::size_t a = find(i), b = find(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  if (components != 1) {
    v.reason = "condition (4) fails: second-partial graph has " + std::to_string(components) +
               " components";
    return v;
  }
  v.result = CriterionResult::NotDirectSum;
  v.reason = "all four state conditions hold";
  return v;
}

Form gen_structured(StructuredKind kind, std::size_t m, std::uint64_t seed,
                    bool unit_coefficients) {
  if (m < 3) throw Error(ErrorKind::SizeTooSmall, "structured forms need size >= 3");
  std::mt19937_64 rng(seed);
  auto coefficient = [&](int sign) {
    const Scalar s(sign);
    return unit_coefficients ? s : s * random_coefficient(rng);
  };
  if (kind == StructuredKind::Pfaffian) {
    const std::size_t size = 2 * m;
    const std::size_t nv = size * (size - 1) / 2;
    std::vector<char> used(size, 0);
    std::vector<std::size_t> cur;
    std::vector<std::vector<std::size_t>> all;
    matchings(used, cur, all);
    Poly p(nv);
    for (const auto& mt : all) {
      Monomial mono(nv);
      for (std::size_t k = 0; k < mt.size(); k += 2) mono[pair_index(mt[k], mt[k + 1], size)] += 1;
      p.add_term(mono, coefficient(permutation_sign(mt)));
    }
    return Form(std::move(p), Side::S);
  }
  const std::size_t nv = m * m;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Poly p(nv);
  do {
    Monomial mono(nv);
    for (std::size_t i = 0; i < m; ++i) mono[i * m + perm[i]] = 1;
    const int sign = kind == StructuredKind::Determinant ? permutation_sign(perm) : 1;
    p.add_term(mono, coefficient(sign));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Form(std::move(p), Side::S);
}

Form gen_lds(const Form& H, const Form& G, std::size_t ell) {
  const std::size_t n = G.nvars();
  if (ell == 0 || 2 * ell > n || H.nvars() != n || H.side() != Side::S || G.side() != Side::S) {
    throw Error(ErrorKind::ShapeMismatch, "gen_lds needs 1 <= ell, 2 ell <= n and S-forms in n variables");
  }
  if (!H.is_zero() && !G.is_zero() && H.degree() != G.degree()) {
    throw Error(ErrorKind::ShapeMismatch, "H and G must have the same degree");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (H.poly().involves(v) && (v < ell || v >= 2 * ell)) {
      throw Error(ErrorKind::ShapeMismatch, "H may only involve x_{ell+1..2 ell}");
    }
    if (G.poly().involves(v) && v < ell) {
      throw Error(ErrorKind::ShapeMismatch, "G may not involve x_1..x_ell");
    }
  }
  const int degree = H.is_zero() ? G.degree() : H.degree();
  Form f(n, Side::S, degree);
  for (std::size_t i = 0; i < ell; ++i) {
    const Form dh = partial_derivative(H, ell + i);
    if (dh.is_zero()) continue;
    f = f + Form(Poly::variable(n, i), Side::S, 1) * dh;
  }
  return f + G;
}

Form random_lds(std::size_t n, int degree, std::size_t ell, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> hv, gv;
  for (std::size_t v = ell; v < 2 * ell; ++v) hv.push_back(v);
  for (std::size_t v = ell; v < n; ++v) gv.push_back(v);
  const Form H = random_form(n, degree, hv, rng);
  const Form G = random_form(n, degree, gv, rng);
  return gen_lds(H, G, ell);
}

}  // namespace dsum
