#include "dsum/apolarity.hpp"

#include "dsum/error.hpp"

namespace dsum {

namespace {

// 2^61 - 1
constexpr std::uint64_t kCheckPrime = 2305843009213693951ULL;

// product of falling factorials b_i (b_i - 1) ... (b_i - a_i + 1)
mpz_class falling(const Monomial& b, const Monomial& a) {
  mpz_class c = 1;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    for (int k = 0; k < a[i]; ++k) c *= b[i] - k;
  return c;
}

mpz_class monomial_factorial(const Monomial& b) {
  mpz_class c = 1;
  for (std::size_t i = 0; i < b.nvars(); ++i) {
    mpz_class t;
    mpz_fac_ui(t.get_mpz_t(), static_cast<unsigned long>(b[i]));
    c *= t;
  }
  return c;
}

Scalar zero_in(std::uint64_t p) { return Scalar::modular(Scalar(0), p); }

void require_nonzero(const Form& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroForm, "the zero form has no gradient point");
}

void check_guard(std::size_t n, int degree, std::uint64_t max_ambient_dim) {
  const int d = degree - 1;
  const int top = static_cast<int>(n) * (d - 1);
  const std::uint64_t dim = count_monomials(n, top);
  if (dim > max_ambient_dim) {
    throw Error(ErrorKind::GuardExceeded, "dim D_" + std::to_string(top) + " = " +
                                              std::to_string(dim) + " exceeds the ceiling " +
                                              std::to_string(max_ambient_dim));
  }
}

void check_shape(const Form& f) {
  if (f.side() != Side::S) throw Error(ErrorKind::SideMismatch, "expected a form in x-variables");
  if (f.nvars() < 2 || f.degree() < 2) {
    throw Error(ErrorKind::AssumptionViolated, "smoothness needs n >= 2 and degree >= 2");
  }
}

}  // namespace

void check_characteristic(std::size_t n, int degree, std::uint64_t p) {
  if (p == 0) return;
  const long long d = degree - 1;
  const long long top = static_cast<long long>(n) * (d - 1);
  if (static_cast<long long>(p) <= top || static_cast<long long>(p) <= d + 1) {
    throw Error(ErrorKind::CharacteristicGuard,
                "characteristic " + std::to_string(p) + " must exceed n(d-1) = " +
                    std::to_string(top) + " and d+1 = " + std::to_string(d + 1));
  }
}

Matrix ideal_piece_generators(const std::vector<Form>& gens, int e) {
  if (gens.empty()) return Matrix(0, 0);
  const std::size_t n = gens.front().nvars();
  const MonomialBasis target(n, e);
  Matrix rows(0, target.size());
  std::vector<Scalar> row;
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() > e) continue;
    const MonomialBasis mult(n, e - g.degree());
    const Scalar zero = zero_in(g.modulus());
    for (const auto& m : mult.monomials()) {
      row.assign(target.size(), zero);
      for (const auto& [gm, c] : g.terms()) row[target.index_of(gm * m)] = c;
      rows.append_row(row);
    }
  }
  return rows;
}

Subspace graded_ideal_piece(const std::vector<Form>& gens, int e) {
  const std::size_t n = gens.empty() ? 0 : gens.front().nvars();
  const Ambient amb = Ambient::graded(Side::S, n, e);
  if (gens.empty()) return Subspace::zero(amb);
  return Subspace::span(amb, ideal_piece_generators(gens, e));
}

GradientPoint gradient_point(const Form& f) {
  require_nonzero(f);
  GradientPoint gp;
  gp.partials = gradient(f);
  gp.span = Subspace::span(Ambient::graded(f.side(), f.nvars(), f.degree() - 1), gp.partials);
  return gp;
}

bool is_concise(const Form& f) {
  GradientPoint gp;
  return is_concise(f, gp);
}

bool is_concise(const Form& f, GradientPoint& point) {
  point = gradient_point(f);
  return point.span.dim() == f.nvars();
}

std::uint64_t complete_intersection_codim(std::size_t n, int d, int e) {
  if (e < 0) return 0;
  // coefficients of (1 + T + ... + T^{d-1})^n up to T^e
  std::vector<std::uint64_t> c(static_cast<std::size_t>(e) + 1, 0);
  c[0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::uint64_t> next(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      for (int j = 0; j < d && i + j < c.size(); ++j) next[i + j] += c[i];
    }
    c = std::move(next);
  }
  return c[static_cast<std::size_t>(e)];
}

bool is_smooth(const Form& f, std::uint64_t max_ambient_dim) {
  check_shape(f);
  const std::size_t n = f.nvars();
  const std::uint64_t p = f.modulus();
  check_characteristic(n, f.degree(), p);
  check_guard(n, f.degree(), max_ambient_dim);
  const int d = f.degree() - 1;
  const int top = static_cast<int>(n) * (d - 1) + 1;
  const auto partials = gradient(f);
  // The partials generate a complete intersection iff f is smooth; any ideal of
  // n forms of degree d has dim J_e at most the complete-intersection value,
  // so the first degree falling short already decides.
  for (int e = d; e <= top; ++e) {
    const Matrix m = ideal_piece_generators(partials, e);
    const std::uint64_t expected = count_monomials(n, e) - complete_intersection_codim(n, d, e);
    if (m.rows() < expected) return false;
    const std::size_t r = rank_mod_p(m, p ? p : kCheckPrime);
    if (r == expected) continue;
    if (p != 0 || rank(m) < expected) return false;
  }
  return true;
}

Form associated_form(const Form& f, std::uint64_t max_ambient_dim) {
  if (!is_smooth(f, max_ambient_dim)) {
    throw Error(ErrorKind::NotSmooth, "f is singular; its partials do not form a regular sequence");
  }
  const std::size_t n = f.nvars();
  const int top = static_cast<int>(n) * (f.degree() - 2);
  const Matrix jac = ideal_piece_generators(gradient(f), top);
  const Matrix ker = kernel_basis(jac);
  if (ker.rows() != 1) {
    throw Error(ErrorKind::KernelDimensionError,
                "annihilator of (J_f)_" + std::to_string(top) + " has dimension " +
                    std::to_string(ker.rows()));
  }
  const MonomialBasis basis(n, top);
  Poly a(n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Scalar& u = ker(0, j);
    if (u.is_zero()) continue;
    a.add_term(basis[j], u / Scalar(monomial_factorial(basis[j])));
  }
  return normalize_leading(Form(std::move(a), Side::D, top)).first;
}

Subspace essential_space(const Form& F) {
  const std::size_t n = F.nvars();
  const Ambient linear = Ambient::graded(F.side(), n, 1);
  if (F.is_zero() || F.degree() == 0) return Subspace::zero(linear);
  const MonomialBasis lower(n, F.degree() - 1);
  Matrix m(0, lower.size());
  for (const auto& g : gradient(F)) m.append_row(g.coordinates(lower));
  // (F^perp)_1: linear operators v with sum_i v_i dF/dvar_i = 0
  const Subspace perp = kernel(m.transpose(), Ambient::graded(dual_side(F.side()), n, 1));
  if (perp.dim() == 0) return Subspace::full(linear, F.modulus());
  return annihilator(perp);
}

Subspace apolar_graded_piece(const Form& f, int e) {
  const std::size_t n = f.nvars();
  const Ambient amb = Ambient::graded(dual_side(f.side()), n, e);
  if (e < 0) return Subspace::zero(amb);
  if (e > f.degree() || f.is_zero()) return Subspace::full(amb, f.modulus());
  const MonomialBasis ops(n, e);
  const MonomialBasis out(n, f.degree() - e);
  Matrix cat(out.size(), ops.size());
  const Scalar zero = zero_in(f.modulus());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < ops.size(); ++j) cat(i, j) = zero;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const Monomial& b = ops[j];
    for (const auto& [c, coef] : f.terms()) {
      if (!b.divides(c)) continue;
      cat(out.index_of(c / b), j) += coef * Scalar(falling(c, b));
    }
  }
  return kernel(cat, amb);
}

bool has_topdegree_minimal_generator(const Form& f) {
  require_nonzero(f);
  const std::size_t n = f.nvars();
  const int k = f.degree();
  const Subspace lower = apolar_graded_piece(f, k - 1);
  const Subspace upper = apolar_graded_piece(f, k);
  std::vector<Form> products;
  const Side side = upper.ambient().side;
  for (const auto& g : lower.to_forms()) {
    for (std::size_t j = 0; j < n; ++j) {
      products.push_back(Form(Poly::variable(n, j), side, 1) * g);
    }
  }
  const Subspace generated = Subspace::span(upper.ambient(), products);
  return generated.dim() < upper.dim();
}

Subspace gradient_fiber(const Form& f) {
  require_nonzero(f);
  const std::size_t n = f.nvars();
  const int k = f.degree();
  const Ambient amb = Ambient::graded(f.side(), n, k);
  const GradientPoint gp = gradient_point(f);
  const MonomialBasis lower(n, k - 1);
  const MonomialBasis upper(n, k);
  const std::uint64_t p = f.modulus();

  // normal form modulo <grad f>: coordinates at the non-pivot columns
  const auto& pivots = gp.span.pivots();
  std::vector<long> slot(lower.size(), -1);
  std::vector<long> pivot_row(lower.size(), -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<long>(r);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (pivot_row[j] < 0) {
      slot[j] = static_cast<long>(free_cols.size());
      free_cols.push_back(j);
    }
  }
  const std::size_t q = free_cols.size();
  // nf[j] = sparse image of the basis vector e_j
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> nf(lower.size());
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (slot[j] >= 0) {
      nf[j].emplace_back(static_cast<std::size_t>(slot[j]), Scalar::modular(Scalar(1), p));
      continue;
    }
    const auto row = gp.span.basis().row(static_cast<std::size_t>(pivot_row[j]));
    for (std::size_t t = 0; t < q; ++t) {
      const Scalar& v = row[free_cols[t]];
      if (!v.is_zero()) nf[j].emplace_back(t, -v);
    }
  }

  Matrix cond(n * q, upper.size());
  const Scalar zero = zero_in(p);
  for (std::size_t i = 0; i < cond.rows(); ++i)
    for (std::size_t j = 0; j < cond.cols(); ++j) cond(i, j) = zero;
  for (std::size_t b = 0; b < upper.size(); ++b) {
    const Monomial& m = upper[b];
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      Monomial dm = m;
      dm[i] -= 1;
      const std::size_t j = lower.index_of(dm);
      for (const auto& [t, v] : nf[j]) cond(i * q + t, b) += Scalar(m[i]) * v;
    }
  }
  return kernel(cond, amb);
}

}  // namespace dsum
