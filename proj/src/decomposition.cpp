#include "dsum/decomposition.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "dsum/error.hpp"

namespace dsum {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Scalar one_in(std::uint64_t p) { return Scalar::modular(Scalar(1), p); }

// The terms of g involving only the variables in `vars`, as a form in
// vars.size() variables.
Form restrict_block(const Form& g, const std::vector<std::size_t>& vars) {
  Poly p(vars.size());
  for (const auto& [m, c] : g.terms()) {
    Monomial r(vars.size());
    int deg = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      r[i] = m[vars[i]];
      deg += r[i];
    }
    if (deg == m.degree()) p.add_term(r, c);
  }
  return Form(std::move(p), g.side(), g.degree());
}

// A form in vars.size() variables placed on `vars` of an n-variable ring.
Form embed_block(const Form& h, const std::vector<std::size_t>& vars, std::size_t n) {
  Poly p(n);
  for (const auto& [m, c] : h.terms()) {
    Monomial r(n);
    for (std::size_t i = 0; i < vars.size(); ++i) r[vars[i]] = m[i];
    p.add_term(r, c);
  }
  return Form(std::move(p), h.side(), h.degree());
}

std::vector<std::size_t> iota_range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b, std::uint64_t p) {
  const std::size_t n = a.rows() + b.rows();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar::modular(Scalar(0), p);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Matrix identity_in(std::size_t n, std::uint64_t p) { return Matrix::identity(n).in_field(p); }

Scalar trace(const Matrix& m) {
  Scalar t = Scalar::modular(Scalar(0), m.rows() ? m(0, 0).modulus() : 0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Characteristic polynomial det(T I - M) by Faddeev-LeVerrier; coefficient
// list from the constant term up.
std::vector<Scalar> characteristic_polynomial(const Matrix& m) {
  const std::size_t n = m.rows();
  const std::uint64_t p = n ? m(0, 0).modulus() : 0;
  std::vector<Scalar> c(n + 1, Scalar::modular(Scalar(0), p));
  c[n] = one_in(p);
  Matrix mk(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mk(i, j) = Scalar::modular(Scalar(0), p);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    c[n - k] = -trace(m * mk) / Scalar(static_cast<long>(k));
  }
  return c;
}

bool mask_has(std::uint64_t mask, std::size_t i) { return (mask >> i) & 1U; }

// Witnesses for every verified split of f along the products of A's factors.
std::vector<SplitWitness> witnesses_for(const Form& f, const FactorList& fl) {
  std::vector<SplitWitness> out;
  const std::size_t n = f.nvars();
  for (auto& ps : direct_product_splits(fl, n)) {
    SplitWitness w;
    w.a = ps.E1.dim();
    w.basis = split_basis(ps.E1, ps.E2);
    const Form g = substitute_linear(f, w.basis);
    auto parts = split_along(g, w.a);
    if (!parts) {
      throw Error(ErrorKind::InternalInconsistency,
                  "balanced direct product of A(f) did not split f (mask " +
                      std::to_string(ps.mask) + ")");
    }
    w.f1 = std::move(parts->first);
    w.f2 = std::move(parts->second);
    w.split = std::move(ps);
    out.push_back(std::move(w));
  }
  return out;
}

void check_shape_or_throw(const Form& f) {
  if (f.side() != Side::S) throw Error(ErrorKind::SideMismatch, "expected a form in x-variables");
  if (!shape_ok(f.nvars(), f.degree())) {
    throw Error(ErrorKind::AssumptionViolated,
                "needs n >= 2 and deg >= 3 (deg >= 4 when n = 2); got n = " +
                    std::to_string(f.nvars()) + ", deg = " + std::to_string(f.degree()));
  }
}

// An element of the fiber that is not a multiple of f, if any.
std::optional<Form> non_proportional_fiber_element(const Form& f, const Subspace& fiber) {
  const Subspace line = Subspace::span(fiber.ambient(), std::vector<Form>{f});
  for (const Form& g : fiber.to_forms()) {
    if (!line.contains(g)) return g;
  }
  return std::nullopt;
}

struct Refinement {
  Matrix basis;  // columns in the coordinates of the block
  std::vector<std::vector<std::size_t>> blocks;
};

Refinement refine(const Form& g, const ClassifyOptions& opts) {
  const std::size_t m = g.nvars();
  const std::uint64_t p = g.modulus();
  Refinement r{identity_in(m, p), {iota_range(0, m)}};
  if (m == 1) return r;
  if (!shape_ok(m, g.degree())) {
    // binary cubic: no associated-form route, use the gradient fiber
    const Subspace fiber = gradient_fiber(g);
    if (fiber.dim() < 2) return r;
    const auto h = non_proportional_fiber_element(g, fiber);
    if (!h) return r;
    BensonResult b;
    try {
      b = benson_split(g, *h);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::FieldExtensionRequired) return r;
      throw;
    }
    if (b.outcome != BensonOutcome::Split) return r;
    r.basis = b.basis.matrix();
    r.blocks = b.partition;
    return r;
  }
  if (!is_smooth(g, opts.max_ambient_dim)) {
    throw Error(ErrorKind::InternalInconsistency, "a summand of a smooth form is singular");
  }
  const Form A = associated_form(g, opts.max_ambient_dim);
  const FactorList fl = factor_multivariate(A, opts.seed, opts.guards);
  const auto ws = witnesses_for(g, fl);
  if (ws.empty()) return r;
  const SplitWitness& w = ws.front();
  const Refinement r1 = refine(restrict_block(w.f1, iota_range(0, w.a)), opts);
  const Refinement r2 = refine(restrict_block(w.f2, iota_range(w.a, m)), opts);
  r.basis = w.basis.matrix() * block_diagonal(r1.basis, r2.basis, p);
  r.blocks = r1.blocks;
  for (auto blk : r2.blocks) {
    for (auto& v : blk) v += w.a;
    r.blocks.push_back(std::move(blk));
  }
  return r;
}

CriterionVerdict guarded(const std::function<CriterionVerdict()>& run) {
  try {
    return run();
  } catch (const Error& e) {
    return {CriterionResult::Inconclusive, std::string(error_kind_name(e.kind())) + ": " + e.what()};
  }
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::DirectSum: return "direct_sum";
    case Verdict::NotDirectSum: return "not_direct_sum";
    case Verdict::DsOrLdsOverClosure: return "ds_or_lds_over_closure";
    case Verdict::NotSmooth: return "not_smooth";
    case Verdict::NotConcise: return "not_concise";
    case Verdict::AssumptionViolated: return "assumption_violated";
  }
  return "unknown";
}

const char* benson_outcome_name(BensonOutcome o) {
  switch (o) {
    case BensonOutcome::Split: return "split";
    case BensonOutcome::Proportional: return "proportional";
    case BensonOutcome::LdsIndicator: return "lds_indicator";
  }
  return "unknown";
}

bool shape_ok(std::size_t n, int degree) {
  if (n < 2 || degree < 3) return false;
  return n != 2 || degree >= 4;
}

std::vector<ProductSplit> direct_product_splits(const FactorList& fl, std::size_t n) {
  std::vector<ProductSplit> out;
  const std::size_t k = fl.factors.size();
  if (k < 2) return out;
  if (k > 20) throw Error(ErrorKind::GuardExceeded, "too many factors for the bipartition search");
  const Side side = fl.factors.front().poly.side();
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t mask = 1; mask < full; mask += 2) {
    ProductSplit ps;
    ps.mask = mask;
    const Ambient lin = fl.factors.front().essential.ambient();
    ps.E1 = Subspace::zero(lin);
    ps.E2 = Subspace::zero(lin);
    Poly g1 = Poly::constant(n, one_in(fl.unit.modulus()));
    Poly g2 = g1;
    for (std::size_t i = 0; i < k; ++i) {
      const Factor& fac = fl.factors[i];
      const Poly pw = power(fac.poly.poly(), static_cast<unsigned>(fac.multiplicity));
      if (mask_has(mask, i)) {
        ps.group1.push_back(i);
        ps.E1 = ps.E1.sum(fac.essential);
        g1 = g1 * pw;
      } else {
        ps.group2.push_back(i);
        ps.E2 = ps.E2.sum(fac.essential);
        g2 = g2 * pw;
      }
    }
    if (ps.E1.dim() + ps.E2.dim() != n || ps.E1.intersect(ps.E2).dim() != 0) continue;
    ps.G1 = Form(std::move(g1), side);
    ps.G2 = Form(std::move(g2), side);
    const long long a = static_cast<long long>(ps.E1.dim());
    const long long nn = static_cast<long long>(n);
    if ((nn - a) * ps.G1.degree() != a * ps.G2.degree()) {
      throw Error(ErrorKind::InternalInconsistency,
                  "direct product split with mask " + std::to_string(mask) + " is not balanced");
    }
    out.push_back(std::move(ps));
  }
  return out;
}

LinearChange split_basis(const Subspace& E1, const Subspace& E2) {
  if (!(E1.ambient() == E2.ambient()) || E1.ambient().degree != 1) {
    throw Error(ErrorKind::DimensionMismatch, "E1 and E2 must be spaces of linear forms in one ring");
  }
  const std::size_t n = E1.ambient().nvars;
  if (E1.dim() + E2.dim() != n || E1.intersect(E2).dim() != 0) {
    throw Error(ErrorKind::DimensionMismatch, "E1 and E2 must be independent and span the dual space");
  }
  const Subspace a2 = annihilator(E2);
  const Subspace a1 = annihilator(E1);
  Matrix rows(0, n);
  for (std::size_t i = 0; i < a2.dim(); ++i) rows.append_row(a2.basis().row(i));
  for (std::size_t i = 0; i < a1.dim(); ++i) rows.append_row(a1.basis().row(i));
  return LinearChange(rows.transpose());
}

std::optional<std::pair<Form, Form>> split_along(const Form& g, std::size_t a) {
  const std::size_t n = g.nvars();
  Poly p1(n), p2(n);
  for (const auto& [m, c] : g.terms()) {
    bool low = false, high = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      (i < a ? low : high) = true;
    }
    if (low && high) return std::nullopt;
    (high ? p2 : p1).add_term(m, c);
  }
  return std::make_pair(Form(std::move(p1), g.side(), g.degree()),
                        Form(std::move(p2), g.side(), g.degree()));
}

BensonResult benson_split(const Form& f, const Form& g) {
  const std::size_t n = f.nvars();
  if (g.nvars() != n || g.side() != f.side() || g.degree() != f.degree()) {
    throw Error(ErrorKind::ShapeMismatch, "f and g must be forms of one degree in one ring");
  }
  const std::uint64_t p = f.modulus();
  const GradientPoint gp = gradient_point(f);
  if (gp.span.dim() != n) throw Error(ErrorKind::AssumptionViolated, "benson_split needs a concise f");
  const MonomialBasis lower(n, f.degree() - 1);
  // columns: coordinates of the partials of f
  Matrix cols(lower.size(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto c = gp.partials[j].coordinates(lower);
    for (std::size_t r = 0; r < lower.size(); ++r) cols(r, j) = c[r];
  }
  BensonResult out;
  out.m = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto target = partial_derivative(g, i).coordinates(lower);
    const auto x = solve(cols, target);
    if (!x) throw Error(ErrorKind::NotInFiber, "<grad g> is not contained in <grad f>");
    for (std::size_t j = 0; j < n; ++j) out.m(i, j) = (*x)[j];
  }
  const auto c = characteristic_polynomial(out.m);
  out.charpoly = Poly(1);
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (!c[e].is_zero()) out.charpoly.add_term(Monomial::unit(1, 0, static_cast<int>(e)), c[e]);
  }
  // M = lambda I
  bool scalar = true;
  for (std::size_t i = 0; i < n && scalar; ++i)
    for (std::size_t j = 0; j < n && scalar; ++j)
      if (!(out.m(i, j) == (i == j ? out.m(0, 0) : Scalar::modular(Scalar(0), p)))) scalar = false;
  if (scalar) {
    out.outcome = BensonOutcome::Proportional;
    out.eigenvalues = {out.m(0, 0)};
    return out;
  }
  const UnivariateFactorization uf = factor_univariate(out.charpoly);
  for (const auto& pf : uf.factors) {
    if (pf.poly.total_degree() > 1) {
      throw Error(ErrorKind::FieldExtensionRequired,
                  "characteristic polynomial of M has an irreducible factor of degree " +
                      std::to_string(pf.poly.total_degree()));
    }
  }
  Matrix eigvecs(0, n);
  std::size_t total = 0;
  for (const auto& pf : uf.factors) {
    // pf = c1 T + c0 (monic or primitive): root -c0/c1
    const Scalar c1 = pf.poly.coefficient(Monomial::unit(1, 0, 1));
    const Scalar c0 = pf.poly.coefficient(Monomial(1));
    const Scalar lambda = -c0 / c1;
    Matrix shifted = out.m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    const Matrix ker = kernel_basis(shifted);
    out.eigenvalues.push_back(lambda);
    std::vector<std::size_t> group;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
      eigvecs.append_row(ker.row(r));
      group.push_back(total++);
    }
    out.partition.push_back(std::move(group));
  }
  if (total < n) {
    out.outcome = BensonOutcome::LdsIndicator;
    out.partition.clear();
    return out;
  }
  out.basis = LinearChange(eigvecs.transpose());
  const Form h = substitute_linear(f, out.basis);
  for (const auto& [m, coeff] : h.terms()) {
    std::size_t owner = out.partition.size();
    for (std::size_t gi = 0; gi < out.partition.size(); ++gi) {
      for (std::size_t v : out.partition[gi]) {
        if (m[v] == 0) continue;
        if (owner != out.partition.size() && owner != gi) {
          throw Error(ErrorKind::InternalInconsistency, "eigenbasis of M does not split f");
        }
        owner = gi;
      }
    }
  }
  out.outcome = BensonOutcome::Split;
  return out;
}

DecompositionReport decompose_once(const Form& f, const ClassifyOptions& opts) {
  check_shape_or_throw(f);
  DecompositionReport rep;
  rep.input = f;
  rep.n = f.nvars();
  rep.degree = f.degree();
  rep.modulus = f.modulus();
  rep.seed = opts.seed;
  rep.assumptions_ok = true;
  check_characteristic(rep.n, rep.degree, rep.modulus);

  auto t0 = Clock::now();
  rep.smooth = is_smooth(f, opts.max_ambient_dim);
  rep.timings_ms["smooth"] = ms_since(t0);
  if (!*rep.smooth) {
    rep.verdict = Verdict::NotSmooth;
    return rep;
  }
  rep.concise = true;
  t0 = Clock::now();
  rep.associated_form = associated_form(f, opts.max_ambient_dim);
  rep.timings_ms["associated_form"] = ms_since(t0);
  t0 = Clock::now();
  rep.factors = factor_multivariate(*rep.associated_form, opts.seed, opts.guards);
  rep.timings_ms["factor"] = ms_since(t0);
  t0 = Clock::now();
  rep.splits = witnesses_for(f, *rep.factors);
  rep.timings_ms["splits"] = ms_since(t0);
  rep.verdict = rep.splits.empty() ? Verdict::NotDirectSum : Verdict::DirectSum;
  return rep;
}

MaximallyFine maximally_fine(const Form& f, const ClassifyOptions& opts) {
  check_shape_or_throw(f);
  check_characteristic(f.nvars(), f.degree(), f.modulus());
  if (!is_smooth(f, opts.max_ambient_dim)) {
    throw Error(ErrorKind::NotSmooth, "maximally_fine needs a smooth form");
  }
  const Refinement r = refine(f, opts);
  MaximallyFine mf;
  mf.basis = LinearChange(r.basis);
  const Form h = substitute_linear(f, mf.basis);
  const std::size_t n = f.nvars();
  Form total(n, Side::S, f.degree());
  const Matrix bt = mf.basis.matrix().transpose();
  for (const auto& blk : r.blocks) {
    Summand s;
    s.block = blk;
    const Form part = embed_block(restrict_block(h, blk), blk, n);
    total = total + part;
    auto [normalized, factor] = normalize_leading(part);
    s.form = std::move(normalized);
    s.scale = factor;
    s.original = substitute_raw(part, bt);
    mf.summands.push_back(std::move(s));
  }
  if (total != h) {
    throw Error(ErrorKind::InternalInconsistency, "maximally fine summands do not add up to f");
  }
  return mf;
}

DecompositionReport classify(const Form& f, const ClassifyOptions& opts) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroForm, "classify needs a nonzero form");
  if (f.side() != Side::S) throw Error(ErrorKind::SideMismatch, "expected a form in x-variables");
  DecompositionReport rep;
  rep.input = f;
  rep.n = f.nvars();
  rep.degree = f.degree();
  rep.modulus = f.modulus();
  rep.seed = opts.seed;

  auto attach_criteria = [&] {
    const auto t0 = Clock::now();
    rep.mt3 = guarded([&] { return factor_criterion(f, opts.seed, opts.guards); });
    rep.mt4 = guarded([&] { return state_criterion(f); });
    rep.timings_ms["criteria"] = ms_since(t0);
  };

  rep.assumptions_ok = shape_ok(rep.n, rep.degree);
  if (!rep.assumptions_ok) {
    rep.verdict = Verdict::AssumptionViolated;
    rep.note = "needs n >= 2 and deg >= 3 (deg >= 4 when n = 2)";
    attach_criteria();
    return rep;
  }
  check_characteristic(rep.n, rep.degree, rep.modulus);

  auto t0 = Clock::now();
  GradientPoint gp;
  rep.concise = is_concise(f, gp);
  rep.timings_ms["concise"] = ms_since(t0);
  if (!*rep.concise) {
    rep.verdict = Verdict::NotConcise;
    rep.note = "dim <grad f> = " + std::to_string(gp.span.dim()) + " < n";
    attach_criteria();
    return rep;
  }

  t0 = Clock::now();
  rep.smooth = is_smooth(f, opts.max_ambient_dim);
  rep.timings_ms["smooth"] = ms_since(t0);

  t0 = Clock::now();
  const Subspace fiber = gradient_fiber(f);
  rep.fiber_dimension = fiber.dim();
  rep.timings_ms["fiber"] = ms_since(t0);

  if (*rep.smooth) {
    DecompositionReport once = decompose_once(f, opts);
    rep.associated_form = std::move(once.associated_form);
    rep.factors = std::move(once.factors);
    rep.splits = std::move(once.splits);
    rep.verdict = once.verdict;
    for (const auto& [k, v] : once.timings_ms) {
      if (k != "smooth") rep.timings_ms[k] = v;
    }
    if (rep.verdict == Verdict::DirectSum) {
      t0 = Clock::now();
      rep.maximally_fine = maximally_fine(f, opts);
      rep.timings_ms["maximally_fine"] = ms_since(t0);
    } else if (*rep.fiber_dimension > 1) {
      rep.field_note = "no balanced direct product over " +
                       std::string(rep.modulus ? "F_" + std::to_string(rep.modulus) : "Q") +
                       ", but the gradient fiber has dimension " +
                       std::to_string(*rep.fiber_dimension) +
                       "; f is a direct sum over a field extension";
    }
  } else if (*rep.fiber_dimension > 1) {
    rep.verdict = Verdict::DsOrLdsOverClosure;
    if (const auto g = non_proportional_fiber_element(f, fiber)) {
      try {
        rep.benson = benson_split(f, *g);
      } catch (const Error& e) {
        rep.benson_note = std::string(error_kind_name(e.kind())) + ": " + e.what();
      }
    }
  } else {
    rep.verdict = Verdict::NotSmooth;
  }
  attach_criteria();
  return rep;
}

}  // namespace dsum
