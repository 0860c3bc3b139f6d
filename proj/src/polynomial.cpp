#include "dsum/polynomial.hpp"

#include <algorithm>

#include "dsum/error.hpp"

namespace dsum {

// ---------------------------------------------------------------- Poly

Poly Poly::constant(std::size_t nvars, const Scalar& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t var) {
  Poly p(nvars);
  p.add_term(Monomial::unit(nvars, var), Scalar(1));
  return p;
}

Poly Poly::term(const Monomial& m, const Scalar& c) {
  Poly p(m.nvars());
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

std::uint64_t Poly::modulus() const {
  return terms_.empty() ? 0 : terms_.begin()->second.modulus();
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::modular(Scalar(0), modulus()) : it->second;
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  return terms_.rbegin()->first.degree() == d;
}

int Poly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

int Poly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first[var];
  for (const auto& [m, c] : terms_) d = std::min(d, m[var]);
  return d;
}

bool Poly::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(std::max(a.nvars(), b.nvars()));
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

Poly derivative(const Poly& p, std::size_t var) {
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * Scalar(m[var]));
  }
  return r;
}

Poly power(const Poly& p, unsigned e) {
  Poly result = Poly::constant(p.nvars(), Scalar::modular(Scalar(1), p.modulus()));
  Poly base = p;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return result;
}

Poly compose(const Poly& p, const std::vector<Poly>& images) {
  if (images.size() != p.nvars()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: image count mismatch");
  }
  const std::size_t nv = images.empty() ? 0 : images.front().nvars();
  // cache powers of each image as they are requested
  std::vector<std::vector<Poly>> powers(images.size());
  auto pow_of = [&](std::size_t i, int e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(nv, Scalar(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly r(nv);
  for (const auto& [m, c] : p.terms()) {
    Poly t = Poly::constant(nv, c);
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) t = t * pow_of(i, m[i]);
    r += t;
  }
  return r;
}

Poly in_field(const Poly& p, std::uint64_t modulus) {
  if (modulus == 0) return p;
  Poly r(p.nvars());
  for (const auto& [m, c] : p.terms()) r.add_term(m, Scalar::modular(c, modulus));
  return r;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  Poly rem = a;
  Poly q(std::max(a.nvars(), b.nvars()));
  const Monomial& lm = b.leading_monomial();
  const Scalar lc_inv = b.leading_coefficient().inverse();
  while (!rem.is_zero()) {
    const Monomial m = rem.leading_monomial();
    if (!lm.divides(m)) return std::nullopt;
    const Monomial qm = m / lm;
    const Scalar qc = rem.leading_coefficient() * lc_inv;
    q.add_term(qm, qc);
    for (const auto& [mb, cb] : b.terms()) rem.add_term(qm * mb, -(qc * cb));
  }
  return q;
}

// ---------------------------------------------------------------- Form

char variable_letter(Side side) { return side == Side::S ? 'x' : 'z'; }

Side dual_side(Side side) { return side == Side::S ? Side::D : Side::S; }

Form::Form(std::size_t nvars, Side side, int degree)
    : poly_(nvars), side_(side), degree_(degree) {}

Form::Form(Poly poly, Side side, int degree_if_zero)
    : poly_(std::move(poly)), side_(side), degree_(degree_if_zero) {
  if (!poly_.is_zero()) {
    if (!poly_.is_homogeneous()) {
      throw Error(ErrorKind::NonHomogeneous,
                  "polynomial mixes degrees " +
                      std::to_string(poly_.terms().begin()->first.degree()) + " and " +
                      std::to_string(poly_.terms().rbegin()->first.degree()));
    }
    degree_ = poly_.total_degree();
  }
}

std::vector<Scalar> Form::coordinates(const MonomialBasis& basis) const {
  std::vector<Scalar> v(basis.size(), Scalar::modular(Scalar(0), modulus()));
  for (const auto& [m, c] : terms()) {
    const auto idx = basis.index_of(m);
    if (idx == basis.size()) {
      throw Error(ErrorKind::AmbientMismatch, "monomial outside the graded piece");
    }
    v[idx] = c;
  }
  return v;
}

Form Form::from_coordinates(const MonomialBasis& basis,
                            std::span<const Scalar> coords, Side side) {
  Poly p(basis.nvars());
  for (std::size_t i = 0; i < coords.size(); ++i) p.add_term(basis[i], coords[i]);
  return Form(std::move(p), side, basis.degree());
}

std::vector<std::size_t> Form::support() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nvars(); ++v)
    if (poly_.involves(v)) out.push_back(v);
  return out;
}

bool operator==(const Form& a, const Form& b) {
  if (a.side_ != b.side_ || a.nvars() != b.nvars()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.poly_ == b.poly_;
}

namespace {

void check_compatible(const Form& a, const Form& b) {
  if (a.side() != b.side()) throw Error(ErrorKind::SideMismatch, "forms on different sides");
  if (a.nvars() != b.nvars()) {
    throw Error(ErrorKind::DimensionMismatch, "forms in different variable counts");
  }
}

}  // namespace

Form operator+(const Form& a, const Form& b) {
  check_compatible(a, b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree()) {
    throw Error(ErrorKind::DegreeMismatch, "adding forms of degrees " +
                                               std::to_string(a.degree()) + " and " +
                                               std::to_string(b.degree()));
  }
  return Form(a.poly() + b.poly(), a.side(), a.degree());
}

Form operator-(const Form& a, const Form& b) { return a + scale(b, Scalar(-1)); }

Form operator*(const Form& a, const Form& b) {
  check_compatible(a, b);
  return Form(a.poly() * b.poly(), a.side(), a.degree() + b.degree());
}

Form operator*(const Scalar& c, const Form& f) { return scale(f, c); }

Form scale(const Form& f, const Scalar& c) {
  return Form(f.poly() * c, f.side(), f.degree());
}

Form partial_derivative(const Form& f, std::size_t var) {
  if (var >= f.nvars()) {
    throw Error(ErrorKind::IndexOutOfRange, "variable index " + std::to_string(var + 1) +
                                                " out of range 1.." +
                                                std::to_string(f.nvars()));
  }
  return Form(derivative(f.poly(), var), f.side(), std::max(f.degree() - 1, 0));
}

std::vector<Form> gradient(const Form& f) {
  std::vector<Form> g;
  for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(partial_derivative(f, i));
  return g;
}

namespace {

// Differential action of the monomial operator `op` on `target`.
Form differentiate_by(const Form& op, const Form& target) {
  if (op.nvars() != target.nvars()) {
    throw Error(ErrorKind::DimensionMismatch, "polar pairing across variable counts");
  }
  const int deg = target.degree() - op.degree();
  Poly r(target.nvars());
  if (deg >= 0) {
    for (const auto& [ma, ca] : op.terms()) {
      for (const auto& [mb, cb] : target.terms()) {
        if (!ma.divides(mb)) continue;
        mpz_class coef = 1;
        for (std::size_t i = 0; i < ma.nvars(); ++i)
          for (int k = 0; k < ma[i]; ++k) coef *= mb[i] - k;
        r.add_term(mb / ma, ca * cb * Scalar(coef));
      }
    }
  }
  return Form(std::move(r), target.side(), std::max(deg, 0));
}

}  // namespace

Form polar_apply(const Form& g, const Form& F) {
  if (g.side() != Side::S || F.side() != Side::D) {
    throw Error(ErrorKind::SideMismatch, "polar_apply expects an S-form acting on a D-form");
  }
  return differentiate_by(g, F);
}

Form apply_dual(const Form& F, const Form& f) {
  if (F.side() != Side::D || f.side() != Side::S) {
    throw Error(ErrorKind::SideMismatch, "apply_dual expects a D-form acting on an S-form");
  }
  return differentiate_by(F, f);
}

Form in_field(const Form& f, std::uint64_t modulus) {
  return Form(in_field(f.poly(), modulus), f.side(), f.degree());
}

std::pair<Form, Scalar> normalize_leading(const Form& f) {
  if (f.is_zero()) return {f, Scalar(0)};
  const Scalar lc = f.poly().leading_coefficient();
  return {scale(f, lc.inverse()), lc};
}

// ---------------------------------------------------------------- LinearChange

LinearChange::LinearChange(Matrix columns) : m_(std::move(columns)) {
  if (m_.rows() != m_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "basis change must be square");
  }
  if (determinant(m_).is_zero()) {
    throw Error(ErrorKind::SingularMatrix, "basis change matrix is singular");
  }
}

LinearChange LinearChange::identity(std::size_t n) { return LinearChange(Matrix::identity(n)); }

LinearChange LinearChange::inverse() const { return LinearChange(*dsum::inverse(m_)); }

LinearChange LinearChange::refined_by(const LinearChange& inner) const {
  return LinearChange(m_ * inner.m_);
}

Form substitute_raw(const Form& f, const Matrix& m) {
  const std::size_t n = f.nvars();
  if (m.rows() != n) throw Error(ErrorKind::DimensionMismatch, "substitution size mismatch");
  std::vector<Poly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Poly img(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) img.add_term(Monomial::unit(m.cols(), j), m(i, j));
    images.push_back(std::move(img));
  }
  return Form(compose(f.poly(), images), f.side(), f.degree());
}

Form substitute_linear(const Form& f, const LinearChange& basis) {
  if (basis.size() != f.nvars()) {
    throw Error(ErrorKind::DimensionMismatch, "basis size differs from variable count");
  }
  const auto inv = dsum::inverse(basis.matrix());
  if (!inv) throw Error(ErrorKind::SingularMatrix, "basis change matrix is singular");
  return substitute_raw(f, inv->transpose());
}

std::vector<Form> basis_vectors_as_forms(const LinearChange& basis, Side side) {
  std::vector<Form> out;
  const std::size_t n = basis.size();
  for (std::size_t j = 0; j < n; ++j) {
    Poly p(n);
    for (std::size_t i = 0; i < n; ++i) p.add_term(Monomial::unit(n, i), basis.matrix()(i, j));
    out.emplace_back(std::move(p), side, 1);
  }
  return out;
}

}  // namespace dsum
