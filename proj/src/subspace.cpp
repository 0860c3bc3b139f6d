#include "dsum/subspace.hpp"

#include "dsum/error.hpp"

namespace dsum {

Ambient Ambient::graded(Side side, std::size_t nvars, int degree) {
  return {side, nvars, degree, static_cast<std::size_t>(count_monomials(nvars, degree))};
}

Ambient Ambient::coordinates(std::size_t dim) { return {Side::S, 0, -1, dim}; }

MonomialBasis Ambient::monomial_basis() const {
  if (!is_graded()) throw Error(ErrorKind::AmbientMismatch, "coordinate space has no monomials");
  return MonomialBasis(nvars, degree);
}

Subspace Subspace::zero(const Ambient& ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient.dim);
  return s;
}

Subspace Subspace::full(const Ambient& ambient, std::uint64_t modulus) {
  return span(ambient, Matrix::identity(ambient.dim).in_field(modulus));
}

Subspace Subspace::span(const Ambient& ambient, const Matrix& rows) {
  if (rows.cols() != ambient.dim) {
    throw Error(ErrorKind::AmbientMismatch, "spanning vectors have the wrong length");
  }
  auto r = rref(rows);
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient.dim);
  for (std::size_t i = 0; i < r.rank; ++i) s.basis_.append_row(r.reduced.row(i));
  s.pivots_ = std::move(r.pivots);
  return s;
}

Subspace Subspace::span(const Ambient& ambient, const std::vector<Form>& forms) {
  const MonomialBasis mb = ambient.monomial_basis();
  Matrix rows(0, ambient.dim);
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    if (f.side() != ambient.side || f.nvars() != ambient.nvars || f.degree() != ambient.degree) {
      throw Error(ErrorKind::AmbientMismatch, "form outside the ambient graded piece");
    }
    rows.append_row(f.coordinates(mb));
  }
  return span(ambient, rows);
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_.dim) throw Error(ErrorKind::AmbientMismatch, "vector length mismatch");
  // reduce v against the RREF rows via their pivots
  std::vector<Scalar> w(v.begin(), v.end());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const Scalar c = w[pivots_[k]];
    if (c.is_zero()) continue;
    const auto row = basis_.row(k);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (!row[j].is_zero()) w[j].sub_product(c, row[j]);
  }
  for (const auto& s : w)
    if (!s.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Form& f) const {
  if (f.is_zero()) return true;
  if (f.side() != ambient_.side || f.nvars() != ambient_.nvars || f.degree() != ambient_.degree) {
    return false;
  }
  return contains(f.coordinates(ambient_.monomial_basis()));
}

bool Subspace::contains(const Subspace& other) const {
  check_same(other);
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

void Subspace::check_same(const Subspace& other) const {
  if (!(ambient_ == other.ambient_)) {
    throw Error(ErrorKind::AmbientMismatch, "subspaces live in different ambients");
  }
}

Subspace Subspace::sum(const Subspace& other) const {
  check_same(other);
  Matrix rows = basis_;
  for (std::size_t i = 0; i < other.dim(); ++i) rows.append_row(other.basis_.row(i));
  return span(ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
  check_same(other);
  // Zassenhaus: reduce [A A; B 0]; rows with vanishing left half span A ∩ B
  const std::size_t m = ambient_.dim;
  Matrix big(0, 2 * m);
  std::vector<Scalar> row(2 * m);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < m; ++j) row[j] = row[m + j] = basis_(i, j);
    big.append_row(row);
  }
  for (std::size_t i = 0; i < other.dim(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = other.basis_(i, j);
      row[m + j] = Scalar(0);
    }
    big.append_row(row);
  }
  const auto r = rref(big);
  Matrix out(0, m);
  for (std::size_t k = 0; k < r.rank; ++k) {
    if (r.pivots[k] < m) continue;
    out.append_row(r.reduced.row(k).subspan(m, m));
  }
  return span(ambient_, out);
}

std::vector<Form> Subspace::to_forms() const {
  const MonomialBasis mb = ambient_.monomial_basis();
  std::vector<Form> out;
  for (std::size_t i = 0; i < dim(); ++i)
    out.push_back(Form::from_coordinates(mb, basis_.row(i), ambient_.side));
  return out;
}

Subspace kernel(const Matrix& m) { return kernel(m, Ambient::coordinates(m.cols())); }

Subspace kernel(const Matrix& m, const Ambient& ambient) {
  return Subspace::span(ambient, kernel_basis(m));
}

Subspace annihilator(const Subspace& e) {
  Ambient target = e.ambient();
  if (target.is_graded()) target.side = dual_side(target.side);
  if (e.dim() == 0) return Subspace::full(target);
  const std::uint64_t p = e.basis()(0, e.pivots()[0]).modulus();
  Matrix m = e.basis();
  auto k = kernel_basis(m);
  return Subspace::span(target, k.in_field(p));
}

}  // namespace dsum
