#include "dsum/matrix.hpp"

#include <algorithm>

#include "dsum/error.hpp"

namespace dsum {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows,
                         std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Scalar> Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

std::vector<Scalar> Matrix::column_vector(std::size_t j) const {
  std::vector<Scalar> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Matrix::append_row(std::span<const Scalar> values) {
  if (values.size() != cols_) {
    throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  }
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

std::vector<Scalar> Matrix::operator*(std::span<const Scalar> v) const {
  if (v.size() != cols_) {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  }
  std::vector<Scalar> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::in_field(std::uint64_t p) const {
  if (p == 0) return *this;
  Matrix r = *this;
  for (auto& s : r.data_) s = Scalar::modular(s, p);
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i].push_back((*this)(i, j).to_string());
  return out;
}

RrefResult rref(const Matrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  std::vector<std::vector<Scalar>> rows(nr);
  std::vector<std::size_t> nnz(nr, 0);
  for (std::size_t i = 0; i < nr; ++i) {
    rows[i] = m.row_vector(i);
    for (const auto& s : rows[i]) nnz[i] += s.is_zero() ? 0 : 1;
  }

  std::vector<char> used(nr, 0);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row)
  std::vector<std::size_t> support;

  for (std::size_t c = 0; c < nc && pivots.size() < nr; ++c) {
    std::size_t best = nr;
    for (std::size_t r = 0; r < nr; ++r) {
      if (used[r] || rows[r][c].is_zero()) continue;
      if (best == nr || nnz[r] < nnz[best]) best = r;
    }
    if (best == nr) continue;

    auto& prow = rows[best];
    const Scalar inv = prow[c].inverse();
    support.clear();
    for (std::size_t j = c; j < nc; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] *= inv;
      if (j != c) support.push_back(j);
    }

    for (std::size_t r = 0; r < nr; ++r) {
      if (used[r] || r == best || rows[r][c].is_zero()) continue;
      auto& row = rows[r];
      const Scalar factor = row[c];
      row[c] = Scalar::modular(Scalar(0), factor.modulus());
      for (std::size_t j : support) row[j].sub_product(factor, prow[j]);
      std::size_t count = 0;
      for (std::size_t j = c + 1; j < nc; ++j) count += row[j].is_zero() ? 0 : 1;
      nnz[r] = count;
    }
    used[best] = 1;
    pivots.emplace_back(c, best);
  }

  // back substitution, last pivot first
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const auto [c, pr] = pivots[k];
    const auto& prow = rows[pr];
    support.clear();
    for (std::size_t j = c + 1; j < nc; ++j)
      if (!prow[j].is_zero()) support.push_back(j);
    for (std::size_t t = 0; t < k; ++t) {
      auto& row = rows[pivots[t].second];
      if (row[c].is_zero()) continue;
      const Scalar factor = row[c];
      row[c] = Scalar::modular(Scalar(0), factor.modulus());
      for (std::size_t j : support) row[j].sub_product(factor, prow[j]);
    }
  }

  RrefResult out;
  out.reduced = Matrix(nr, nc);
  out.rank = pivots.size();
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    out.pivots.push_back(pivots[k].first);
    const auto& row = rows[pivots[k].second];
    for (std::size_t j = 0; j < nc; ++j) out.reduced(k, j) = row[j];
  }
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  const auto r = rref(m);
  const std::size_t nc = m.cols();
  std::vector<char> is_pivot(nc, 0);
  for (auto p : r.pivots) is_pivot[p] = 1;
  Matrix k(0, nc);
  for (std::size_t free = 0; free < nc; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(nc);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    k.append_row(v);
  }
  // vectors built per free column are a basis; bring them to canonical RREF
  auto kr = rref(k);
  Matrix out(0, nc);
  for (std::size_t i = 0; i < kr.rank; ++i) out.append_row(kr.reduced.row(i));
  return out;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  }
  const std::size_t n = m.rows();
  Matrix a = m;
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return a(0, 0) * Scalar(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    const Scalar inv = a(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      const Scalar f = a(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(r, j).sub_product(f, a(c, j));
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  }
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

std::optional<std::vector<Scalar>> solve(const Matrix& m,
                                         std::span<const Scalar> b) {
  if (b.size() != m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
  }
  const std::size_t nc = m.cols();
  Matrix aug(m.rows(), nc + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < nc; ++j) aug(i, j) = m(i, j);
    aug(i, nc) = b[i];
  }
  const auto r = rref(aug);
  std::vector<Scalar> x(nc);
  for (std::size_t k = 0; k < r.rank; ++k) {
    if (r.pivots[k] == nc) return std::nullopt;
    x[r.pivots[k]] = r.reduced(k, nc);
  }
  return x;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1U) result = static_cast<std::uint64_t>(static_cast<u128>(result) * a % p);
    a = static_cast<std::uint64_t>(static_cast<u128>(a) * a % p);
    e >>= 1U;
  }
  return result;
}

}  // namespace

std::size_t rank_mod_p(const Matrix& m, std::uint64_t p) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  const mpz_class mp(static_cast<unsigned long>(p));
  std::vector<std::vector<std::uint64_t>> rows(nr, std::vector<std::uint64_t>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    mpz_class lcm = 1;
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& v = m(i, j).value();
      if (v.get_den() != 1) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < nc; ++j) {
      const auto& v = m(i, j).value();
      if (sgn(v) == 0) continue;
      mpz_class z = v.get_num() * (lcm / v.get_den());
      z %= mp;
      if (z < 0) z += mp;
      rows[i][j] = z.get_ui();
    }
  }
  std::size_t rk = 0;
  std::vector<char> used(nr, 0);
  for (std::size_t c = 0; c < nc && rk < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t r = 0; r < nr; ++r)
      if (!used[r] && rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == nr) continue;
    const std::uint64_t inv = inv_mod(rows[piv][c], p);
    for (std::size_t j = c; j < nc; ++j)
      rows[piv][j] = static_cast<std::uint64_t>(static_cast<u128>(rows[piv][j]) * inv % p);
    for (std::size_t r = 0; r < nr; ++r) {
      if (used[r] || r == piv || rows[r][c] == 0) continue;
      const std::uint64_t f = rows[r][c];
      for (std::size_t j = c; j < nc; ++j) {
        if (rows[piv][j] == 0) continue;
        const std::uint64_t t = static_cast<std::uint64_t>(static_cast<u128>(f) * rows[piv][j] % p);
        rows[r][j] = rows[r][j] >= t ? rows[r][j] - t : rows[r][j] + p - t;
      }
    }
    used[piv] = 1;
    ++rk;
  }
  return rk;
}

}  // namespace dsum
