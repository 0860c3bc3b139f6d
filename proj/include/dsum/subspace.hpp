#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dsum/matrix.hpp"
#include "dsum/monomial.hpp"
#include "dsum/polynomial.hpp"

namespace dsum {

/// The vector space a Subspace lives in: the degree-`degree` piece of S or D
/// in `nvars` variables (coordinates in the grevlex monomial basis), or plain
/// coordinate space k^dim when `degree` is -1.
struct Ambient {
  Side side = Side::S;
  std::size_t nvars = 0;
  int degree = -1;
  std::size_t dim = 0;

  static Ambient graded(Side side, std::size_t nvars, int degree);
  static Ambient coordinates(std::size_t dim);

  bool is_graded() const noexcept { return degree >= 0; }
  MonomialBasis monomial_basis() const;

  friend bool operator==(const Ambient& a, const Ambient& b) {
    return a.side == b.side && a.nvars == b.nvars && a.degree == b.degree &&
           a.dim == b.dim;
  }
};

/// A linear subspace stored by the canonical RREF of a spanning set.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(const Ambient& ambient);
  static Subspace full(const Ambient& ambient, std::uint64_t modulus = 0);
  /// Row space of `rows` (columns are ambient coordinates).
  static Subspace span(const Ambient& ambient, const Matrix& rows);
  /// Span of forms that all live in the graded ambient.
  static Subspace span(const Ambient& ambient, const std::vector<Form>& forms);

  const Ambient& ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  std::size_t codim() const noexcept { return ambient_.dim - dim(); }
  /// RREF rows, no zero rows.
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Form& f) const;
  bool contains(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  /// Basis rows as forms of the graded ambient.
  std::vector<Form> to_forms() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  void check_same(const Subspace& other) const;

  Ambient ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Right nullspace of m as a subspace of `ambient` (defaults to k^cols).
Subspace kernel(const Matrix& m);
Subspace kernel(const Matrix& m, const Ambient& ambient);

/// {v : <v, w> = 0 for all w in E} under the coordinate pairing. For a space
/// of linear forms this is the annihilator in the dual variables, so the
/// result lives on the other side.
Subspace annihilator(const Subspace& e);

}  // namespace dsum
