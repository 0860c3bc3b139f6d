#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsum/matrix.hpp"
#include "dsum/monomial.hpp"
#include "dsum/scalar.hpp"

namespace dsum {

/// Sparse multivariate polynomial with exact coefficients; terms are kept in
/// grevlex-descending order and zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Scalar, GrevlexGreater>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Scalar& c);
  static Poly variable(std::size_t nvars, std::size_t var);
  static Poly term(const Monomial& m, const Scalar& c);

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Field of the coefficients (0 for Q); taken from the first term.
  std::uint64_t modulus() const;

  void add_term(const Monomial& m, const Scalar& c);
  Scalar coefficient(const Monomial& m) const;

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Scalar& leading_coefficient() const { return terms_.begin()->second; }
  /// Maximum total degree; -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  int degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

Poly derivative(const Poly& p, std::size_t var);
Poly power(const Poly& p, unsigned e);
/// Replaces variable i by images[i] (all images share one variable count).
Poly compose(const Poly& p, const std::vector<Poly>& images);
/// Coefficients in the field F_p (p = 0 leaves p unchanged).
Poly in_field(const Poly& p, std::uint64_t modulus);
/// q with a = b * q, or nullopt when b does not divide a. b must be nonzero.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Which polynomial ring a form lives in: S = k[x1..xn] or D = k[z1..zn].
enum class Side { S, D };

char variable_letter(Side side);
Side dual_side(Side side);

/// A homogeneous polynomial tagged with its ring side and degree.
class Form {
 public:
  Form() = default;
  /// The zero form of the given degree.
  Form(std::size_t nvars, Side side, int degree);
  /// Validates homogeneity; a zero polynomial gets degree `degree_if_zero`.
  Form(Poly poly, Side side, int degree_if_zero = 0);

  std::size_t nvars() const noexcept { return poly_.nvars(); }
  Side side() const noexcept { return side_; }
  int degree() const noexcept { return degree_; }
  const Poly& poly() const noexcept { return poly_; }
  const Poly::Terms& terms() const noexcept { return poly_.terms(); }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  std::uint64_t modulus() const { return poly_.modulus(); }

  Scalar coefficient(const Monomial& m) const { return poly_.coefficient(m); }
  /// Coordinates in the grevlex monomial basis of its graded piece.
  std::vector<Scalar> coordinates(const MonomialBasis& basis) const;
  static Form from_coordinates(const MonomialBasis& basis,
                               std::span<const Scalar> coords, Side side);

  /// Variables (0-based) that occur in some term.
  std::vector<std::size_t> support() const;

  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

 private:
  Poly poly_;
  Side side_ = Side::S;
  int degree_ = 0;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator*(const Form& a, const Form& b);
Form operator*(const Scalar& c, const Form& f);
Form scale(const Form& f, const Scalar& c);

/// d f / d var, var 0-based.
Form partial_derivative(const Form& f, std::size_t var);
std::vector<Form> gradient(const Form& f);

/// g o F = g(d/dz1, ..., d/dzn) F for g on the S-side and F on the D-side.
Form polar_apply(const Form& g, const Form& F);
/// F(d/dx1, ..., d/dxn) f for F on the D-side and f on the S-side.
Form apply_dual(const Form& F, const Form& f);

/// Forms promoted into F_p.
Form in_field(const Form& f, std::uint64_t modulus);

/// Scale so the grevlex-leading coefficient is 1; returns the removed factor
/// (f = factor * normalized).
std::pair<Form, Scalar> normalize_leading(const Form& f);

/// An invertible n x n matrix whose column j holds the old-coordinate
/// expression of the new basis vector b_j of V.
class LinearChange {
 public:
  LinearChange() = default;
  explicit LinearChange(Matrix columns);

  static LinearChange identity(std::size_t n);

  std::size_t size() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  std::vector<Scalar> basis_vector(std::size_t j) const { return m_.column_vector(j); }
  LinearChange inverse() const;
  /// The basis whose vectors have coordinates `inner` relative to this one.
  LinearChange refined_by(const LinearChange& inner) const;

  friend bool operator==(const LinearChange& a, const LinearChange& b) {
    return a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Plain substitution: g(y) = f(M y), i.e. x_i -> sum_j M(i,j) y_j.
Form substitute_raw(const Form& f, const Matrix& m);

/// f rewritten in the basis b_1..b_n of V given by the columns of `basis`:
/// returns g with g(b_1, ..., b_n) = f(x_1, ..., x_n). Equivalently
/// g(y) = f(B^{-T} y).
Form substitute_linear(const Form& f, const LinearChange& basis);

/// The n basis vectors of `basis`, each as a linear form in the old
/// variables of the given side.
std::vector<Form> basis_vectors_as_forms(const LinearChange& basis, Side side);

}  // namespace dsum
