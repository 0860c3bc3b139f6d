#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace dsum {

/// Exponent vector of a monomial in n variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, int power = 1);

  std::size_t nvars() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int degree() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Exponent-wise difference; caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

 private:
  std::vector<int> exps_;
};

/// Graded reverse lexicographic order: true iff a > b.
/// Higher total degree wins; on ties, a > b when the last nonzero entry of
/// a - b is negative.
bool grevlex_greater(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_greater(a, b);
  }
};

/// All monomials of total degree `degree` in `nvars` variables, sorted
/// grevlex-descending (x1^degree first), with a reverse index.
class MonomialBasis {
 public:
  MonomialBasis(std::size_t nvars, int degree);

  std::size_t nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  /// Position of m, or size() if m is not in this basis.
  std::size_t index_of(const Monomial& m) const;

 private:
  std::size_t nvars_;
  int degree_;
  std::vector<Monomial> monomials_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// C(degree + nvars - 1, nvars - 1), saturating at UINT64_MAX.
std::uint64_t count_monomials(std::size_t nvars, int degree);

}  // namespace dsum
