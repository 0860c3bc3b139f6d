#include "dsum/monomial.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace dsum {

Monomial Monomial::unit(std::size_t nvars, std::size_t var, int power) {
  Monomial m(nvars);
  m.exps_[var] = power;
  return m;
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

namespace {

void enumerate(std::size_t var, int remaining, std::vector<int>& cur,
               std::vector<Monomial>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[var] = e;
    enumerate(var + 1, remaining - e, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t nvars, int degree)
    : nvars_(nvars), degree_(degree) {
  if (degree < 0) return;
  if (nvars == 0) {
    if (degree == 0) monomials_.emplace_back(std::vector<int>{});
  } else {
    std::vector<int> cur(nvars, 0);
    enumerate(0, degree, cur, monomials_);
  }
  std::sort(monomials_.begin(), monomials_.end(), grevlex_greater);
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    index_.emplace(monomials_[i].exponents(), i);
  }
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
  auto it = index_.find(m.exponents());
  return it == index_.end() ? monomials_.size() : it->second;
}

std::uint64_t count_monomials(std::size_t nvars, int degree) {
  if (degree < 0) return 0;
  if (nvars == 0) return degree == 0 ? 1 : 0;
  // C(degree + nvars - 1, nvars - 1) computed incrementally
  unsigned __int128 c = 1;
  const std::uint64_t k = nvars - 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (static_cast<std::uint64_t>(degree) + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace dsum
