#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dsum/polynomial.hpp"
#include "dsum/random.hpp"
#include "dsum/subspace.hpp"

namespace dsum {

struct FactorGuards {
  std::size_t max_vars = 6;
  int max_degree = 24;
};

struct Factor {
  Form poly;  ///< irreducible; primitive with positive leading coefficient over Q, monic over F_p
  int multiplicity = 1;
  Subspace essential;  ///< E(poly)
};

/// unit * prod poly^multiplicity equals the factored form exactly.
struct FactorList {
  Scalar unit;
  std::vector<Factor> factors;

  Form expand() const;
};

struct PolyFactor {
  Poly poly;
  int multiplicity = 1;
};

struct UnivariateFactorization {
  Scalar unit;
  std::vector<PolyFactor> factors;
};

/// Polynomial gcd over the coefficient field, normalized like factors.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Rescales p to integer coefficients with gcd 1 and positive leading
/// coefficient over Q, or to a monic polynomial over F_p.
Poly normalize_poly(const Poly& p);

/// F = c * prod P_i^i with the P_i squarefree and pairwise coprime; only the
/// nonconstant P_i are returned, each normalized.
std::vector<std::pair<Form, int>> squarefree_decomposition(const Form& F);

/// Irreducible factorization of a polynomial involving at most one variable.
UnivariateFactorization factor_univariate(const Poly& p, std::uint64_t seed = kDefaultSeed);

/// Irreducible factorization of a nonzero form over its coefficient field,
/// checked by expansion. Factors are sorted by degree, then by terms in
/// grevlex-descending order.
FactorList factor_multivariate(const Form& F, std::uint64_t seed = kDefaultSeed,
                               const FactorGuards& guards = {});

}  // namespace dsum
