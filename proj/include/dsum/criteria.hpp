#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dsum/factor.hpp"
#include "dsum/polynomial.hpp"
#include "dsum/random.hpp"

namespace dsum {

/// The state of a form: exponent vectors of its monomials with nonzero
/// coefficient.
struct StateSet {
  int degree = 0;
  std::set<std::vector<int>> members;
};

StateSet state_of(const Form& f);

enum class CriterionResult { NotDirectSum, Inconclusive };

struct CriterionVerdict {
  CriterionResult result = CriterionResult::Inconclusive;
  std::string reason;
};

const char* criterion_result_name(CriterionResult r);

/// Repeated-factor and small-factor test. Over F_p it only runs when
/// p > 2 deg(f)^2. Throws GuardExceeded when f cannot be factored.
CriterionVerdict factor_criterion(const Form& f, std::uint64_t seed = kDefaultSeed,
                                  const FactorGuards& guards = {});

/// Monomial-support test: nonzero partials with pairwise disjoint states,
/// recoverable state, and a connected second-partial graph.
CriterionVerdict state_criterion(const Form& f);

enum class StructuredKind { Determinant, Permanent, Pfaffian };

const char* structured_kind_name(StructuredKind k);

/// Generic-support determinant, permanent (m^2 variables, row-major x_{i,j})
/// or pfaffian (C(2m,2) variables x_{i,j}, i < j, lexicographic) of size m,
/// with seeded nonzero rational coefficients or all coefficients 1 (with the
/// usual signs for the determinant and pfaffian). Throws SizeTooSmall for m < 3.
Form gen_structured(StructuredKind kind, std::size_t m, std::uint64_t seed = kDefaultSeed,
                    bool unit_coefficients = false);

/// sum_{i <= ell} x_i * dH/dx_{ell+i} + G, with H a form in x_{ell+1..2 ell}
/// and G a form of the same degree in x_{ell+1..n}.
Form gen_lds(const Form& H, const Form& G, std::size_t ell);

/// gen_lds with random H and G of the given degree.
Form random_lds(std::size_t n, int degree, std::size_t ell, std::uint64_t seed);

}  // namespace dsum
