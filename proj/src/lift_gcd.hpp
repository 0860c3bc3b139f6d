#pragma once

#include <optional>

#include "dsum/polynomial.hpp"

namespace dsum {

// Gcd of two homogeneous polynomials in at least three variables, lifted from
// a univariate image. nullopt when every evaluation tried was unlucky.
std::optional<Poly> lift_gcd(const Poly& a, const Poly& b);

}  // namespace dsum
