#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "dsum/polynomial.hpp"

namespace dsum {

/// Parses a homogeneous form such as "x1^3 + 3*x1^2*x2" or "1/2*z1*z2^2".
/// Variables must use the letter of `side` with 1-based indices in 1..n.
/// Coefficients are promoted into F_p when `modulus` is nonzero.
Form parse_form(std::string_view text, std::size_t n, Side side,
                std::uint64_t modulus = 0);

/// Largest variable index occurring in `text` (0 when there is none).
/// Throws SyntaxError for malformed input.
std::size_t max_variable_index(std::string_view text, Side side);

/// Canonical text: terms in grevlex-descending order, e.g.
/// "-z1^3 + z1^2*z2 + 1/2*z1*z2^2". The zero form prints as "0".
std::string print_form(const Form& f);
std::string print_poly(const Poly& p, Side side);

}  // namespace dsum
