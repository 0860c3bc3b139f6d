#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dsum/polynomial.hpp"
#include "dsum/subspace.hpp"

namespace dsum {

/// Default ceiling on dim D_{n(d-1)} for associated-form computations.
inline constexpr std::uint64_t kDefaultMaxAmbientDim = 100000;

/// Throws CharacteristicGuard unless p = 0, or p > n(d-1) and p > d+1 for a
/// form of degree d+1 in n variables.
void check_characteristic(std::size_t n, int degree, std::uint64_t p);

/// Rows spanning the degree-e piece of the ideal generated by `gens`:
/// every m * g with m a monomial of degree e - deg g.
Matrix ideal_piece_generators(const std::vector<Form>& gens, int e);

/// Degree-e piece of the ideal generated by the S-forms `gens`.
Subspace graded_ideal_piece(const std::vector<Form>& gens, int e);

struct GradientPoint {
  std::vector<Form> partials;
  Subspace span;  ///< <grad f> inside S_{deg f - 1}
};

GradientPoint gradient_point(const Form& f);

/// dim <grad f> == n. Throws ZeroForm for f = 0.
bool is_concise(const Form& f);
bool is_concise(const Form& f, GradientPoint& point);

/// Codimension of the degree-e piece of a complete intersection of n forms
/// of degree d: the coefficient of T^e in ((1 - T^d) / (1 - T))^n.
std::uint64_t complete_intersection_codim(std::size_t n, int d, int e);

/// Whether the partials of f generate all of S_{n(d-1)+1}, d+1 = deg f.
/// Requires n >= 2 and deg f >= 2.
bool is_smooth(const Form& f, std::uint64_t max_ambient_dim = kDefaultMaxAmbientDim);

/// The normalized associated form: spans the annihilator of (J_f)_{n(d-1)}
/// in D_{n(d-1)}, scaled so its grevlex-leading coefficient is 1.
/// Throws NotSmooth when f is singular and KernelDimensionError when the
/// annihilator is not a line.
Form associated_form(const Form& f, std::uint64_t max_ambient_dim = kDefaultMaxAmbientDim);

/// Span of the order-(deg F - 1) partials of F, as linear forms on the
/// side of F. Computed as the annihilator of the degree-1 apolar piece.
Subspace essential_space(const Form& F);

/// Kernel of the catalecticant D_e -> S_{deg f - e}, F -> F o f.
Subspace apolar_graded_piece(const Form& f, int e);

/// Whether the apolar ideal of f has a minimal generator in degree deg f,
/// i.e. D_1 * I_{deg f - 1} is a proper subspace of I_{deg f}.
bool has_topdegree_minimal_generator(const Form& f);

/// All g of degree deg f with <grad g> contained in <grad f>.
Subspace gradient_fiber(const Form& f);

}  // namespace dsum
