#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsum/apolarity.hpp"
#include "dsum/criteria.hpp"
#include "dsum/factor.hpp"
#include "dsum/polynomial.hpp"
#include "dsum/random.hpp"
#include "dsum/subspace.hpp"

namespace dsum {

enum class Verdict {
  DirectSum,
  NotDirectSum,
  DsOrLdsOverClosure,
  NotSmooth,
  NotConcise,
  AssumptionViolated,
};

/// snake_case name, e.g. "direct_sum".
const char* verdict_name(Verdict v);

/// A bipartition of the distinct irreducible factors of A(f) whose products
/// form a direct product.
struct ProductSplit {
  std::uint64_t mask = 0;            ///< bit i set: factor i goes to G1
  std::vector<std::size_t> group1;   ///< factor indices of G1
  std::vector<std::size_t> group2;
  Form G1, G2;
  Subspace E1, E2;
};

struct SplitWitness {
  ProductSplit split;
  std::size_t a = 0;     ///< dim E1: f1 lives in the first a new variables
  LinearChange basis;    ///< columns: new basis vectors in old coordinates
  Form f1, f2;           ///< substitute_linear(f, basis) = f1 + f2
};

/// All bipartitions (by increasing mask, factor 0 always in G1) with
/// E(G1) and E(G2) independent and spanning. Throws InternalInconsistency
/// when a kept split is unbalanced.
std::vector<ProductSplit> direct_product_splits(const FactorList& fl, std::size_t n);

/// Basis of V: the RREF rows of ann(E2) followed by those of ann(E1).
/// Throws DimensionMismatch unless E1 and E2 are independent and spanning.
LinearChange split_basis(const Subspace& E1, const Subspace& E2);

/// Splits g = substitute_linear(f, basis) along the first a variables, or
/// nullopt when some monomial mixes the two blocks.
std::optional<std::pair<Form, Form>> split_along(const Form& g, std::size_t a);

struct ClassifyOptions {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t max_ambient_dim = kDefaultMaxAmbientDim;
  FactorGuards guards{};
};

struct Summand {
  std::vector<std::size_t> block;  ///< new-variable indices (0-based)
  Form form;                       ///< in the new variables, leading coefficient 1
  Scalar scale;                    ///< actual summand = scale * form
  Form original;                   ///< scale * form in the old variables
};

struct MaximallyFine {
  LinearChange basis;
  std::vector<Summand> summands;
};

enum class BensonOutcome { Split, Proportional, LdsIndicator };

const char* benson_outcome_name(BensonOutcome o);

struct BensonResult {
  BensonOutcome outcome = BensonOutcome::Proportional;
  Matrix m;                                    ///< grad g = m * grad f
  Poly charpoly;                               ///< in one variable
  std::vector<Scalar> eigenvalues;             ///< distinct, in grouping order
  std::vector<std::vector<std::size_t>> partition;  ///< new-variable groups
  LinearChange basis;                          ///< eigenvector columns (Split)
};

/// Solves grad g = M grad f and reads off a split from the eigenspaces of M.
/// Throws FieldExtensionRequired for eigenvalues outside the field,
/// NotInFiber when <grad g> is not inside <grad f>, and AssumptionViolated
/// when f is not concise.
BensonResult benson_split(const Form& f, const Form& g);

struct DecompositionReport {
  Form input;
  std::size_t n = 0;
  int degree = 0;
  std::uint64_t modulus = 0;
  bool assumptions_ok = false;
  std::optional<bool> concise;
  std::optional<bool> smooth;
  std::optional<Form> associated_form;
  std::optional<FactorList> factors;
  std::vector<SplitWitness> splits;
  Verdict verdict = Verdict::AssumptionViolated;
  std::optional<std::size_t> fiber_dimension;
  std::optional<MaximallyFine> maximally_fine;
  CriterionVerdict mt3;
  CriterionVerdict mt4;
  std::optional<std::string> field_note;
  std::optional<BensonResult> benson;
  std::optional<std::string> benson_note;
  std::string note;
  std::uint64_t seed = kDefaultSeed;
  std::map<std::string, double> timings_ms;
};

/// Whether (n, deg f) satisfies n >= 2, deg f >= 3, and deg f >= 4 when n = 2.
bool shape_ok(std::size_t n, int degree);

/// One level of the algorithm: smoothness gate, A(f), factorization and the
/// verified split search. Throws AssumptionViolated, CharacteristicGuard and
/// GuardExceeded.
DecompositionReport decompose_once(const Form& f, const ClassifyOptions& opts = {});

/// The maximally fine decomposition of a smooth form: a single basis change
/// and summands on disjoint variable blocks, none of which is a direct sum
/// over the coefficient field.
MaximallyFine maximally_fine(const Form& f, const ClassifyOptions& opts = {});

/// Full pipeline with gates, fiber test, Benson attempt and criteria.
DecompositionReport classify(const Form& f, const ClassifyOptions& opts = {});

}  // namespace dsum
