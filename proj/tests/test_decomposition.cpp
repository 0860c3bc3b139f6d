#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dsum/decomposition.hpp"
#include "dsum/error.hpp"
#include "support.hpp"

using namespace dsum;
using dsum::test::D;
using dsum::test::proportional;
using dsum::test::S;

namespace {

Subspace dual_span(std::size_t n, const std::vector<std::string>& texts) {
  std::vector<Form> forms;
  for (const auto& t : texts) forms.push_back(D(t, n));
  return Subspace::span(Ambient::graded(Side::D, n, 1), forms);
}

// a form in the new variables that involves exactly one of them
bool is_power_of_linear(const Form& f) {
  std::size_t involved = 0;
  for (std::size_t v = 0; v < f.nvars(); ++v) involved += f.poly().involves(v);
  return involved == 1;
}

void expect_witness_valid(const Form& f, const SplitWitness& w) {
  const Form g = substitute_linear(f, w.basis);
  EXPECT_EQ(g, w.f1 + w.f2);
  for (auto v : w.f1.support()) EXPECT_LT(v, w.a);
  for (auto v : w.f2.support()) EXPECT_GE(v, w.a);
  EXPECT_TRUE(w.split.E1.intersect(w.split.E2).dim() == 0);
  EXPECT_EQ(w.split.E1.dim() + w.split.E2.dim(), f.nvars());
  const long long n = static_cast<long long>(f.nvars());
  const long long a = static_cast<long long>(w.a);
  EXPECT_EQ((n - a) * w.split.G1.degree(), a * w.split.G2.degree());
}

std::multiset<std::size_t> block_sizes(const MaximallyFine& mf) {
  std::multiset<std::size_t> out;
  for (const auto& s : mf.summands) out.insert(s.block.size());
  return out;
}

Form fermat_block_sum(const Form& f, const MaximallyFine& mf) {
  Form sum(f.nvars(), Side::S, f.degree());
  for (const auto& s : mf.summands) sum = sum + s.original;
  return sum;
}

}  // namespace

TEST(DirectProductSplits, Examples) {
  const FactorList fermat = factor_multivariate(associated_form(S("x1^3 + x2^3 + x3^3", 3)));
  const auto splits = direct_product_splits(fermat, 3);
  ASSERT_EQ(splits.size(), 3u);
  std::set<std::string> singles;
  for (const auto& s : splits) {
    ASSERT_TRUE(s.G1.degree() == 1 || s.G2.degree() == 1);
    singles.insert(print_form(s.G1.degree() == 1 ? s.G1 : s.G2));
    EXPECT_NE(s.mask & 1u, 0u);
  }
  EXPECT_EQ(singles, (std::set<std::string>{"z1", "z2", "z3"}));

  EXPECT_TRUE(direct_product_splits(factor_multivariate(D("z1^4 + 2*z1^2*z2^2 + z2^4", 2)), 2).empty());

  const Form intro = S(dsum::test::read_data("intro_cubic.txt"), 3);
  const auto one = direct_product_splits(factor_multivariate(associated_form(intro)), 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].G1, D("z1", 3));
  EXPECT_EQ(one[0].G2.degree(), 2);
  EXPECT_EQ(one[0].E2, dual_span(3, {"z2 - z1", "z3 - z1"}));
}

TEST(SplitBasis, Examples) {
  EXPECT_EQ(split_basis(dual_span(2, {"z1"}), dual_span(2, {"z2"})), LinearChange::identity(2));

  const LinearChange intro = split_basis(dual_span(3, {"z1"}), dual_span(3, {"z2 - z1", "z3 - z1"}));
  const auto vecs = basis_vectors_as_forms(intro, Side::S);
  ASSERT_EQ(vecs.size(), 3u);
  EXPECT_TRUE(proportional(vecs[0], S("x1 + x2 + x3", 3)));
  EXPECT_TRUE(proportional(vecs[1], S("x2", 3)));
  EXPECT_TRUE(proportional(vecs[2], S("x3", 3)));

  const auto pm = basis_vectors_as_forms(split_basis(dual_span(2, {"z1 + z2"}), dual_span(2, {"z1 - z2"})), Side::S);
  EXPECT_TRUE(proportional(pm[0], S("x1 + x2", 2)));
  EXPECT_TRUE(proportional(pm[1], S("x1 - x2", 2)));
}

TEST(SplitBasis, DimensionMismatch) {
  for (const auto& [a, b] : std::vector<std::pair<Subspace, Subspace>>{
           {dual_span(2, {"z1"}), dual_span(2, {"z1"})},
           {dual_span(3, {"z1"}), dual_span(3, {"z2"})}}) {
    try {
      split_basis(a, b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
  }
}

TEST(SplitAlong, Examples) {
  const auto ok = split_along(S("x1^3 + x2^3 + x2*x3^2", 3), 1);
  ASSERT_TRUE(ok.has_value());
  EXPECT_EQ(ok->first, S("x1^3", 3));
  EXPECT_EQ(ok->second, S("x2^3 + x2*x3^2", 3));
  EXPECT_FALSE(split_along(S("x1^3 + x1*x2^2", 2), 1).has_value());
}

TEST(DecomposeOnce, BinaryQuartics) {
  const Form f6 = S("x1^4 + x2^4 + 6*x1^2*x2^2", 2);
  const DecompositionReport six = decompose_once(f6);
  EXPECT_EQ(six.verdict, Verdict::DirectSum);
  ASSERT_FALSE(six.splits.empty());
  for (const auto& w : six.splits) {
    expect_witness_valid(f6, w);
    EXPECT_TRUE(is_power_of_linear(w.f1));
    EXPECT_TRUE(is_power_of_linear(w.f2));
  }
  const auto vecs = basis_vectors_as_forms(six.splits[0].basis, Side::S);
  std::set<std::string> lines;
  for (const auto& v : vecs) lines.insert(print_form(normalize_leading(v).first));
  EXPECT_EQ(lines, (std::set<std::string>{"x1 + x2", "x1 - x2"}));

  const DecompositionReport minus = decompose_once(S("x1^4 + x2^4 - 6*x1^2*x2^2", 2));
  EXPECT_EQ(minus.verdict, Verdict::NotDirectSum);
  EXPECT_TRUE(minus.splits.empty());
}

TEST(DecomposeOnce, IntroCubic) {
  const Form f = S(dsum::test::read_data("intro_cubic.txt"), 3);
  const DecompositionReport rep = decompose_once(f);
  EXPECT_EQ(rep.verdict, Verdict::DirectSum);
  ASSERT_EQ(rep.splits.size(), 1u);
  const SplitWitness& w = rep.splits[0];
  expect_witness_valid(f, w);
  const auto vecs = basis_vectors_as_forms(w.basis, Side::S);
  EXPECT_TRUE(proportional(vecs[0], S("x1 + x2 + x3", 3)));
  EXPECT_TRUE(proportional(vecs[1], S("x2", 3)));
  EXPECT_TRUE(proportional(vecs[2], S("x3", 3)));
  EXPECT_TRUE(proportional(w.f1, S("x1^3", 3)));
  EXPECT_TRUE(proportional(w.f2, S("x2^3 + x2^2*x3 + x2*x3^2 + x3^3", 3)));
}

TEST(DecomposeOnce, AssumptionsAndGates) {
  EXPECT_FALSE(shape_ok(2, 3));
  EXPECT_TRUE(shape_ok(2, 4));
  EXPECT_TRUE(shape_ok(3, 3));
  EXPECT_FALSE(shape_ok(1, 5));
  try {
    decompose_once(S("x1^3 + x2^3", 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AssumptionViolated);
  }
  EXPECT_EQ(decompose_once(S("x1^4 + 2*x1^2*x2^2 + x2^4", 2)).verdict, Verdict::NotSmooth);
}

TEST(MaximallyFine, Examples) {
  const Form fermat = S("x1^4 + x2^4 + x3^4", 3);
  const MaximallyFine a = maximally_fine(fermat);
  EXPECT_EQ(a.summands.size(), 3u);
  for (const auto& s : a.summands) EXPECT_TRUE(is_power_of_linear(s.form));
  EXPECT_EQ(fermat_block_sum(fermat, a), fermat);

  const Form t1 = S("x1^4 + x2^4 + x1^2*x2^2", 2);
  const MaximallyFine b = maximally_fine(t1);
  ASSERT_EQ(b.summands.size(), 1u);
  EXPECT_TRUE(proportional(b.summands[0].original, t1));

  const Form random = S(dsum::test::read_data("random_quartic.txt"), 4);
  const MaximallyFine c = maximally_fine(random);
  EXPECT_EQ(block_sizes(c), (std::multiset<std::size_t>{1, 3}));
  EXPECT_EQ(fermat_block_sum(random, c), random);
  for (const auto& s : c.summands) EXPECT_EQ(s.form.poly().leading_coefficient(), Scalar(1));
}

TEST(MaximallyFine, SummandsReassemble) {
  for (const auto& c : dsum::test::direct_sum_corpus(8)) {
    const MaximallyFine mf = maximally_fine(c.f);
    EXPECT_EQ(mf.summands.size(), c.blocks.size()) << c.label;
    EXPECT_EQ(mf.summands.size(), gradient_fiber(c.f).dim()) << c.label;
    EXPECT_EQ(fermat_block_sum(c.f, mf), c.f) << c.label;
    Form in_new(c.f.nvars(), Side::S, c.f.degree());
    for (const auto& s : mf.summands) in_new = in_new + scale(s.form, s.scale);
    EXPECT_EQ(substitute_linear(c.f, mf.basis), in_new) << c.label;
  }
}

TEST(Benson, Examples) {
  const Form f = S("x1^4 + x2^4", 2);
  const BensonResult r = benson_split(f, S("x1^4", 2));
  EXPECT_EQ(r.outcome, BensonOutcome::Split);
  EXPECT_EQ(r.m, (Matrix{{1, 0}, {0, 0}}));
  ASSERT_EQ(r.partition.size(), 2u);
  EXPECT_EQ(r.partition[0].size(), 1u);
  EXPECT_EQ(r.partition[1].size(), 1u);
  EXPECT_TRUE(split_along(substitute_linear(f, r.basis), 1).has_value());

  const BensonResult id = benson_split(f, f);
  EXPECT_EQ(id.outcome, BensonOutcome::Proportional);
  EXPECT_EQ(id.m, Matrix::identity(2));
}

TEST(Benson, LdsIndicator) {
  const Form f = gen_lds(S("x2^4", 2), S("x2^4", 2), 1);
  const BensonResult r = benson_split(f, S("x2^4", 2));
  EXPECT_EQ(r.outcome, BensonOutcome::LdsIndicator);
  EXPECT_EQ(r.m, (Matrix{{0, 0}, {1, 0}}));
}

TEST(Benson, Errors) {
  const auto kind = [](const Form& f, const Form& g) {
    try {
      benson_split(f, g);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalInconsistency;
  };
  EXPECT_EQ(kind(S("x1^4 + x2^4", 2), S("x1^3*x2", 2)), ErrorKind::NotInFiber);
  EXPECT_EQ(kind(S("x1^4", 2), S("x1^4", 2)), ErrorKind::AssumptionViolated);
  // M = [[0, -1/4], [1/4, 0]]
  const Form f = S("x1^4 - 6*x1^2*x2^2 + x2^4", 2);
  const Form g = S("x1^3*x2 - x1*x2^3", 2);
  EXPECT_EQ(kind(f, g), ErrorKind::FieldExtensionRequired);
}

TEST(Classify, Examples) {
  const DecompositionReport six = classify(S("x1^4 + x2^4 + 6*x1^2*x2^2", 2));
  EXPECT_EQ(six.verdict, Verdict::DirectSum);
  ASSERT_TRUE(six.maximally_fine.has_value());
  EXPECT_EQ(six.maximally_fine->summands.size(), 2u);

  const DecompositionReport lds = classify(S("4*x1*x2^3 + x2^4", 2));
  EXPECT_EQ(lds.verdict, Verdict::DsOrLdsOverClosure);
  ASSERT_TRUE(lds.fiber_dimension.has_value());
  EXPECT_GE(*lds.fiber_dimension, 2u);
  ASSERT_TRUE(lds.benson.has_value());
  EXPECT_EQ(lds.benson->outcome, BensonOutcome::LdsIndicator);

  const DecompositionReport det = classify(gen_structured(StructuredKind::Determinant, 3, 5));
  EXPECT_EQ(det.verdict, Verdict::NotSmooth);
  EXPECT_EQ(det.mt4.result, CriterionResult::NotDirectSum);
}

TEST(Classify, GatesAndNotes) {
  EXPECT_EQ(classify(S("x1^3 + x2^3", 2)).verdict, Verdict::AssumptionViolated);
  EXPECT_EQ(classify(S("x1^3 + x2^3", 3)).verdict, Verdict::NotConcise);
  const DecompositionReport minus = classify(S("x1^4 + x2^4 - 6*x1^2*x2^2", 2));
  EXPECT_EQ(minus.verdict, Verdict::NotDirectSum);
  EXPECT_TRUE(minus.field_note.has_value());
  EXPECT_FALSE(classify(S("x1^4 + x2^4 + x1^2*x2^2", 2)).field_note.has_value());
  try {
    classify(Form(3, Side::S, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroForm);
  }
}

TEST(Classify, InvariantUnderBasisChange) {
  std::mt19937_64 rng(31);
  for (const auto& c : dsum::test::direct_sum_corpus(6)) {
    const DecompositionReport base = classify(c.f);
    ASSERT_TRUE(base.maximally_fine.has_value()) << c.label;
    const auto sizes = block_sizes(*base.maximally_fine);
    for (int t = 0; t < 2; ++t) {
      const Form g = substitute_raw(c.f, dsum::test::random_invertible(c.f.nvars(), rng));
      const DecompositionReport rep = classify(g);
      EXPECT_EQ(rep.verdict, Verdict::DirectSum) << c.label;
      for (const auto& w : rep.splits) expect_witness_valid(g, w);
      ASSERT_TRUE(rep.maximally_fine.has_value());
      EXPECT_EQ(block_sizes(*rep.maximally_fine), sizes) << c.label;
    }
  }
}

TEST(Classify, DeterministicForSeed) {
  const Form f = S(dsum::test::read_data("random_quartic.txt"), 4);
  const DecompositionReport a = classify(f);
  const DecompositionReport b = classify(f);
  ASSERT_EQ(a.splits.size(), b.splits.size());
  for (std::size_t i = 0; i < a.splits.size(); ++i) {
    EXPECT_EQ(a.splits[i].basis, b.splits[i].basis);
    EXPECT_EQ(a.splits[i].f1, b.splits[i].f1);
  }
}
