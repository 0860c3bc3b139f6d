#include "support.hpp"

#include "dsum/apolarity.hpp"

namespace dsum::test {

namespace {

struct Shape {
  std::size_t n;
  int degree;
  std::vector<std::size_t> blocks;
};

const std::vector<Shape>& shapes() {
  static const std::vector<Shape> s = {
      {2, 4, {1, 1}},    {2, 5, {1, 1}},    {3, 3, {1, 1, 1}}, {3, 4, {1, 2}},
      {3, 5, {1, 2}},    {3, 4, {1, 1, 1}}, {4, 3, {1, 3}},    {4, 4, {2, 2}},
      {4, 3, {1, 1, 1, 1}}, {4, 4, {1, 1, 2}},
  };
  return s;
}

Form block_form(std::size_t m, int degree, std::mt19937_64& rng) {
  for (;;) {
    Poly p(m);
    for (std::size_t i = 0; i < m; ++i) p.add_term(Monomial::unit(m, i, degree), Scalar(1));
    if (m >= 2) {
      const MonomialBasis mb(m, degree);
      for (int k = 0; k < 2; ++k) {
        const Monomial& mono = mb[rng() % mb.size()];
        long c = static_cast<long>(rng() % 2) + 1;
        if (rng() & 1U) c = -c;
        p.add_term(mono, Scalar(c));
      }
    }
    Form f(std::move(p), Side::S);
    if (m == 1) return f;
    // indecomposable even over the closure
    if (is_concise(f) && is_smooth(f) && gradient_fiber(f).dim() == 1) return f;
  }
}

}  // namespace

Matrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar(static_cast<long>(rng() % 5) - 2);
    if (!determinant(m).is_zero()) return m;
  }
}

Form random_dense_form(std::size_t n, int degree, std::mt19937_64& rng) {
  const MonomialBasis mb(n, degree);
  Poly p(n);
  for (const auto& m : mb.monomials()) p.add_term(m, Scalar(static_cast<long>(rng() % 7) - 3));
  if (p.is_zero()) p.add_term(mb[0], Scalar(1));
  return Form(std::move(p), Side::S);
}

std::vector<CorpusForm> direct_sum_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusForm> out;
  for (std::size_t k = 0; out.size() < count; ++k) {
    const Shape& sh = shapes()[k % shapes().size()];
    Poly sum(sh.n);
    std::size_t offset = 0;
    for (std::size_t m : sh.blocks) {
      const Form b = block_form(m, sh.degree, rng);
      for (const auto& [mono, c] : b.terms()) {
        Monomial e(sh.n);
        for (std::size_t i = 0; i < m; ++i) e[offset + i] = mono[i];
        sum.add_term(e, c);
      }
      offset += m;
    }
    const Form f0(std::move(sum), Side::S);
    const Form f = substitute_raw(f0, random_invertible(sh.n, rng));
    std::string label = "n" + std::to_string(sh.n) + "d" + std::to_string(sh.degree) + "[";
    for (std::size_t i = 0; i < sh.blocks.size(); ++i) label += (i ? "," : "") + std::to_string(sh.blocks[i]);
    out.push_back({f, label + "]#" + std::to_string(k), sh.blocks});
  }
  return out;
}

std::vector<CorpusForm> generic_corpus(std::size_t count, std::uint64_t seed) {
  static const std::vector<std::pair<std::size_t, int>> shapes = {
      {2, 4}, {2, 5}, {3, 3}, {3, 4}, {4, 3}};
  std::mt19937_64 rng(seed);
  std::vector<CorpusForm> out;
  for (std::size_t k = 0; out.size() < count; ++k) {
    const auto [n, d] = shapes[k % shapes.size()];
    const Form f = random_dense_form(n, d, rng);
    if (!is_concise(f) || !is_smooth(f)) continue;
    out.push_back({f, "generic n" + std::to_string(n) + "d" + std::to_string(d) + "#" + std::to_string(k), {n}});
  }
  return out;
}

}  // namespace dsum::test
