#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dsum/parse.hpp"
#include "dsum/polynomial.hpp"

namespace dsum::test {

inline Form S(const std::string& text, std::size_t n, std::uint64_t p = 0) {
  return parse_form(text, n, Side::S, p);
}

inline Form D(const std::string& text, std::size_t n, std::uint64_t p = 0) {
  return parse_form(text, n, Side::D, p);
}

/// a = c * b for some nonzero scalar c.
inline bool proportional(const Form& a, const Form& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.nvars() != b.nvars() || a.side() != b.side() || a.terms().size() != b.terms().size()) {
    return false;
  }
  const Scalar c = a.poly().leading_coefficient() / b.poly().leading_coefficient();
  return a == scale(b, c);
}

inline std::string data_path(const std::string& name) { return std::string(DSUM_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream f(data_path(name));
  std::stringstream ss;
  ss << f.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

inline nlohmann::json oracles() { return nlohmann::json::parse(read_data("oracles.json")); }

/// Random invertible integer matrix with entries in [-2, 2].
Matrix random_invertible(std::size_t n, std::mt19937_64& rng);

/// Random form with every monomial present and coefficients in [-3, 3].
Form random_dense_form(std::size_t n, int degree, std::mt19937_64& rng);

struct CorpusForm {
  Form f;
  std::string label;
  std::vector<std::size_t> blocks;  ///< block sizes before mixing
};

/// Smooth direct sums: perturbed Fermat blocks (each checked smooth, with a
/// one-dimensional gradient fiber), mixed
/// by a random invertible change of variables. n <= 4, degree <= 5.
std::vector<CorpusForm> direct_sum_corpus(std::size_t count = 20, std::uint64_t seed = 0xC0FFEE);

/// Smooth forms with generic dense coefficients.
std::vector<CorpusForm> generic_corpus(std::size_t count = 20, std::uint64_t seed = 0xBEEF);

}  // namespace dsum::test
