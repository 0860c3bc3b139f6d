#include "dsum/parse.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "dsum/error.hpp"

namespace dsum {

namespace {

struct RawTerm {
  Scalar coef;
  std::map<std::size_t, int> powers;  // 1-based variable index -> exponent
};

class Parser {
 public:
  Parser(std::string_view text, char letter) : text_(text), letter_(letter) {}

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "empty polynomial");
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    for (;;) {
      RawTerm t = term();
      if (negative) t.coef = -t.coef;
      terms.push_back(std::move(t));
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') {
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
      }
      negative = c == '-';
      ++pos_;
    }
    return terms;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  mpz_class natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected a number");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<Scalar> coefficient() {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expected a term");
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
      skip_ws();
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      if (negative) throw SyntaxError(pos_, "expected a number after '-'");
      return std::nullopt;
    }
    mpz_class num = natural();
    mpz_class den = 1;
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      const std::size_t at = pos_;
      den = natural();
      if (den == 0) throw SyntaxError(at, "zero denominator");
    }
    if (negative) num = -num;
    return Scalar::fraction(num, den);
  }

  void factor(RawTerm& t) {
    skip_ws();
    if (at_end()) throw SyntaxError(pos_, "expected a variable");
    const char c = peek();
    if (c != 'x' && c != 'z') {
      throw SyntaxError(pos_, std::string("expected a variable, found '") + c + "'");
    }
    if (c != letter_) {
      throw SyntaxError(pos_, std::string("variable '") + c + "' does not match the ring (expected '" +
                                  letter_ + "')");
    }
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw SyntaxError(pos_, "expected a variable index");
    }
    const std::size_t at = pos_;
    const mpz_class idx = natural();
    if (idx == 0 || !idx.fits_ulong_p()) throw SyntaxError(at, "variable index must be positive");
    int e = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      const std::size_t eat = pos_;
      const mpz_class ez = natural();
      if (!ez.fits_sint_p() || ez > 1000000) throw SyntaxError(eat, "exponent too large");
      e = static_cast<int>(ez.get_si());
    }
    t.powers[idx.get_ui()] += e;
  }

  RawTerm term() {
    RawTerm t{Scalar(1), {}};
    if (auto c = coefficient()) {
      t.coef = *c;
      skip_ws();
      if (at_end() || peek() != '*') return t;
      ++pos_;
    }
    factor(t);
    for (;;) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      factor(t);
    }
    return t;
  }

  std::string_view text_;
  char letter_;
  std::size_t pos_ = 0;
};

}  // namespace

std::size_t max_variable_index(std::string_view text, Side side) {
  std::size_t best = 0;
  for (const auto& t : Parser(text, variable_letter(side)).parse())
    for (const auto& [idx, e] : t.powers) best = std::max(best, idx);
  return best;
}

Form parse_form(std::string_view text, std::size_t n, Side side, std::uint64_t modulus) {
  const auto raw = Parser(text, variable_letter(side)).parse();
  Poly p(n);
  std::optional<int> first_degree;
  for (const auto& t : raw) {
    Monomial m(n);
    for (const auto& [idx, e] : t.powers) {
      if (idx > n) {
        throw Error(ErrorKind::IndexOutOfRange,
                    std::string(1, variable_letter(side)) + std::to_string(idx) +
                        " exceeds n = " + std::to_string(n));
      }
      m[idx - 1] += e;
    }
    // homogeneity is judged on the written terms, before cancellation
    const int deg = m.degree();
    if (!first_degree) {
      first_degree = deg;
    } else if (*first_degree != deg) {
      throw Error(ErrorKind::NonHomogeneous, "polynomial mixes degrees " +
                                                 std::to_string(*first_degree) + " and " +
                                                 std::to_string(deg));
    }
    p.add_term(m, modulus ? Scalar::modular(t.coef, modulus) : t.coef);
  }
  return Form(std::move(p), side, first_degree.value_or(0));
}

std::string print_poly(const Poly& p, Side side) {
  if (p.is_zero()) return "0";
  const char letter = variable_letter(side);
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool rational_negative = c.is_rational() && sgn(c.value()) < 0;
    const Scalar mag = rational_negative ? -c : c;
    if (first) {
      if (rational_negative) os << '-';
    } else {
      os << (rational_negative ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (m.degree() == 0 || !mag.is_one()) {
      os << mag.to_string();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << '*';
      os << letter << (i + 1);
      if (m[i] > 1) os << '^' << m[i];
      need_star = true;
    }
  }
  return os.str();
}

std::string print_form(const Form& f) { return print_poly(f.poly(), f.side()); }

}  // namespace dsum
