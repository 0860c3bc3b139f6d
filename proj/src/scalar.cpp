#include "dsum/scalar.hpp"

#include "dsum/error.hpp"

namespace dsum {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "syntax_error";
    case ErrorKind::NonHomogeneous: return "non_homogeneous";
    case ErrorKind::IndexOutOfRange: return "index_out_of_range";
    case ErrorKind::SideMismatch: return "side_mismatch";
    case ErrorKind::DegreeMismatch: return "degree_mismatch";
    case ErrorKind::FieldMismatch: return "field_mismatch";
    case ErrorKind::DivisionByZero: return "division_by_zero";
    case ErrorKind::SingularMatrix: return "singular_matrix";
    case ErrorKind::AmbientMismatch: return "ambient_mismatch";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::ZeroForm: return "zero_form";
    case ErrorKind::CharacteristicGuard: return "characteristic_guard";
    case ErrorKind::NotSmooth: return "not_smooth";
    case ErrorKind::KernelDimensionError: return "kernel_dimension_error";
    case ErrorKind::GuardExceeded: return "guard_exceeded";
    case ErrorKind::UnluckyEvaluationExhausted: return "unlucky_evaluation_exhausted";
    case ErrorKind::InternalInconsistency: return "internal_inconsistency";
    case ErrorKind::FieldExtensionRequired: return "field_extension_required";
    case ErrorKind::NotInFiber: return "not_in_fiber";
    case ErrorKind::SizeTooSmall: return "size_too_small";
    case ErrorKind::ShapeMismatch: return "shape_mismatch";
    case ErrorKind::AssumptionViolated: return "assumption_violated";
    case ErrorKind::SchemaError: return "schema_error";
  }
  return "unknown";
}

Scalar::Scalar(long long v) : q_(static_cast<long>(v)) {}

Scalar::Scalar(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }

Scalar Scalar::fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::modular(const Scalar& v, std::uint64_t p) {
  Scalar r = v;
  r.adopt_modulus(p);
  return r;
}

void Scalar::adopt_modulus(std::uint64_t p) {
  if (p == p_) return;
  if (p_ != 0 && p != 0) {
    throw Error(ErrorKind::FieldMismatch,
                "mixing residues modulo " + std::to_string(p_) + " and " +
                    std::to_string(p));
  }
  if (p == 0) return;  // residue stays residue
  p_ = p;
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  const mpz_class m(static_cast<unsigned long>(p_));
  mpz_class num = q_.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = q_.get_den() % m;
  if (den == 0) {
    throw Error(ErrorKind::CharacteristicGuard,
                "denominator divisible by the characteristic " +
                    std::to_string(p_));
  }
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    num = (num * inv) % m;
  }
  q_ = num;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.p_ != p_) {
    if (o.p_ == 0) return *this += modular(o, p_);
    adopt_modulus(o.p_);
  }
  q_ += o.q_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.p_ != p_) {
    if (o.p_ == 0) return *this -= modular(o, p_);
    adopt_modulus(o.p_);
  }
  q_ -= o.q_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.p_ != p_) {
    if (o.p_ == 0) return *this *= modular(o, p_);
    adopt_modulus(o.p_);
  }
  q_ *= o.q_;
  reduce();
  return *this;
}

void Scalar::sub_product(const Scalar& a, const Scalar& b) {
  if (p_ == 0 && a.p_ == 0 && b.p_ == 0) {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_sub(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
    return;
  }
  *this -= a * b;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.q_ = -r.q_;
  r.reduce();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  Scalar r;
  r.p_ = p_;
  if (p_ == 0) {
    r.q_ = 1 / q_;
    r.q_.canonicalize();
    return r;
  }
  const mpz_class m(static_cast<unsigned long>(p_));
  mpz_class inv;
  mpz_class num = q_.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
  r.q_ = inv;
  return r;
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result = Scalar::modular(Scalar(1), p_);
  Scalar base = *this;
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.q_ == b.q_;
  if (a.p_ == 0) return Scalar::modular(a, b.p_).q_ == b.q_;
  if (b.p_ == 0) return a.q_ == Scalar::modular(b, a.p_).q_;
  return false;
}

std::string Scalar::to_string() const { return q_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace dsum
