#include "lpa/scalar.hpp"

#include <cstdlib>
#include <ostream>

#include "lpa/error.hpp"

namespace lpa {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

mpz_class mod_p(const mpz_class& v) {
  mpz_class p(static_cast<unsigned long>(FieldMode::prime()));
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

void FieldMode::set_rational() { prime_ = 0; }

void FieldMode::set_prime(std::uint64_t p) {
  if (!is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
  prime_ = p;
}

void FieldMode::set_from_string(std::string_view spec) {
  if (spec == "rational" || spec == "Q") {
    set_rational();
    return;
  }
  if (spec.substr(0, 3) == "fp:") {
    std::string digits(spec.substr(3));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("bad field spec '" + std::string(spec) + "'");
    }
    set_prime(std::stoull(digits));
    return;
  }
  throw Error("bad field spec '" + std::string(spec) + "' (expected rational or fp:<prime>)");
}

void FieldMode::init_from_env() {
  if (const char* env = std::getenv("LPA_FIELD"); env != nullptr && *env != '\0') {
    set_from_string(env);
  }
}

std::string FieldMode::describe() {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(prime_);
}

Scalar::Scalar(long v) : value_(v) { reduce(); }

Scalar::Scalar(mpq_class v) : value_(std::move(v)) {
  value_.canonicalize();
  reduce();
}

Scalar Scalar::fraction(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error("zero denominator");
  if (FieldMode::is_rational()) return Scalar(mpq_class(num, den));
  Scalar n{mpq_class(num)};
  Scalar d{mpq_class(den)};
  if (d.is_zero()) throw Error("denominator vanishes in " + FieldMode::describe());
  return n / d;
}

Scalar Scalar::parse(std::string_view literal) {
  auto slash = literal.find('/');
  auto to_z = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw Error("bad numeric literal '" + std::string(literal) + "'");
    }
    return mpz_class(std::string(s));
  };
  if (slash == std::string_view::npos) return Scalar(mpq_class(to_z(literal)));
  return fraction(to_z(literal.substr(0, slash)), to_z(literal.substr(slash + 1)));
}

void Scalar::reduce() {
  if (FieldMode::is_rational()) return;
  if (value_.get_den() != 1) {
    // Only reachable through the mpq constructor; map num/den into F_p.
    mpz_class num = mod_p(value_.get_num());
    mpz_class den = mod_p(value_.get_den());
    mpz_class p(static_cast<unsigned long>(FieldMode::prime()));
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
      throw Error("denominator vanishes in " + FieldMode::describe());
    }
    value_ = mpq_class(mod_p(num * inv));
    return;
  }
  value_ = mpq_class(mod_p(value_.get_num()));
}

Scalar Scalar::operator-() const {
  Scalar r;
  r.value_ = -value_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  value_ += o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  value_ -= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  value_ *= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  if (FieldMode::is_rational()) return Scalar(1 / value_);
  mpz_class p(static_cast<unsigned long>(FieldMode::prime()));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), p.get_mpz_t());
  Scalar r;
  r.value_ = mpq_class(inv);
  return r;
}

std::string Scalar::str() const {
  if (FieldMode::is_rational()) return value_.get_str();
  mpz_class v = value_.get_num();
  mpz_class p(static_cast<unsigned long>(FieldMode::prime()));
  if (2 * v > p) v -= p;
  return v.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace lpa
