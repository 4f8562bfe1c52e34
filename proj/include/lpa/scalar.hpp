#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lpa {

// Coefficient field, fixed for the whole process. Either the rationals or a
// prime field F_p. Set it once before building any values; mixing values
// created under different fields is undefined.
class FieldMode {
 public:
  static void set_rational();
  static void set_prime(std::uint64_t p);
  // Parses "rational" or "fp:<prime>". Throws lpa::Error on bad input.
  static void set_from_string(std::string_view spec);
  // Reads LPA_FIELD if present.
  static void init_from_env();

  static bool is_rational() { return prime_ == 0; }
  static std::uint64_t prime() { return prime_; }
  static std::string describe();

 private:
  static inline std::uint64_t prime_ = 0;
};

// Exact field element. In rational mode this is a canonical GMP rational; in
// F_p mode the value is kept as an integer representative in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class v);
  // num/den, den != 0.
  static Scalar fraction(const mpz_class& num, const mpz_class& den);
  static Scalar parse(std::string_view literal);

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  // True when the value prints without a slash.
  bool is_integer() const { return value_.get_den() == 1; }
  const mpq_class& value() const { return value_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Prints in the element grammar: "3", "-1/2". In F_p mode the
  // representative in (-p/2, p/2] is printed so small negatives read naturally.
  std::string str() const;

 private:
  void reduce();
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace lpa
