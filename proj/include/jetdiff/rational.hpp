#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace jetdiff {

using Integer = mpz_class;

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral T>
  Rational(T v) : v_(static_cast<long>(v)) {}  // NOLINT(implicit)

  template <std::unsigned_integral T>
  Rational(T v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(implicit)

  Rational(const Integer& v) : v_(v) {}  // NOLINT(implicit)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Accepts "p", "-p", "p/q", "-p/q" with optional surrounding blanks.
  static Rational parse(std::string_view text);

  Integer numerator() const { return v_.get_num(); }
  Integer denominator() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  const mpq_class& raw() const { return v_; }

  /// Lowest-terms text: "0", "7", "-3/4".
  std::string to_string() const;
  double to_double() const { return v_.get_d(); }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(unsigned e) const;
  /// Greatest integer not above the value.
  Integer floor() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Integer binomial(long n, long k);
Integer factorial(unsigned n);

}  // namespace jetdiff
