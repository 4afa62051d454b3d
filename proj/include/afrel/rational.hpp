#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace afrel {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are stored inline;
/// anything larger is promoted to a GMP rational and demoted again as soon as
/// it fits. Zero is always 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {  // NOLINT(google-explicit-constructor)
    if (n == INT64_MIN) set_big(mpq_class(mpz_class(std::to_string(n))));
  }
  Rational(long n) : Rational(static_cast<long long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "a", "-a" or "a/b".
  static Rational parse(std::string_view s);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const;
  bool is_small() const { return !big_; }

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;
  std::string str() const;
  double to_double() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  /// For integers: gcd(|a|, |b|). For general rationals: gcd of numerators
  /// over lcm of denominators, so that a/g and b/g are coprime integers.
  friend Rational content_gcd(const Rational& a, const Rational& b);

 private:
  void set_big(mpq_class q);
  void normalize_small(__int128 n, __int128 d);

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Generalized binomial coefficient m(m-1)...(m-i+1)/i! for any integer m.
Rational binomial(long long m, int i);

/// n! as a rational.
Rational factorial(int n);

}  // namespace afrel
