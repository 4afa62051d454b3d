#include "afrel/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace afrel {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr int64_t kSmallMax = INT64_MAX;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits_small(const mpz_class& z) {
  return z.fits_slong_p() && z != mpz_class(LONG_MIN);
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  normalize_small(static_cast<i128>(n), static_cast<i128>(d));
}

void Rational::normalize_small(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (uabs(n) <= static_cast<u128>(kSmallMax) && d <= static_cast<i128>(kSmallMax)) {
    num_ = static_cast<int64_t>(n);
    den_ = static_cast<int64_t>(d);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  set_big(std::move(q));
}

void Rational::set_big(mpq_class q) {
  if (fits_small(q.get_num()) && q.get_den().fits_slong_p()) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view s) {
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0) {
    throw std::invalid_argument("Rational: cannot parse '" + std::string(s) + "'");
  }
  if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  q.canonicalize();
  return Rational(q);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_));
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_));
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Rational::to_double() const {
  return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_) {
    r.set_big(-*big_);
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t r;
      if (!__builtin_add_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
      normalize_small(static_cast<i128>(num_) + o.num_, 1);
      return *this;
    }
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    normalize_small(n, d);
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t r;
      if (!__builtin_sub_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
      normalize_small(static_cast<i128>(num_) - o.num_, 1);
      return *this;
    }
    i128 n = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    normalize_small(n, d);
    return *this;
  }
  set_big(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t r;
      if (!__builtin_mul_overflow(num_, o.num_, &r) && r != INT64_MIN) {
        num_ = r;
        return *this;
      }
    }
    normalize_small(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  if (!big_ && !o.big_) {
    normalize_small(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

Rational Rational::inverse() const {
  Rational one(1);
  return one /= *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a value is big iff it does not fit small
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

Rational content_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  if (!a.big_ && !b.big_) {
    uint64_t gn = std::gcd(static_cast<uint64_t>(a.num_ < 0 ? -a.num_ : a.num_),
                           static_cast<uint64_t>(b.num_ < 0 ? -b.num_ : b.num_));
    if (a.den_ == 1 && b.den_ == 1) return Rational(static_cast<long long>(gn));
    i128 l = static_cast<i128>(a.den_ / std::gcd(a.den_, b.den_)) * b.den_;
    Rational r;
    r.normalize_small(static_cast<i128>(gn), l);
    return r;
  }
  mpz_class gn, ld;
  mpz_gcd(gn.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
  mpz_lcm(ld.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  mpq_class q(gn, ld);
  q.canonicalize();
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational binomial(long long m, int i) {
  if (i < 0) return Rational(0);
  Rational r(1);
  for (int t = 0; t < i; ++t) {
    r *= Rational(m - t);
    r /= Rational(t + 1);
  }
  return r;
}

Rational factorial(int n) {
  Rational r(1);
  for (int t = 2; t <= n; ++t) r *= Rational(t);
  return r;
}

}  // namespace afrel
