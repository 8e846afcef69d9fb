#include "yangeval/rational.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

namespace yangeval {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 v) { return v <= kMax && v >= -static_cast<i128>(kMax); }

mpz_class mpz_from_i128(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpq_class small_to_mpq(std::int64_t num, std::int64_t den) {
  mpq_class q;
  mpq_set_si(q.get_mpq_t(), num, static_cast<unsigned long>(den));
  return q;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero();
  assign_wide(num, den);
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  num_ = other.num_;
  den_ = other.den_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpq_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Rational::set_big(mpq_class q) {
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
    long nn = mpz_get_si(n.get_mpz_t());
    if (nn != kMin) {
      num_ = nn;
      den_ = mpz_get_si(d.get_mpz_t());
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::assign_wide(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 mag = num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num);
  u128 g = gcd128(mag, static_cast<u128>(den));
  if (g > 1) {
    num /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  if (num == 0) den = 1;
  if (fits(num) && fits(den)) {
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
  set_big(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> mpz_class {
    if (s.empty()) throw DomainError("empty integer in rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw DomainError("malformed rational literal");
    for (std::size_t k = start; k < s.size(); ++k) {
      if (s[k] < '0' || s[k] > '9') {
        throw DomainError("malformed rational literal: '" + std::string(s) + "'");
      }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
  };
  auto slash = text.find('/');
  mpz_class num = parse_int(text.substr(0, slash));
  mpz_class den = slash == std::string_view::npos ? mpz_class(1) : parse_int(text.substr(slash + 1));
  if (den == 0) throw DivisionByZero();
  Rational r;
  r.set_big(mpq_class(num, den));
  return r;
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Rational::is_integer() const noexcept { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const { return big_ ? *big_ : small_to_mpq(num_, den_); }
mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(num_); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(den_); }

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (big_) {
    Rational r;
    r.set_big(1 / *big_);
    return r;
  }
  Rational r;
  r.assign_wide(den_, num_);
  return r;
}

Rational Rational::pow(unsigned exponent) const {
  Rational result(1);
  Rational base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
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

Rational& Rational::operator+=(const Rational& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (!big_ && !rhs.big_) {
    if (den_ == rhs.den_) {
      assign_wide(static_cast<i128>(num_) + rhs.num_, den_);
      return *this;
    }
    std::int64_t g = std::gcd(den_, rhs.den_);
    i128 num = static_cast<i128>(num_) * (rhs.den_ / g) + static_cast<i128>(rhs.num_) * (den_ / g);
    i128 den = static_cast<i128>(den_ / g) * rhs.den_;
    assign_wide(num, den);
    return *this;
  }
  set_big(to_mpq() + rhs.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = Rational();
  if (!big_ && !rhs.big_) {
    std::int64_t g1 = std::gcd(num_, rhs.den_);
    std::int64_t g2 = std::gcd(rhs.num_, den_);
    i128 num = static_cast<i128>(num_ / g1) * (rhs.num_ / g2);
    i128 den = static_cast<i128>(den_ / g2) * (rhs.den_ / g1);
    if (fits(num) && fits(den)) {
      num_ = static_cast<std::int64_t>(num);
      den_ = static_cast<std::int64_t>(den);
    } else {
      assign_wide(num, den);
    }
    return *this;
  }
  set_big(to_mpq() * rhs.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Canonical forms never mix: a value representable inline is never big.
  return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace yangeval
