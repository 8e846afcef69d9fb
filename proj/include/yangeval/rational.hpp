#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "yangeval/errors.hpp"

namespace yangeval {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in a signed 64-bit word are
/// kept inline and combined through 128-bit intermediates; anything larger
/// is promoted to a GMP rational and demoted again as soon as it fits.
/// The inline numerator never equals INT64_MIN, so negation and absolute
/// values cannot overflow.
class Rational {
 public:
  Rational() noexcept = default;

  template <std::integral T>
  Rational(T n) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T> && sizeof(T) <= sizeof(std::int64_t)) {
      if (static_cast<std::int64_t>(n) != kMin) {
        num_ = static_cast<std::int64_t>(n);
        return;
      }
    } else {
      if (n <= static_cast<T>(std::numeric_limits<std::int64_t>::max())) {
        num_ = static_cast<std::int64_t>(n);
        return;
      }
    }
    set_big(mpq_class(mpz_class(std::to_string(n))));
  }

  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& other);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  /// Parses "p", "-p", "p/q" (decimal integers, no whitespace, q != 0).
  static Rational parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const noexcept;
  int sign() const noexcept;

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  /// Multiplicative inverse; throws DivisionByZero on zero.
  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational pow(unsigned exponent) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend std::ostream& operator<<(std::ostream& os, const Rational& q);

 private:
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  void set_big(mpq_class q);
  void assign_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline bool is_zero(const Rational& q) noexcept { return q.is_zero(); }

}  // namespace yangeval

namespace Eigen {

template <>
struct NumTraits<yangeval::Rational> : GenericNumTraits<yangeval::Rational> {
  using Real = yangeval::Rational;
  using NonInteger = yangeval::Rational;
  using Nested = yangeval::Rational;
  using Literal = yangeval::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
