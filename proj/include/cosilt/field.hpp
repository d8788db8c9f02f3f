#pragma once

// Exact scalar types usable as Eigen scalars: prime fields with a
// compile-time characteristic and arbitrary-precision rationals.

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cosilt/errors.hpp"

namespace cosilt {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits "a/b" into integer numerator and denominator strings.
inline std::pair<std::string, std::string> split_fraction(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string num(trim(text.substr(0, slash)));
  std::string den = slash == std::string_view::npos ? "1" : std::string(trim(text.substr(slash + 1)));
  auto valid = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid(num) || !valid(den))
    throw InputError("malformed scalar '" + std::string(text) + "'");
  return {num, den};
}

}  // namespace detail

/// Residues modulo the prime P, always stored reduced.
template <unsigned P>
class Fp {
  static_assert(P >= 2 && P < 65536, "small primes only");

 public:
  static constexpr bool is_finite = true;
  static constexpr unsigned characteristic = P;
  static constexpr std::size_t order = P;

  constexpr Fp() = default;
  constexpr Fp(long long v) : value_(static_cast<std::uint32_t>(((v % long(P)) + long(P)) % long(P))) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }
  constexpr std::size_t index() const { return value_; }
  static constexpr Fp from_index(std::size_t i) { return Fp(static_cast<long long>(i % P)); }
  static constexpr Fp zero() { return Fp(0); }
  static constexpr Fp one() { return Fp(1); }

  Fp inverse() const {
    if (value_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(P));
    std::uint64_t base = value_, result = 1;
    for (unsigned e = P - 2; e; e >>= 1) {
      if (e & 1u) result = result * base % P;
      base = base * base % P;
    }
    return Fp(static_cast<long long>(result));
  }

  friend constexpr Fp operator+(Fp a, Fp b) { return raw((a.value_ + b.value_) % P); }
  friend constexpr Fp operator-(Fp a, Fp b) { return raw((a.value_ + P - b.value_) % P); }
  friend constexpr Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint32_t>(std::uint64_t(a.value_) * b.value_ % P));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  constexpr Fp operator-() const { return raw((P - value_) % P); }
  constexpr Fp& operator+=(Fp o) { return *this = *this + o; }
  constexpr Fp& operator-=(Fp o) { return *this = *this - o; }
  constexpr Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(Fp a, Fp b) { return a.value_ != b.value_; }

  static std::string field_name() { return "F_" + std::to_string(P); }
  std::string to_string() const { return std::to_string(value_); }

  static Fp parse(std::string_view text) {
    auto [num, den] = detail::split_fraction(text);
    Fp n = reduce_decimal(num), d = reduce_decimal(den);
    if (d.is_zero())
      throw InputError("denominator of '" + std::string(text) + "' vanishes in " + field_name());
    return n / d;
  }

  template <class Rng>
  static Fp random(Rng& rng) {
    return Fp(static_cast<long long>(std::uniform_int_distribution<unsigned>(0, P - 1)(rng)));
  }

  friend std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.value_; }

 private:
  static constexpr Fp raw(std::uint32_t v) {
    Fp x;
    x.value_ = v;
    return x;
  }
  static Fp reduce_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') neg = s[i++] == '-';
    std::uint64_t r = 0;
    for (; i < s.size(); ++i) r = (r * 10 + unsigned(s[i] - '0')) % P;
    Fp x(static_cast<long long>(r));
    return neg ? -x : x;
  }

  std::uint32_t value_ = 0;
};

/// Exact fractions in lowest terms with positive denominator.
class Rational {
 public:
  using Value = boost::multiprecision::cpp_rational;
  static constexpr bool is_finite = false;
  static constexpr unsigned characteristic = 0;

  Rational() = default;
  Rational(long long v) : value_(v) {}
  explicit Rational(Value v) : value_(std::move(v)) {}

  const Value& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q");
    return Rational(Value(1) / value_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(Value(a.value_ + b.value_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(Value(a.value_ - b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(Value(a.value_ * b.value_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q");
    return Rational(Value(a.value_ / b.value_));
  }
  Rational operator-() const { return Rational(Value(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }

  boost::multiprecision::cpp_int numerator() const { return boost::multiprecision::numerator(value_); }
  boost::multiprecision::cpp_int denominator() const { return boost::multiprecision::denominator(value_); }

  static std::string field_name() { return "Q"; }
  std::string to_string() const { return value_.str(); }

  static Rational parse(std::string_view text) {
    auto [num, den] = detail::split_fraction(text);
    boost::multiprecision::cpp_int n(num[0] == '+' ? num.substr(1) : num);
    boost::multiprecision::cpp_int d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(Value(n, d));
  }

  // Small integers keep random test matrices readable.
  template <class Rng>
  static Rational random(Rng& rng) {
    return Rational(static_cast<long long>(std::uniform_int_distribution<int>(-3, 3)(rng)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.value_.str(); }

 private:
  Value value_{0};
};

template <class F>
concept ExactField = requires(F a, F b) {
  { a + b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a.inverse() } -> std::convertible_to<F>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { F::field_name() } -> std::convertible_to<std::string>;
  { F::parse(std::string_view{}) } -> std::convertible_to<F>;
  F::is_finite;
};

template <class F>
concept FiniteField = ExactField<F> && F::is_finite;

}  // namespace cosilt

namespace Eigen {

template <unsigned P>
struct NumTraits<cosilt::Fp<P>> : GenericNumTraits<cosilt::Fp<P>> {
  using Real = cosilt::Fp<P>;
  using NonInteger = cosilt::Fp<P>;
  using Literal = cosilt::Fp<P>;
  using Nested = cosilt::Fp<P>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 3
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<cosilt::Rational> : GenericNumTraits<cosilt::Rational> {
  using Real = cosilt::Rational;
  using NonInteger = cosilt::Rational;
  using Literal = cosilt::Rational;
  using Nested = cosilt::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
