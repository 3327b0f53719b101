#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "gamevalue/errors.hpp"

namespace gamevalue {

using BigInt = boost::multiprecision::cpp_int;

/// Exact arbitrary-precision rational, always kept canonical:
/// denominator > 0 and gcd(|numerator|, denominator) = 1.
/// Arithmetic never rounds; there is no floating-point path.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long long n) : value_(n) {}  // NOLINT: implicit by design, payoffs read naturally
  explicit Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    value_ = Backend(num) / Backend(den);  // division canonicalizes: sign up, gcd reduced
  }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  bool is_integer() const { return denominator() == 1; }
  bool is_zero() const { return value_ == 0; }
  int sign() const { return value_ < 0 ? -1 : (value_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(Backend(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.value_ == 0) throw DomainError("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const {
    std::string s = numerator().str();
    if (!is_integer()) s += "/" + denominator().str();
    return s;
  }

  /// Approximate decimal for human-facing output only; never used in computation.
  double approx() const { return value_.convert_to<double>(); }

  /// Accepts "p", "p/q", or an exact decimal like "1.5" / "-0.25".
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using Backend = boost::multiprecision::cpp_rational;
  explicit Rational(Backend v) : value_(std::move(v)) {}
  Backend value_;
};

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// cpp_int's string constructor treats a leading 0 as an octal prefix, so
// digit strings are accumulated explicitly.
inline BigInt digits_to_int(std::string_view s) {
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto fail = [&] { throw ParseError("not a rational: '" + std::string(text) + "'"); };

  BigInt num, den = 1;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!detail::all_digits(p) || !detail::all_digits(q)) fail();
    num = detail::digits_to_int(p);
    den = detail::digits_to_int(q);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (!detail::all_digits(ip) || !detail::all_digits(fp)) fail();
    num = detail::digits_to_int(std::string(ip) + std::string(fp));
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  } else {
    if (!detail::all_digits(body)) fail();
    num = detail::digits_to_int(body);
  }
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace gamevalue
