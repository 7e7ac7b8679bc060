#pragma once

// Exact numbers: arbitrary-precision integers, reduced rationals, N-ary
// fractions z/N^t, residues, and the small prime utilities used by the depth
// bounds. Nothing in here touches floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reluvol/errors.hpp"

namespace reluvol {

using BigInt = mpz_class;

BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& v);

// Reduced fraction num/den with den > 0. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(const BigInt& v) : q_(v) {}  // NOLINT
  Rational(const BigInt& num, const BigInt& den);

  // Accepts "a", "a/b" and plain decimal literals such as "-0.125".
  static Rational parse(std::string_view text);

  const BigInt& num() const { return q_.get_num(); }
  const BigInt& den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { Rational r; r.q_ = -q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Value z / base^t, canonical: base does not divide z unless t == 0.
class NaryFraction {
 public:
  NaryFraction(std::uint64_t base, BigInt z, std::uint64_t t);

  // Accepts "z", "z/N^t", "a/b" with b | N^t for some t, and base-N
  // positional literals with a fractional part ("0.5", "-1.01").
  static NaryFraction parse(std::string_view text, std::uint64_t base);
  // Throws ParseError when the value is not of the form z/base^t.
  static NaryFraction from_rational(const Rational& value, std::uint64_t base);

  std::uint64_t base() const { return base_; }
  const BigInt& z() const { return z_; }
  std::uint64_t t() const { return t_; }
  Rational value() const;

  // "z" or "z/N^t"; parse(format()) round-trips.
  std::string format() const;

  // Value equality; the base participates as well.
  friend bool operator==(const NaryFraction& a, const NaryFraction& b) {
    return a.base_ == b.base_ && a.z_ == b.z_ && a.t_ == b.t_;
  }

 private:
  std::uint64_t base_;
  BigInt z_;
  std::uint64_t t_;
};

struct Residue {
  BigInt modulus;
  BigInt value;  // in [0, modulus)
  friend bool operator==(const Residue&, const Residue&) = default;
};

Residue mod_reduce(const BigInt& z, const BigInt& m);

// Least M >= 1 with M*w integral for every w.
BigInt common_denominator(std::span<const Rational> weights);

bool is_prime(std::uint64_t v);
std::uint64_t nth_prime(std::size_t i);  // nth_prime(1) == 2
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t v);
std::uint64_t smallest_prime_not_dividing(std::uint64_t n);

// Least k >= 0 with base^k >= x. Requires base >= 2, x >= 1.
std::uint64_t ceil_log(std::uint64_t base, const BigInt& x);
// Returns t when x == base^t (t >= 0), -1 otherwise.
int exact_log(std::uint64_t base, const BigInt& x);

BigInt pow(const BigInt& base, std::uint64_t e);
BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace reluvol
