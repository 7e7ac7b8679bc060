#include "reluvol/exact_arith.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace reluvol {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Digit value in bases up to 36, or -1.
int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  text = trim(text);
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("not an integer: '" + std::string(text) + "'");
  std::string s(text.front() == '+' ? text.substr(1) : text);
  return BigInt(s, 10);
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw Error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool neg = text.front() == '-';
    std::string_view ip = text.substr(0, dot);
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
    std::string_view fp = text.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp))
      throw ParseError("malformed decimal literal '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip), 10);
    BigInt frac(std::string(fp), 10);
    BigInt scale = pow(BigInt(10), fp.size());
    BigInt num = whole * scale + frac;
    return Rational(neg ? BigInt(-num) : num, scale);
  }
  return Rational(parse_bigint(text));
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str(10);
  return num().get_str(10) + "/" + den().get_str(10);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

NaryFraction::NaryFraction(std::uint64_t base, BigInt z, std::uint64_t t)
    : base_(base), z_(std::move(z)), t_(t) {
  if (base_ < 2) throw Error("N-ary base must be at least 2");
  const BigInt b(static_cast<unsigned long>(base_));
  while (t_ > 0 && z_ % b == 0) {
    z_ /= b;
    --t_;
  }
  if (z_ == 0) t_ = 0;
}

Rational NaryFraction::value() const {
  return Rational(z_, pow(BigInt(static_cast<unsigned long>(base_)), t_));
}

std::string NaryFraction::format() const {
  if (t_ == 0) return z_.get_str(10);
  return z_.get_str(10) + "/" + std::to_string(base_) + "^" + std::to_string(t_);
}

NaryFraction NaryFraction::from_rational(const Rational& value, std::uint64_t base) {
  if (base < 2) throw Error("N-ary base must be at least 2");
  const BigInt b(static_cast<unsigned long>(base));
  // den | base^t for some t iff every prime factor of den divides base;
  // strip common factors until none remain.
  BigInt rest = value.den();
  for (;;) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t());
    if (g == 1) break;
    while (rest % g == 0) rest /= g;
  }
  if (rest != 1)
    throw ParseError(value.str() + " is not a base-" + std::to_string(base) + " fraction");
  std::uint64_t t = 0;
  BigInt power = 1;
  while (power % value.den() != 0) {
    power *= b;
    ++t;
  }
  return NaryFraction(base, value.num() * (power / value.den()), t);
}

NaryFraction NaryFraction::parse(std::string_view text, std::uint64_t base) {
  if (base < 2 || base > 36) throw ParseError("N-ary base must lie in [2, 36]");
  text = trim(text);
  if (text.empty()) throw ParseError("empty N-ary literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (auto caret = den.find('^'); caret != std::string_view::npos) {
      BigInt n = parse_bigint(den.substr(0, caret));
      BigInt t = parse_bigint(den.substr(caret + 1));
      if (n != static_cast<unsigned long>(base))
        throw ParseError("literal base " + n.get_str() + " does not match N=" + std::to_string(base));
      if (t < 0 || !t.fits_ulong_p()) throw ParseError("bad exponent in '" + std::string(text) + "'");
      return NaryFraction(base, parse_bigint(text.substr(0, slash)), t.get_ui());
    }
    return from_rational(Rational::parse(text), base);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return NaryFraction(base, parse_bigint(text), 0);

  bool neg = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  dot = body.find('.');
  const BigInt b(static_cast<unsigned long>(base));
  BigInt z = 0;
  std::uint64_t t = 0;
  bool any = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i == dot) continue;
    int dv = digit_value(body[i]);
    if (dv < 0 || static_cast<std::uint64_t>(dv) >= base)
      throw ParseError("invalid base-" + std::to_string(base) + " digit in '" + std::string(text) + "'");
    z = z * b + dv;
    any = true;
    if (i > dot) ++t;
  }
  if (!any) throw ParseError("malformed literal '" + std::string(text) + "'");
  return NaryFraction(base, neg ? BigInt(-z) : z, t);
}

Residue mod_reduce(const BigInt& z, const BigInt& m) {
  if (m < 2) throw Error("modulus must be at least 2");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
  return Residue{m, r};
}

BigInt common_denominator(std::span<const Rational> weights) {
  BigInt m = 1;
  for (const auto& w : weights) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), w.den().get_mpz_t());
  return m;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d <= v / d; d += 2)
    if (v % d == 0) return false;
  return true;
}

std::uint64_t nth_prime(std::size_t i) {
  if (i == 0) throw Error("primes are indexed from 1");
  std::uint64_t p = 1;
  while (i > 0) {
    ++p;
    if (is_prime(p)) --i;
  }
  return p;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= v / d; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint64_t smallest_prime_not_dividing(std::uint64_t n) {
  if (n == 0) throw Error("every prime divides 0");
  for (std::uint64_t p = 2;; ++p)
    if (is_prime(p) && n % p != 0) return p;
}

std::uint64_t ceil_log(std::uint64_t base, const BigInt& x) {
  if (base < 2 || x < 1) throw Error("ceil_log needs base >= 2 and x >= 1");
  const BigInt b(static_cast<unsigned long>(base));
  std::uint64_t k = 0;
  for (BigInt power = 1; power < x; power *= b) ++k;
  return k;
}

int exact_log(std::uint64_t base, const BigInt& x) {
  if (base < 2 || x < 1) return -1;
  const BigInt b(static_cast<unsigned long>(base));
  int k = 0;
  BigInt power = 1;
  for (; power < x; power *= b) ++k;
  return power == x ? k : -1;
}

BigInt pow(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigInt factorial(std::uint64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace reluvol
