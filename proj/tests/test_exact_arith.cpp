#include <doctest.h>

#include <random>

#include "reluvol/exact_arith.hpp"

using namespace reluvol;

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(Rational::parse("6/-4").str() == "-3/2");
  CHECK(Rational::parse("-0.125").str() == "-1/8");
  CHECK(Rational::parse("  42 ").str() == "42");
  CHECK(Rational::parse("-7/100") == Rational(BigInt(-7), BigInt(100)));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational arithmetic matches cross-multiplication") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-50, 50);
  for (int i = 0; i < 500; ++i) {
    long a = dist(rng), b = dist(rng), c = dist(rng), e = dist(rng);
    if (b == 0 || e == 0 || c == 0) continue;
    Rational x{BigInt(a), BigInt(b)}, y{BigInt(c), BigInt(e)};
    Rational s = x + y;
    CHECK(s.num() * b * e == (BigInt(a) * e + BigInt(c) * b) * s.den());
    CHECK(gcd(s.num(), s.den()) == 1);
    CHECK(s.den() > 0);
    CHECK((x * y) / y == x);
    CHECK((x < y) == (a * b * e * e < c * e * b * b));
  }
}

TEST_CASE("N-ary fractions are canonical and round-trip") {
  NaryFraction f(10, BigInt(-700), 4);
  CHECK(f.z() == -7);
  CHECK(f.t() == 2);
  CHECK(f.format() == "-7/10^2");
  CHECK(NaryFraction::parse(f.format(), 10) == f);
  CHECK(NaryFraction::parse("-0.07", 10) == f);
  CHECK(NaryFraction::parse("3/8", 2).format() == "3/2^3");
  CHECK(NaryFraction::parse("0.11", 2).value() == Rational(BigInt(3), BigInt(4)));
  CHECK(NaryFraction::parse("12", 10).format() == "12");
  CHECK_THROWS_AS(NaryFraction::from_rational(Rational(BigInt(1), BigInt(3)), 10), ParseError);
  CHECK(NaryFraction::from_rational(Rational(BigInt(1), BigInt(4)), 6).format() == "9/6^2");
}

TEST_CASE("residues are non-negative") {
  CHECK(mod_reduce(-7, 3) == Residue{3, 2});
  CHECK(mod_reduce(15, 2).value == 1);
  CHECK(mod_reduce(0, 5).value == 0);
}

TEST_CASE("common denominator is the least clearing multiplier") {
  std::vector<Rational> w{Rational(BigInt(1), BigInt(4)), Rational(BigInt(5), BigInt(6)), Rational(3)};
  CHECK(common_denominator(w) == 12);
  CHECK(common_denominator(std::vector<Rational>{}) == 1);
}

TEST_CASE("prime helpers") {
  CHECK(smallest_prime_not_dividing(10) == 3);
  CHECK(smallest_prime_not_dividing(6) == 5);
  CHECK(smallest_prime_not_dividing(30) == 7);
  CHECK(smallest_prime_not_dividing(1) == 2);
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(10) == 29);
  CHECK(distinct_prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  for (std::uint64_t v = 0; v < 200; ++v) {
    bool brute = v >= 2;
    for (std::uint64_t d = 2; d * d <= v; ++d)
      if (v % d == 0) brute = false;
    CHECK(is_prime(v) == brute);
  }
}

TEST_CASE("integer logs agree with a power loop") {
  for (std::uint64_t base : {2, 3, 5, 10}) {
    for (std::uint64_t x = 1; x < 3000; ++x) {
      std::uint64_t k = 0, pw = 1;
      while (pw < x) {
        pw *= base;
        ++k;
      }
      CHECK(ceil_log(base, BigInt(static_cast<unsigned long>(x))) == k);
      CHECK(exact_log(base, BigInt(static_cast<unsigned long>(x))) == (pw == x ? static_cast<int>(k) : -1));
    }
  }
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(pow(BigInt(10), 30).get_str() == "1" + std::string(30, '0'));
}

TEST_CASE("decimal readings and denominators of weight lists") {
  auto a = NaryFraction::parse("7/100", 10);
  CHECK(a.z() == 7);
  CHECK(a.t() == 2);
  auto b = NaryFraction::parse("0.5", 10);
  CHECK(b.z() == 5);
  CHECK(b.t() == 1);
  CHECK_THROWS_AS(NaryFraction::parse("3/7", 10), ParseError);
  CHECK(smallest_prime_not_dividing(2) == 3);
  auto den = [](std::initializer_list<const char*> xs) {
    std::vector<Rational> w;
    for (auto x : xs) w.push_back(Rational::parse(x));
    return common_denominator(w);
  };
  CHECK(den({"1/2", "3/4"}) == 4);
  CHECK(den({"2", "-5"}) == 1);
  CHECK(den({"7/100", "3/10"}) == 100);
}
