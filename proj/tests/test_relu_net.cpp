#include <doctest.h>

#include <algorithm>
#include <random>

#include "reluvol/relu_net.hpp"
#include "reluvol/volume_engine.hpp"
#include "test_support.hpp"

using namespace reluvol;
using namespace reluvol::testing;

namespace {

AffineLayer layer(std::vector<std::vector<long>> a) {
  AffineLayer l;
  for (const auto& row : a) {
    RatVec r;
    for (long x : row) r.emplace_back(x);
    l.weights.push_back(std::move(r));
  }
  return l;
}

ReluNetwork relu_of_first(long scale = 1) {
  return ReluNetwork(WeightRing::integers(), {layer({{1}}), layer({{scale}})});
}

Rational direct_max(const RatVec& x) {
  Rational m = 0;
  for (const auto& v : x) m = std::max(m, v);
  return m;
}

}  // namespace

TEST_CASE("evaluation of small networks") {
  auto relu = relu_of_first();
  CHECK(evaluate(relu, RatVec{Rational(-3)}) == 0);
  CHECK(evaluate(relu, RatVec{Rational(5)}) == 5);
  CHECK(hidden_layers(relu) == 1);
  auto m2 = max_network(2);
  CHECK(evaluate(m2, RatVec{Rational(3), Rational(-1)}) == 3);
  auto zero = ReluNetwork(WeightRing::integers(), {layer({{0, 0}})});
  CHECK(hidden_layers(zero) == 0);
  CHECK(evaluate(zero, RatVec{Rational(7), Rational(-2)}) == 0);
  CHECK_THROWS_AS(evaluate(zero, RatVec{Rational(1)}), DimensionMismatch);
}

TEST_CASE("rings and validation") {
  CHECK(WeightRing::nary(10).contains(Rational::parse("-7/100")));
  CHECK(WeightRing::nary(10).contains(Rational::parse("3/8")));
  CHECK_FALSE(WeightRing::nary(10).contains(Rational::parse("1/3")));
  CHECK_FALSE(WeightRing::integers().contains(Rational::parse("1/2")));
  CHECK(WeightRing::nary(10).name() == "N-ary(10)");
  AffineLayer half;
  half.weights = {{Rational::parse("1/2")}};
  CHECK_THROWS_AS(ReluNetwork(WeightRing::integers(), {half}), PreconditionError);
  CHECK_THROWS_AS(ReluNetwork(WeightRing::integers(), {layer({{1}, {1}})}), DimensionMismatch);
  CHECK_THROWS_AS(ReluNetwork(WeightRing::integers(), {layer({{1, 1}}), layer({{1, 1}})}), DimensionMismatch);
}

TEST_CASE("homogeneity") {
  CHECK(is_homogeneous(max_network(3)));
  AffineLayer biased = layer({{1}});
  biased.bias = {Rational(1)};
  CHECK_FALSE(is_homogeneous(ReluNetwork(WeightRing::integers(), {biased, layer({{1}})})));
  CHECK(is_homogeneous(ReluNetwork(WeightRing::integers(), {layer({{2, 3}})})));
}

TEST_CASE("maximum networks") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto net = max_network(n);
    std::size_t expect = 0;
    while ((std::size_t{1} << expect) < n + 1) ++expect;
    CHECK(net.hidden_layers() == expect);
    CHECK(has_integer_weights(net));
    CHECK(net.scale_log2() == 0);
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    auto net = max_network(n);
    std::vector<long> x(n, -2);
    for (;;) {
      RatVec xr(x.begin(), x.end());
      CHECK(evaluate(net, xr) == direct_max(xr));
      std::size_t i = 0;
      while (i < n && x[i] == 2) x[i++] = -2;
      if (i == n) break;
      ++x[i];
    }
  }
  std::mt19937_64 rng(61);
  auto m4 = max_network(4);
  for (int rep = 0; rep < 500; ++rep) {
    auto x = random_rational_point(rng, 4);
    CHECK(evaluate(m4, x) == direct_max(x));
  }
}

TEST_CASE("clearing denominators scales by M^{k+1}") {
  AffineLayer half;
  half.weights = {{Rational::parse("1/2")}};
  auto f = ReluNetwork(WeightRing::nary(2), {half, layer({{1}})});
  auto g = clear_denominators(f, 2);
  CHECK(has_integer_weights(g));
  CHECK(g.ring() == WeightRing::integers());
  for (long x = -2; x <= 2; ++x) CHECK(evaluate(g, RatVec{Rational(x)}) == 4 * evaluate(f, RatVec{Rational(x)}));
  CHECK_THROWS_AS(clear_denominators(f, 3), PreconditionError);

  auto m = max_network(2);
  auto same = clear_denominators(m, 1);
  CHECK(functions_equal(m, same).holds());

  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 30; ++rep) {
    NetShape s{1 + static_cast<std::size_t>(rep % 3), 1 + static_cast<std::size_t>(rep % 2), 3, -9, 9, 10, true};
    auto net = random_network(rng, s, WeightRing::rationals());
    RatVec all;
    for (const auto& l : net.layers())
      for (const auto& row : l.weights) all.insert(all.end(), row.begin(), row.end());
    const BigInt M = common_denominator(all);
    auto cleared = clear_denominators(net, M);
    CHECK(has_integer_weights(cleared));
    const Rational scale(pow(M, net.hidden_layers() + 1));
    for (int i = 0; i < 20; ++i) {
      auto x = random_rational_point(rng, s.n);
      CHECK(evaluate(cleared, x) == scale * evaluate(net, x));
    }
  }
}

TEST_CASE("compiled pairs") {
  auto relu = compile_to_polytopes(relu_of_first());
  CHECK(evaluate(relu.a) == LatticePolytope::point(Point{BigInt(0)}));
  CHECK(evaluate(relu.b) == standard_simplex(1));
  auto neg = compile_to_polytopes(relu_of_first(-1));
  CHECK(evaluate(neg.b) == LatticePolytope::point(Point{BigInt(0)}));
  CHECK(evaluate(neg.a) == standard_simplex(1));

  auto m2 = compile_to_polytopes(max_network(2));
  CHECK(minkowski_sum(standard_simplex(2), evaluate(m2.a)) == evaluate(m2.b));

  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 30; ++rep) {
    NetShape s{1 + static_cast<std::size_t>(rep % 3), static_cast<std::size_t>(rep % 3), 3};
    auto net = random_network(rng, s, WeightRing::integers());
    auto pair = compile_to_polytopes(net);
    CHECK(pair.a.depth() <= net.hidden_layers());
    CHECK(pair.b.depth() <= net.hidden_layers());
    const auto a = evaluate(pair.a), b = evaluate(pair.b);
    for (int i = 0; i < 20; ++i) {
      auto x = random_rational_point(rng, s.n);
      CHECK(evaluate(net, x) == support(b, x) - support(a, x));
    }
  }

  AffineLayer biased = layer({{1}});
  biased.bias = {Rational(1)};
  CHECK_THROWS_AS(compile_to_polytopes(ReluNetwork(WeightRing::integers(), {biased, layer({{1}})})),
                  PreconditionError);
}

TEST_CASE("function equality") {
  // max{0, x1, x2} as max(max(0, x2), x1), a different association.
  auto other = ReluNetwork(WeightRing::integers(),
                           {layer({{0, 1}, {1, 0}, {-1, 0}}), layer({{1, -1, 1}, {0, 1, -1}, {0, -1, 1}}),
                            layer({{1, 1, -1}})});
  auto m2 = max_network(2);
  std::mt19937_64 rng(64);
  for (int i = 0; i < 1000; ++i) {
    auto x = random_rational_point(rng, 2);
    REQUIRE(evaluate(other, x) == evaluate(m2, x));
  }
  CHECK(functions_equal(m2, other).holds());
  CHECK(functions_equal(m2, m2).holds());

  auto c = functions_equal(relu_of_first(1), relu_of_first(2));
  CHECK(c.verdict == Verdict::fails);
  REQUIRE(c.witness_direction);
  CHECK(*c.witness_direction == Point{BigInt(1)});
  CHECK(c.witness_values[0].value == 1);
  CHECK(c.witness_values[1].value == 2);
}

TEST_CASE("scaled simplex representation") {
  CHECK(represents_scaled_simplex(clear_denominators(max_network(2), 1), 1).holds());
  CHECK(represents_scaled_simplex(relu_of_first(2), 2).holds());
  CHECK_FALSE(represents_scaled_simplex(relu_of_first(2), 1).holds());
  auto affine = ReluNetwork(WeightRing::integers(), {layer({{1}})});
  auto c = represents_scaled_simplex(affine, 1);
  CHECK(c.verdict == Verdict::fails);
  CHECK(c.witness_direction.has_value());
  for (std::size_t n = 1; n <= 4; ++n) CHECK(represents_scaled_simplex(max_network(n), 1).holds());
}
