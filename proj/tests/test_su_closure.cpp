#include <doctest.h>

#include <random>

#include "reluvol/relu_net.hpp"
#include "reluvol/su_closure.hpp"
#include "reluvol/volume_engine.hpp"

using namespace reluvol;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(x);
  return p;
}

SUExpression P(std::initializer_list<long> xs) { return SUExpression::point(pt(xs)); }

SUExpression unit_square() {
  return SUExpression::sum({SUExpression::convunion(P({0, 0}), P({1, 0})),
                            SUExpression::convunion(P({0, 0}), P({0, 1}))});
}

RatVec random_direction(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> dist(-2, 2);
  RatVec u;
  for (std::size_t i = 0; i < n; ++i) u.emplace_back(dist(rng));
  return u;
}

}  // namespace

TEST_CASE("depths are cached per node kind") {
  CHECK(P({1, 2}).depth() == 0);
  CHECK(unit_square().depth() == 1);
  auto nested = SUExpression::convunion(unit_square(), P({0, 0}));
  CHECK(nested.depth() == 2);
  CHECK(SUExpression::sum({nested, unit_square()}).depth() == 2);
  CHECK_THROWS_AS(SUExpression::sum({}), Error);
  CHECK_THROWS_AS(SUExpression::convunion(P({0}), P({0, 0})), DimensionMismatch);
}

TEST_CASE("evaluation") {
  CHECK(evaluate(P({3, -1})) == LatticePolytope::point(pt({3, -1})));
  auto sq = evaluate(unit_square());
  CHECK(sq.num_vertices() == 4);
  CHECK(normalized_volume(sq, 2) == 2);

  // Rectangle base lifted to R^3 with an apex on top.
  auto base = SUExpression::sum({SUExpression::convunion(P({0, 0, 0}), P({3, 0, 0})),
                                 SUExpression::convunion(P({0, 0, 0}), P({0, 1, 0}))});
  auto pyramid = evaluate(SUExpression::convunion(base, P({0, 0, 2})));
  CHECK(normalized_volume(pyramid, 3) == 12);

  auto twice = SUExpression::sum({unit_square(), unit_square(), P({1, 1})});
  CHECK(evaluate(twice) == translate(dilate(sq, 2), pt({1, 1})));
}

TEST_CASE("expression dilation by doubling") {
  auto sq = unit_square();
  for (long u : {0, 1, 2, 5, 13}) {
    auto e = dilate(sq, BigInt(u));
    CHECK(evaluate(e) == dilate(evaluate(sq), BigInt(u)));
    CHECK(e.depth() == (u == 0 ? 0u : 1u));
  }
  CHECK(dilate(sq, BigInt(1000)).node_count() < 40);
}

TEST_CASE("support on trees matches support on polytopes") {
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 40; ++rep) {
    auto e = random_su({1 + static_cast<std::size_t>(rep % 2), 3, 2, -2, 2, static_cast<std::uint64_t>(rep)});
    auto poly = evaluate(e);
    auto u = random_direction(rng, 3);
    CHECK(support(e, u) == support(poly, u));
  }
}

TEST_CASE("face expressions evaluate to faces") {
  std::mt19937_64 rng(52);
  auto sq = unit_square();
  RatVec right{1, 0};
  CHECK(evaluate(face_expr(sq, right)) == hull(std::vector<Point>{pt({1, 0}), pt({1, 1})}));
  RatVec zero{0, 0};
  CHECK(evaluate(face_expr(sq, zero)) == evaluate(sq));

  int ties = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t k = 1 + rep % 2;
    auto e = random_su({k, 3, 2, -2, 2, 1000 + static_cast<std::uint64_t>(rep)});
    auto u = random_direction(rng, 3);
    auto f = face_expr(e, u);
    CHECK(f.depth() <= e.depth());
    CHECK(evaluate(f) == face(evaluate(e), u));
    ties += f.depth() > 0;
  }
  CHECK(ties > 0);
}

TEST_CASE("random generator is deterministic with exact depth") {
  for (std::size_t k = 0; k <= 3; ++k) {
    RandomSUOptions o{k, 3, 3, -3, 3, 7};
    auto a = random_su(o), b = random_su(o);
    CHECK(a.depth() == k);
    CHECK(evaluate(a) == evaluate(b));
  }
  CHECK(random_su({0, 2, 3, -3, 3, 1}).kind() == SUExpression::Kind::point);
  auto z = evaluate(random_su({1, 3, 4, -3, 3, 7}));
  for (const auto& v : z.vertices())
    for (const auto& c : v) CHECK(abs(c) <= 3 * 9);
}

TEST_CASE("Minkowski sums of equal-depth expressions") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = random_su({2, 2, 2, -2, 2, s}), b = random_su({2, 2, 2, -2, 2, s + 100});
    auto sum = SUExpression::sum({a, b});
    CHECK(sum.depth() == 2);
    CHECK(evaluate(sum) == minkowski_sum(evaluate(a), evaluate(b)));
  }
}

TEST_CASE("p-divisibility of face volumes") {
  auto sq = p_invariant_check(unit_square(), 2);
  CHECK(sq.verdict == Verdict::holds);
  REQUIRE(sq.faces.size() == 1);
  CHECK(sq.faces[0].volume == 2);

  for (std::uint64_t s = 0; s < 15; ++s) {
    const std::size_t n = 2 + s % 3;
    auto r = p_invariant_check(random_su({1, n, 3, -2, 2, s}), 2);
    CHECK(r.verdict == Verdict::holds);
  }
  auto r3 = p_invariant_check(random_su({1, 3, 3, -2, 2, 5}), 3);
  CHECK(r3.verdict == Verdict::holds);
  CHECK(p_invariant_check(random_su({2, 3, 2, -2, 2, 5}), 2).verdict == Verdict::inapplicable);
  CHECK(p_invariant_check(unit_square(), 4).verdict == Verdict::inapplicable);
  CHECK(p_invariant_check(P({1, 1}), 2).verdict == Verdict::inapplicable);
}

TEST_CASE("membership certificates") {
  auto seg = standard_simplex(1);
  auto ok = membership_as_sum_certificate(seg, SUExpression::point(pt({0})),
                                          SUExpression::convunion(P({0}), P({1})));
  CHECK(ok.verdict == Verdict::holds);
  CHECK(ok.depth == 1u);

  auto pair = compile_to_polytopes(max_network(2));
  auto two = membership_as_sum_certificate(standard_simplex(2), pair.a, pair.b);
  CHECK(two.verdict == Verdict::holds);
  CHECK(two.depth == 2u);

  auto bad = membership_as_sum_certificate(seg, SUExpression::point(pt({0})),
                                           SUExpression::convunion(P({0}), P({2})));
  CHECK(bad.verdict == Verdict::fails);
  REQUIRE(bad.witness_direction);
  CHECK(*bad.witness_direction == pt({1}));
}
