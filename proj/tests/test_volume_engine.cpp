#include <doctest.h>

#include <random>

#include "reluvol/volume_engine.hpp"

using namespace reluvol;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(x);
  return p;
}

LatticePolytope poly(std::initializer_list<std::initializer_list<long>> pts) {
  std::vector<Point> v;
  for (auto p : pts) v.push_back(pt(p));
  return hull(v);
}

LatticePolytope random_poly(std::mt19937_64& rng, std::size_t n, std::size_t count, long r) {
  std::uniform_int_distribution<long> dist(-r, r);
  std::vector<Point> out(count, Point(n));
  for (auto& p : out)
    for (auto& x : p) x = dist(rng);
  return hull(out);
}

const LatticePolytope kRect = poly({{2, 0}, {5, 0}, {2, 1}, {5, 1}});
const LatticePolytope kTri = poly({{0, 2}, {1, 2}, {0, 3}});

}  // namespace

TEST_CASE("volumes of the two planar examples and their sum") {
  CHECK(normalized_volume(kRect, 2) == 6);
  CHECK(normalized_volume(kTri, 2) == 1);
  CHECK(normalized_volume(minkowski_sum(kRect, kTri), 2) == 15);
  std::array<LatticePolytope, 2> pair{kRect, kTri};
  CHECK(mixed_volume(pair) == 4);
}

TEST_CASE("pyramid over a rectangle") {
  auto base = poly({{0, 0, 0}, {3, 0, 0}, {0, 1, 0}, {3, 1, 0}});
  auto apex = LatticePolytope::point(pt({0, 0, 2}));
  auto pyr = conv_union(base, apex);
  CHECK(normalized_volume(pyr, 3) == 12);
  CHECK(normalized_volume(base, 2) == 6);
  auto cert = join_divisibility_check(base, apex);
  CHECK(cert.verdict == Verdict::holds);
}

TEST_CASE("volume conventions") {
  CHECK(normalized_volume(standard_simplex(4), 4) == 1);
  CHECK(normalized_volume(dilate(standard_simplex(3), 2), 3) == 8);
  CHECK(normalized_volume(kRect, 1) == 0);
  CHECK(normalized_volume(kRect, 0) == 1);
  CHECK(normalized_volume(poly({{0, 0}, {3, 3}}), 1) == 3);
  CHECK_THROWS_AS(normalized_volume(kRect, 3), PreconditionError);
  // A lower-dimensional simplex measured in its own lattice.
  CHECK(normalized_volume(poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 2) == 1);
}

TEST_CASE("triangulation agrees with the counting oracle") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rep % 3;
    auto p = random_poly(rng, n, n + 2, 2);
    const std::size_t d = p.dim();
    if (d == 0) continue;
    CHECK(normalized_volume(p, d) == normalized_volume_counting_oracle(p, d, d + 2));
  }
}

TEST_CASE("triangulation simplices have disjoint interiors and fill the volume") {
  auto cube = poly({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2}, {2, 2, 2}});
  auto simplices = triangulate(cube);
  BigInt total = 0;
  for (const auto& s : simplices) {
    std::vector<Point> v;
    for (auto i : s) v.push_back(cube.vertices()[i]);
    total += normalized_volume(hull(v), 3);
  }
  CHECK(total == 48);
  CHECK(normalized_volume(cube, 3) == 48);
}

TEST_CASE("mixed volume is symmetric, diagonal and multilinear") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 15; ++rep) {
    auto a = random_poly(rng, 2, 4, 2), b = random_poly(rng, 2, 4, 2), c = random_poly(rng, 2, 3, 2);
    std::array<LatticePolytope, 2> ab{a, b}, ba{b, a}, aa{a, a};
    CHECK(mixed_volume(ab) == mixed_volume(ba));
    CHECK(mixed_volume(aa) == normalized_volume(a, 2));
    std::array<LatticePolytope, 2> bc{minkowski_sum(b, c), a}, b1{b, a}, c1{c, a};
    CHECK(mixed_volume(bc) == mixed_volume(b1) + mixed_volume(c1));
  }
  std::array<LatticePolytope, 3> cubes{standard_simplex(3), standard_simplex(3), standard_simplex(3)};
  CHECK(mixed_volume(cubes) == 1);
  CHECK(polarization_denominator(3) == 6);
}

TEST_CASE("binomial expansion") {
  auto e = binomial_expansion_check(kRect, kTri, 2);
  CHECK(e.holds);
  CHECK(e.terms == std::vector<BigInt>{1, 8, 6});
  CHECK(e.total == 15);
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    auto a = random_poly(rng, 3, 5, 2), b = random_poly(rng, 3, 5, 2);
    CHECK(binomial_expansion_check(a, b, 3).holds);
  }
}

TEST_CASE("modular additivity") {
  std::array<LatticePolytope, 2> parts{kRect, kTri};
  auto ok = modular_additivity_check(parts, 2, 1);
  CHECK(ok.verdict == Verdict::holds);
  auto bad = modular_additivity_check_dim(parts, 3, 2);
  CHECK(bad.verdict == Verdict::inapplicable);
  CHECK(bad.reason == "d=2 is not a power of p=3");
  CHECK(modular_additivity_check(parts, 4, 1).verdict == Verdict::inapplicable);
  std::array<LatticePolytope, 2> cubes{standard_simplex(3), dilate(standard_simplex(3), 2)};
  CHECK(modular_additivity_check(cubes, 3, 1).verdict == Verdict::holds);
}

TEST_CASE("join divisibility requires skew position") {
  auto a = poly({{0, 0, 0}, {1, 0, 0}});
  auto b = poly({{0, 0, 1}, {0, 1, 1}});
  auto j = join_divisibility_check(a, b);
  CHECK(j.verdict == Verdict::holds);
  auto c = poly({{0, 0, 0}, {0, 1, 0}});
  CHECK(join_divisibility_check(a, c).verdict == Verdict::inapplicable);
}

TEST_CASE("face volume propagation") {
  auto sq = dilate(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 2);
  auto cert = face_volume_propagation_check(sq, 1, 2, 2);
  CHECK(cert.verdict == Verdict::holds);
  CHECK(face_volume_propagation_check(kTri, 1, 2, 2).verdict == Verdict::inapplicable);
}

TEST_CASE("documented checker examples") {
  auto seg = poly({{0, 0, 0}, {4, 0, 0}});
  auto e = binomial_expansion_check(kRect, LatticePolytope::point(pt({3, -1})), 2);
  CHECK(e.holds);
  CHECK(e.terms == std::vector<BigInt>{0, 0, 6});

  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<LatticePolytope> parts;
    for (std::size_t i = 0; i < m; ++i)
      parts.push_back(translate(standard_simplex(2), pt({static_cast<long>(i), -static_cast<long>(2 * i)})));
    auto cert = modular_additivity_check(parts, 2, 1);
    CHECK(cert.verdict == Verdict::holds);
  }

  auto tri2 = dilate(standard_simplex(2), 2);
  std::vector<Point> lifted;
  for (const auto& v : tri2.vertices()) lifted.push_back(pt({v[0].get_si(), v[1].get_si(), 0}));
  auto base = hull(lifted);
  auto join = join_divisibility_check(base, LatticePolytope::point(pt({1, 1, 3})));
  CHECK(join.verdict == Verdict::holds);
  CHECK(normalized_volume(conv_union(base, LatticePolytope::point(pt({1, 1, 3}))), 3) % 4 == 0);
  auto ends = join_divisibility_check(LatticePolytope::point(pt({0, 0, 0})), LatticePolytope::point(pt({1, 2, 3})));
  CHECK(ends.verdict == Verdict::holds);
  CHECK(join_divisibility_check(seg, LatticePolytope::point(pt({1, 0, 0}))).verdict == Verdict::inapplicable);

  auto cube = dilate(poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}), 2);
  auto prop = face_volume_propagation_check(cube, 2, 3, 2);
  CHECK(prop.verdict == Verdict::holds);
  CHECK(normalized_volume(cube, 3) == 48);
  auto flat = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  auto none = face_volume_propagation_check(flat, 1, 2, 2);
  CHECK(none.verdict == Verdict::inapplicable);
  CHECK(none.reason.find("hypothesis not met") != std::string::npos);
}

TEST_CASE("mixed volume of random triples is symmetric, integral and additive") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 6; ++rep) {
    auto a = random_poly(rng, 3, 4, 2), b = random_poly(rng, 3, 4, 2), c = random_poly(rng, 3, 4, 2);
    std::array<LatticePolytope, 3> abc{a, b, c}, cab{c, a, b}, bac{b, a, c};
    const BigInt v = mixed_volume(abc);
    CHECK(v >= 0);
    CHECK(mixed_volume(cab) == v);
    CHECK(mixed_volume(bac) == v);
    std::array<LatticePolytope, 3> sum{minkowski_sum(a, b), c, c}, ac{a, c, c}, bc{b, c, c};
    CHECK(mixed_volume(sum) == mixed_volume(ac) + mixed_volume(bc));
  }
}

TEST_CASE("dilation scales Vol_d by lambda^d") {
  std::mt19937_64 rng(45);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = random_poly(rng, 1 + rep % 3, 4, 2);
    const std::size_t d = p.dim();
    for (unsigned long lambda = 1; lambda <= 3; ++lambda) {
      BigInt scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), lambda, d);
      CHECK(normalized_volume(dilate(p, lambda), d) == scale * normalized_volume(p, d));
    }
  }
}
