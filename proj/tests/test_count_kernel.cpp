#include <doctest.h>

#include <random>

#include "reluvol/kernels/count_kernel.hpp"

using namespace reluvol;
using namespace reluvol::kernels;

namespace {

HalfspaceSystem random_system(std::mt19937_64& rng, std::size_t dim, std::size_t count) {
  std::uniform_int_distribution<std::int64_t> coef(-5, 5), rhs(-4, 12);
  HalfspaceSystem sys;
  sys.dim = dim;
  sys.count = count;
  for (std::size_t i = 0; i < dim * count; ++i) sys.normals.push_back(coef(rng));
  for (std::size_t f = 0; f < count; ++f) sys.rhs.push_back(rhs(rng));
  return sys;
}

}  // namespace

TEST_CASE("scalar and AVX2 counts agree") {
  if (!avx2_available()) MESSAGE("AVX2 unavailable; the AVX2 entry point falls back to scalar");
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::int64_t> lo_dist(-6, 0), len_dist(0, 13);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t dim = 1 + rep % 4;
    auto sys = random_system(rng, dim, 1 + rep % 7);
    std::vector<std::int64_t> lo(dim), hi(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = lo_dist(rng);
      hi[i] = lo[i] + len_dist(rng);
    }
    const auto a = count_box(sys, lo, hi, Isa::scalar);
    const auto b = count_box(sys, lo, hi, Isa::avx2);
    CHECK(a == b);
  }
}

TEST_CASE("scalar count matches a direct loop") {
  HalfspaceSystem sys{2, 3, {-1, 0, 0, -1, 1, 1}, {0, 0, 4}};
  std::vector<std::int64_t> lo{-1, -1}, hi{5, 5};
  CHECK(count_box_scalar(sys, lo, hi) == 15);
  CHECK(count_box(sys, lo, hi, selected_isa()) == 15);
  std::vector<std::int64_t> empty_hi{-2, 5};
  CHECK(count_box_scalar(sys, lo, empty_hi) == 0);
}

TEST_CASE("exact entry point takes the arbitrary-precision path for huge coefficients") {
  // 0 <= y <= 3 with the upper bound scaled by 2^70.
  const BigInt big = BigInt(1) << 70;
  IntMat normals{{BigInt(-1)}, {big}};
  IntVec rhs{BigInt(0), BigInt(3) * big};
  CHECK(count_box_exact(normals, rhs, {BigInt(-2)}, {BigInt(9)}) == 4);
  IntMat small{{BigInt(-1)}, {BigInt(1)}};
  IntVec srhs{BigInt(0), BigInt(3)};
  CHECK(count_box_exact(small, srhs, {BigInt(-2)}, {BigInt(9)}) == 4);
}

TEST_CASE("isa names") {
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
}
