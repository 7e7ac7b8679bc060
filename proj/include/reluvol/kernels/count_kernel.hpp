#pragma once

// Lattice-point counting by bounding-box enumeration: the one data-parallel
// inner loop of the library. A portable scalar reference and an AVX2 variant
// share the same contract; count_box() picks one at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "reluvol/linalg.hpp"

namespace reluvol::kernels {

// Inequalities normals[f * dim + i] * y_i <= rhs[f], f < count.
struct HalfspaceSystem {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<std::int64_t> normals;
  std::vector<std::int64_t> rhs;
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool avx2_available();
// AVX2 when the CPU has it, unless RELUVOL_ISA=scalar is set.
Isa selected_isa();

// Number of y with lo <= y <= hi (componentwise) satisfying every inequality.
// Callers guarantee no int64 overflow: |rhs_f| + sum_i |a_fi| * (max(|lo_i|,
// |hi_i|) + 4) < 2^62.
std::uint64_t count_box_scalar(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                               std::span<const std::int64_t> hi);
std::uint64_t count_box_avx2(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                             std::span<const std::int64_t> hi);
std::uint64_t count_box(const HalfspaceSystem& sys, std::span<const std::int64_t> lo,
                        std::span<const std::int64_t> hi, Isa isa);

// Exact entry point: narrows to int64 and dispatches when safe, otherwise
// enumerates with arbitrary-precision arithmetic.
BigInt count_box_exact(const IntMat& normals, const IntVec& rhs, const IntVec& lo, const IntVec& hi);

}  // namespace reluvol::kernels
