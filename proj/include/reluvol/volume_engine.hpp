#pragma once

// Exact normalized volumes Vol_d (d! times Lebesgue measure in the lattice of
// the affine hull), an independent Ehrhart counting oracle, mixed volumes by
// polarization, and the divisibility checkers built on them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "reluvol/certificate.hpp"
#include "reluvol/lattice_polytope.hpp"

namespace reluvol {

enum class VolumeMethod { triangulation, counting_oracle };

struct VolumeReport {
  std::size_t d = 0;
  BigInt value;
  VolumeMethod method = VolumeMethod::triangulation;
};

// Vol_d(P). Zero unless dim(P) == d; one when d == 0. Throws
// PreconditionError when d exceeds the ambient dimension.
BigInt normalized_volume(const LatticePolytope& p, std::size_t d);
VolumeReport volume_report(const LatticePolytope& p, std::size_t d);

// Simplices (as indices into p.vertices()) of the recursive pulling
// triangulation from the lexicographically least vertex.
std::vector<std::vector<std::size_t>> triangulate(const LatticePolytope& p);

struct EhrhartFit {
  std::vector<BigInt> counts;       // G(tP) for t = 0..t_max
  std::vector<BigInt> differences;  // forward differences of counts at t = 0
  BigInt volume;                    // d! * leading coefficient
};

// Counts lattice points of tP for t = 0..t_max and interpolates the degree-d
// Ehrhart polynomial. Requires dim(P) == d and t_max >= d + 1. Throws
// InternalError if the counts are not a degree-d polynomial.
EhrhartFit ehrhart_fit(const LatticePolytope& p, std::size_t d, std::uint64_t t_max);
BigInt normalized_volume_counting_oracle(const LatticePolytope& p, std::size_t d, std::uint64_t t_max);

// Inclusion-exclusion over subset sums is divided by this constant; it is
// checked against V(S, ..., S) == Vol_d(S) for the standard simplex S the
// first time each d is used.
BigInt polarization_denominator(std::size_t d);

// V(P_1, ..., P_d) with d = polys.size(), in the lattice of the common
// d-dimensional subspace the (translated) inputs span.
BigInt mixed_volume(std::span<const LatticePolytope> polys);

struct BinomialExpansion {
  std::size_t d = 0;
  // terms[i] = binom(d, i) * V(A x i, B x (d - i)).
  std::vector<BigInt> terms;
  BigInt total;
  BigInt volume_of_sum;
  bool holds = false;
};

BinomialExpansion binomial_expansion_check(const LatticePolytope& a, const LatticePolytope& b, std::size_t d);

// Vol_d(sum parts) == sum Vol_d(parts) (mod p) for d = p^t.
Certificate modular_additivity_check(std::span<const LatticePolytope> parts, std::uint64_t p, std::uint64_t t);
// Same with the dimension given directly; inapplicable unless d is a power of p.
Certificate modular_additivity_check_dim(std::span<const LatticePolytope> parts, std::uint64_t p, std::size_t d);

// Vol_{i+j+1}(conv(A u B)) divisible by Vol_i(A) * Vol_j(B) for A, B in skew
// position.
Certificate join_divisibility_check(const LatticePolytope& a, const LatticePolytope& b);

// If every s-face F of P has Vol_s(F) == 0 (mod m) then Vol_d(P) == 0 (mod m).
Certificate face_volume_propagation_check(const LatticePolytope& p, std::size_t s, std::size_t d,
                                          const BigInt& m);

std::string describe(const LatticePolytope& p);

}  // namespace reluvol
