#pragma once

// Small exact integer linear algebra: rank, Bareiss determinants, rational
// null spaces, integer kernels and Hermite normal forms. Matrices are lists
// of rows and stay tiny (at most a few hundred rows, <= 8 columns).

#include <cstddef>
#include <span>
#include <vector>

#include "reluvol/exact_arith.hpp"

namespace reluvol {

using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rational>;

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b);
Rational dot(std::span<const Rational> a, std::span<const BigInt> b);

// Divides by the gcd of the entries; the zero vector is left alone.
void make_primitive(IntVec& v);

std::size_t rank(IntMat rows);

// Determinant of a square matrix by fraction-free elimination.
BigInt determinant(IntMat m);

// Primitive integer vectors spanning {x in Q^n : rows * x = 0}.
IntMat nullspace(const IntMat& rows, std::size_t ncols);

// Lattice basis of {x in Z^n : rows * x = 0}.
IntMat integer_kernel(const IntMat& rows, std::size_t ncols);

// Row Hermite normal form of a full-row-rank integer matrix: echelon form,
// positive pivots, entries above each pivot reduced into [0, pivot).
IntMat row_hnf(IntMat rows);

// Solves sum_i y_i * rows[i] == target for rational y. Returns false when the
// target is outside the row space. rows must be linearly independent.
bool solve_in_row_space(const IntMat& rows, std::span<const BigInt> target, RatVec& y);

}  // namespace reluvol
