#pragma once

// Lattice polytopes in V-representation with a canonical (lexicographically
// sorted) vertex list, so structural equality is geometric equality.
//
// Every polytope also carries, computed lazily, a lattice chart of its affine
// hull and the facets of the chart pullback (a full-dimensional lattice
// polytope in Z^d) together with their vertex incidences. Volume, face
// enumeration and lattice-point counting all work in chart coordinates.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "reluvol/exact_arith.hpp"
#include "reluvol/linalg.hpp"

namespace reluvol {

using Point = IntVec;
using VertexSet = boost::dynamic_bitset<>;

// Largest ambient dimension accepted by hull(); 8 unless RELUVOL_MAX_DIM is
// set or an explicit override was installed.
std::size_t max_ambient_dim();
void set_max_ambient_dim(std::size_t n);

// Affine bijection T(y) = base + sum_i y_i * directions[i] from Z^d onto the
// lattice points of a d-dimensional affine subspace of R^n.
class LatticeChart {
 public:
  LatticeChart() = default;
  LatticeChart(Point base, IntMat directions);

  // Chart of the affine hull of a non-empty point set.
  static LatticeChart of_points(std::span<const Point> points);

  std::size_t ambient_dim() const { return base_.size(); }
  std::size_t dim() const { return directions_.size(); }
  const Point& base() const { return base_; }
  const IntMat& directions() const { return directions_; }
  bool is_identity() const;

  Point push(std::span<const BigInt> y) const;
  // Throws Error when x is not a lattice point of the affine hull.
  Point pull(std::span<const BigInt> x) const;

 private:
  Point base_;
  IntMat directions_;  // row Hermite normal form
  std::vector<std::size_t> pivots_;
};

// Outer facet inequality normal . y <= offset in chart coordinates; normal is
// primitive.
struct Facet {
  IntVec normal;
  BigInt offset;
};

class LatticePolytope {
 public:
  static LatticePolytope hull(std::span<const Point> points);
  static LatticePolytope point(Point p);

  std::size_t ambient_dim() const;
  const std::vector<Point>& vertices() const;
  std::size_t num_vertices() const { return vertices().size(); }
  std::size_t dim() const;

  const LatticeChart& chart() const;
  // Vertices pulled back through chart(), in the order of vertices().
  const std::vector<Point>& chart_vertices() const;
  const std::vector<Facet>& chart_facets() const;
  // facet_incidence()[f][v] is set iff vertex v lies on facet f.
  const std::vector<VertexSet>& facet_incidence() const;

  // Sub-polytope spanned by a subset of the vertices. The subset must be a
  // face (its members are then vertices of the result).
  LatticePolytope face_from_set(const VertexSet& set) const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b);
  friend bool operator<(const LatticePolytope& a, const LatticePolytope& b);

 private:
  struct Impl;
  explicit LatticePolytope(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static LatticePolytope from_vertices(std::size_t n, std::vector<Point> sorted_vertices);

  std::shared_ptr<const Impl> impl_;
};

LatticePolytope hull(std::span<const Point> points);
LatticePolytope standard_simplex(std::size_t n);
LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope minkowski_sum(std::span<const LatticePolytope> parts);
LatticePolytope dilate(const LatticePolytope& p, const BigInt& lambda);
LatticePolytope translate(const LatticePolytope& p, std::span<const BigInt> v);
LatticePolytope conv_union(const LatticePolytope& a, const LatticePolytope& b);

Rational support(const LatticePolytope& p, std::span<const Rational> u);
BigInt support(const LatticePolytope& p, std::span<const BigInt> u);
LatticePolytope face(const LatticePolytope& p, std::span<const Rational> u);

// All d-dimensional faces, canonically sorted, without duplicates.
std::vector<LatticePolytope> faces_of_dim(const LatticePolytope& p, std::size_t d);

// Facets of a face given as a vertex set of p: the inclusion-maximal proper
// non-empty intersections with facets of p.
std::vector<VertexSet> facets_of_face(const LatticePolytope& p, const VertexSet& face);

const LatticeChart& lattice_chart(const LatticePolytope& p);

BigInt lattice_points_count(const LatticePolytope& p);
// Number of lattice points of t*P (counted in the chart of P).
BigInt lattice_points_count_dilate(const LatticePolytope& p, std::uint64_t t);

bool equal(const LatticePolytope& p, const LatticePolytope& q);

// A direction u with support(p, u) != support(q, u), or nothing when p == q.
// The candidates are the H-representation normals of p and then of q, each
// list in lexicographic order; the first that separates is returned.
std::optional<IntVec> separating_direction(const LatticePolytope& p, const LatticePolytope& q);

// One inequality u . x <= offset of an ambient H-representation.
struct AmbientHalfspace {
  IntVec normal;
  BigInt offset;
};

// Facet inequalities followed by both orientations of every affine-hull
// equation, all in ambient coordinates with primitive integer normals.
std::vector<AmbientHalfspace> h_representation(const LatticePolytope& p);

}  // namespace reluvol
