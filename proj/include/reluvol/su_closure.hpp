#pragma once

// Sum-union expressions: trees whose leaves are lattice points and whose inner
// nodes are Minkowski sums and convex hulls of pairwise unions. A depth-k
// expression evaluates to a polytope of SU^k over the lattice points.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reluvol/certificate.hpp"
#include "reluvol/lattice_polytope.hpp"

namespace reluvol {

// Immutable; copies share structure. Depth and ambient dimension are fixed
// at construction.
class SUExpression {
 public:
  enum class Kind { point, sum, convunion };

  static SUExpression point(Point p);
  // Throws on an empty child list or mixed ambient dimensions.
  static SUExpression sum(std::vector<SUExpression> children);
  static SUExpression convunion(SUExpression a, SUExpression b);

  Kind kind() const;
  std::size_t depth() const;
  std::size_t ambient_dim() const;
  const Point& point_value() const;                   // kind() == point
  const std::vector<SUExpression>& children() const;  // empty for points
  // Number of distinct nodes reachable from this one.
  std::size_t node_count() const;

  // Node identity, for memo tables keyed on shared subtrees.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit SUExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

LatticePolytope evaluate(const SUExpression& expr);

// h_{evaluate(expr)}(u), computed on the tree without building polytopes.
Rational support(const SUExpression& expr, std::span<const Rational> u);
BigInt support(const SUExpression& expr, std::span<const BigInt> u);

// Expression for the face of evaluate(expr) maximizing u; depth does not grow.
SUExpression face_expr(const SUExpression& expr, std::span<const Rational> u);

// u-fold Minkowski self-sum as an expression (the zero point when u == 0),
// built by repeated doubling so its size grows with log u.
SUExpression dilate(const SUExpression& expr, const BigInt& u);

struct RandomSUOptions {
  std::size_t depth = 1;
  std::size_t n = 2;
  std::size_t budget = 3;  // maximum number of summands per Sum node
  long lo = -3;
  long hi = 3;
  std::uint64_t seed = 0;
};

// Deterministic in the seed; depth exactly options.depth. About a quarter of
// the convex-union nodes pair a subtree with its mirror image in the first
// coordinate so that ties in support values are common.
SUExpression random_su(const RandomSUOptions& options);

struct FaceRecord {
  std::size_t index = 0;
  LatticePolytope face;
  BigInt volume;
  BigInt residue;
};

struct InvariantReport {
  std::uint64_t p = 0;
  std::size_t k = 0;
  std::size_t d = 0;  // p^k
  std::vector<FaceRecord> faces;
  Verdict verdict = Verdict::inapplicable;
  std::string reason;
};

// Vol_{p^k}(F) mod p for every p^k-dimensional face F of evaluate(expr),
// where k = expr.depth(). Inapplicable when p is not prime, k == 0 or p^k
// exceeds the ambient dimension.
InvariantReport p_invariant_check(const SUExpression& expr, std::uint64_t p);

// Checks P + evaluate(a) == evaluate(b), so that h_P = h_B - h_A is witnessed
// at depth max(depth(a), depth(b)).
Certificate membership_as_sum_certificate(const LatticePolytope& p, const SUExpression& a, const SUExpression& b);

}  // namespace reluvol
