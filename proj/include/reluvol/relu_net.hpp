#pragma once

// Exact ReLU networks t_{k+1} o sigma o t_k o ... o sigma o t_1 with rational
// weights from a declared ring, and their translation to pairs of sum-union
// expressions (f = h_B - h_A).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "reluvol/certificate.hpp"
#include "reluvol/su_closure.hpp"

namespace reluvol {

struct WeightRing {
  enum class Kind { integers, nary, rationals };
  Kind kind = Kind::integers;
  std::uint64_t base = 0;  // for nary

  static WeightRing integers() { return {Kind::integers, 0}; }
  static WeightRing nary(std::uint64_t n);
  static WeightRing rationals() { return {Kind::rationals, 0}; }

  bool contains(const Rational& w) const;
  std::string name() const;  // "Z", "N-ary(10)", "Q"
  friend bool operator==(const WeightRing&, const WeightRing&) = default;
};

// Affine map x -> weights * x + bias; weights has one row per output.
struct AffineLayer {
  std::vector<RatVec> weights;
  RatVec bias;
};

class ReluNetwork {
 public:
  // Validates shapes (the last layer has one output) and that every weight
  // lies in the ring. An empty bias means zero.
  ReluNetwork(WeightRing ring, std::vector<AffineLayer> layers, std::uint64_t scale_log2 = 0);

  const WeightRing& ring() const { return ring_; }
  const std::vector<AffineLayer>& layers() const { return layers_; }
  std::size_t input_dim() const;
  std::size_t hidden_layers() const { return layers_.size() - 1; }
  // The network computes 2^scale_log2 times the function it was built for.
  std::uint64_t scale_log2() const { return scale_log2_; }

 private:
  WeightRing ring_;
  std::vector<AffineLayer> layers_;
  std::uint64_t scale_log2_ = 0;
};

Rational evaluate(const ReluNetwork& net, std::span<const Rational> x);
std::size_t hidden_layers(const ReluNetwork& net);
bool is_homogeneous(const ReluNetwork& net);
bool has_integer_weights(const ReluNetwork& net);

// Integer-weight network with the same depth computing M^{k+1} f. Throws
// PreconditionError unless M * w is integral for every weight w.
ReluNetwork clear_denominators(const ReluNetwork& net, const BigInt& m);

// Bias-free integer network with ceil(log2(n+1)) hidden layers computing
// max{0, x_1, ..., x_n}.
ReluNetwork max_network(std::size_t n);

struct PolytopePair {
  SUExpression a;
  SUExpression b;
};

// f = h_B - h_A with depth(A), depth(B) <= hidden_layers(net). Requires a
// homogeneous network with integer weights.
PolytopePair compile_to_polytopes(const ReluNetwork& net);

// Exact equality of the computed functions.
Certificate functions_equal(const ReluNetwork& f, const ReluNetwork& g);

// Whether the network computes lambda * max{0, x_1, ..., x_n}.
Certificate represents_scaled_simplex(const ReluNetwork& net, const BigInt& lambda);

}  // namespace reluvol
