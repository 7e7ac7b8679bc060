#pragma once

// Random instance generators shared by the unit tests and the acceptance run.

#include <random>
#include <vector>

#include "reluvol/relu_net.hpp"

namespace reluvol::testing {

inline Point random_point(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Point p(n);
  for (auto& c : p) c = dist(rng);
  return p;
}

inline LatticePolytope random_polytope(std::mt19937_64& rng, std::size_t n, std::size_t count, long lo, long hi) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(rng, n, lo, hi));
  return hull(pts);
}

// Full-dimensional random polytope (retries until dim == n).
inline LatticePolytope random_full_polytope(std::mt19937_64& rng, std::size_t n, std::size_t count, long lo,
                                            long hi) {
  for (;;) {
    auto p = random_polytope(rng, n, count, lo, hi);
    if (p.dim() == n) return p;
  }
}

inline RatVec random_rational_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  RatVec x;
  for (std::size_t i = 0; i < n; ++i) x.emplace_back(BigInt(num(rng)), BigInt(den(rng)));
  return x;
}

struct NetShape {
  std::size_t n = 2;
  std::size_t k = 1;
  std::size_t max_width = 4;
  long lo = -3;
  long hi = 3;
  long max_den = 1;  // weights num/den with den drawn from 1..max_den
  bool biases = false;
};

inline ReluNetwork random_network(std::mt19937_64& rng, const NetShape& s, WeightRing ring) {
  std::uniform_int_distribution<long> w(s.lo, s.hi), den(1, s.max_den), width(1, static_cast<long>(s.max_width));
  std::vector<AffineLayer> layers;
  std::size_t in = s.n;
  for (std::size_t i = 0; i <= s.k; ++i) {
    const std::size_t out = i == s.k ? 1 : static_cast<std::size_t>(width(rng));
    AffineLayer layer;
    for (std::size_t r = 0; r < out; ++r) {
      RatVec row;
      for (std::size_t c = 0; c < in; ++c) row.emplace_back(BigInt(w(rng)), BigInt(den(rng)));
      layer.weights.push_back(std::move(row));
      layer.bias.push_back(s.biases ? Rational(BigInt(w(rng)), BigInt(den(rng))) : Rational(0));
    }
    layers.push_back(std::move(layer));
    in = out;
  }
  return ReluNetwork(ring, std::move(layers));
}

}  // namespace reluvol::testing
