#pragma once

// Depth bounds for networks computing max{0, x_1, ..., x_n} with N-ary
// fraction weights, volume-parity obstructions, and the refutation pipeline
// for concrete networks that claim to compute the maximum.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reluvol/certificate.hpp"
#include "reluvol/relu_net.hpp"

namespace reluvol {

struct DepthBoundReport {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> base;  // nothing for integer weights
  std::uint64_t p = 0;
  std::uint64_t k_lo = 0;  // ceil(log_p(n+1))
  std::uint64_t k_hi = 0;  // ceil(log_2(n+1))
  std::string notes;
};

DepthBoundReport lower_bound_nary(std::uint64_t n, std::uint64_t base);
DepthBoundReport lower_bound_integer(std::uint64_t n);

struct GrowthRow {
  std::uint64_t k = 0;
  std::uint64_t inputs = 0;     // F_{p^k} takes p^k inputs
  std::uint64_t not_with = 0;   // not representable with this many hidden layers
  std::uint64_t with = 0;       // representable with this many
};

// One row per k >= 1 with p^k <= n, p the smallest prime not dividing base.
std::vector<GrowthRow> gradual_growth_table(std::uint64_t n, std::uint64_t base = 10);

enum class ObstructionVerdict { obstructed, no_obstruction, inapplicable };
std::string_view obstruction_name(ObstructionVerdict v);

struct ObstructionCertificate {
  LatticePolytope polytope;
  std::size_t d = 0;
  std::uint64_t t = 0;  // d == p^t
  std::uint64_t p = 0;
  std::size_t claimed_k = 0;
  BigInt volume;
  BigInt residue;
  ObstructionVerdict verdict = ObstructionVerdict::inapplicable;
  std::string reason;
};

// Vol_{p^t}(P) mod p for dim(P) = p^t. A non-zero residue with 1 <= k <= t
// shows h_P is not computed by any integer network with k hidden layers.
ObstructionCertificate volume_obstruction_check(const LatticePolytope& p, std::size_t k, std::uint64_t prime);

struct Refutation {
  Verdict verdict = Verdict::inapplicable;  // fails = claim refuted
  std::string summary;
  std::size_t k = 0;
  std::uint64_t t = 0;
  BigInt multiplier;  // M = N^t
  BigInt lambda;
  DepthBoundReport bound;
  Certificate representation;
  std::optional<ObstructionCertificate> obstruction;
};

// Tests the claim that net computes max{0, x_1, ..., x_n}. Denominators are
// cleared with M = N^t for the least t that works; lambda defaults to
// M^{k+1}. Throws PreconditionError for biased networks, rational-ring
// networks and a wrong input count.
Refutation refute_network_claim(const ReluNetwork& net, std::size_t n, std::optional<BigInt> lambda = std::nullopt);

}  // namespace reluvol
