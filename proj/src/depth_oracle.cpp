#include "reluvol/depth_oracle.hpp"

#include "reluvol/volume_engine.hpp"

namespace reluvol {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

DepthBoundReport lower_bound_nary(std::uint64_t n, std::uint64_t base) {
  if (n < 1) throw PreconditionError("need n >= 1");
  if (base < 2) throw PreconditionError("need N >= 2");
  DepthBoundReport r;
  r.n = n;
  r.base = base;
  r.p = smallest_prime_not_dividing(base);
  r.k_lo = ceil_log(r.p, big(n) + 1);
  r.k_hi = ceil_log(2, big(n) + 1);
  r.notes = "p=" + std::to_string(r.p) + " is the smallest prime not dividing N=" + std::to_string(base) +
            "; the asymptotic C*ln(n)/ln(ln(N)) form has no explicit constant and is not evaluated";
  return r;
}

DepthBoundReport lower_bound_integer(std::uint64_t n) {
  if (n < 1) throw PreconditionError("need n >= 1");
  DepthBoundReport r;
  r.n = n;
  r.p = 2;
  r.k_lo = ceil_log(2, big(n) + 1);
  r.k_hi = r.k_lo;
  r.notes = "integer weights: the bound is tight";
  return r;
}

std::vector<GrowthRow> gradual_growth_table(std::uint64_t n, std::uint64_t base) {
  const std::uint64_t p = smallest_prime_not_dividing(base);
  std::vector<GrowthRow> rows;
  BigInt power = p;
  for (std::uint64_t k = 1; power <= big(n); ++k, power *= p) {
    GrowthRow row;
    row.k = k;
    row.inputs = power.get_ui();
    row.not_with = ceil_log(p, power + 1) - 1;
    row.with = ceil_log(2, power + 1);
    rows.push_back(row);
  }
  return rows;
}

std::string_view obstruction_name(ObstructionVerdict v) {
  switch (v) {
    case ObstructionVerdict::obstructed: return "obstructed";
    case ObstructionVerdict::no_obstruction: return "no obstruction";
    case ObstructionVerdict::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

ObstructionCertificate volume_obstruction_check(const LatticePolytope& p, std::size_t k, std::uint64_t prime) {
  ObstructionCertificate c{p, p.dim(), 0, prime, k, 0, 0, ObstructionVerdict::inapplicable, {}};
  if (!is_prime(prime)) {
    c.reason = "p=" + std::to_string(prime) + " is not prime";
    return c;
  }
  const int t = exact_log(prime, big(c.d));
  if (t < 1) {
    c.reason = "dim(P)=" + std::to_string(c.d) + " is not a positive power of p=" + std::to_string(prime);
    return c;
  }
  c.t = static_cast<std::uint64_t>(t);
  if (k < 1 || k > c.t) {
    c.reason = "claimed depth k=" + std::to_string(k) + " is outside 1.." + std::to_string(c.t);
    return c;
  }
  c.volume = normalized_volume(p, c.d);
  c.residue = mod_reduce(c.volume, big(prime)).value;
  c.verdict = c.residue != 0 ? ObstructionVerdict::obstructed : ObstructionVerdict::no_obstruction;
  c.reason = c.residue != 0 ? "Vol_" + std::to_string(c.d) + " is not divisible by " + std::to_string(prime)
                            : "volume is divisible by p; nothing is certified";
  return c;
}

Refutation refute_network_claim(const ReluNetwork& net, std::size_t n, std::optional<BigInt> lambda) {
  if (!is_homogeneous(net)) throw PreconditionError("homogeneity required (all biases zero)");
  if (net.input_dim() != n)
    throw PreconditionError("network has " + std::to_string(net.input_dim()) + " inputs, claim is about n=" +
                            std::to_string(n));
  const auto& ring = net.ring();
  if (ring.kind == WeightRing::Kind::rationals)
    throw PreconditionError("refutation needs integer or N-ary weights; Q admits no depth bound");

  Refutation r;
  r.k = net.hidden_layers();
  std::uint64_t base = 1;
  if (ring.kind == WeightRing::Kind::nary) {
    base = ring.base;
    for (const auto& layer : net.layers())
      for (const auto& row : layer.weights)
        for (const auto& w : row) r.t = std::max(r.t, NaryFraction::from_rational(w, base).t());
    r.bound = lower_bound_nary(n, base);
  } else {
    r.bound = lower_bound_integer(n);
  }
  r.multiplier = pow(big(base), r.t);
  r.lambda = lambda ? *lambda : pow(r.multiplier, r.k + 1);

  const auto cleared = clear_denominators(net, r.multiplier);
  r.representation = represents_scaled_simplex(cleared, r.lambda);

  // Below the bound, a face of lambda * simplex of dimension p^{k_lo - 1}
  // has volume lambda^d, which p does not divide.
  if (r.k >= 1 && r.k < r.bound.k_lo) {
    const std::size_t d = pow(big(r.bound.p), r.bound.k_lo - 1).get_ui();
    std::vector<Point> verts{Point(n, 0)};
    for (std::size_t i = 0; i < d; ++i) {
      Point e(n, 0);
      e[i] = r.lambda;
      verts.push_back(std::move(e));
    }
    r.obstruction = volume_obstruction_check(hull(verts), r.k, r.bound.p);
  }

  const std::string target = (r.lambda == 1 ? "" : r.lambda.get_str() + " * ") + "F_" + std::to_string(n);
  if (!r.representation.holds()) {
    r.verdict = Verdict::fails;
    r.summary = "refuted: the network does not compute " + target + " (witness direction attached)";
  } else if (r.obstruction && r.obstruction->verdict == ObstructionVerdict::obstructed) {
    // A verified representation below the bound contradicts the obstruction.
    r.verdict = Verdict::fails;
    r.summary = "contradiction: representation verified below the depth bound; obstruction attached";
  } else {
    r.verdict = Verdict::holds;
    r.summary = "represents " + target + "; depth k=" + std::to_string(r.k) + " is consistent with the bound k_lo=" +
                std::to_string(r.bound.k_lo) + " (p=" + std::to_string(r.bound.p) + ")";
  }
  if (r.verdict == Verdict::fails && r.obstruction && r.obstruction->verdict == ObstructionVerdict::obstructed &&
      !r.representation.holds())
    r.summary += "; independently, Vol_" + std::to_string(r.obstruction->d) + " of a face of the scaled simplex is " +
                 r.obstruction->volume.get_str() + ", not divisible by " + std::to_string(r.bound.p) +
                 ", so no " + std::to_string(r.k) + "-hidden-layer network computes it";
  return r;
}

}  // namespace reluvol
