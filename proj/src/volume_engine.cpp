#include "reluvol/volume_engine.hpp"

#include <array>
#include <map>
#include <mutex>
#include <sstream>

namespace reluvol {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "inapplicable";
}

std::string describe(const LatticePolytope& p) {
  std::ostringstream os;
  os << "conv{";
  for (std::size_t i = 0; i < p.num_vertices(); ++i) {
    if (i) os << ",";
    os << "(";
    const auto& v = p.vertices()[i];
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j].get_str();
    os << ")";
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Triangulation volume

namespace {

class Triangulator {
 public:
  explicit Triangulator(const LatticePolytope& p) : p_(p) {}

  void run(const VertexSet& face, std::size_t dim, std::vector<std::size_t>& apexes,
           std::vector<std::vector<std::size_t>>& out) {
    if (face.count() == dim + 1) {
      std::vector<std::size_t> simplex = apexes;
      for (auto i = face.find_first(); i != VertexSet::npos; i = face.find_next(i)) simplex.push_back(i);
      out.push_back(std::move(simplex));
      return;
    }
    const std::size_t apex = face.find_first();
    apexes.push_back(apex);
    for (const auto& g : facets(face))
      if (!g.test(apex)) run(g, dim - 1, apexes, out);
    apexes.pop_back();
  }

 private:
  const std::vector<VertexSet>& facets(const VertexSet& face) {
    auto it = memo_.find(face);
    if (it == memo_.end()) it = memo_.emplace(face, facets_of_face(p_, face)).first;
    return it->second;
  }

  const LatticePolytope& p_;
  std::map<VertexSet, std::vector<VertexSet>> memo_;
};

}  // namespace

std::vector<std::vector<std::size_t>> triangulate(const LatticePolytope& p) {
  std::vector<std::vector<std::size_t>> out;
  VertexSet all(p.num_vertices());
  all.set();
  std::vector<std::size_t> apexes;
  Triangulator(p).run(all, p.dim(), apexes, out);
  return out;
}

BigInt normalized_volume(const LatticePolytope& p, std::size_t d) {
  if (d > p.ambient_dim())
    throw PreconditionError("Vol_" + std::to_string(d) + " requested in ambient dimension " +
                            std::to_string(p.ambient_dim()));
  if (d == 0) return 1;
  if (p.dim() != d) return 0;
  const auto& cv = p.chart_vertices();
  BigInt total = 0;
  for (const auto& simplex : triangulate(p)) {
    IntMat m;
    m.reserve(d);
    const Point& w0 = cv[simplex[0]];
    for (std::size_t k = 1; k <= d; ++k) {
      IntVec row(d);
      for (std::size_t j = 0; j < d; ++j) row[j] = cv[simplex[k]][j] - w0[j];
      m.push_back(std::move(row));
    }
    total += abs(determinant(std::move(m)));
  }
  return total;
}

VolumeReport volume_report(const LatticePolytope& p, std::size_t d) {
  return VolumeReport{d, normalized_volume(p, d), VolumeMethod::triangulation};
}

// ---------------------------------------------------------------------------
// Ehrhart oracle

EhrhartFit ehrhart_fit(const LatticePolytope& p, std::size_t d, std::uint64_t t_max) {
  if (p.dim() != d)
    throw PreconditionError("counting oracle needs dim(P) == d (dim is " + std::to_string(p.dim()) + ")");
  if (t_max < d + 1) throw PreconditionError("counting oracle needs t_max >= d + 1");
  EhrhartFit fit;
  for (std::uint64_t t = 0; t <= t_max; ++t) fit.counts.push_back(lattice_points_count_dilate(p, t));

  // Newton forward differences at t = 0: G(t) = sum_k diff[k] * binom(t, k).
  std::vector<BigInt> row = fit.counts;
  for (std::size_t k = 0; k <= t_max; ++k) {
    fit.differences.push_back(row.front());
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  for (std::size_t k = d + 1; k < fit.differences.size(); ++k)
    if (fit.differences[k] != 0)
      throw InternalError("Ehrhart interpolation inconsistency: counts are not a degree-" + std::to_string(d) +
                          " polynomial");
  // Leading coefficient is diff[d] / d!, so d! times it is diff[d].
  fit.volume = fit.differences[d];
  return fit;
}

BigInt normalized_volume_counting_oracle(const LatticePolytope& p, std::size_t d, std::uint64_t t_max) {
  return ehrhart_fit(p, d, t_max).volume;
}

// ---------------------------------------------------------------------------
// Mixed volumes

namespace {

// Raw inclusion-exclusion sum over sub-multisets of distinct polytopes with
// multiplicities; memo is keyed by the multiplicity vector.
BigInt polarization_sum(const std::vector<LatticePolytope>& distinct, const std::vector<std::size_t>& mult,
                        std::size_t d, std::map<std::vector<std::size_t>, BigInt>& memo) {
  const std::size_t k = distinct.size();
  std::vector<std::size_t> a(k, 0);
  BigInt total = 0;
  for (;;) {
    std::size_t i = 0;
    while (i < k && a[i] == mult[i]) a[i++] = 0;
    if (i == k) break;
    ++a[i];

    std::size_t size = 0;
    BigInt weight = 1;
    for (std::size_t j = 0; j < k; ++j) {
      size += a[j];
      weight *= binomial(mult[j], a[j]);
    }
    auto it = memo.find(a);
    if (it == memo.end()) {
      std::vector<LatticePolytope> parts;
      for (std::size_t j = 0; j < k; ++j)
        if (a[j] > 0) parts.push_back(dilate(distinct[j], BigInt(static_cast<unsigned long>(a[j]))));
      it = memo.emplace(a, normalized_volume(minkowski_sum(parts), d)).first;
    }
    if ((d - size) % 2 == 0) total += weight * it->second;
    else total -= weight * it->second;
  }
  return total;
}

void validate_polarization(std::size_t d) {
  static std::array<std::once_flag, 64> flags;
  if (d >= flags.size()) return;
  std::call_once(flags[d], [d] {
    const auto simplex = standard_simplex(d);
    std::map<std::vector<std::size_t>, BigInt> memo;
    const BigInt raw = polarization_sum({simplex}, {d}, d, memo);
    if (raw != polarization_denominator(d) * normalized_volume(simplex, d))
      throw InternalError("polarization constant fails V(S,...,S) == Vol_d(S) on the standard simplex");
  });
}

struct Grouped {
  std::vector<LatticePolytope> distinct;
  std::vector<std::size_t> mult;
};

Grouped co_chart(std::span<const LatticePolytope> polys, std::size_t d) {
  if (polys.empty()) throw PreconditionError("mixed volume of no polytopes");
  const std::size_t n = polys.front().ambient_dim();
  for (const auto& p : polys)
    if (p.ambient_dim() != n) throw DimensionMismatch("mixed volume: ambient dimensions differ");
  if (d > n) throw PreconditionError("mixed volume dimension exceeds the ambient dimension");

  // Translate each input to contain the origin so the sum spans a subspace.
  Grouped g;
  std::vector<LatticePolytope> shifted;
  for (const auto& p : polys) {
    IntVec neg = p.vertices().front();
    for (auto& c : neg) c = -c;
    shifted.push_back(translate(p, neg));
  }
  const auto sum = minkowski_sum(shifted);
  if (sum.dim() > d)
    throw PreconditionError("polytopes are not co-chartable in dimension " + std::to_string(d) +
                            " (their sum has dimension " + std::to_string(sum.dim()) + ")");
  for (auto& s : shifted) {
    std::size_t j = 0;
    while (j < g.distinct.size() && !(g.distinct[j] == s)) ++j;
    if (j == g.distinct.size()) {
      g.distinct.push_back(s);
      g.mult.push_back(0);
    }
    ++g.mult[j];
  }
  return g;
}

BigInt finish_mixed(const BigInt& raw, std::size_t d) {
  const BigInt den = polarization_denominator(d);
  if (!mpz_divisible_p(raw.get_mpz_t(), den.get_mpz_t()) || raw < 0)
    throw InternalError("mixed volume is not a non-negative integer");
  return raw / den;
}

}  // namespace

BigInt polarization_denominator(std::size_t d) { return factorial(d); }

BigInt mixed_volume(std::span<const LatticePolytope> polys) {
  const std::size_t d = polys.size();
  auto g = co_chart(polys, d);
  validate_polarization(d);
  std::map<std::vector<std::size_t>, BigInt> memo;
  return finish_mixed(polarization_sum(g.distinct, g.mult, d, memo), d);
}

BinomialExpansion binomial_expansion_check(const LatticePolytope& a, const LatticePolytope& b, std::size_t d) {
  if (d == 0) throw PreconditionError("binomial expansion needs d >= 1");
  const std::array<LatticePolytope, 2> pair{a, b};
  const auto g = co_chart(pair, d);
  validate_polarization(d);

  BinomialExpansion out;
  out.d = d;
  std::map<std::vector<std::size_t>, BigInt> memo;
  for (std::size_t i = 0; i <= d; ++i) {
    BigInt v;
    if (g.distinct.size() == 1) {
      v = normalized_volume(g.distinct.front(), d);
    } else {
      v = finish_mixed(polarization_sum(g.distinct, {i, d - i}, d, memo), d);
    }
    out.terms.push_back(binomial(d, i) * v);
    out.total += out.terms.back();
  }
  out.volume_of_sum = normalized_volume(minkowski_sum(a, b), d);
  out.holds = out.total == out.volume_of_sum;
  return out;
}

// ---------------------------------------------------------------------------
// Divisibility checks

Certificate modular_additivity_check(std::span<const LatticePolytope> parts, std::uint64_t p, std::uint64_t t) {
  if (t == 0) {
    Certificate c;
    c.claim = "Vol_d(sum P_i) == sum Vol_d(P_i) (mod p) for d = p^t";
    c.verdict = Verdict::inapplicable;
    c.reason = "t must be at least 1";
    return c;
  }
  const BigInt d = pow(BigInt(static_cast<unsigned long>(p)), t);
  if (!d.fits_ulong_p()) throw PreconditionError("p^t is too large");
  return modular_additivity_check_dim(parts, p, d.get_ui());
}

Certificate modular_additivity_check_dim(std::span<const LatticePolytope> parts, std::uint64_t p, std::size_t d) {
  Certificate c;
  c.claim = "Vol_d(sum P_i) == sum Vol_d(P_i) (mod p) for d a power of p";
  c.inputs.emplace_back("p", std::to_string(p));
  c.inputs.emplace_back("d", std::to_string(d));
  for (std::size_t i = 0; i < parts.size(); ++i) c.inputs.emplace_back("P" + std::to_string(i + 1), describe(parts[i]));
  c.verdict = Verdict::inapplicable;
  if (parts.empty()) {
    c.reason = "no parts given";
    return c;
  }
  if (!is_prime(p)) {
    c.reason = "p=" + std::to_string(p) + " is not prime";
    return c;
  }
  if (exact_log(p, BigInt(static_cast<unsigned long>(d))) < 1) {
    c.reason = "d=" + std::to_string(d) + " is not a power of p=" + std::to_string(p);
    return c;
  }
  const std::size_t n = parts.front().ambient_dim();
  if (d > n) {
    c.reason = "d=" + std::to_string(d) + " exceeds the ambient dimension " + std::to_string(n);
    return c;
  }
  const auto sum = minkowski_sum(parts);
  if (sum.dim() > d) {
    c.reason = "the sum has dimension " + std::to_string(sum.dim()) + " > d";
    return c;
  }
  const BigInt pp(static_cast<unsigned long>(p));
  const BigInt lhs = normalized_volume(sum, d);
  c.witness_volumes.push_back({"Vol_d(sum)", lhs});
  BigInt rhs = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    BigInt v = normalized_volume(parts[i], d);
    c.witness_volumes.push_back({"Vol_d(P" + std::to_string(i + 1) + ")", v});
    rhs += v;
  }
  c.witness_volumes.push_back({"sum Vol_d(P_i)", rhs});
  const auto l = mod_reduce(lhs, pp), r = mod_reduce(rhs, pp);
  c.witness_values.push_back({"lhs mod p", l.value});
  c.witness_values.push_back({"rhs mod p", r.value});
  c.verdict = l.value == r.value ? Verdict::holds : Verdict::fails;
  c.reason = lhs.get_str() + (c.holds() ? " == " : " != ") + rhs.get_str() + " (mod " + pp.get_str() + ")";
  return c;
}

Certificate join_divisibility_check(const LatticePolytope& a, const LatticePolytope& b) {
  Certificate c;
  c.claim = "Vol_{i+j+1}(conv(A u B)) divisible by Vol_i(A) * Vol_j(B)";
  c.inputs.emplace_back("A", describe(a));
  c.inputs.emplace_back("B", describe(b));
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("join: ambient dimensions differ");
  const std::size_t i = a.dim(), j = b.dim();
  const auto p = conv_union(a, b);
  if (p.dim() != i + j + 1) {
    c.verdict = Verdict::inapplicable;
    c.reason = "not in skew position: dim conv(A u B) = " + std::to_string(p.dim()) + ", expected " +
               std::to_string(i + j + 1);
    return c;
  }
  const BigInt vp = normalized_volume(p, i + j + 1);
  const BigInt va = normalized_volume(a, i);
  const BigInt vb = normalized_volume(b, j);
  c.witness_volumes = {{"Vol_" + std::to_string(i + j + 1) + "(conv(A u B))", vp},
                       {"Vol_" + std::to_string(i) + "(A)", va},
                       {"Vol_" + std::to_string(j) + "(B)", vb}};
  const BigInt prod = va * vb;
  const bool ok = mpz_divisible_p(vp.get_mpz_t(), prod.get_mpz_t()) != 0;
  c.verdict = ok ? Verdict::holds : Verdict::fails;
  c.reason = vp.get_str() + (ok ? " is" : " is not") + " divisible by " + prod.get_str();
  return c;
}

Certificate face_volume_propagation_check(const LatticePolytope& p, std::size_t s, std::size_t d, const BigInt& m) {
  Certificate c;
  c.claim = "Vol_s(F) == 0 (mod m) on all s-faces implies Vol_d(P) == 0 (mod m)";
  c.inputs = {{"P", describe(p)}, {"s", std::to_string(s)}, {"d", std::to_string(d)}, {"m", m.get_str()}};
  c.verdict = Verdict::inapplicable;
  if (!(s < d) || d > p.ambient_dim() || m < 2) {
    c.reason = "requires s < d <= n and m >= 2";
    return c;
  }
  if (p.dim() > d) {
    c.reason = "dim(P) = " + std::to_string(p.dim()) + " exceeds d";
    return c;
  }
  bool hypothesis = true;
  const auto faces = faces_of_dim(p, s);
  for (std::size_t k = 0; k < faces.size(); ++k) {
    BigInt v = normalized_volume(faces[k], s);
    if (mod_reduce(v, m).value != 0) hypothesis = false;
    c.witness_volumes.push_back({"Vol_s(F" + std::to_string(k + 1) + ")", std::move(v)});
  }
  if (!hypothesis) {
    c.reason = "hypothesis not met: some s-face volume is not divisible by m";
    return c;
  }
  const BigInt vd = normalized_volume(p, d);
  c.witness_volumes.push_back({"Vol_d(P)", vd});
  const bool ok = mod_reduce(vd, m).value == 0;
  c.verdict = ok ? Verdict::holds : Verdict::fails;
  c.reason = "Vol_d(P) = " + vd.get_str() + (ok ? " == 0" : " != 0") + " (mod " + m.get_str() + ")";
  return c;
}

}  // namespace reluvol
