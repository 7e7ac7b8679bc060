#include "double_description.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace reluvol::detail {

namespace {

struct Ray {
  IntVec r;  // (r0, c): r0 + c . y >= 0 on the hull
  VertexSet zeros;
};

}  // namespace

std::vector<HullFacet> hull_facets(const std::vector<Point>& points) {
  const std::size_t m = points.size();
  const std::size_t d = points.front().size();
  const std::size_t D = d + 1;

  std::vector<IntVec> rows(m, IntVec(D));
  for (std::size_t i = 0; i < m; ++i) {
    rows[i][0] = 1;
    for (std::size_t j = 0; j < d; ++j) rows[i][j + 1] = points[i][j];
  }

  if (d == 1) {
    // Interval: the two endpoints are the facets.
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < m; ++i) {
      if (points[i][0] < points[lo][0]) lo = i;
      if (points[i][0] > points[hi][0]) hi = i;
    }
    HullFacet left{{BigInt(-1)}, BigInt(-points[lo][0]), VertexSet(m)};
    HullFacet right{{BigInt(1)}, points[hi][0], VertexSet(m)};
    left.incident.set(lo);
    right.incident.set(hi);
    return {std::move(left), std::move(right)};
  }

  // Greedy affinely independent start, then a fixed pseudo-random order for
  // the rest (insertion order only affects speed, never the result).
  std::vector<std::size_t> basis;
  IntMat chosen;
  for (std::size_t i = 0; i < m && basis.size() < D; ++i) {
    chosen.push_back(rows[i]);
    if (rank(chosen) == chosen.size()) {
      basis.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  if (basis.size() != D) throw InternalError("hull_facets: points are not full-dimensional");

  std::vector<std::size_t> order;
  {
    std::vector<bool> in_basis(m, false);
    for (auto i : basis) in_basis[i] = true;
    for (std::size_t i = 0; i < m; ++i)
      if (!in_basis[i]) order.push_back(i);
    std::mt19937_64 rng(0x5eed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(order[i - 1], order[j]);
    }
  }

  // Initial rays: columns of the adjugate of the basis matrix, oriented so
  // that each is strictly positive on exactly one basis row.
  std::vector<Ray> rays;
  {
    IntMat a0;
    for (auto i : basis) a0.push_back(rows[i]);
    const BigInt det = determinant(a0);
    for (std::size_t j = 0; j < D; ++j) {
      IntVec col(D);
      for (std::size_t i = 0; i < D; ++i) {
        IntMat minor;
        for (std::size_t r = 0; r < D; ++r) {
          if (r == j) continue;
          IntVec mr;
          for (std::size_t c = 0; c < D; ++c)
            if (c != i) mr.push_back(a0[r][c]);
          minor.push_back(std::move(mr));
        }
        BigInt cof = determinant(std::move(minor));
        if ((i + j) % 2 == 1) cof = -cof;
        col[i] = det < 0 ? BigInt(-cof) : cof;
      }
      make_primitive(col);
      Ray ray{std::move(col), VertexSet(m)};
      for (std::size_t r = 0; r < D; ++r)
        if (r != j) ray.zeros.set(basis[r]);
      rays.push_back(std::move(ray));
    }
  }

  std::vector<BigInt> val;
  for (std::size_t idx : order) {
    const IntVec& a = rows[idx];
    val.resize(rays.size());
    bool any_neg = false;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(a, rays[k].r);
      if (val[k] < 0) any_neg = true;
    }
    if (!any_neg) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (val[k] == 0) rays[k].zeros.set(idx);
      continue;
    }

    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] > 0) pos.push_back(k);
      else if (val[k] < 0) neg.push_back(k);
    }

    std::vector<Ray> fresh;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        VertexSet common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < D) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (common.is_subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec r(D);
        for (std::size_t c = 0; c < D; ++c) r[c] = val[p] * rays[q].r[c] - val[q] * rays[p].r[c];
        make_primitive(r);
        common.set(idx);
        fresh.push_back(Ray{std::move(r), std::move(common)});
      }
    }

    std::vector<Ray> next;
    next.reserve(rays.size() - neg.size() + fresh.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] < 0) continue;
      if (val[k] == 0) rays[k].zeros.set(idx);
      next.push_back(std::move(rays[k]));
    }
    for (auto& r : fresh) next.push_back(std::move(r));
    rays = std::move(next);
  }

  std::vector<HullFacet> out;
  out.reserve(rays.size());
  for (auto& ray : rays) {
    // r0 + c . y >= 0  <=>  (-c) . y <= r0
    IntVec normal(d);
    for (std::size_t j = 0; j < d; ++j) normal[j] = -ray.r[j + 1];
    out.push_back(HullFacet{std::move(normal), ray.r[0], std::move(ray.zeros)});
  }
  return out;
}

}  // namespace reluvol::detail
