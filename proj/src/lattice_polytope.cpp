#include "reluvol/lattice_polytope.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <string>

#include "double_description.hpp"
#include "reluvol/kernels/count_kernel.hpp"

namespace reluvol {

namespace {

std::atomic<std::size_t> g_max_dim{0};

std::size_t env_max_dim() {
  if (const char* s = std::getenv("RELUVOL_MAX_DIM")) {
    try {
      long v = std::stol(s);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return 8;
}

}  // namespace

std::size_t max_ambient_dim() {
  std::size_t v = g_max_dim.load();
  if (v == 0) {
    v = env_max_dim();
    g_max_dim.store(v);
  }
  return v;
}

void set_max_ambient_dim(std::size_t n) { g_max_dim.store(n == 0 ? env_max_dim() : n); }

// ---------------------------------------------------------------------------
// LatticeChart

LatticeChart::LatticeChart(Point base, IntMat directions)
    : base_(std::move(base)), directions_(std::move(directions)) {
  for (const auto& row : directions_) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) throw InternalError("chart direction is zero");
    if (!pivots_.empty() && p <= pivots_.back()) throw InternalError("chart directions not in echelon form");
    pivots_.push_back(p);
  }
}

LatticeChart LatticeChart::of_points(std::span<const Point> points) {
  if (points.empty()) throw Error("chart of an empty point set");
  const std::size_t n = points.front().size();
  const Point base = *std::min_element(points.begin(), points.end());
  IntMat edges;
  for (const auto& p : points) {
    if (p == base) continue;
    IntVec e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = p[i] - base[i];
    edges.push_back(std::move(e));
  }
  const std::size_t d = rank(edges);
  if (d == 0) return LatticeChart(base, {});
  if (d == n) {
    IntMat id(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return LatticeChart(Point(n, 0), std::move(id));
  }
  // The affine-hull lattice is the saturation of the edge lattice: integer
  // points orthogonal to every rational normal of the hull.
  const IntMat normals = nullspace(edges, n);
  IntMat basis = integer_kernel(normals, n);
  if (basis.size() != d) throw InternalError("lattice chart: kernel rank mismatch");
  return LatticeChart(base, row_hnf(std::move(basis)));
}

bool LatticeChart::is_identity() const {
  const std::size_t n = ambient_dim();
  if (dim() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (base_[i] != 0) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (directions_[i][j] != (i == j ? 1 : 0)) return false;
  }
  return true;
}

Point LatticeChart::push(std::span<const BigInt> y) const {
  Point x = base_;
  for (std::size_t i = 0; i < directions_.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += y[i] * directions_[i][j];
  return x;
}

Point LatticeChart::pull(std::span<const BigInt> x) const {
  const std::size_t n = ambient_dim();
  if (x.size() != n) throw DimensionMismatch("chart pullback: dimension mismatch");
  IntVec rest(n);
  for (std::size_t j = 0; j < n; ++j) rest[j] = x[j] - base_[j];
  Point y(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    const std::size_t p = pivots_[i];
    if (!mpz_divisible_p(rest[p].get_mpz_t(), directions_[i][p].get_mpz_t()))
      throw Error("point is not a lattice point of the chart");
    mpz_divexact(y[i].get_mpz_t(), rest[p].get_mpz_t(), directions_[i][p].get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) rest[j] -= y[i] * directions_[i][j];
  }
  for (const auto& r : rest)
    if (r != 0) throw Error("point is off the affine hull of the chart");
  return y;
}

// ---------------------------------------------------------------------------
// LatticePolytope

struct LatticePolytope::Impl {
  std::size_t n = 0;
  std::vector<Point> vertices;

  mutable std::once_flag chart_once;
  mutable LatticeChart chart;
  mutable std::vector<Point> chart_vertices;

  mutable std::once_flag facets_once;
  mutable std::vector<Facet> facets;
  mutable std::vector<VertexSet> incidence;

  void ensure_chart() const {
    std::call_once(chart_once, [this] {
      chart = LatticeChart::of_points(vertices);
      chart_vertices.reserve(vertices.size());
      for (const auto& v : vertices) chart_vertices.push_back(chart.pull(v));
    });
  }

  void ensure_facets() const {
    ensure_chart();
    std::call_once(facets_once, [this] {
      if (chart.dim() == 0) return;
      for (auto& f : detail::hull_facets(chart_vertices)) {
        facets.push_back(Facet{std::move(f.normal), std::move(f.offset)});
        incidence.push_back(std::move(f.incident));
      }
    });
  }
};

LatticePolytope LatticePolytope::from_vertices(std::size_t n, std::vector<Point> sorted_vertices) {
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->vertices = std::move(sorted_vertices);
  return LatticePolytope(std::move(impl));
}

LatticePolytope LatticePolytope::point(Point p) {
  if (p.empty()) throw Error("points need a positive ambient dimension");
  const std::size_t n = p.size();
  return from_vertices(n, {std::move(p)});
}

LatticePolytope LatticePolytope::hull(std::span<const Point> input) {
  if (input.empty()) throw Error("hull of an empty point set");
  const std::size_t n = input.front().size();
  if (n == 0) throw Error("points need a positive ambient dimension");
  if (n > max_ambient_dim())
    throw PreconditionError("ambient dimension " + std::to_string(n) + " exceeds the limit " +
                            std::to_string(max_ambient_dim()) + " (set RELUVOL_MAX_DIM)");
  for (const auto& p : input)
    if (p.size() != n) throw DimensionMismatch("hull: points of different dimensions");

  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return from_vertices(n, std::move(pts));

  LatticeChart chart = LatticeChart::of_points(pts);
  std::vector<Point> ys;
  ys.reserve(pts.size());
  for (const auto& p : pts) ys.push_back(chart.pull(p));
  const std::size_t d = chart.dim();

  auto facets = detail::hull_facets(ys);

  // A point is a vertex iff the normals of the facets through it have full rank.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    IntMat normals;
    for (const auto& f : facets)
      if (f.incident.test(i)) normals.push_back(f.normal);
    if (normals.size() >= d && rank(normals) == d) keep.push_back(i);
  }

  auto impl = std::make_shared<Impl>();
  impl->n = n;
  for (auto i : keep) {
    impl->vertices.push_back(std::move(pts[i]));
    impl->chart_vertices.push_back(std::move(ys[i]));
  }
  impl->chart = std::move(chart);
  for (auto& f : facets) {
    VertexSet inc(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (f.incident.test(keep[k])) inc.set(k);
    impl->facets.push_back(Facet{std::move(f.normal), std::move(f.offset)});
    impl->incidence.push_back(std::move(inc));
  }
  std::call_once(impl->chart_once, [] {});
  std::call_once(impl->facets_once, [] {});
  return LatticePolytope(std::move(impl));
}

std::size_t LatticePolytope::ambient_dim() const { return impl_->n; }
const std::vector<Point>& LatticePolytope::vertices() const { return impl_->vertices; }
std::size_t LatticePolytope::dim() const { return chart().dim(); }

const LatticeChart& LatticePolytope::chart() const {
  impl_->ensure_chart();
  return impl_->chart;
}

const std::vector<Point>& LatticePolytope::chart_vertices() const {
  impl_->ensure_chart();
  return impl_->chart_vertices;
}

const std::vector<Facet>& LatticePolytope::chart_facets() const {
  impl_->ensure_facets();
  return impl_->facets;
}

const std::vector<VertexSet>& LatticePolytope::facet_incidence() const {
  impl_->ensure_facets();
  return impl_->incidence;
}

LatticePolytope LatticePolytope::face_from_set(const VertexSet& set) const {
  std::vector<Point> verts;
  for (std::size_t i = 0; i < vertices().size(); ++i)
    if (set.test(i)) verts.push_back(vertices()[i]);
  if (verts.empty()) throw Error("empty face");
  return from_vertices(ambient_dim(), std::move(verts));
}

bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
  return a.impl_ == b.impl_ || (a.ambient_dim() == b.ambient_dim() && a.vertices() == b.vertices());
}

bool operator<(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
  return a.vertices() < b.vertices();
}

// ---------------------------------------------------------------------------
// Operations

LatticePolytope hull(std::span<const Point> points) { return LatticePolytope::hull(points); }

LatticePolytope standard_simplex(std::size_t n) {
  if (n == 0) throw Error("standard simplex needs n >= 1");
  std::vector<Point> pts;
  pts.emplace_back(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n, 0);
    e[i] = 1;
    pts.push_back(std::move(e));
  }
  return hull(pts);
}

namespace {

void require_same_dim(const LatticePolytope& p, const LatticePolytope& q, const char* what) {
  if (p.ambient_dim() != q.ambient_dim())
    throw DimensionMismatch(std::string(what) + ": ambient dimensions " + std::to_string(p.ambient_dim()) +
                            " and " + std::to_string(q.ambient_dim()) + " differ");
}

}  // namespace

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  require_same_dim(p, q, "minkowski_sum");
  if (q.num_vertices() == 1) return translate(p, q.vertices().front());
  if (p.num_vertices() == 1) return translate(q, p.vertices().front());
  std::vector<Point> pts;
  pts.reserve(p.num_vertices() * q.num_vertices());
  const std::size_t n = p.ambient_dim();
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      Point s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = a[i] + b[i];
      pts.push_back(std::move(s));
    }
  }
  return hull(pts);
}

LatticePolytope minkowski_sum(std::span<const LatticePolytope> parts) {
  if (parts.empty()) throw Error("Minkowski sum of nothing");
  LatticePolytope acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = minkowski_sum(acc, parts[i]);
  return acc;
}

LatticePolytope dilate(const LatticePolytope& p, const BigInt& lambda) {
  if (lambda < 0) throw Error("dilation factor must be non-negative");
  if (lambda == 0) return LatticePolytope::point(Point(p.ambient_dim(), 0));
  if (lambda == 1) return p;
  std::vector<Point> verts = p.vertices();
  for (auto& v : verts)
    for (auto& c : v) c *= lambda;
  return hull(verts);
}

LatticePolytope translate(const LatticePolytope& p, std::span<const BigInt> v) {
  if (v.size() != p.ambient_dim()) throw DimensionMismatch("translate: dimension mismatch");
  std::vector<Point> verts = p.vertices();
  for (auto& x : verts)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += v[i];
  return hull(verts);
}

LatticePolytope conv_union(const LatticePolytope& a, const LatticePolytope& b) {
  require_same_dim(a, b, "conv_union");
  if (a == b) return a;
  std::vector<Point> pts = a.vertices();
  pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
  return hull(pts);
}

Rational support(const LatticePolytope& p, std::span<const Rational> u) {
  if (u.size() != p.ambient_dim()) throw DimensionMismatch("support: direction has wrong dimension");
  Rational best = dot(u, p.vertices().front());
  for (std::size_t i = 1; i < p.num_vertices(); ++i) best = std::max(best, dot(u, p.vertices()[i]));
  return best;
}

BigInt support(const LatticePolytope& p, std::span<const BigInt> u) {
  if (u.size() != p.ambient_dim()) throw DimensionMismatch("support: direction has wrong dimension");
  BigInt best = dot(u, p.vertices().front());
  for (std::size_t i = 1; i < p.num_vertices(); ++i) {
    BigInt v = dot(u, p.vertices()[i]);
    if (v > best) best = v;
  }
  return best;
}

LatticePolytope face(const LatticePolytope& p, std::span<const Rational> u) {
  const Rational h = support(p, u);
  VertexSet set(p.num_vertices());
  for (std::size_t i = 0; i < p.num_vertices(); ++i)
    if (dot(u, p.vertices()[i]) == h) set.set(i);
  if (set.count() == p.num_vertices()) return p;
  return p.face_from_set(set);
}

std::vector<VertexSet> facets_of_face(const LatticePolytope& p, const VertexSet& f) {
  std::vector<VertexSet> cands;
  for (const auto& g : p.facet_incidence()) {
    VertexSet c = f & g;
    if (c.none() || c == f) continue;
    cands.push_back(std::move(c));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cands.size() && maximal; ++j)
      if (i != j && cands[i].is_proper_subset_of(cands[j])) maximal = false;
    if (maximal) out.push_back(cands[i]);
  }
  return out;
}

std::vector<LatticePolytope> faces_of_dim(const LatticePolytope& p, std::size_t d) {
  const std::size_t top = p.dim();
  if (d > top) return {};
  if (d == top) return {p};
  std::set<VertexSet> level(p.facet_incidence().begin(), p.facet_incidence().end());
  for (std::size_t cur = top - 1; cur > d; --cur) {
    std::set<VertexSet> next;
    for (const auto& f : level)
      for (auto& g : facets_of_face(p, f)) next.insert(std::move(g));
    level = std::move(next);
  }
  std::vector<LatticePolytope> out;
  out.reserve(level.size());
  for (const auto& f : level) out.push_back(p.face_from_set(f));
  std::sort(out.begin(), out.end());
  return out;
}

const LatticeChart& lattice_chart(const LatticePolytope& p) { return p.chart(); }

BigInt lattice_points_count(const LatticePolytope& p) { return lattice_points_count_dilate(p, 1); }

BigInt lattice_points_count_dilate(const LatticePolytope& p, std::uint64_t t) {
  const std::size_t d = p.dim();
  if (d == 0 || t == 0) return 1;
  const BigInt tt(static_cast<unsigned long>(t));
  const auto& cv = p.chart_vertices();
  IntVec lo = cv.front(), hi = cv.front();
  for (const auto& v : cv) {
    for (std::size_t i = 0; i < d; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] *= tt;
    hi[i] *= tt;
  }
  std::vector<IntVec> normals;
  IntVec rhs;
  for (const auto& f : p.chart_facets()) {
    normals.push_back(f.normal);
    rhs.push_back(f.offset * tt);
  }
  return kernels::count_box_exact(normals, rhs, lo, hi);
}

bool equal(const LatticePolytope& p, const LatticePolytope& q) {
  require_same_dim(p, q, "equal");
  return p == q;
}

std::vector<AmbientHalfspace> h_representation(const LatticePolytope& p) {
  const std::size_t n = p.ambient_dim();
  const auto& chart = p.chart();
  const IntMat& w = chart.directions();
  const std::size_t d = chart.dim();
  std::vector<AmbientHalfspace> out;

  auto finish = [&](IntVec u) {
    make_primitive(u);
    BigInt off = support(p, std::span<const BigInt>(u));
    out.push_back(AmbientHalfspace{std::move(u), std::move(off)});
  };

  if (d > 0) {
    // Ambient normal u with W u = c: u = W^T z, (W W^T) z = c.
    IntMat gram(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) gram[i][j] = dot(w[i], w[j]);
    for (const auto& f : p.chart_facets()) {
      RatVec z;
      if (!solve_in_row_space(gram, f.normal, z)) throw InternalError("h_representation: singular Gram matrix");
      BigInt l = 1;
      for (const auto& e : z) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.den().get_mpz_t());
      IntVec u(n, 0);
      for (std::size_t i = 0; i < d; ++i) {
        const BigInt zi = z[i].num() * (l / z[i].den());
        for (std::size_t j = 0; j < n; ++j) u[j] += zi * w[i][j];
      }
      finish(std::move(u));
    }
  }
  IntMat eqs = d == 0 ? IntMat{} : nullspace(w, n);
  if (d == 0)
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      eqs.push_back(std::move(e));
    }
  for (auto& k : eqs) {
    IntVec neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -k[j];
    finish(std::move(k));
    finish(std::move(neg));
  }
  return out;
}

std::optional<IntVec> separating_direction(const LatticePolytope& p, const LatticePolytope& q) {
  require_same_dim(p, q, "separating_direction");
  if (p == q) return std::nullopt;
  for (const auto* side : {&p, &q}) {
    std::vector<IntVec> normals;
    for (auto& hs : h_representation(*side)) normals.push_back(std::move(hs.normal));
    std::sort(normals.begin(), normals.end());
    for (const auto& u : normals)
      if (support(p, u) != support(q, u)) return u;
  }
  throw InternalError("distinct polytopes with identical support on every facet normal");
}

}  // namespace reluvol
