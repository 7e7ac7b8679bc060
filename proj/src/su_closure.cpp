#include "reluvol/su_closure.hpp"

#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "reluvol/volume_engine.hpp"

namespace reluvol {

struct SUExpression::Node {
  Kind kind;
  std::size_t depth;
  std::size_t n;
  Point point;
  std::vector<SUExpression> children;
};

SUExpression SUExpression::point(Point p) {
  if (p.empty()) throw Error("SU point needs a positive ambient dimension");
  const std::size_t n = p.size();
  return SUExpression(std::make_shared<const Node>(Node{Kind::point, 0, n, std::move(p), {}}));
}

SUExpression SUExpression::sum(std::vector<SUExpression> children) {
  if (children.empty()) throw Error("SU sum needs at least one summand");
  std::size_t depth = 0;
  const std::size_t n = children.front().ambient_dim();
  for (const auto& c : children) {
    if (c.ambient_dim() != n) throw DimensionMismatch("SU sum: summands of different dimensions");
    depth = std::max(depth, c.depth());
  }
  return SUExpression(std::make_shared<const Node>(Node{Kind::sum, depth, n, {}, std::move(children)}));
}

SUExpression SUExpression::convunion(SUExpression a, SUExpression b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("SU convunion: operands of different dimensions");
  const std::size_t depth = 1 + std::max(a.depth(), b.depth());
  const std::size_t n = a.ambient_dim();
  return SUExpression(
      std::make_shared<const Node>(Node{Kind::convunion, depth, n, {}, {std::move(a), std::move(b)}}));
}

SUExpression::Kind SUExpression::kind() const { return node_->kind; }
std::size_t SUExpression::depth() const { return node_->depth; }
std::size_t SUExpression::ambient_dim() const { return node_->n; }
const Point& SUExpression::point_value() const { return node_->point; }
const std::vector<SUExpression>& SUExpression::children() const { return node_->children; }

std::size_t SUExpression::node_count() const {
  std::unordered_set<const void*> seen;
  std::vector<const SUExpression*> stack{this};
  while (!stack.empty()) {
    const SUExpression* e = stack.back();
    stack.pop_back();
    if (!seen.insert(e->id()).second) continue;
    for (const auto& c : e->children()) stack.push_back(&c);
  }
  return seen.size();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
 public:
  const LatticePolytope& run(const SUExpression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    return memo_.emplace(e.id(), compute(e)).first->second;
  }

 private:
  LatticePolytope compute(const SUExpression& e) {
    switch (e.kind()) {
      case SUExpression::Kind::point:
        return LatticePolytope::point(e.point_value());
      case SUExpression::Kind::convunion:
        return conv_union(run(e.children()[0]), run(e.children()[1]));
      case SUExpression::Kind::sum:
        break;
    }
    // Repeated summands become dilations; point summands become one shift.
    Point shift(e.ambient_dim(), 0);
    std::vector<const SUExpression*> order;
    std::unordered_map<const void*, unsigned long> mult;
    for (const auto& c : e.children()) {
      if (c.kind() == SUExpression::Kind::point) {
        for (std::size_t i = 0; i < shift.size(); ++i) shift[i] += c.point_value()[i];
        continue;
      }
      if (mult[c.id()]++ == 0) order.push_back(&c);
    }
    std::vector<LatticePolytope> parts;
    for (const auto* c : order) parts.push_back(dilate(run(*c), BigInt(mult[c->id()])));
    if (parts.empty()) return LatticePolytope::point(std::move(shift));
    return translate(minkowski_sum(parts), shift);
  }

  std::unordered_map<const void*, LatticePolytope> memo_;
};

template <class T>
class SupportEvaluator {
 public:
  explicit SupportEvaluator(std::span<const T> u) : u_(u) {}

  T run(const SUExpression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    T v;
    switch (e.kind()) {
      case SUExpression::Kind::point:
        v = value_at(e.point_value());
        break;
      case SUExpression::Kind::sum:
        v = 0;
        for (const auto& c : e.children()) v += run(c);
        break;
      case SUExpression::Kind::convunion:
        v = std::max(run(e.children()[0]), run(e.children()[1]));
        break;
    }
    memo_.emplace(e.id(), v);
    return v;
  }

 private:
  T value_at(const Point& p) const {
    T s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += u_[i] * T(p[i]);
    return s;
  }

  std::span<const T> u_;
  std::unordered_map<const void*, T> memo_;
};

void require_direction(const SUExpression& e, std::size_t size) {
  if (size != e.ambient_dim()) throw DimensionMismatch("SU support: direction has wrong dimension");
}

}  // namespace

LatticePolytope evaluate(const SUExpression& expr) { return Evaluator().run(expr); }

Rational support(const SUExpression& expr, std::span<const Rational> u) {
  require_direction(expr, u.size());
  return SupportEvaluator<Rational>(u).run(expr);
}

BigInt support(const SUExpression& expr, std::span<const BigInt> u) {
  require_direction(expr, u.size());
  return SupportEvaluator<BigInt>(u).run(expr);
}

// ---------------------------------------------------------------------------
// Faces

namespace {

class FaceExtractor {
 public:
  explicit FaceExtractor(std::span<const Rational> u) : support_(u) {}

  SUExpression run(const SUExpression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    SUExpression out = compute(e);
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  SUExpression compute(const SUExpression& e) {
    switch (e.kind()) {
      case SUExpression::Kind::point:
        return e;
      case SUExpression::Kind::sum: {
        std::vector<SUExpression> parts;
        for (const auto& c : e.children()) parts.push_back(run(c));
        return SUExpression::sum(std::move(parts));
      }
      case SUExpression::Kind::convunion:
        break;
    }
    const auto& a = e.children()[0];
    const auto& b = e.children()[1];
    const Rational ha = support_.run(a), hb = support_.run(b);
    if (ha > hb) return run(a);
    if (ha < hb) return run(b);
    return SUExpression::convunion(run(a), run(b));
  }

  SupportEvaluator<Rational> support_;
  std::unordered_map<const void*, SUExpression> memo_;
};

}  // namespace

SUExpression face_expr(const SUExpression& expr, std::span<const Rational> u) {
  require_direction(expr, u.size());
  return FaceExtractor(u).run(expr);
}

SUExpression dilate(const SUExpression& expr, const BigInt& u) {
  if (u < 0) throw Error("SU dilation factor must be non-negative");
  if (u == 0) return SUExpression::point(Point(expr.ambient_dim(), 0));
  std::vector<SUExpression> bits;
  SUExpression power = expr;
  for (mp_bitcnt_t i = 0, top = mpz_sizeinbase(u.get_mpz_t(), 2); i < top; ++i) {
    if (mpz_tstbit(u.get_mpz_t(), i)) bits.push_back(power);
    if (i + 1 < top) power = SUExpression::sum({power, power});
  }
  return bits.size() == 1 ? bits.front() : SUExpression::sum(std::move(bits));
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

class Generator {
 public:
  explicit Generator(const RandomSUOptions& o) : o_(o), rng_(o.seed) {}

  SUExpression make(std::size_t k) {
    if (k == 0) return random_point();
    const std::size_t m = uniform(1, std::max<std::size_t>(o_.budget, 1));
    std::vector<SUExpression> parts;
    for (std::size_t i = 0; i < m; ++i) parts.push_back(union_term(k));
    if (uniform(0, 2) == 0) parts.push_back(random_point());
    if (parts.size() == 1) return parts.front();
    return SUExpression::sum(std::move(parts));
  }

 private:
  // A convex union of depth exactly k.
  SUExpression union_term(std::size_t k) {
    SUExpression x = make(k - 1);
    SUExpression y = uniform(0, 3) == 0 ? mirror(x) : make(uniform(0, k - 1));
    if (uniform(0, 1) == 0) std::swap(x, y);
    return SUExpression::convunion(std::move(x), std::move(y));
  }

  SUExpression random_point() {
    Point p(o_.n);
    for (auto& c : p) c = static_cast<long>(uniform(0, static_cast<std::size_t>(o_.hi - o_.lo))) + o_.lo;
    return SUExpression::point(std::move(p));
  }

  static SUExpression mirror(const SUExpression& e) {
    switch (e.kind()) {
      case SUExpression::Kind::point: {
        Point p = e.point_value();
        p[0] = -p[0];
        return SUExpression::point(std::move(p));
      }
      case SUExpression::Kind::sum: {
        std::vector<SUExpression> parts;
        for (const auto& c : e.children()) parts.push_back(mirror(c));
        return SUExpression::sum(std::move(parts));
      }
      case SUExpression::Kind::convunion:
        break;
    }
    return SUExpression::convunion(mirror(e.children()[0]), mirror(e.children()[1]));
  }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  RandomSUOptions o_;
  std::mt19937_64 rng_;
};

}  // namespace

SUExpression random_su(const RandomSUOptions& options) {
  if (options.n == 0) throw PreconditionError("random_su needs n >= 1");
  if (options.lo > options.hi) throw PreconditionError("random_su: empty coordinate range");
  return Generator(options).make(options.depth);
}

// ---------------------------------------------------------------------------
// Checks

InvariantReport p_invariant_check(const SUExpression& expr, std::uint64_t p) {
  InvariantReport r;
  r.p = p;
  r.k = expr.depth();
  if (!is_prime(p)) {
    r.reason = "p=" + std::to_string(p) + " is not prime";
    return r;
  }
  if (r.k == 0) {
    r.reason = "expression has depth 0";
    return r;
  }
  const BigInt d = pow(BigInt(static_cast<unsigned long>(p)), r.k);
  if (d > static_cast<unsigned long>(expr.ambient_dim())) {
    r.reason = "p^k=" + d.get_str() + " exceeds the ambient dimension " + std::to_string(expr.ambient_dim());
    return r;
  }
  r.d = d.get_ui();
  const auto poly = evaluate(expr);
  const BigInt modulus(static_cast<unsigned long>(p));
  bool ok = true;
  if (poly.dim() >= r.d) {
    std::size_t index = 0;
    for (auto& f : faces_of_dim(poly, r.d)) {
      FaceRecord rec{index++, f, normalized_volume(f, r.d), 0};
      rec.residue = mod_reduce(rec.volume, modulus).value;
      ok = ok && rec.residue == 0;
      r.faces.push_back(std::move(rec));
    }
  }
  r.verdict = ok ? Verdict::holds : Verdict::fails;
  if (r.faces.empty()) r.reason = "no faces of dimension " + std::to_string(r.d);
  return r;
}

Certificate membership_as_sum_certificate(const LatticePolytope& p, const SUExpression& a, const SUExpression& b) {
  if (p.ambient_dim() != a.ambient_dim() || p.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("membership certificate: ambient dimensions differ");
  Certificate c;
  c.claim = "P + A = B";
  const auto lhs = minkowski_sum(p, evaluate(a));
  const auto rhs = evaluate(b);
  c.inputs = {{"P", describe(p)}, {"P + A", describe(lhs)}, {"B", describe(rhs)}};
  c.depth = std::max(a.depth(), b.depth());
  if (auto u = separating_direction(lhs, rhs)) {
    c.verdict = Verdict::fails;
    c.witness_direction = *u;
    c.witness_values = {{"h_{P+A}(u)", support(lhs, *u)}, {"h_B(u)", support(rhs, *u)}};
  } else {
    c.verdict = Verdict::holds;
  }
  return c;
}

}  // namespace reluvol
