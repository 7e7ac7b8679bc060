#include "reluvol/json_io.hpp"

#include <fstream>

#include "reluvol/volume_engine.hpp"

namespace reluvol::json_io {

namespace {

const BigInt& safe_limit() {
  static const BigInt limit = BigInt(1) << 53;
  return limit;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

json to_json(const BigInt& v) {
  if (abs(v) < safe_limit()) return json(v.get_si());
  return json(v.get_str());
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<unsigned long>()) : BigInt(j.get<long>());
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw ParseError("expected an integer, got " + j.dump());
}

json to_json(const Rational& v) { return json(v.str()); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(bigint_from_json(j));
  throw ParseError("expected a rational string, got " + j.dump());
}

json to_json(const Point& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(to_json(c));
  return a;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a point (array of integers), got " + j.dump());
  Point p;
  for (const auto& c : j) p.push_back(bigint_from_json(c));
  return p;
}

json to_json(const LatticePolytope& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(to_json(v));
  return json{{"n", p.ambient_dim()}, {"vertices", verts}};
}

LatticePolytope polytope_from_json(const json& j) {
  auto pts = points_from_json(j);
  if (j.is_object() && j.contains("n")) {
    const auto n = j.at("n").get<std::size_t>();
    for (const auto& p : pts)
      if (p.size() != n) throw DimensionMismatch("vertex of length " + std::to_string(p.size()) + " with n=" + std::to_string(n));
  }
  return hull(pts);
}

std::vector<Point> points_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) arr = j.contains("vertices") ? &j.at("vertices") : &require(j, "points");
  if (!arr->is_array() || arr->empty()) throw ParseError("expected a non-empty array of points");
  std::vector<Point> out;
  for (const auto& p : *arr) out.push_back(point_from_json(p));
  return out;
}

json to_json(const SUExpression& e) {
  switch (e.kind()) {
    case SUExpression::Kind::point:
      return json{{"point", to_json(e.point_value())}};
    case SUExpression::Kind::sum: {
      json a = json::array();
      for (const auto& c : e.children()) a.push_back(to_json(c));
      return json{{"sum", a}};
    }
    case SUExpression::Kind::convunion:
      break;
  }
  return json{{"convunion", json::array({to_json(e.children()[0]), to_json(e.children()[1])})}};
}

SUExpression su_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("SU node must be an object with one key, got " + j.dump());
  if (j.contains("point")) return SUExpression::point(point_from_json(j.at("point")));
  if (j.contains("sum")) {
    const auto& a = j.at("sum");
    if (!a.is_array() || a.empty()) throw ParseError("\"sum\" needs a non-empty array");
    std::vector<SUExpression> parts;
    for (const auto& c : a) parts.push_back(su_from_json(c));
    return SUExpression::sum(std::move(parts));
  }
  if (j.contains("convunion")) {
    const auto& a = j.at("convunion");
    if (!a.is_array() || a.size() != 2) throw ParseError("\"convunion\" needs exactly two operands");
    return SUExpression::convunion(su_from_json(a[0]), su_from_json(a[1]));
  }
  throw ParseError("unknown SU node " + j.dump());
}

json to_json(const ReluNetwork& net) {
  json ring;
  switch (net.ring().kind) {
    case WeightRing::Kind::integers: ring = "Z"; break;
    case WeightRing::Kind::rationals: ring = "Q"; break;
    case WeightRing::Kind::nary: ring = json{{"nary", net.ring().base}}; break;
  }
  json layers = json::array();
  for (const auto& layer : net.layers()) {
    json a = json::array();
    for (const auto& row : layer.weights) {
      json r = json::array();
      for (const auto& w : row) r.push_back(to_json(w));
      a.push_back(r);
    }
    json b = json::array();
    for (const auto& x : layer.bias) b.push_back(to_json(x));
    layers.push_back(json{{"A", a}, {"b", b}});
  }
  json out{{"ring", ring}, {"layers", layers}};
  if (net.scale_log2() != 0) out["scale_log2"] = net.scale_log2();
  return out;
}

ReluNetwork network_from_json(const json& j) {
  const auto& ring_j = require(j, "ring");
  WeightRing ring;
  if (ring_j == "Z") ring = WeightRing::integers();
  else if (ring_j == "Q") ring = WeightRing::rationals();
  else if (ring_j.is_object() && ring_j.contains("nary") && ring_j.at("nary").is_number_unsigned())
    ring = WeightRing::nary(ring_j.at("nary").get<std::uint64_t>());
  else throw ParseError("ring must be \"Z\", \"Q\" or {\"nary\": N}, got " + ring_j.dump());

  const auto& layers_j = require(j, "layers");
  if (!layers_j.is_array()) throw ParseError("\"layers\" must be an array");
  std::vector<AffineLayer> layers;
  for (const auto& lj : layers_j) {
    AffineLayer layer;
    const auto& a = require(lj, "A");
    if (!a.is_array()) throw ParseError("\"A\" must be a matrix");
    for (const auto& row : a) {
      if (!row.is_array()) throw ParseError("\"A\" rows must be arrays");
      RatVec r;
      for (const auto& w : row) r.push_back(rational_from_json(w));
      layer.weights.push_back(std::move(r));
    }
    if (lj.contains("b")) {
      if (!lj.at("b").is_array()) throw ParseError("\"b\" must be an array");
      for (const auto& x : lj.at("b")) layer.bias.push_back(rational_from_json(x));
    }
    layers.push_back(std::move(layer));
  }
  const std::uint64_t scale = j.contains("scale_log2") ? j.at("scale_log2").get<std::uint64_t>() : 0;
  return ReluNetwork(ring, std::move(layers), scale);
}

json to_json(const Certificate& c) {
  json inputs = json::object();
  for (const auto& [k, v] : c.inputs) inputs[k] = v;
  json volumes = json::object();
  for (const auto& v : c.witness_volumes) volumes[v.name] = to_json(v.value);
  json out{{"claim", c.claim}, {"inputs", inputs}, {"witness_volumes", volumes}, {"verdict", verdict_name(c.verdict)}};
  if (!c.reason.empty()) out["reason"] = c.reason;
  if (c.witness_direction) out["witness_direction"] = to_json(*c.witness_direction);
  if (!c.witness_values.empty()) {
    json values = json::object();
    for (const auto& v : c.witness_values) values[v.name] = to_json(v.value);
    out["witness_values"] = values;
  }
  if (c.depth) out["depth"] = *c.depth;
  return out;
}

}  // namespace reluvol::json_io
