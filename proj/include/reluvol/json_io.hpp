#pragma once

// JSON forms of polytopes, point sets, SU expressions, networks and
// certificates. Integers are JSON numbers below 2^53 in magnitude and decimal
// strings otherwise; rationals are always strings such as "-7/100".

#include <json.hpp>

#include <string>
#include <vector>

#include "reluvol/certificate.hpp"
#include "reluvol/lattice_polytope.hpp"
#include "reluvol/relu_net.hpp"
#include "reluvol/su_closure.hpp"

namespace reluvol::json_io {

using json = nlohmann::ordered_json;

json load_file(const std::string& path);

json to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);
json to_json(const Rational& v);
Rational rational_from_json(const json& j);
json to_json(const Point& p);
Point point_from_json(const json& j);

// {"n": int, "vertices": [[int..]]}; canonicalized (hull) on load.
json to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const json& j);

// A bare array of points, or an object with "points" or "vertices".
std::vector<Point> points_from_json(const json& j);

// {"point": [...]}, {"sum": [...]}, {"convunion": [a, b]}
json to_json(const SUExpression& e);
SUExpression su_from_json(const json& j);

// {"ring": "Z" | {"nary": N} | "Q", "layers": [{"A": [[..]], "b": [..]}]}
// with an optional "scale_log2".
json to_json(const ReluNetwork& net);
ReluNetwork network_from_json(const json& j);

json to_json(const Certificate& c);

}  // namespace reluvol::json_io
