#pragma once

#include <vector>

#include "reluvol/lattice_polytope.hpp"

namespace reluvol::detail {

struct HullFacet {
  IntVec normal;       // outer, primitive
  BigInt offset;       // normal . y <= offset on the hull
  VertexSet incident;  // over the input points
};

// Facets of conv(points) for distinct points affinely spanning Z^d, d >= 1,
// via the double description method on the homogenized dual cone.
std::vector<HullFacet> hull_facets(const std::vector<Point>& points);

}  // namespace reluvol::detail
