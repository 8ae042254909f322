#ifndef STRATA_HULL_HPP
#define STRATA_HULL_HPP

#include <vector>

#include "strata/linalg.hpp"

namespace strata {

struct HullFacet {
  RatVec normal;                     // primitive integer outward normal
  Rat offset;                        // normal . x <= offset on the hull
  std::vector<std::size_t> points;   // indices of input points on the facet
};

struct ConvexHull {
  std::size_t dim = 0;
  std::vector<std::size_t> extreme;               // vertex indices, ascending
  std::vector<HullFacet> facets;                  // sorted by (normal, offset)
  std::vector<std::vector<std::size_t>> simplices;  // placing triangulation
};

/**
 * Beneath-beyond hull of points that affinely span Q^d (d >= 1). Points are
 * placed in lexicographic order; every placed point that sees part of the
 * current boundary contributes the cones over the visible simplicial facets,
 * so `simplices` is a triangulation of the hull.
 */
ConvexHull convex_hull(const std::vector<RatVec>& points);

/// |det(p1 - p0, ..., pd - p0)| / d!
Rat simplex_volume(const std::vector<RatVec>& points, const std::vector<std::size_t>& simplex);

/// Euclidean volume of the hull in the coordinates of the input points.
Rat hull_volume(const std::vector<RatVec>& points, const ConvexHull& hull);

Rat determinant(RatMat m);

}  // namespace strata

#endif
