#include "strata/hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "strata/error.hpp"

namespace strata {

Rat determinant(RatMat m) {
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m(piv, col)) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(m(i, col)) == 0) continue;
      const Rat f = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

Rat simplex_volume(const std::vector<RatVec>& points, const std::vector<std::size_t>& simplex) {
  const std::size_t d = simplex.size() - 1;
  RatMat m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = points[simplex[i + 1]][j] - points[simplex[0]][j];
  }
  Rat v = abs(determinant(std::move(m)));
  mpz_class fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<unsigned long>(i);
  return v / Rat(fact);
}

Rat hull_volume(const std::vector<RatVec>& points, const ConvexHull& hull) {
  Rat total = 0;
  for (const auto& s : hull.simplices) total += simplex_volume(points, s);
  return total;
}

namespace {

struct WorkFacet {
  std::vector<std::size_t> verts;  // sorted
  RatVec normal;
  Rat offset;
  bool alive = true;
};

WorkFacet make_facet(const std::vector<RatVec>& pts, std::vector<std::size_t> verts, const RatVec& interior) {
  std::sort(verts.begin(), verts.end());
  const std::size_t d = pts[verts[0]].size();
  RatMat diffs(0, d);
  for (std::size_t i = 1; i < verts.size(); ++i) diffs.append_row(sub(pts[verts[i]], pts[verts[0]]));
  const RatMat ns = null_space(diffs);
  if (ns.rows() != 1) throw Error(ErrorKind::DimensionMismatch, "degenerate hull facet");
  RatVec a = ns.row_vec(0);
  Rat b = dot(a, pts[verts[0]]);
  if (dot(a, interior) > b) {
    for (auto& x : a) x = -x;
    b = -b;
  }
  const Rat f = primitive_factor(a);
  return WorkFacet{std::move(verts), scale(a, f), b * f, true};
}

}  // namespace

ConvexHull convex_hull(const std::vector<RatVec>& points) {
  if (points.empty()) throw Error(ErrorKind::EmptyPolytope, "hull of no points");
  const std::size_t d = points.front().size();
  ConvexHull hull;
  hull.dim = d;

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return compare(points[a], points[b]) < 0; });
  std::vector<std::size_t> unique;
  for (auto idx : order) {
    if (unique.empty() || compare(points[unique.back()], points[idx]) != 0) unique.push_back(idx);
  }

  if (d == 0) {
    hull.extreme = {unique.front()};
    hull.simplices = {{unique.front()}};
    return hull;
  }
  if (unique.size() < d + 1) throw Error(ErrorKind::DimensionMismatch, "points do not affinely span the space");

  if (d == 1) {
    const std::size_t lo = unique.front();
    const std::size_t hi = unique.back();
    hull.extreme = {std::min(lo, hi), std::max(lo, hi)};
    hull.simplices = {{lo, hi}};
    HullFacet lower{{Rat(-1)}, -points[lo][0], {}};
    HullFacet upper{{Rat(1)}, points[hi][0], {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i][0] == points[lo][0]) lower.points.push_back(i);
      if (points[i][0] == points[hi][0]) upper.points.push_back(i);
    }
    hull.facets = {lower, upper};
    return hull;
  }

  // Initial simplex: greedily extend the affine rank.
  std::vector<std::size_t> simplex = {unique.front()};
  RatMat span(0, d);
  for (std::size_t i = 1; i < unique.size() && simplex.size() < d + 1; ++i) {
    RatMat trial = span;
    trial.append_row(sub(points[unique[i]], points[simplex[0]]));
    if (rank(trial) > span.rows()) {
      span = std::move(trial);
      simplex.push_back(unique[i]);
    }
  }
  if (simplex.size() < d + 1) throw Error(ErrorKind::DimensionMismatch, "points do not affinely span the space");

  std::vector<RatVec> simplex_pts;
  for (auto i : simplex) simplex_pts.push_back(points[i]);
  const RatVec interior = centroid(simplex_pts);

  std::vector<WorkFacet> facets;
  for (std::size_t skip = 0; skip <= d; ++skip) {
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i <= d; ++i) {
      if (i != skip) verts.push_back(simplex[i]);
    }
    facets.push_back(make_facet(points, std::move(verts), interior));
  }
  {
    auto s = simplex;
    std::sort(s.begin(), s.end());
    hull.simplices.push_back(std::move(s));
  }

  std::vector<bool> in_simplex(points.size(), false);
  for (auto i : simplex) in_simplex[i] = true;

  for (auto p : unique) {
    if (in_simplex[p]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (facets[f].alive && dot(facets[f].normal, points[p]) > facets[f].offset) visible.push_back(f);
    }
    if (visible.empty()) continue;

    std::map<std::vector<std::size_t>, int> ridge_count;
    for (auto f : visible) {
      auto cone = facets[f].verts;
      cone.push_back(p);
      std::sort(cone.begin(), cone.end());
      hull.simplices.push_back(std::move(cone));
      for (std::size_t skip = 0; skip < facets[f].verts.size(); ++skip) {
        std::vector<std::size_t> ridge;
        for (std::size_t i = 0; i < facets[f].verts.size(); ++i) {
          if (i != skip) ridge.push_back(facets[f].verts[i]);
        }
        ++ridge_count[ridge];
      }
    }
    for (auto f : visible) facets[f].alive = false;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      auto verts = ridge;
      verts.push_back(p);
      facets.push_back(make_facet(points, std::move(verts), interior));
    }
  }

  // Merge coplanar simplicial facets into the true facets.
  std::vector<const WorkFacet*> live;
  for (const auto& f : facets) {
    if (f.alive) live.push_back(&f);
  }
  std::sort(live.begin(), live.end(), [](const WorkFacet* a, const WorkFacet* b) {
    if (int c = compare(a->normal, b->normal); c != 0) return c < 0;
    return a->offset < b->offset;
  });
  for (std::size_t i = 0; i < live.size(); ++i) {
    if (i > 0 && live[i]->normal == live[i - 1]->normal && live[i]->offset == live[i - 1]->offset) continue;
    HullFacet hf{live[i]->normal, live[i]->offset, {}};
    for (std::size_t q = 0; q < points.size(); ++q) {
      if (dot(hf.normal, points[q]) == hf.offset) hf.points.push_back(q);
    }
    hull.facets.push_back(std::move(hf));
  }

  for (auto p : unique) {
    RatMat normals(0, d);
    for (const auto& f : hull.facets) {
      if (std::binary_search(f.points.begin(), f.points.end(), p)) normals.append_row(f.normal);
    }
    if (rank(normals) == d) hull.extreme.push_back(p);
  }
  std::sort(hull.extreme.begin(), hull.extreme.end());
  return hull;
}

}  // namespace strata
