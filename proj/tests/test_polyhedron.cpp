#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "strata/error.hpp"
#include "strata/hull.hpp"
#include "strata/polyhedron.hpp"
#include "test_support.hpp"

using namespace strata;
using namespace strata::testing;

namespace {

std::vector<RelOpenCell> projected_faces(const HPolytope& p, const RatMat& proj) {
  const auto lattice = face_lattice(p);
  std::vector<RelOpenCell> cells;
  for (const auto& f : lattice.faces) {
    if (f.dim >= 0) cells.push_back(project_relint(lattice, f, proj));
  }
  sort_unique(cells);
  return cells;
}

std::vector<RelOpenCell> refine_closure(const std::vector<RelOpenCell>& cells, const RelOpenCell& c) {
  std::vector<RelOpenCell> out;
  for (const auto& face : closure_faces(c)) {
    auto part = common_refinement(cells, face);
    out.insert(out.end(), part.begin(), part.end());
  }
  sort_unique(out);
  return out;
}

RelOpenCell projected_image(const HPolytope& p, const RatMat& proj) {
  const auto lattice = face_lattice(p);
  return project_relint(lattice, lattice.faces.back(), proj);
}

std::vector<std::size_t> count_dims(const std::vector<RelOpenCell>& cells, std::size_t k) {
  std::vector<std::size_t> counts(k + 1, 0);
  for (const auto& c : cells) ++counts[c.dim()];
  return counts;
}

// Random point of relint(c): a strictly positive combination of its vertices.
RatVec random_relint_point(Rng& rng, const RelOpenCell& c) {
  RatVec p(c.ambient_dim());
  Rat total = 0;
  for (const auto& v : c.vertices()) {
    const Rat w = rng.uniform(1, 9);
    total += w;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += w * v[j];
  }
  for (auto& x : p) x /= total;
  return p;
}

// Top-dimensional volume of a cell measured in its carrier's local coordinates.
Rat local_volume(const RelOpenCell& c) {
  std::vector<RatVec> pts;
  for (const auto& v : c.vertices()) pts.push_back(c.carrier().local_coords(v));
  return hull_volume(pts, convex_hull(pts));
}

// a ⊆ b, checked without common_refinement: a ⊆ cl(b) and a avoids the boundary of b.
bool cell_subset(const RelOpenCell& a, const RelOpenCell& b) {
  for (const auto& v : a.vertices()) {
    if (!b.closure_contains(v)) return false;
  }
  for (const auto& g : closure_faces(b)) {
    if (!(g == b) && intersects(a, g)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("vertices examples") {
  CHECK(vertices(unit_square()) == std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})});
  CHECK(vertices(standard_triangle()) == std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0})});
  const std::vector<RatVec> prism = {rv({0, 0, 0}), rv({0, 0, 3}), rv({0, 3, 0}), rv({1, 0, 0}), rv({1, 0, 3}), rv({1, 3, 0})};
  CHECK(vertices(cp1xcp2_prism()) == prism);
  CHECK_THROWS_AS(vertices(hpoly({{-1, 0}, {0, -1}}, {0, 0})), Error);
  CHECK_THROWS_AS(vertices(hpoly({{1}, {-1}}, {0, -1})), Error);
  try {
    vertices(hpoly({{-1, 0}, {0, -1}, {0, 1}}, {0, 0, 1}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundedPolytope);
  }
  try {
    vertices(hpoly({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {0, -1, 1, 0}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPolytope);
  }
}

TEST_CASE("face lattice examples") {
  CHECK(face_lattice(unit_square()).count_by_dim() == std::vector<std::size_t>{4, 4, 1});
  CHECK(face_lattice(cp1xcp2_prism()).count_by_dim() == std::vector<std::size_t>{6, 9, 5, 1});
  CHECK(face_lattice(standard_triangle()).count_by_dim() == std::vector<std::size_t>{3, 3, 1});
  // Redundant inequality does not create a facet.
  CHECK(face_lattice(hpoly({{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {1, 1}}, {0, 1, 0, 1, 5})).count_by_dim() ==
        std::vector<std::size_t>{4, 4, 1});
  // Lower-dimensional polytope: a segment in R^2.
  CHECK(face_lattice(hpoly({{0, 1}, {0, -1}, {1, 0}, {-1, 0}}, {0, 0, 1, 0})).count_by_dim() == std::vector<std::size_t>{2, 1});
}

TEST_CASE("face lattice is a graded Eulerian lattice") {
  Rng rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_product_polytope(rng, 4);
    if (trial % 2) p = transform(p, random_unimodular(rng, p.dim()).second);
    const auto lattice = face_lattice(p);
    const int d = lattice.polytope_dim();
    CHECK(d == static_cast<int>(p.dim()));
    long euler = 0;
    for (const auto& f : lattice.faces) {
      if (f.dim >= 0 && f.dim < d) euler += (f.dim % 2 == 0) ? 1 : -1;
      if (f.affine_hull) CHECK(static_cast<int>(f.affine_hull->dim()) == f.dim);
    }
    CHECK(euler == 1 - (d % 2 == 0 ? 1 : -1));

    // Each face's vertex set is the intersection of the facets containing it.
    std::vector<std::size_t> facets;
    for (std::size_t i = 0; i < lattice.faces.size(); ++i) {
      if (lattice.faces[i].dim == d - 1) facets.push_back(i);
    }
    for (const auto& f : lattice.faces) {
      if (f.dim < 0 || f.dim == d) continue;
      std::vector<std::size_t> meet;
      bool first = true;
      for (auto fi : facets) {
        const auto& fv = lattice.faces[fi].vertex_ids;
        if (!std::includes(fv.begin(), fv.end(), f.vertex_ids.begin(), f.vertex_ids.end())) continue;
        if (first) {
          meet = fv;
          first = false;
        } else {
          std::vector<std::size_t> tmp;
          std::set_intersection(meet.begin(), meet.end(), fv.begin(), fv.end(), std::back_inserter(tmp));
          meet = tmp;
        }
      }
      CHECK(meet == f.vertex_ids);
    }

    // Covers relate faces one dimension apart, and every nonempty face has a path up to the top.
    for (auto [lo, hi] : lattice.covers) CHECK(lattice.faces[lo].dim + 1 == lattice.faces[hi].dim);
    std::vector<bool> reaches_top(lattice.faces.size(), false);
    reaches_top.back() = true;
    for (std::size_t i = lattice.faces.size(); i-- > 0;) {
      for (auto [lo, hi] : lattice.covers) {
        if (lo == i && reaches_top[hi]) reaches_top[i] = true;
      }
    }
    CHECK(std::all_of(reaches_top.begin(), reaches_top.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("project_relint examples") {
  const auto prism = cp1xcp2_prism();
  const auto lattice = face_lattice(prism);
  const auto proj = cp1xcp2_projection();
  auto find_face = [&](std::vector<RatVec> verts) -> const Face& {
    std::sort(verts.begin(), verts.end(), [](const RatVec& a, const RatVec& b) { return compare(a, b) < 0; });
    for (const auto& f : lattice.faces) {
      std::vector<RatVec> fv;
      for (auto v : f.vertex_ids) fv.push_back(lattice.vertices[v]);
      if (fv == verts) return f;
    }
    FAIL("face not found");
    return lattice.faces.front();
  };

  const auto dot03 = project_relint(lattice, find_face({rv({0, 0, 3})}), proj);
  CHECK(dot03.dim() == 0);
  CHECK(dot03.vertices() == std::vector<RatVec>{rv({0, 3})});

  const auto seg = project_relint(lattice, find_face({rv({1, 0, 0}), rv({1, 0, 3})}), proj);
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices() == std::vector<RatVec>{rv({1, 0}), rv({1, 3})});
  CHECK(seg.contains(rv({1, 2})));
  CHECK_FALSE(seg.contains(rv({1, 3})));

  const auto delta = project_relint(lattice, lattice.faces.back(), proj);
  CHECK(delta.dim() == 2);
  CHECK(delta.vertices() == std::vector<RatVec>{rv({0, 0}), rv({0, 3}), rv({1, 3}), rv({4, 0})});

  CHECK_THROWS_AS(project_relint(lattice, lattice.faces.back(), RatMat::from_ints({{1, 1, 0}, {2, 2, 0}})), Error);
}

TEST_CASE("project_relint carrier is the projected face hull") {
  Rng rng(202);
  for (int trial = 0; trial < 15; ++trial) {
    const auto p = random_product_polytope(rng, 4);
    const std::size_t n = p.dim();
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n)));
    RatMat proj = rng.mat(k, n, -2, 2);
    if (rank(proj) < k) continue;
    const auto lattice = face_lattice(p);
    for (const auto& f : lattice.faces) {
      if (f.dim < 0) continue;
      const auto cell = project_relint(lattice, f, proj);
      const auto& dirs = f.affine_hull->directions();
      RatMat image(0, k);
      for (std::size_t i = 0; i < dirs.rows(); ++i) image.append_row(proj.apply(dirs.row(i)));
      CHECK(cell.carrier().directions() == (image.rows() ? row_basis(image) : RatMat(0, k)));
      CHECK(cell.carrier().contains(proj.apply(lattice.vertices[f.vertex_ids.front()])));
    }
  }
}

TEST_CASE("cell_contains examples") {
  const auto seg = RelOpenCell::from_points({rv({1, 0}), rv({1, 3})});
  CHECK(cell_contains(seg, rv({1, 2})));
  CHECK_FALSE(cell_contains(seg, rv({1, 3})));
  const auto quad = RelOpenCell::from_points({rv({0, 0}), rv({4, 0}), rv({1, 3}), rv({0, 3})});
  CHECK_FALSE(cell_contains(quad, rv({2, 2})));
  CHECK(cell_contains(quad, rv({2, 1})));
  CHECK_THROWS_AS(cell_contains(quad, rv({1, 1, 1})), Error);
  // Interior points from from_points and from_constraints agree.
  auto same = RelOpenCell::from_constraints(AffineSubspace::whole(2), RatMat::from_ints({{-1, 0}, {0, -1}, {0, 1}, {1, 1}}),
                                            rv({0, 0, 3, 4}));
  REQUIRE(same);
  CHECK(*same == quad);
  CHECK(same->encode() == quad.encode());
}

TEST_CASE("common_refinement examples") {
  const auto square = RelOpenCell::from_points({rv({0, 0}), rv({2, 0}), rv({0, 2}), rv({2, 2})});
  const auto cut = RelOpenCell::from_points({rv({1, 0}), rv({1, 2})});
  const auto pieces = common_refinement({cut}, square);
  CHECK(pieces.size() == 3);
  CHECK(count_dims(pieces, 2) == std::vector<std::size_t>{0, 1, 2});

  const auto interval = RelOpenCell::from_points({rv({0}), rv({2})});
  const auto one = RelOpenCell::from_points({rv({1})});
  const auto parts = common_refinement({one}, interval);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == one);
  CHECK(parts[1].vertices() == std::vector<RatVec>{rv({0}), rv({1})});
  CHECK(parts[2].vertices() == std::vector<RatVec>{rv({1}), rv({2})});

  CHECK_THROWS_AS(common_refinement({one}, square), Error);
}

TEST_CASE("refining the prism image by its projected faces") {
  const auto cells = projected_faces(cp1xcp2_prism(), cp1xcp2_projection());
  CHECK(count_dims(cells, 2) == std::vector<std::size_t>{6, 10, 5});
  const auto delta = RelOpenCell::from_points({rv({0, 0}), rv({4, 0}), rv({1, 3}), rv({0, 3})});
  const auto pieces = refine_closure(cells, delta);
  CHECK(count_dims(pieces, 2) == std::vector<std::size_t>{7, 10, 4});
  std::set<RatVec> points;
  for (const auto& c : pieces) {
    if (c.dim() == 0) points.insert(c.vertices().front());
  }
  CHECK(points == std::set<RatVec>{rv({0, 0}), rv({0, 3}), rv({1, 3}), rv({4, 0}), rv({1, 0}), rv({3, 0}), rv({1, 2})});
}

TEST_CASE("common_refinement partitions and respects every input") {
  Rng rng(303);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 12; ++trial) {
    const auto p = random_product_polytope(rng, 4);
    const std::size_t n = p.dim();
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, std::min<long>(2, static_cast<long>(n))));
    RatMat proj = rng.mat(k, n, -1, 2);
    if (rank(proj) < k) continue;
    const auto cells = projected_faces(p, proj);
    if (cells.size() > 40) continue;
    ++checked;
    const auto within = projected_image(p, proj);
    REQUIRE(within.dim() == k);
    const auto pieces = common_refinement(cells, within);

    // Volume count: the top pieces fill `within`.
    Rat total = 0;
    for (const auto& q : pieces) {
      CHECK(within.contains(q.interior_point()));
      if (q.dim() == k) total += local_volume(q);
    }
    CHECK(total == local_volume(within));

    // Disjointness on representatives and random points.
    std::vector<RatVec> samples;
    for (const auto& q : pieces) {
      samples.push_back(q.interior_point());
      samples.push_back(random_relint_point(rng, q));
    }
    for (int s = 0; s < 10; ++s) samples.push_back(random_relint_point(rng, within));
    for (const auto& x : samples) {
      int owners = 0;
      for (const auto& q : pieces) owners += q.contains(x);
      CHECK(owners == 1);
    }

    // Each piece lies inside or misses every face of every input closure.
    for (const auto& q : pieces) {
      for (const auto& c : cells) {
        if (!meets(q, c)) continue;
        for (const auto& g : closure_faces(c)) {
          if (intersects(q, g)) CHECK(cell_subset(q, g));
        }
      }
    }
  }
  CHECK(checked >= 6);
}

TEST_CASE("split and closure faces") {
  const auto tri = RelOpenCell::from_points({rv({0, 0}), rv({2, 0}), rv({0, 2})});
  CHECK(closure_faces(tri).size() == 7);
  auto parts = split(tri, rv({1, 0}), Rat(1));
  CHECK(parts.size() == 3);
  CHECK(split(tri, rv({1, 0}), Rat(2)).size() == 1);
  const auto m = closure_meet(tri, RelOpenCell::from_points({rv({1, -1}), rv({1, 3})}));
  REQUIRE(m);
  CHECK(m->vertices() == std::vector<RatVec>{rv({1, 0}), rv({1, 1})});
  CHECK_FALSE(closure_meet(tri, RelOpenCell::from_points({rv({3, 3})})));
}
