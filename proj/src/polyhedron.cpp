#include "strata/polyhedron.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "strata/error.hpp"
#include "strata/hull.hpp"

namespace strata {

namespace {

struct EchelonRow {
  RatVec row;
  std::size_t pivot;
};

// Reduces `r` against rows already in echelon form; false if r is dependent.
bool reduce_against(RatVec& r, const std::vector<EchelonRow>& basis) {
  for (const auto& e : basis) {
    if (sgn(r[e.pivot]) == 0) continue;
    const Rat f = r[e.pivot];
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (sgn(e.row[j]) != 0) r[j] -= f * e.row[j];
    }
  }
  return !is_zero(r);
}

struct BasisSearch {
  const RatMat& a;
  std::span<const Rat> b;
  std::size_t d;
  std::vector<std::size_t> chosen;
  std::vector<EchelonRow> basis;
  std::vector<RatVec> found;

  void leaf() {
    RatMat sys(0, d);
    RatVec rhs;
    for (auto i : chosen) {
      sys.append_row(a.row(i));
      rhs.push_back(b[i]);
    }
    auto t = solve(sys, rhs);
    if (!t) return;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (dot(a.row(i), *t) > b[i]) return;
    }
    found.push_back(std::move(*t));
  }

  void run(std::size_t start) {
    if (chosen.size() == d) {
      leaf();
      return;
    }
    for (std::size_t i = start; i + (d - chosen.size()) <= a.rows(); ++i) {
      RatVec r = a.row_vec(i);
      if (!reduce_against(r, basis)) continue;
      std::size_t piv = 0;
      while (sgn(r[piv]) == 0) ++piv;
      const Rat inv = 1 / r[piv];
      for (auto& x : r) x *= inv;
      basis.push_back({std::move(r), piv});
      chosen.push_back(i);
      run(i + 1);
      chosen.pop_back();
      basis.pop_back();
    }
  }
};

std::vector<RatVec> sorted_unique(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatVec& x, const RatVec& y) { return compare(x, y) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Nonempty faces of a polytope as vertex index sets, from the tight sets of
// its inequalities; the full vertex set is always included.
std::vector<std::vector<std::size_t>> face_vertex_sets(std::size_t nverts, const std::vector<std::vector<std::size_t>>& tight) {
  std::vector<std::size_t> all(nverts);
  for (std::size_t i = 0; i < nverts; ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen = {all};
  std::deque<std::vector<std::size_t>> queue = {all};
  while (!queue.empty()) {
    const auto f = queue.front();
    queue.pop_front();
    for (const auto& t : tight) {
      std::vector<std::size_t> g;
      std::set_intersection(f.begin(), f.end(), t.begin(), t.end(), std::back_inserter(g));
      if (g.empty() || g.size() == f.size()) continue;
      if (seen.insert(g).second) queue.push_back(std::move(g));
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<std::size_t>> tight_sets(const std::vector<RatVec>& verts, const RatMat& a, std::span<const Rat> b) {
  std::vector<std::vector<std::size_t>> tight(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (dot(a.row(i), verts[v]) == b[i]) tight[i].push_back(v);
    }
  }
  return tight;
}

std::size_t affine_rank(const std::vector<RatVec>& pts, const std::vector<std::size_t>& ids) {
  if (ids.empty()) return 0;
  RatMat diffs(0, pts[ids[0]].size());
  for (std::size_t i = 1; i < ids.size(); ++i) diffs.append_row(sub(pts[ids[i]], pts[ids[0]]));
  return rank(diffs);
}

// Vertices of carrier ∩ {a x <= b}, in ambient coordinates.
std::vector<RatVec> constrained_vertices(const AffineSubspace& carrier, const RatMat& a, std::span<const Rat> b) {
  const std::size_t d = carrier.dim();
  if (d == 0) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (dot(a.row(i), carrier.base()) > b[i]) return {};
    }
    return {carrier.base()};
  }
  const RatMat& dirs = carrier.directions();
  RatMat local(a.rows(), d);
  RatVec rhs(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) local(i, j) = dot(a.row(i), dirs.row(j));
    rhs[i] = b[i] - dot(a.row(i), carrier.base());
  }
  if (rank(local) < d) throw Error(ErrorKind::UnboundedPolytope, "cell constraints do not bound the carrier");
  std::vector<RatVec> out;
  for (const auto& t : basic_feasible_points(local, rhs)) out.push_back(carrier.from_local(t));
  return sorted_unique(std::move(out));
}

// Canonical ambient form of a·x <= b restricted to `carrier`.
std::pair<RatVec, Rat> lift_to_carrier(const AffineSubspace& carrier, std::span<const Rat> a, const Rat& b) {
  RatVec row(carrier.ambient_dim());
  for (std::size_t j = 0; j < carrier.dim(); ++j) row[carrier.pivots()[j]] = dot(a, carrier.directions().row(j));
  Rat rhs = b - dot(a, carrier.base());
  const Rat f = primitive_factor(row);
  return {scale(row, f), rhs * f};
}

void append_equations(const AffineSubspace& s, RatMat& a, RatVec& b) {
  auto [e, rhs] = s.equations();
  for (std::size_t i = 0; i < e.rows(); ++i) {
    a.append_row(e.row(i));
    b.push_back(rhs[i]);
    a.append_row(scale(e.row(i), Rat(-1)));
    b.push_back(-rhs[i]);
  }
}

}  // namespace

std::vector<RatVec> basic_feasible_points(const RatMat& a, std::span<const Rat> b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "constraint count");
  const std::size_t d = a.cols();
  if (d == 0) {
    for (const auto& x : b) {
      if (sgn(x) < 0) return {};
    }
    return {RatVec{}};
  }
  BasisSearch search{a, b, d, {}, {}, {}};
  search.run(0);
  return sorted_unique(std::move(search.found));
}

std::vector<RatVec> vertices(const HPolytope& p) {
  const std::size_t d = p.dim();
  if (p.b.size() != p.A.rows()) throw Error(ErrorKind::DimensionMismatch, "polytope offsets");
  const auto reduced = rref(p.A);
  if (reduced.rank() < d) {
    // A nonempty polyhedron with a lineality space is unbounded; shifting
    // along the null space zeroes the free coordinates, so feasibility can
    // be decided on the pivot columns alone.
    const RatMat sub_a = p.A.select_columns(reduced.pivots);
    if (basic_feasible_points(sub_a, p.b).empty()) throw Error(ErrorKind::EmptyPolytope, "infeasible constraints");
    throw Error(ErrorKind::UnboundedPolytope, "polyhedron has a lineality space");
  }
  auto pts = basic_feasible_points(p.A, p.b);
  if (pts.empty()) throw Error(ErrorKind::EmptyPolytope, "infeasible constraints");

  // With full column rank, a nonzero recession direction r has s.r > 0 for
  // s = -(sum of rows), and {r : A r <= 0, s.r = 1} is then a nonempty polytope.
  RatVec s(d);
  for (std::size_t i = 0; i < p.A.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) s[j] -= p.A(i, j);
  }
  RatMat cone = p.A;
  RatVec rhs(p.A.rows());
  cone.append_row(s);
  rhs.push_back(1);
  cone.append_row(scale(s, Rat(-1)));
  rhs.push_back(-1);
  if (!basic_feasible_points(cone, rhs).empty()) throw Error(ErrorKind::UnboundedPolytope, "polyhedron has a recession direction");
  return pts;
}

std::vector<std::size_t> FaceLattice::count_by_dim() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(polytope_dim() + 1, 0)), 0);
  for (const auto& f : faces) {
    if (f.dim >= 0) ++counts[static_cast<std::size_t>(f.dim)];
  }
  return counts;
}

FaceLattice face_lattice(const HPolytope& p) {
  FaceLattice lattice;
  lattice.vertices = vertices(p);
  const auto& verts = lattice.vertices;
  const auto tight = tight_sets(verts, p.A, p.b);

  for (const auto& ids : face_vertex_sets(verts.size(), tight)) {
    Face f;
    f.vertex_ids = ids;
    for (std::size_t i = 0; i < tight.size(); ++i) {
      if (std::includes(tight[i].begin(), tight[i].end(), ids.begin(), ids.end())) f.active_set.push_back(i);
    }
    std::vector<RatVec> pts;
    for (auto v : ids) pts.push_back(verts[v]);
    f.affine_hull = AffineSubspace::affine_hull(pts);
    f.dim = static_cast<int>(f.affine_hull->dim());
    lattice.faces.push_back(std::move(f));
  }
  Face empty;
  for (std::size_t i = 0; i < p.A.rows(); ++i) empty.active_set.push_back(i);
  lattice.faces.push_back(std::move(empty));

  std::sort(lattice.faces.begin(), lattice.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.active_set < b.active_set;
  });

  for (std::size_t i = 0; i < lattice.faces.size(); ++i) {
    const auto& lo = lattice.faces[i];
    for (std::size_t j = 0; j < lattice.faces.size(); ++j) {
      const auto& hi = lattice.faces[j];
      if (hi.dim != lo.dim + 1) continue;
      if (std::includes(hi.vertex_ids.begin(), hi.vertex_ids.end(), lo.vertex_ids.begin(), lo.vertex_ids.end())) {
        lattice.covers.emplace_back(i, j);
      }
    }
  }
  return lattice;
}

RelOpenCell RelOpenCell::from_points(const std::vector<RatVec>& points) {
  if (points.empty()) throw Error(ErrorKind::EmptyPolytope, "cell from no points");
  const auto pts = sorted_unique(points);
  RelOpenCell cell;
  cell.carrier_ = AffineSubspace::affine_hull(pts);
  const std::size_t n = cell.carrier_.ambient_dim();
  const std::size_t d = cell.carrier_.dim();
  cell.ineqs_ = RatMat(0, n);
  if (d == 0) {
    cell.vertices_ = {pts.front()};
    cell.finish();
    return cell;
  }
  std::vector<RatVec> local;
  local.reserve(pts.size());
  for (const auto& p : pts) local.push_back(cell.carrier_.local_coords(p));
  const ConvexHull hull = convex_hull(local);
  for (auto idx : hull.extreme) cell.vertices_.push_back(pts[idx]);
  std::vector<std::pair<RatVec, Rat>> facets;
  for (const auto& f : hull.facets) {
    // local coordinates are the pivot coordinates of x (the base is zero there)
    RatVec row(n);
    for (std::size_t j = 0; j < d; ++j) row[cell.carrier_.pivots()[j]] = f.normal[j];
    facets.emplace_back(std::move(row), f.offset);
  }
  std::sort(facets.begin(), facets.end(), [](const auto& x, const auto& y) {
    if (int c = compare(x.first, y.first); c != 0) return c < 0;
    return x.second < y.second;
  });
  for (const auto& [row, off] : facets) {
    cell.ineqs_.append_row(row);
    cell.offsets_.push_back(off);
  }
  cell.finish();
  return cell;
}

std::optional<RelOpenCell> RelOpenCell::from_constraints(const AffineSubspace& carrier, const RatMat& a, std::span<const Rat> b) {
  auto verts = constrained_vertices(carrier, a, b);
  if (verts.empty()) return std::nullopt;
  auto cell = from_vertices(std::move(verts), a, b);
  // Keep only extreme points: a vertex lies on at least d facets spanning the normals.
  if (cell.dim() > 0) {
    std::vector<RatVec> extreme;
    for (const auto& v : cell.vertices_) {
      RatMat normals(0, cell.ambient_dim());
      for (std::size_t i = 0; i < cell.ineqs_.rows(); ++i) {
        if (dot(cell.ineqs_.row(i), v) == cell.offsets_[i]) normals.append_row(cell.ineqs_.row(i));
      }
      if (rank(normals) == cell.dim()) extreme.push_back(v);
    }
    cell.vertices_ = std::move(extreme);
    cell.finish();
  }
  return cell;
}

RelOpenCell RelOpenCell::from_vertices(std::vector<RatVec> verts, const RatMat& a, std::span<const Rat> b) {
  verts = sorted_unique(std::move(verts));
  RelOpenCell cell;
  cell.carrier_ = AffineSubspace::affine_hull(verts);
  const std::size_t n = cell.carrier_.ambient_dim();
  const std::size_t d = cell.carrier_.dim();
  cell.ineqs_ = RatMat(0, n);
  std::vector<std::pair<RatVec, Rat>> facets;
  if (d > 0) {
    const auto tight = tight_sets(verts, a, b);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (tight[i].size() < d || tight[i].size() == verts.size()) continue;
      if (affine_rank(verts, tight[i]) + 1 != d) continue;
      facets.push_back(lift_to_carrier(cell.carrier_, a.row(i), b[i]));
    }
  }
  std::sort(facets.begin(), facets.end(), [](const auto& x, const auto& y) {
    if (int c = compare(x.first, y.first); c != 0) return c < 0;
    return x.second < y.second;
  });
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  for (const auto& [row, off] : facets) {
    cell.ineqs_.append_row(row);
    cell.offsets_.push_back(off);
  }
  cell.vertices_ = d == 0 ? std::vector<RatVec>{verts.front()} : std::move(verts);
  cell.finish();
  return cell;
}

void RelOpenCell::finish() {
  excluded_.clear();
  for (std::size_t i = 0; i < ineqs_.rows(); ++i) excluded_.push_back({i});
  lower_ = vertices_.front();
  upper_ = vertices_.front();
  for (const auto& v : vertices_) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < lower_[j]) lower_[j] = v[j];
      if (v[j] > upper_[j]) upper_[j] = v[j];
    }
  }
}

bool RelOpenCell::closure_contains(std::span<const Rat> x) const {
  if (!carrier_.contains(x)) return false;
  for (std::size_t i = 0; i < ineqs_.rows(); ++i) {
    if (dot(ineqs_.row(i), x) > offsets_[i]) return false;
  }
  return true;
}

bool RelOpenCell::contains(std::span<const Rat> x) const {
  if (!closure_contains(x)) return false;
  for (const auto& face : excluded_) {
    bool all_tight = true;
    for (auto i : face) {
      if (dot(ineqs_.row(i), x) != offsets_[i]) {
        all_tight = false;
        break;
      }
    }
    if (all_tight) return false;
  }
  return true;
}

bool RelOpenCell::closure_contains(const RelOpenCell& other) const {
  for (const auto& v : other.vertices_) {
    if (!closure_contains(v)) return false;
  }
  return true;
}

RatVec RelOpenCell::interior_point() const { return centroid(vertices_); }

std::string RelOpenCell::encode() const {
  std::string out = "{";
  for (const auto& v : vertices_) out += to_string(std::span<const Rat>(v));
  return out + "}";
}

int compare(const RelOpenCell& a, const RelOpenCell& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  if (int c = compare(a.carrier(), b.carrier()); c != 0) return c;
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  for (std::size_t i = 0; i < std::min(va.size(), vb.size()); ++i) {
    if (int c = compare(va[i], vb[i]); c != 0) return c;
  }
  if (va.size() == vb.size()) return 0;
  return va.size() < vb.size() ? -1 : 1;
}

void sort_unique(std::vector<RelOpenCell>& cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

bool boxes_overlap(const RelOpenCell& a, const RelOpenCell& b) {
  for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
    if (a.upper()[j] < b.lower()[j] || b.upper()[j] < a.lower()[j]) return false;
  }
  return true;
}

namespace {

// True when cl(cell) lies beyond some facet hyperplane of `by`: strictly
// when `strict`, otherwise possibly touching it.
bool separated(const RelOpenCell& cell, const RelOpenCell& by, bool strict) {
  for (std::size_t i = 0; i < by.inequalities().rows(); ++i) {
    const auto a = by.inequalities().row(i);
    const Rat& b = by.offsets()[i];
    bool all = true;
    for (const auto& v : cell.vertices()) {
      const int c = cmp(dot(a, v), b);
      if (c < 0 || (strict && c == 0)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

bool meets(const RelOpenCell& open, const RelOpenCell& closed) {
  if (open.ambient_dim() != closed.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "cells in different ambient spaces");
  if (!boxes_overlap(open, closed)) return false;
  if (open.dim() == 0) return closed.closure_contains(open.vertices().front());
  if (closed.closure_contains(open.interior_point())) return true;
  // Cheap separations: a facet of one closure with the other cell beyond it.
  if (separated(open, closed, true) || separated(closed, open, false)) return false;
  RatMat a = open.inequalities();
  RatVec b = open.offsets();
  a.append_rows(closed.inequalities());
  b.insert(b.end(), closed.offsets().begin(), closed.offsets().end());
  append_equations(closed.carrier(), a, b);
  const auto z = constrained_vertices(open.carrier(), a, b);
  if (z.empty()) return false;
  // The centroid of cl(open) ∩ cl(closed) lies in relint(open) exactly when
  // that intersection reaches the relative interior.
  return open.contains(centroid(z));
}

RatVec random_relint_point(const RelOpenCell& cell, std::mt19937_64& rng, long max_weight) {
  std::uniform_int_distribution<long> weight(1, max_weight);
  RatVec p(cell.ambient_dim());
  Rat total = 0;
  for (const auto& v : cell.vertices()) {
    const Rat w = weight(rng);
    total += w;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += w * v[j];
  }
  for (auto& x : p) x /= total;
  return p;
}

Rat relative_volume(const RelOpenCell& cell) {
  if (cell.dim() == 0) return 1;
  std::vector<RatVec> pts;
  for (const auto& v : cell.vertices()) pts.push_back(cell.carrier().local_coords(v));
  return hull_volume(pts, convex_hull(pts));
}

std::optional<RelOpenCell> closure_meet(const RelOpenCell& a, const RelOpenCell& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "cells in different ambient spaces");
  if (!boxes_overlap(a, b) || separated(a, b, true) || separated(b, a, true)) return std::nullopt;
  RatMat m = a.inequalities();
  RatVec r = a.offsets();
  m.append_rows(b.inequalities());
  r.insert(r.end(), b.offsets().begin(), b.offsets().end());
  append_equations(b.carrier(), m, r);
  auto z = constrained_vertices(a.carrier(), m, r);
  if (z.empty()) return std::nullopt;
  return RelOpenCell::from_points(z);
}

bool intersects(const RelOpenCell& a, const RelOpenCell& b) {
  // relint(cl a ∩ cl b) lies in a ∩ b whenever a ∩ b is nonempty.
  const auto m = closure_meet(a, b);
  if (!m) return false;
  const auto p = m->interior_point();
  return a.contains(p) && b.contains(p);
}

std::vector<RelOpenCell> closure_faces(const RelOpenCell& cell) {
  const auto& verts = cell.vertices();
  const auto tight = tight_sets(verts, cell.inequalities(), cell.offsets());
  std::vector<RelOpenCell> out;
  for (const auto& ids : face_vertex_sets(verts.size(), tight)) {
    std::vector<RatVec> pts;
    for (auto v : ids) pts.push_back(verts[v]);
    out.push_back(RelOpenCell::from_points(pts));
  }
  sort_unique(out);
  return out;
}

std::vector<RelOpenCell> split(const RelOpenCell& cell, std::span<const Rat> normal, const Rat& offset) {
  const auto& verts = cell.vertices();
  std::vector<Rat> side(verts.size());
  bool neg = false;
  bool pos = false;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    side[v] = dot(normal, verts[v]) - offset;
    neg |= sgn(side[v]) < 0;
    pos |= sgn(side[v]) > 0;
  }
  if (!(neg && pos)) return {cell};

  // The hyperplane meets cl(cell) in the crossing points of the edges whose
  // endpoints lie strictly on opposite sides. Two vertices span an edge when
  // the facets tight at both have normals of rank d - 1.
  const std::size_t d = cell.dim();
  const auto& a = cell.inequalities();
  const auto tight = tight_sets(verts, a, cell.offsets());
  std::vector<std::vector<std::size_t>> at(verts.size());
  for (std::size_t i = 0; i < tight.size(); ++i) {
    for (auto v : tight[i]) at[v].push_back(i);
  }
  std::vector<RatVec> below;
  std::vector<RatVec> on;
  std::vector<RatVec> above;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const int sv = sgn(side[v]);
    if (sv <= 0) below.push_back(verts[v]);
    if (sv == 0) on.push_back(verts[v]);
    if (sv >= 0) above.push_back(verts[v]);
  }
  for (std::size_t u = 0; u < verts.size(); ++u) {
    if (sgn(side[u]) >= 0) continue;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (sgn(side[v]) <= 0) continue;
      std::vector<std::size_t> common;
      std::set_intersection(at[u].begin(), at[u].end(), at[v].begin(), at[v].end(), std::back_inserter(common));
      if (common.size() + 1 < d) continue;
      RatMat normals(0, cell.ambient_dim());
      for (auto i : common) normals.append_row(a.row(i));
      if (rank(normals) + 1 != d) continue;
      const Rat t = side[u] / (side[u] - side[v]);
      RatVec x = verts[u];
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += t * (verts[v][j] - verts[u][j]);
      below.push_back(x);
      on.push_back(x);
      above.push_back(std::move(x));
    }
  }

  const RatVec plus(normal.begin(), normal.end());
  const RatVec minus = scale(normal, Rat(-1));
  auto with = [&](std::initializer_list<std::pair<const RatVec*, Rat>> extra) {
    RatMat m = a;
    RatVec r = cell.offsets();
    for (const auto& [row, rhs] : extra) {
      m.append_row(*row);
      r.push_back(rhs);
    }
    return std::pair{std::move(m), std::move(r)};
  };
  std::vector<RelOpenCell> pieces;
  {
    auto [m, r] = with({{&plus, offset}});
    pieces.push_back(RelOpenCell::from_vertices(std::move(below), m, r));
  }
  {
    auto [m, r] = with({{&plus, offset}, {&minus, -offset}});
    pieces.push_back(RelOpenCell::from_vertices(std::move(on), m, r));
  }
  {
    auto [m, r] = with({{&minus, -offset}});
    pieces.push_back(RelOpenCell::from_vertices(std::move(above), m, r));
  }
  return pieces;
}

RelOpenCell project_relint(const FaceLattice& lattice, const Face& face, const RatMat& projection) {
  if (face.vertex_ids.empty()) throw Error(ErrorKind::EmptyPolytope, "cannot project the empty face");
  if (!lattice.vertices.empty() && projection.cols() != lattice.vertices.front().size()) {
    throw Error(ErrorKind::DimensionMismatch, "projection width differs from polytope dimension");
  }
  if (rank(projection) != projection.rows()) throw Error(ErrorKind::RankDeficient, "projection does not have full row rank");
  std::vector<RatVec> pts;
  for (auto v : face.vertex_ids) pts.push_back(projection.apply(lattice.vertices[v]));
  return RelOpenCell::from_points(pts);
}

bool cell_contains(const RelOpenCell& cell, std::span<const Rat> x) {
  if (x.size() != cell.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from cell");
  return cell.contains(x);
}

namespace {

// Splits `piece` so that every output is inside one face of cl(k) or misses cl(k).
std::vector<RelOpenCell> split_against(const RelOpenCell& piece, const RelOpenCell& k) {
  const auto meet = subspace_intersect(piece.carrier(), k.carrier());
  std::vector<RelOpenCell> stage = {piece};
  if (!meet) return stage;
  if (meet->dim() < piece.dim()) {
    // Equations of carrier(k) ∩ carrier(piece) written inside the piece's
    // carrier, lifted through its pivot coordinates.
    const auto& host = piece.carrier();
    RatMat local_dirs(0, host.dim());
    for (std::size_t i = 0; i < meet->dim(); ++i) local_dirs.append_row(host.local_coords(add(meet->directions().row(i), host.base())));
    const auto local = AffineSubspace::make(host.local_coords(meet->base()), local_dirs);
    const auto [eqs, rhs] = local.equations();
    for (std::size_t e = 0; e < eqs.rows(); ++e) {
      RatVec normal(host.ambient_dim());
      for (std::size_t j = 0; j < host.dim(); ++j) normal[host.pivots()[j]] = eqs(e, j);
      std::vector<RelOpenCell> next;
      for (const auto& c : stage) {
        auto parts = split(c, normal, rhs[e]);
        next.insert(next.end(), parts.begin(), parts.end());
      }
      stage = std::move(next);
    }
  }
  std::vector<RelOpenCell> out;
  for (const auto& c : stage) {
    if (!k.carrier().contains(c.carrier()) || !meets(c, k)) {
      out.push_back(c);
      continue;
    }
    std::vector<RelOpenCell> parts = {c};
    for (std::size_t f = 0; f < k.inequalities().rows(); ++f) {
      std::vector<RelOpenCell> next;
      for (const auto& q : parts) {
        auto pieces = split(q, k.inequalities().row(f), k.offsets()[f]);
        next.insert(next.end(), pieces.begin(), pieces.end());
      }
      parts = std::move(next);
    }
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

}  // namespace

std::vector<RelOpenCell> common_refinement(const std::vector<RelOpenCell>& cells, const RelOpenCell& within) {
  for (const auto& c : cells) {
    if (c.ambient_dim() != within.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "cells in different ambient spaces");
  }
  std::vector<RelOpenCell> pieces = {within};
  for (const auto& k : cells) {
    std::vector<RelOpenCell> next;
    for (const auto& p : pieces) {
      if (p.dim() == 0 || !meets(p, k)) {
        next.push_back(p);
        continue;
      }
      auto parts = split_against(p, k);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    pieces = std::move(next);
  }
  sort_unique(pieces);
  return pieces;
}

}  // namespace strata
