#ifndef STRATA_POLYHEDRON_HPP
#define STRATA_POLYHEDRON_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "strata/linalg.hpp"

namespace strata {

/// {x : A x <= b}
struct HPolytope {
  RatMat A;
  RatVec b;

  std::size_t dim() const { return A.cols(); }
};

/**
 * Every feasible point of {t : a t <= b} at which a linearly independent
 * set of dim(t) constraints is tight, sorted and deduplicated. Bases are
 * searched depth first with an incremental independence test, so dependent
 * tight sets are pruned before any solve.
 */
std::vector<RatVec> basic_feasible_points(const RatMat& a, std::span<const Rat> b);

/// Vertices of a bounded nonempty polytope, lexicographically sorted.
/// Throws UnboundedPolytope or EmptyPolytope.
std::vector<RatVec> vertices(const HPolytope& p);

struct Face {
  std::vector<std::size_t> active_set;          // inequalities tight on the face
  std::optional<AffineSubspace> affine_hull;    // empty for the empty face
  int dim = -1;
  std::vector<std::size_t> vertex_ids;          // indices into FaceLattice::vertices
};

struct FaceLattice {
  std::vector<RatVec> vertices;
  std::vector<Face> faces;                                 // sorted by (dim, active_set)
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (sub, super), dims differ by one

  int polytope_dim() const { return faces.empty() ? -1 : faces.back().dim; }
  /// Number of faces of each dimension 0..polytope_dim().
  std::vector<std::size_t> count_by_dim() const;
};

/// Complete lattice (empty face through the polytope) from vertex-facet incidences.
FaceLattice face_lattice(const HPolytope& p);

/**
 * A relatively open rational polytope: the relative interior of its closure.
 *
 * The closure is stored as facet inequalities inside the carrier (affine
 * hull). Each inequality is lifted canonically to the ambient space using
 * only the carrier's pivot coordinates and scaled to a primitive integer
 * normal, so the stored form depends only on the point set. The excluded
 * faces are the facets; removing them leaves the relative interior.
 */
class RelOpenCell {
 public:
  /// relint(conv(points)).
  static RelOpenCell from_points(const std::vector<RatVec>& points);
  /// relint(carrier ∩ {a x <= b}); nullopt when that set is empty.
  static std::optional<RelOpenCell> from_constraints(const AffineSubspace& carrier, const RatMat& a, std::span<const Rat> b);
  /// relint(conv(verts)) when `verts` are exactly the vertices of {a x <= b}
  /// restricted to their affine hull; facets are read off the constraints.
  static RelOpenCell from_vertices(std::vector<RatVec> verts, const RatMat& a, std::span<const Rat> b);

  const AffineSubspace& carrier() const { return carrier_; }
  const RatMat& inequalities() const { return ineqs_; }
  const RatVec& offsets() const { return offsets_; }
  const std::vector<std::vector<std::size_t>>& excluded_faces() const { return excluded_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const RatVec& lower() const { return lower_; }
  const RatVec& upper() const { return upper_; }

  std::size_t dim() const { return carrier_.dim(); }
  std::size_t ambient_dim() const { return carrier_.ambient_dim(); }

  bool contains(std::span<const Rat> x) const;
  bool closure_contains(std::span<const Rat> x) const;
  /// cl(other) ⊆ cl(this)
  bool closure_contains(const RelOpenCell& other) const;

  /// The vertex centroid, which lies in the relative interior.
  RatVec interior_point() const;

  std::string encode() const;

  friend bool operator==(const RelOpenCell& a, const RelOpenCell& b) { return a.vertices_ == b.vertices_; }

 private:
  void finish();

  AffineSubspace carrier_;
  RatMat ineqs_;
  RatVec offsets_;
  std::vector<std::vector<std::size_t>> excluded_;
  std::vector<RatVec> vertices_;
  RatVec lower_;
  RatVec upper_;
};

/// Orders by (dim, carrier, closure vertices).
int compare(const RelOpenCell& a, const RelOpenCell& b);
inline bool operator<(const RelOpenCell& a, const RelOpenCell& b) { return compare(a, b) < 0; }

void sort_unique(std::vector<RelOpenCell>& cells);

bool boxes_overlap(const RelOpenCell& a, const RelOpenCell& b);

/// True when the open cell meets the closure of `closed`.
bool meets(const RelOpenCell& open, const RelOpenCell& closed);

/// A point of relint(cell): a combination of the vertices with random integer weights in [1, max_weight].
RatVec random_relint_point(const RelOpenCell& cell, std::mt19937_64& rng, long max_weight = 16);

/// Volume of the closure in the carrier's local coordinates (1 for a point).
Rat relative_volume(const RelOpenCell& cell);

/// relint(cl a ∩ cl b), or nullopt when the closures are disjoint.
std::optional<RelOpenCell> closure_meet(const RelOpenCell& a, const RelOpenCell& b);

/// a ∩ b is nonempty.
bool intersects(const RelOpenCell& a, const RelOpenCell& b);

/// Relative interiors of all nonempty faces of the closure (including the cell itself).
std::vector<RelOpenCell> closure_faces(const RelOpenCell& cell);

/// Pieces of the cell on the negative side, on, and on the positive side of
/// normal . x = offset; the cell itself when the hyperplane does not cut it.
std::vector<RelOpenCell> split(const RelOpenCell& cell, std::span<const Rat> normal, const Rat& offset);

/// π(relint F) for the projection x -> projection * x. Throws RankDeficient.
RelOpenCell project_relint(const FaceLattice& lattice, const Face& face, const RatMat& projection);

/// Exact membership; throws DimensionMismatch.
bool cell_contains(const RelOpenCell& cell, std::span<const Rat> x);

/**
 * Partition of `within` into relatively open cells such that membership in
 * every input cell, and in every face of every input cell's closure, is
 * constant on each output cell. Output is sorted.
 */
std::vector<RelOpenCell> common_refinement(const std::vector<RelOpenCell>& cells, const RelOpenCell& within);

}  // namespace strata

#endif
