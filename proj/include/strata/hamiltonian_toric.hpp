#ifndef STRATA_HAMILTONIAN_TORIC_HPP
#define STRATA_HAMILTONIAN_TORIC_HPP

#include <vector>

#include "strata/polyhedron.hpp"
#include "strata/stratifier.hpp"

namespace strata {

/**
 * A subtorus T^k of the big torus T^n acting on the toric manifold with
 * momentum polytope `polytope`. B (n x k, integral, rank k) is the inclusion
 * of Lie algebras and `projection` = B^T the induced map on duals, so the
 * momentum image of the subtorus is projection(polytope).
 */
struct ToricAction {
  HPolytope polytope;  // rows scaled to primitive integer normals
  RatMat B;
  RatMat projection;
  bool effective = false;  // all elementary divisors of B equal 1
  FaceLattice lattice;
  /// projection(relint F) for every nonempty face, indexed like lattice.faces
  /// (the empty face maps to an unused placeholder).
  std::vector<RelOpenCell> face_images;

  /// Throws NonIntegralInput, RankDeficient, DimensionMismatch,
  /// UnboundedPolytope or EmptyPolytope.
  static ToricAction make(HPolytope polytope, RatMat B);

  std::size_t n() const { return B.rows(); }
  std::size_t k() const { return B.cols(); }
};

struct IsotropyData {
  std::size_t face = 0;  // index into ToricAction::lattice.faces
  RatMat isotropy_lie_algebra;  // {ξ : B ξ ∈ span of the normals active at the face}, RREF
  RatMat annihilator;           // its annihilator in the dual, RREF
};

/// Projected face relints, deduplicated and sorted.
PiecewiseAffineCover momentum_cover(const ToricAction& a);

Stratification hamiltonian_stratification(const ToricAction& a);

/// Isotropy data of one face; the annihilator is checked against the
/// direction of projection(aff F) and NonIntegrable is thrown on mismatch.
IsotropyData face_isotropy(const ToricAction& a, std::size_t face);

/// One entry per face F with x ∈ projection(relint F). Throws PointOutsideImage.
std::vector<IsotropyData> isotropy_at(const ToricAction& a, std::span<const Rat> x);

/// Ids of strata over which every contributing face has trivial isotropy,
/// tested at each cell's interior point. Throws NonEffectiveAction.
std::vector<std::size_t> regular_locus(const ToricAction& a, const Stratification& s);

/// Simple polytope whose primitive facet normals at each vertex form a basis of Z^n.
bool is_delzant(const HPolytope& p);

}  // namespace strata

#endif
