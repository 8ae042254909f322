#ifndef STRATA_COVER_HPP
#define STRATA_COVER_HPP

#include <string>
#include <vector>

#include "strata/polyhedron.hpp"

namespace strata {

/**
 * A finite cover of X = union of members by relatively open rational
 * polytopes. Members keep the caller's order; `canonical()` sorts and
 * removes duplicates, which is what the stratifier consumes.
 */
struct PiecewiseAffineCover {
  std::size_t ambient_dim = 0;
  std::vector<RelOpenCell> members;

  /// Throws DimensionMismatch when a member lives in another ambient space.
  static PiecewiseAffineCover make(std::size_t ambient_dim, std::vector<RelOpenCell> members);

  PiecewiseAffineCover canonical() const;
  bool support_contains(std::span<const Rat> x) const;
};

struct MemberReport {
  std::size_t member = 0;
  bool affine_open = false;
  bool closure_is_union = false;
  /// Members contained in cl(member) that cover cl(member) ∩ X.
  std::vector<std::size_t> witnesses;
  /// Pieces of cl(member) ∩ X not inside any member contained in cl(member).
  std::vector<RelOpenCell> uncovered;
};

struct ValidationReport {
  bool valid = true;
  std::vector<MemberReport> members;

  std::vector<std::size_t> offending_members() const;
  std::string describe() const;
};

/// A piece of the support on which membership in every member (and in
/// every face of every member's closure) is constant.
struct SupportCell {
  RelOpenCell cell;
  std::vector<std::size_t> signature;  // members containing the cell
};

/// Partition of the support into SupportCells, sorted by cell.
std::vector<SupportCell> partition_support(const PiecewiseAffineCover& cover);

/// Checks that each member is open in its affine hull and that the closure
/// of each member within X is a union of members. Never throws on bad covers.
ValidationReport validate(const PiecewiseAffineCover& cover);
/// Same, reusing a partition computed by partition_support(cover).
ValidationReport validate(const PiecewiseAffineCover& cover, const std::vector<SupportCell>& partition);

/// {i : x ∈ members[i]}, sorted. Throws PointOutsideSupport or DimensionMismatch.
std::vector<std::size_t> membership_signature(const PiecewiseAffineCover& cover, std::span<const Rat> x);

/// Intersection of the direction spaces of the listed members.
RatMat signature_direction(const PiecewiseAffineCover& cover, const std::vector<std::size_t>& signature);

}  // namespace strata

#endif
