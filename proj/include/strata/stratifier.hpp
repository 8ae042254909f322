#ifndef STRATA_STRATIFIER_HPP
#define STRATA_STRATIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/cover.hpp"

namespace strata {

struct DFieldCell {
  RelOpenCell cell;
  RatMat direction;                    // intersection of the signature's direction spaces
  std::vector<std::size_t> signature;  // indices into DField::cover.members
};

/// Partition of the support on which membership is constant, annotated with directions.
struct DField {
  PiecewiseAffineCover cover;  // canonical (sorted, deduplicated) members
  std::vector<DFieldCell> cells;
};

/// Throws InvalidCover when validation fails.
DField compute_d_field(const PiecewiseAffineCover& cover);

struct Stratum {
  std::size_t id = 0;
  std::size_t dim = 0;
  RatMat direction;          // canonical RREF basis
  RatMat integer_direction;  // HNF basis of the integer points of the direction space
  AffineSubspace carrier;
  /// Pairwise disjoint cells whose union is the stratum. Each cell lies in
  /// the carrier; cells of lower dimension occur only for nonconvex strata.
  std::vector<RelOpenCell> cells;
  /// Adjacency edges between cell indices witnessing connectedness.
  std::vector<std::pair<std::size_t, std::size_t>> spanning_tree;

  bool contains(std::span<const Rat> x) const;

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct Stratification {
  std::size_t ambient_dim = 0;
  std::vector<Stratum> strata;                               // sorted by (dim, carrier, cells); id = position
  std::vector<std::pair<std::size_t, std::size_t>> frontier;  // (lower, upper): lower ⊂ cl(upper)

  std::optional<std::size_t> locate(std::span<const Rat> x) const;
  std::vector<std::size_t> count_by_dim() const;

  friend bool operator==(const Stratification&, const Stratification&) = default;
};

/// Throws InvalidCover, or NonIntegrable if the D-field has no integral strata.
Stratification stratify(const PiecewiseAffineCover& cover);
Stratification stratify(const DField& field);

/// Sorts strata, assigns ids and recomputes the frontier relation.
void finalize(Stratification& s);

struct FrontierViolation {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::string reason;
};

/// Pairs (τ, σ) where cl(σ) meets τ but τ ⊄ cl(σ) or dim τ >= dim σ.
std::vector<FrontierViolation> verify_frontier(const Stratification& s);

/// True when cl(cells) contains the open cell `c`.
bool closure_covers(const std::vector<RelOpenCell>& cells, const RelOpenCell& c);

struct TangentViolation {
  std::size_t stratum = 0;
  RatVec point;
  RatMat expected;
  RatMat found;
};

struct TangentReport {
  std::size_t samples = 0;
  std::vector<TangentViolation> violations;
};

/// At sampled points of each stratum, compares its direction with the
/// intersection of the directions of all members through the point.
TangentReport verify_tangent_condition(const Stratification& s, const PiecewiseAffineCover& cover,
                                       std::size_t samples_per_stratum, std::uint64_t seed = 1);

/// `count` points of the stratum: cell interior points first, then random relative interior points.
std::vector<RatVec> sample_stratum(const Stratum& s, std::size_t count, std::mt19937_64& rng);

}  // namespace strata

#endif
