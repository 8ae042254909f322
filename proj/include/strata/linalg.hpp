#ifndef STRATA_LINALG_HPP
#define STRATA_LINALG_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

/**
 * Dense row-major matrix of exact rationals. Row count may be zero while the
 * column count is still meaningful (an empty basis of a subspace of Q^n).
 */
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols);
  static RatMat from_ints(std::initializer_list<std::initializer_list<long>> rows);
  static RatMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rat> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Rat> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  RatVec row_vec(std::size_t i) const { return RatVec(row(i).begin(), row(i).end()); }
  std::vector<RatVec> to_rows() const;

  void append_row(std::span<const Rat> r);
  void append_rows(const RatMat& other);

  RatMat transpose() const;
  RatMat select_columns(std::span<const std::size_t> columns) const;

  /// M * x
  RatVec apply(std::span<const Rat> x) const;
  RatMat operator*(const RatMat& rhs) const;

  bool is_integral() const;

  friend bool operator==(const RatMat& a, const RatMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

int compare(const RatMat& a, const RatMat& b);

struct RrefResult {
  RatMat reduced;                    // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

RrefResult rref(const RatMat& m);
std::size_t rank(const RatMat& m);

/// Nonzero rows of rref(m): the canonical basis of the row space.
RatMat row_basis(const RatMat& m);

/// Canonical (RREF) basis of {v : m v = 0}.
RatMat null_space(const RatMat& m);

/// Some x with a x = b (free variables set to zero), or nullopt.
std::optional<RatVec> solve(const RatMat& a, std::span<const Rat> b);

/// True when v lies in the row space of `basis` (any spanning set).
bool in_row_space(const RatMat& basis, std::span<const Rat> v);

/// Canonical basis of the intersection of the row spaces of the inputs.
RatMat direction_intersect(const std::vector<RatMat>& directions);

/**
 * An affine subspace base + span(directions) of Q^n in canonical form:
 * directions is in RREF and base is zero on every pivot column, so equal
 * subspaces compare equal field by field.
 */
class AffineSubspace {
 public:
  AffineSubspace() = default;

  static AffineSubspace make(std::span<const Rat> point, const RatMat& directions);
  static AffineSubspace point(std::span<const Rat> p);
  static AffineSubspace whole(std::size_t n);
  static AffineSubspace affine_hull(std::span<const RatVec> points);
  /// {x : e x = rhs}; nullopt when inconsistent.
  static std::optional<AffineSubspace> from_equations(const RatMat& e, std::span<const Rat> rhs);

  const RatVec& base() const { return base_; }
  const RatMat& directions() const { return directions_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::size_t ambient_dim() const { return directions_.cols(); }
  std::size_t dim() const { return directions_.rows(); }

  bool contains(std::span<const Rat> x) const;
  bool contains(const AffineSubspace& other) const;
  bool direction_contains(std::span<const Rat> v) const;

  /// Coordinates of x (assumed in the subspace) with respect to the direction basis.
  RatVec local_coords(std::span<const Rat> x) const;
  RatVec from_local(std::span<const Rat> t) const;

  /// Canonical equations (normals in RREF) with right-hand sides.
  std::pair<RatMat, RatVec> equations() const;

  std::string encode() const;

  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.directions_ == b.directions_ && a.base_ == b.base_;
  }

 private:
  RatVec base_;
  RatMat directions_;
  std::vector<std::size_t> pivots_;
};

int compare(const AffineSubspace& a, const AffineSubspace& b);

/// a ∩ b, or nullopt when disjoint. Throws DimensionMismatch.
std::optional<AffineSubspace> subspace_intersect(const AffineSubspace& a, const AffineSubspace& b);

/// Direction spaces intersected; spaces must share the ambient dimension.
RatMat direction_intersect(const std::vector<AffineSubspace>& spaces);

}  // namespace strata

#endif
