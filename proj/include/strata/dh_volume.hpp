#ifndef STRATA_DH_VOLUME_HPP
#define STRATA_DH_VOLUME_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "strata/hamiltonian_toric.hpp"

namespace strata {

/// Exponent vector (length k) -> coefficient; zero coefficients are omitted.
using Exponents = std::vector<unsigned>;

struct DensityPoly {
  std::size_t stratum_id = 0;
  std::size_t variables = 0;
  std::map<Exponents, Rat> coefficients;
  int degree = -1;  // -1 for the zero polynomial

  Rat evaluate(std::span<const Rat> x) const;
  /// Human-readable form in x, y, z (or x1..xk beyond three variables),
  /// highest degree first, e.g. "-x - y + 4".
  std::string to_string() const;

  friend bool operator==(const DensityPoly&, const DensityPoly&) = default;
};

/// The polynomial with the given terms, dropping zeros and computing the degree.
DensityPoly make_density(std::size_t stratum_id, std::size_t variables, const std::map<Exponents, Rat>& terms);

struct FiberVolume {
  RatVec point;
  Rat volume;  // in the lattice Z^n ∩ ker(projection); 0 when the fiber is lower-dimensional
};

/// Kernel-lattice coordinates of a fiber: y = origin + basis^T t.
struct FiberChart {
  RatVec origin;
  RatMat basis;  // (n - k) x n HNF basis of Z^n ∩ ker(projection)
  RatMat a;      // constraints in t: a t <= b
  RatVec b;
};

/// Throws DimensionMismatch.
FiberChart fiber_chart(const ToricAction& action, std::span<const Rat> x);

/// Exact lattice-normalised volume of P ∩ projection^{-1}(x). Throws EmptyFiber.
FiberVolume fiber_volume(const ToricAction& action, std::span<const Rat> x);

/// Monomials of total degree <= degree in `variables` variables, graded then lexicographic.
std::vector<Exponents> monomials(std::size_t variables, std::size_t degree);

/**
 * The polynomial of degree <= n - k equal to fiber_volume on a top stratum,
 * by exact interpolation at seeded points strictly inside the stratum,
 * verified at k + 1 further points. Throws NotTopDimensional or
 * InterpolationInconsistent.
 */
DensityPoly density_polynomial(const ToricAction& action, const Stratification& s, std::size_t stratum_id,
                               std::uint64_t seed = 1);

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
};

/// Rejection-sampling estimate of the fiber volume in the bounding box of
/// the fiber in kernel-lattice coordinates. Throws EmptyFiber or DegenerateFiber.
McEstimate mc_fiber_volume(const ToricAction& action, std::span<const Rat> x, std::size_t trials, std::uint64_t seed);

}  // namespace strata

#endif
