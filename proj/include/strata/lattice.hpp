#ifndef STRATA_LATTICE_HPP
#define STRATA_LATTICE_HPP

#include <vector>

#include "strata/linalg.hpp"

namespace strata {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;

// Conversions between the rational matrix type used at module boundaries and
// plain integer rows; to_int_rows throws NonIntegralInput.
IntMat to_int_rows(const RatMat& m);
RatMat to_rat_mat(const IntMat& rows, std::size_t cols);

/// Row-style Hermite normal form of the lattice generated by the rows:
/// upper echelon, positive pivots, entries above a pivot reduced into [0, pivot).
RatMat hnf_lattice_basis(const RatMat& generators);

/// HNF basis of Z^n ∩ ker(projection); projection is k x n integral of rank k.
RatMat kernel_lattice(const RatMat& projection, std::size_t n);

/// HNF basis of the lattice Z^n ∩ span(rows of `directions`).
RatMat saturated_integer_basis(const RatMat& directions);

/// Elementary divisors of the Smith normal form (nonzero diagonal entries).
std::vector<mpz_class> smith_elementary_divisors(const RatMat& m);

}  // namespace strata

#endif
