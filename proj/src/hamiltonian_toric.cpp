#include "strata/hamiltonian_toric.hpp"

#include <algorithm>

#include "strata/error.hpp"
#include "strata/hull.hpp"
#include "strata/lattice.hpp"

namespace strata {

ToricAction ToricAction::make(HPolytope polytope, RatMat B) {
  const std::size_t n = polytope.A.cols();
  if (polytope.b.size() != polytope.A.rows()) throw Error(ErrorKind::DimensionMismatch, "polytope offsets and normals differ in count");
  if (B.rows() != n) throw Error(ErrorKind::DimensionMismatch, "subtorus matrix must have one row per polytope coordinate");
  if (!polytope.A.is_integral()) throw Error(ErrorKind::NonIntegralInput, "polytope normals must be integral");
  if (!B.is_integral()) throw Error(ErrorKind::NonIntegralInput, "subtorus matrix must be integral");
  if (rank(B) != B.cols()) throw Error(ErrorKind::RankDeficient, "subtorus matrix does not have full column rank");
  for (std::size_t i = 0; i < polytope.A.rows(); ++i) {
    auto row = polytope.A.row(i);
    if (is_zero(row)) throw Error(ErrorKind::RankDeficient, "zero polytope normal");
    const Rat f = primitive_factor(row);
    for (auto& x : row) x *= f;
    polytope.b[i] *= f;
  }

  ToricAction a;
  a.lattice = face_lattice(polytope);
  a.polytope = std::move(polytope);
  a.projection = B.transpose();
  a.B = std::move(B);
  const auto divisors = smith_elementary_divisors(a.B);
  a.effective = divisors.size() == a.k() && std::all_of(divisors.begin(), divisors.end(), [](const mpz_class& d) { return d == 1; });
  a.face_images.reserve(a.lattice.faces.size());
  for (const auto& f : a.lattice.faces) {
    a.face_images.push_back(f.dim < 0 ? RelOpenCell::from_points({RatVec(a.k())}) : project_relint(a.lattice, f, a.projection));
  }
  return a;
}

PiecewiseAffineCover momentum_cover(const ToricAction& a) {
  std::vector<RelOpenCell> cells;
  for (std::size_t f = 0; f < a.lattice.faces.size(); ++f) {
    if (a.lattice.faces[f].dim >= 0) cells.push_back(a.face_images[f]);
  }
  sort_unique(cells);
  return PiecewiseAffineCover::make(a.k(), std::move(cells));
}

Stratification hamiltonian_stratification(const ToricAction& a) { return stratify(momentum_cover(a)); }

IsotropyData face_isotropy(const ToricAction& a, std::size_t face) {
  const auto& f = a.lattice.faces.at(face);
  if (f.dim < 0) throw Error(ErrorKind::EmptyPolytope, "the empty face has no isotropy");
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  // Solutions of B ξ = Σ c_i N_i, as the kernel of [B | -N^T] projected to ξ.
  RatMat system(n, k + f.active_set.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < k; ++j) system(r, j) = a.B(r, j);
    for (std::size_t i = 0; i < f.active_set.size(); ++i) system(r, k + i) = -a.polytope.A(f.active_set[i], r);
  }
  const RatMat kernel = null_space(system);
  RatMat xi(0, k);
  for (std::size_t r = 0; r < kernel.rows(); ++r) xi.append_row(kernel.row(r).subspan(0, k));

  IsotropyData out;
  out.face = face;
  out.isotropy_lie_algebra = row_basis(xi);
  out.annihilator = null_space(out.isotropy_lie_algebra);
  if (!(out.annihilator == a.face_images[face].carrier().directions())) {
    throw Error(ErrorKind::NonIntegrable, "isotropy annihilator differs from the projected face direction");
  }
  return out;
}

std::vector<IsotropyData> isotropy_at(const ToricAction& a, std::span<const Rat> x) {
  if (x.size() != a.k()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from the subtorus rank");
  std::vector<IsotropyData> out;
  for (std::size_t f = 0; f < a.lattice.faces.size(); ++f) {
    if (a.lattice.faces[f].dim >= 0 && a.face_images[f].contains(x)) out.push_back(face_isotropy(a, f));
  }
  if (out.empty()) throw Error(ErrorKind::PointOutsideImage, "point " + to_string(x) + " is outside the momentum image");
  return out;
}

std::vector<std::size_t> regular_locus(const ToricAction& a, const Stratification& s) {
  if (!a.effective) throw Error(ErrorKind::NonEffectiveAction, "regular values are characterised only for effective actions");
  std::vector<std::size_t> out;
  for (const auto& stratum : s.strata) {
    bool regular = true;
    for (const auto& c : stratum.cells) {
      for (const auto& d : isotropy_at(a, c.interior_point())) regular = regular && d.isotropy_lie_algebra.empty();
    }
    if (regular) out.push_back(stratum.id);
  }
  return out;
}

bool is_delzant(const HPolytope& p) {
  const auto lattice = face_lattice(p);
  const std::size_t n = p.dim();
  if (lattice.polytope_dim() != static_cast<int>(n)) return false;
  std::vector<const Face*> facets;
  for (const auto& f : lattice.faces) {
    if (f.dim == static_cast<int>(n) - 1) facets.push_back(&f);
  }
  for (std::size_t v = 0; v < lattice.vertices.size(); ++v) {
    RatMat normals(0, n);
    for (const auto* f : facets) {
      if (std::binary_search(f->vertex_ids.begin(), f->vertex_ids.end(), v)) {
        normals.append_row(primitive_integer_multiple(p.A.row(f->active_set.front())));
      }
    }
    if (normals.rows() != n) return false;
    const Rat det = determinant(normals);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

}  // namespace strata
