#ifndef STRATA_TEST_SUPPORT_HPP
#define STRATA_TEST_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <tuple>
#include <random>
#include <string>

#include "strata/hamiltonian_toric.hpp"
#include "strata/lattice.hpp"
#include "strata/linalg.hpp"
#include "strata/polyhedron.hpp"
#include "strata/stratifier.hpp"

namespace strata::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

  Rat rat(long lo, long hi, long max_den = 4) {
    const long den = uniform(1, max_den);
    return make_rat(uniform(lo * den, hi * den), den);
  }

  RatVec vec(std::size_t n, long lo, long hi, long max_den = 4) {
    RatVec v(n);
    for (auto& x : v) x = rat(lo, hi, max_den);
    return v;
  }

  RatMat mat(std::size_t rows, std::size_t cols, long lo, long hi, long max_den = 1) {
    RatMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rat(lo, hi, max_den);
    }
    return m;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline RatVec rv(std::initializer_list<long> values) { return make_vec(values); }

inline HPolytope hpoly(std::initializer_list<std::initializer_list<long>> a, std::initializer_list<long> b) {
  return HPolytope{RatMat::from_ints(a), make_vec(b)};
}

inline HPolytope unit_square() { return hpoly({{-1, 0}, {1, 0}, {0, -1}, {0, 1}}, {0, 1, 0, 1}); }

inline HPolytope standard_triangle(long scale = 1) { return hpoly({{-1, 0}, {0, -1}, {1, 1}}, {0, 0, scale}); }

/// [0,1] x 3-simplex in coordinates (u, v1, v2).
inline HPolytope cp1xcp2_prism() {
  return hpoly({{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 1, 1}}, {0, 1, 0, 0, 3});
}

inline RatMat cp1xcp2_projection() { return RatMat::from_ints({{1, 1, 0}, {0, 0, 1}}); }

/// Product of scaled simplices and cubes, dimension in [1, max_dim].
/// These are Delzant, so they double as toric test inputs.
inline HPolytope random_product_polytope(Rng& rng, std::size_t max_dim) {
  const std::size_t n = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_dim)));
  RatMat a(0, n);
  RatVec b;
  std::size_t start = 0;
  while (start < n) {
    const std::size_t d = std::min(n - start, static_cast<std::size_t>(rng.uniform(1, 3)));
    const long s = rng.uniform(1, 3);
    for (std::size_t i = 0; i < d; ++i) {
      RatVec row(n);
      row[start + i] = -1;
      a.append_row(row);
      b.push_back(0);
    }
    if (rng.uniform(0, 1) == 0) {
      RatVec row(n);
      for (std::size_t i = 0; i < d; ++i) row[start + i] = 1;
      a.append_row(row);
      b.push_back(s);
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        RatVec row(n);
        row[start + i] = 1;
        a.append_row(row);
        b.push_back(s);
      }
    }
    start += d;
  }
  return HPolytope{a, b};
}

/// Relative interiors of all projected faces, deduplicated.
inline PiecewiseAffineCover projected_face_cover(const HPolytope& p, const RatMat& proj) {
  const auto lattice = face_lattice(p);
  std::vector<RelOpenCell> cells;
  for (const auto& f : lattice.faces) {
    if (f.dim >= 0) cells.push_back(project_relint(lattice, f, proj));
  }
  sort_unique(cells);
  return PiecewiseAffineCover::make(proj.rows(), cells);
}

inline std::string stratification_key(const Stratification& s) {
  std::string out;
  for (const auto& st : s.strata) {
    out += std::to_string(st.id) + ":" + st.carrier.encode() + "[";
    for (const auto& c : st.cells) out += c.encode();
    out += "]\n";
  }
  for (auto [a, b] : s.frontier) out += std::to_string(a) + "<" + std::to_string(b) + " ";
  return out;
}

/// True when some closed cross-polytope of radius 2^-h around x inside the
/// carrier lies in the union of `cells`.
inline bool has_open_neighbourhood(const std::vector<RelOpenCell>& cells, const AffineSubspace& carrier, const RatVec& x,
                                   int max_halvings = 24) {
  Rat eps = 1;
  for (int h = 0; h < max_halvings; ++h, eps /= 2) {
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < carrier.dim(); ++i) {
      RatVec plus = x, minus = x;
      for (std::size_t j = 0; j < x.size(); ++j) {
        plus[j] += eps * carrier.directions()(i, j);
        minus[j] -= eps * carrier.directions()(i, j);
      }
      pts.push_back(plus);
      pts.push_back(minus);
    }
    if (pts.empty()) pts.push_back(x);
    const auto cross = RelOpenCell::from_points(pts);
    bool inside = true;
    for (const auto& face : closure_faces(cross)) {
      for (const auto& piece : common_refinement(cells, face)) {
        const auto y = piece.interior_point();
        if (std::none_of(cells.begin(), cells.end(), [&](const RelOpenCell& c) { return c.contains(y); })) inside = false;
      }
      if (!inside) break;
    }
    if (inside) return true;
  }
  return false;
}

/// A random element of GL(n, Z) and its inverse, built from elementary moves.
inline std::pair<RatMat, RatMat> random_unimodular(Rng& rng, std::size_t n, int moves = 4) {
  RatMat u = RatMat::identity(n);
  RatMat inv = RatMat::identity(n);
  if (n < 2) return {u, inv};
  for (int m = 0; m < moves; ++m) {
    const std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long c = rng.uniform(0, 1) ? 1 : -1;
    // u <- E u with E = I + c e_i e_j^T; inv <- inv E^{-1}.
    for (std::size_t col = 0; col < n; ++col) u(i, col) += c * u(j, col);
    for (std::size_t row = 0; row < n; ++row) inv(row, j) -= c * inv(row, i);
  }
  return {u, inv};
}

/// {A x <= b} mapped through x -> u x, given u^{-1}.
inline HPolytope transform(const HPolytope& p, const RatMat& u_inv) { return HPolytope{p.A * u_inv, p.b}; }

/// x -> u x applied to every stratum; the result is re-finalized.
inline Stratification map_stratification(const Stratification& s, const RatMat& u) {
  Stratification out;
  out.ambient_dim = s.ambient_dim;
  for (const auto& st : s.strata) {
    Stratum m = st;
    std::vector<RelOpenCell> mapped;
    for (const auto& c : st.cells) {
      std::vector<RatVec> pts;
      for (const auto& v : c.vertices()) pts.push_back(u.apply(v));
      mapped.push_back(RelOpenCell::from_points(pts));
    }
    // Cells stay sorted; the spanning tree follows its cells.
    std::vector<std::size_t> order(mapped.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return mapped[x] < mapped[y]; });
    std::vector<std::size_t> position(order.size());
    m.cells.clear();
    for (std::size_t p = 0; p < order.size(); ++p) {
      position[order[p]] = p;
      m.cells.push_back(mapped[order[p]]);
    }
    for (auto& [x, y] : m.spanning_tree) std::tie(x, y) = std::minmax(position[x], position[y]);
    std::sort(m.spanning_tree.begin(), m.spanning_tree.end());
    m.direction = row_basis(st.direction * u.transpose());
    m.integer_direction = saturated_integer_basis(m.direction);
    m.carrier = AffineSubspace::make(u.apply(st.carrier.base()), m.direction);
    out.strata.push_back(std::move(m));
  }
  finalize(out);
  return out;
}

/// A Delzant product polytope of dimension <= max_n with a rank-k subtorus,
/// k <= max_k. Effective subtori are the first k columns of a unimodular matrix.
inline ToricAction random_toric_action(Rng& rng, std::size_t max_n, std::size_t max_k, bool effective) {
  for (;;) {
    auto p = random_product_polytope(rng, max_n);
    const std::size_t n = p.dim();
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min(n, max_k))));
    RatMat b(n, k);
    if (effective) {
      const auto [u, u_inv] = random_unimodular(rng, n, 2 * static_cast<int>(n) + 2);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) b(i, j) = u(i, j);
      }
    } else {
      b = rng.mat(n, k, -2, 2);
    }
    if (rank(b) < k) continue;
    return ToricAction::make(std::move(p), std::move(b));
  }
}

}  // namespace strata::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<strata::RatVec> {
  static String convert(const strata::RatVec& v) { return strata::to_string(v).c_str(); }
};
template <>
struct StringMaker<std::vector<std::size_t>> {
  static String convert(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return (s + "]").c_str();
  }
};
template <>
struct StringMaker<std::vector<strata::RatVec>> {
  static String convert(const std::vector<strata::RatVec>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + strata::to_string(v[i]);
    return (s + "}").c_str();
  }
};
}  // namespace doctest
#endif

#endif
