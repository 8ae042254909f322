#include "strata/dh_volume.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "strata/error.hpp"
#include "strata/hull.hpp"
#include "strata/lattice.hpp"

namespace strata {

Rat DensityPoly::evaluate(std::span<const Rat> x) const {
  if (x.size() != variables) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from the polynomial");
  Rat total = 0;
  for (const auto& [e, c] : coefficients) {
    Rat term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned p = 0; p < e[i]; ++p) term *= x[i];
    }
    total += term;
  }
  return total;
}

namespace {

std::string variable_name(std::size_t i, std::size_t count) {
  if (count <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

// Graded, then lexicographically descending: x^2, x y, y^2, x, y, 1.
bool graded_before(const Exponents& a, const Exponents& b) {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

}  // namespace

std::string DensityPoly::to_string() const {
  std::vector<Exponents> order;
  for (const auto& [e, c] : coefficients) order.push_back(e);
  std::sort(order.begin(), order.end(), graded_before);
  if (order.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& e : order) {
    const Rat& c = coefficients.at(e);
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rat mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(i, variables);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << strata::to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << strata::to_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

DensityPoly make_density(std::size_t stratum_id, std::size_t variables, const std::map<Exponents, Rat>& terms) {
  DensityPoly p;
  p.stratum_id = stratum_id;
  p.variables = variables;
  for (const auto& [e, c] : terms) {
    if (e.size() != variables) throw Error(ErrorKind::DimensionMismatch, "exponent vector length differs from the variable count");
    if (sgn(c) == 0) continue;
    p.coefficients[e] = c;
    p.degree = std::max(p.degree, static_cast<int>(total_degree(e)));
  }
  return p;
}

FiberChart fiber_chart(const ToricAction& action, std::span<const Rat> x) {
  if (x.size() != action.k()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from the subtorus rank");
  const std::size_t n = action.n();
  FiberChart chart;
  chart.origin = *solve(action.projection, x);  // full row rank, always solvable
  chart.basis = kernel_lattice(action.projection, n);
  const auto& p = action.polytope;
  chart.a = p.A * chart.basis.transpose();
  chart.b = p.b;
  const RatVec ay = p.A.apply(chart.origin);
  for (std::size_t i = 0; i < chart.b.size(); ++i) chart.b[i] -= ay[i];
  return chart;
}

namespace {

// Vertices of the fiber in chart coordinates; empty when the fiber is.
std::vector<RatVec> fiber_vertices(const FiberChart& chart) { return basic_feasible_points(chart.a, chart.b); }

std::size_t affine_dim(const std::vector<RatVec>& pts) { return AffineSubspace::affine_hull(pts).dim(); }

}  // namespace

FiberVolume fiber_volume(const ToricAction& action, std::span<const Rat> x) {
  const auto chart = fiber_chart(action, x);
  const auto verts = fiber_vertices(chart);
  if (verts.empty()) throw Error(ErrorKind::EmptyFiber, "no polytope point maps to " + to_string(x));
  FiberVolume out{RatVec(x.begin(), x.end()), Rat(0)};
  const std::size_t d = chart.basis.rows();
  if (d == 0) {
    out.volume = 1;
  } else if (affine_dim(verts) == d) {
    out.volume = hull_volume(verts, convex_hull(verts));
  }
  return out;
}

std::vector<Exponents> monomials(std::size_t variables, std::size_t degree) {
  std::vector<Exponents> out;
  Exponents e(variables, 0);
  // Odometer over [0, degree]^variables, keeping total degree <= degree.
  for (;;) {
    if (total_degree(e) <= degree) out.push_back(e);
    std::size_t i = 0;
    while (i < variables && e[i] == degree) e[i++] = 0;
    if (i == variables) break;
    ++e[i];
  }
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    if (total_degree(a) != total_degree(b)) return total_degree(a) < total_degree(b);
    return a > b;
  });
  return out;
}

namespace {

RatVec monomial_row(const std::vector<Exponents>& mons, std::span<const Rat> x) {
  RatVec row;
  row.reserve(mons.size());
  for (const auto& e : mons) {
    Rat v = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned p = 0; p < e[i]; ++p) v *= x[i];
    }
    row.push_back(std::move(v));
  }
  return row;
}

}  // namespace

DensityPoly density_polynomial(const ToricAction& action, const Stratification& s, std::size_t stratum_id, std::uint64_t seed) {
  const auto& stratum = s.strata.at(stratum_id);
  const std::size_t k = action.k();
  if (stratum.dim != k) throw Error(ErrorKind::NotTopDimensional, "stratum " + std::to_string(stratum_id) + " is not top-dimensional");
  std::vector<const RelOpenCell*> open;
  for (const auto& c : stratum.cells) {
    if (c.dim() == k) open.push_back(&c);
  }
  const auto mons = monomials(k, action.n() - k);

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(stratum_id)};
  std::mt19937_64 rng(seq);
  std::size_t draws = 0;
  auto draw = [&] { return random_relint_point(*open[draws++ % open.size()], rng, 1000); };

  // Greedily keep points that raise the rank of the interpolation matrix.
  RatMat m(0, mons.size());
  RatVec values;
  while (m.rows() < mons.size()) {
    if (draws > 50 * mons.size() + 50) {
      throw Error(ErrorKind::InterpolationInconsistent, "no unisolvent point set found in stratum " + std::to_string(stratum_id));
    }
    const auto x = draw();
    RatMat trial = m;
    trial.append_row(monomial_row(mons, x));
    if (rank(trial) == m.rows()) continue;
    m = std::move(trial);
    values.push_back(fiber_volume(action, x).volume);
  }
  const auto coeffs = solve(m, values);
  std::map<Exponents, Rat> terms;
  for (std::size_t i = 0; i < mons.size(); ++i) terms[mons[i]] = (*coeffs)[i];
  auto poly = make_density(stratum_id, k, terms);

  for (std::size_t i = 0; i <= k; ++i) {
    const auto x = draw();
    if (poly.evaluate(x) != fiber_volume(action, x).volume) {
      throw Error(ErrorKind::InterpolationInconsistent,
                  "density of stratum " + std::to_string(stratum_id) + " is not polynomial at " + to_string(x));
    }
  }
  return poly;
}

McEstimate mc_fiber_volume(const ToricAction& action, std::span<const Rat> x, std::size_t trials, std::uint64_t seed) {
  const auto chart = fiber_chart(action, x);
  const auto verts = fiber_vertices(chart);
  if (verts.empty()) throw Error(ErrorKind::EmptyFiber, "no polytope point maps to " + to_string(x));
  const std::size_t d = chart.basis.rows();
  if (d == 0) return {1.0, 0.0};
  if (affine_dim(verts) != d) throw Error(ErrorKind::DegenerateFiber, "fiber over " + to_string(x) + " is not full-dimensional");
  if (trials == 0) throw Error(ErrorKind::DegenerateFiber, "no trials requested");

  std::vector<double> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = to_double(verts.front()[j]);
    for (const auto& v : verts) {
      lo[j] = std::min(lo[j], to_double(v[j]));
      hi[j] = std::max(hi[j], to_double(v[j]));
    }
  }
  const std::size_t m = chart.a.rows();
  std::vector<double> a(m * d), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i * d + j] = to_double(chart.a(i, j));
    b[i] = to_double(chart.b[i]);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> t(d);
  std::size_t hits = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (std::size_t j = 0; j < d; ++j) t[j] = lo[j] + (hi[j] - lo[j]) * unit(rng);
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) s += a[i * d + j] * t[j];
      inside = s <= b[i];
    }
    hits += inside;
  }
  double box = 1;
  for (std::size_t j = 0; j < d; ++j) box *= hi[j] - lo[j];
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {box * p, box * std::sqrt(p * (1 - p) / static_cast<double>(trials))};
}

}  // namespace strata
