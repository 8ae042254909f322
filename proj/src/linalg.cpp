#include "strata/linalg.hpp"

#include <utility>

#include "strata/error.hpp"

namespace strata {

RatMat RatMat::from_rows(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMat m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RatMat RatMat::from_ints(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t cols = rows.size() ? rows.begin()->size() : 0;
  RatMat m(0, cols);
  for (const auto& r : rows) m.append_row(make_vec(r));
  return m;
}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<RatVec> RatMat::to_rows() const {
  std::vector<RatVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vec(i));
  return out;
}

void RatMat::append_row(std::span<const Rat> r) {
  if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row length differs from column count");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void RatMat::append_rows(const RatMat& other) {
  for (std::size_t i = 0; i < other.rows(); ++i) append_row(other.row(i));
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

RatMat RatMat::select_columns(std::span<const std::size_t> columns) const {
  RatMat out(rows_, columns.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out(i, j) = (*this)(i, columns[j]);
  }
  return out;
}

RatVec RatMat::apply(std::span<const Rat> x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  RatVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = dot(row(i), x);
  return y;
}

RatMat RatMat::operator*(const RatMat& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  RatMat out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

bool RatMat::is_integral() const {
  for (const auto& x : data_) {
    if (!is_integer(x)) return false;
  }
  return true;
}

int compare(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const int c = compare(a.row(i), b.row(i));
    if (c != 0) return c;
  }
  return 0;
}

RrefResult rref(const RatMat& m) {
  RrefResult res{m, {}};
  RatMat& r = res.reduced;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
    std::size_t pivot = lead;
    while (pivot < r.rows() && sgn(r(pivot, col)) == 0) ++pivot;
    if (pivot == r.rows()) continue;
    if (pivot != lead) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(pivot, j), r(lead, j));
    }
    const Rat inv = 1 / r(lead, col);
    for (std::size_t j = col; j < r.cols(); ++j) r(lead, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead || sgn(r(i, col)) == 0) continue;
      const Rat f = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) {
        if (sgn(r(lead, j)) != 0) r(i, j) -= f * r(lead, j);
      }
    }
    res.pivots.push_back(col);
    ++lead;
  }
  return res;
}

std::size_t rank(const RatMat& m) { return rref(m).rank(); }

RatMat row_basis(const RatMat& m) {
  auto res = rref(m);
  RatMat out(0, m.cols());
  for (std::size_t i = 0; i < res.rank(); ++i) out.append_row(res.reduced.row(i));
  return out;
}

RatMat null_space(const RatMat& m) {
  const auto res = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : res.pivots) is_pivot[p] = true;
  RatMat basis(0, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(n);
    v[f] = 1;
    for (std::size_t i = 0; i < res.rank(); ++i) v[res.pivots[i]] = -res.reduced(i, f);
    basis.append_row(v);
  }
  return row_basis(basis);
}

std::optional<RatVec> solve(const RatMat& a, std::span<const Rat> b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
  RatMat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto res = rref(aug);
  if (!res.pivots.empty() && res.pivots.back() == a.cols()) return std::nullopt;
  RatVec x(a.cols());
  for (std::size_t i = 0; i < res.rank(); ++i) x[res.pivots[i]] = res.reduced(i, a.cols());
  return x;
}

bool in_row_space(const RatMat& basis, std::span<const Rat> v) {
  RatMat stacked = basis;
  stacked.append_row(v);
  return rank(stacked) == rank(basis);
}

RatMat direction_intersect(const std::vector<RatMat>& directions) {
  if (directions.empty()) throw Error(ErrorKind::DimensionMismatch, "empty list of direction spaces");
  const std::size_t n = directions.front().cols();
  RatMat normals(0, n);
  for (const auto& d : directions) {
    if (d.cols() != n) throw Error(ErrorKind::DimensionMismatch, "direction spaces of different ambient dimension");
    normals.append_rows(null_space(d));
  }
  return null_space(normals);
}

AffineSubspace AffineSubspace::make(std::span<const Rat> point, const RatMat& directions) {
  if (directions.cols() != point.size()) throw Error(ErrorKind::DimensionMismatch, "point and directions differ in dimension");
  AffineSubspace s;
  auto res = rref(directions);
  s.directions_ = RatMat(0, point.size());
  for (std::size_t i = 0; i < res.rank(); ++i) s.directions_.append_row(res.reduced.row(i));
  s.pivots_ = res.pivots;
  s.base_.assign(point.begin(), point.end());
  for (std::size_t i = 0; i < s.pivots_.size(); ++i) {
    const Rat c = s.base_[s.pivots_[i]];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < s.base_.size(); ++j) s.base_[j] -= c * s.directions_(i, j);
  }
  return s;
}

AffineSubspace AffineSubspace::point(std::span<const Rat> p) { return make(p, RatMat(0, p.size())); }

AffineSubspace AffineSubspace::whole(std::size_t n) { return make(RatVec(n), RatMat::identity(n)); }

AffineSubspace AffineSubspace::affine_hull(std::span<const RatVec> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyPolytope, "affine hull of no points");
  const auto& p0 = points.front();
  RatMat diffs(0, p0.size());
  for (std::size_t i = 1; i < points.size(); ++i) diffs.append_row(sub(points[i], p0));
  return make(p0, diffs);
}

std::optional<AffineSubspace> AffineSubspace::from_equations(const RatMat& e, std::span<const Rat> rhs) {
  auto x = solve(e, rhs);
  if (!x) return std::nullopt;
  return make(*x, null_space(e));
}

bool AffineSubspace::contains(std::span<const Rat> x) const {
  if (x.size() != ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from subspace");
  // x - base must equal sum_i x[piv_i] * d_i; check coordinate by coordinate.
  for (std::size_t j = 0; j < x.size(); ++j) {
    Rat expected = base_[j];
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      if (sgn(directions_(i, j)) != 0) expected += x[pivots_[i]] * directions_(i, j);
    }
    if (expected != x[j]) return false;
  }
  return true;
}

bool AffineSubspace::contains(const AffineSubspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "subspaces of different ambient dimension");
  if (!contains(other.base_)) return false;
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!direction_contains(other.directions_.row(i))) return false;
  }
  return true;
}

bool AffineSubspace::direction_contains(std::span<const Rat> v) const {
  for (std::size_t j = 0; j < v.size(); ++j) {
    Rat expected = 0;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      if (sgn(directions_(i, j)) != 0) expected += v[pivots_[i]] * directions_(i, j);
    }
    if (expected != v[j]) return false;
  }
  return true;
}

RatVec AffineSubspace::local_coords(std::span<const Rat> x) const {
  RatVec t(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) t[i] = x[pivots_[i]] - base_[pivots_[i]];
  return t;
}

RatVec AffineSubspace::from_local(std::span<const Rat> t) const {
  RatVec x = base_;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (sgn(t[i]) == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(directions_(i, j)) != 0) x[j] += t[i] * directions_(i, j);
    }
  }
  return x;
}

std::pair<RatMat, RatVec> AffineSubspace::equations() const {
  RatMat normals = null_space(directions_);
  RatVec rhs(normals.rows());
  for (std::size_t i = 0; i < normals.rows(); ++i) rhs[i] = dot(normals.row(i), base_);
  return {std::move(normals), std::move(rhs)};
}

std::string AffineSubspace::encode() const {
  std::string out = "[" + to_string(std::span<const Rat>(base_)) + ";";
  for (std::size_t i = 0; i < dim(); ++i) out += to_string(directions_.row(i));
  return out + "]";
}

int compare(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  if (int c = compare(a.directions(), b.directions()); c != 0) return c;
  return compare(std::span<const Rat>(a.base()), std::span<const Rat>(b.base()));
}

std::optional<AffineSubspace> subspace_intersect(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "subspaces of different ambient dimension");
  auto [ea, ra] = a.equations();
  auto [eb, rb] = b.equations();
  ea.append_rows(eb);
  ra.insert(ra.end(), rb.begin(), rb.end());
  return AffineSubspace::from_equations(ea, ra);
}

RatMat direction_intersect(const std::vector<AffineSubspace>& spaces) {
  std::vector<RatMat> dirs;
  dirs.reserve(spaces.size());
  for (const auto& s : spaces) dirs.push_back(s.directions());
  return direction_intersect(dirs);
}

}  // namespace strata
