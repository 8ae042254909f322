#include "strata/lattice.hpp"

#include <algorithm>
#include <utility>

#include "strata/error.hpp"

namespace strata {

IntMat to_int_rows(const RatMat& m) {
  IntMat rows(m.rows(), IntVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw Error(ErrorKind::NonIntegralInput, "entry " + to_string(m(i, j)) + " is not an integer");
      rows[i][j] = m(i, j).get_num();
    }
  }
  return rows;
}

RatMat to_rat_mat(const IntMat& rows, std::size_t cols) {
  RatMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(rows[i][j]);
  }
  return m;
}

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy_row(IntVec& target, const mpz_class& factor, const IntVec& source) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (source[j] != 0) target[j] -= factor * source[j];
  }
}

// Hermite-reduces `rows` in place using pivots restricted to the first
// `pivot_cols` columns; returns the number of pivot rows. Rows past that
// count are zero on the pivot columns.
std::size_t hermite_reduce(IntMat& rows, std::size_t pivot_cols) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < pivot_cols && r < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others_zero = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        axpy_row(rows[i], floor_div(rows[i][col], rows[r][col]), rows[r]);
        if (rows[i][col] != 0) others_zero = false;
      }
      if (others_zero) break;
    }
    if (r == rows.size() || rows[r][col] == 0) continue;
    if (rows[r][col] < 0) {
      for (auto& x : rows[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) axpy_row(rows[i], floor_div(rows[i][col], rows[r][col]), rows[r]);
    ++r;
  }
  return r;
}

IntMat integer_kernel(const IntMat& m, std::size_t n) {
  // Row-reduce [m^T | I]; unimodular row operations keep the identity part a
  // basis of Z^n, and rows vanishing on the m^T part span the kernel lattice.
  const std::size_t k = m.size();
  IntMat aug(n, IntVec(k + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = m[j][i];
    aug[i][k + i] = 1;
  }
  const std::size_t r = hermite_reduce(aug, k);
  IntMat kernel;
  for (std::size_t i = r; i < n; ++i) kernel.emplace_back(aug[i].begin() + static_cast<long>(k), aug[i].end());
  const std::size_t rk = hermite_reduce(kernel, n);
  kernel.resize(rk);
  return kernel;
}

}  // namespace

RatMat hnf_lattice_basis(const RatMat& generators) {
  IntMat rows = to_int_rows(generators);
  const std::size_t r = hermite_reduce(rows, generators.cols());
  rows.resize(r);
  return to_rat_mat(rows, generators.cols());
}

RatMat kernel_lattice(const RatMat& projection, std::size_t n) {
  if (projection.cols() != n) throw Error(ErrorKind::DimensionMismatch, "projection must have n columns");
  IntMat m = to_int_rows(projection);
  if (rank(projection) != projection.rows()) throw Error(ErrorKind::RankDeficient, "projection does not have full row rank");
  return to_rat_mat(integer_kernel(m, n), n);
}

RatMat saturated_integer_basis(const RatMat& directions) {
  const std::size_t n = directions.cols();
  const RatMat normals = null_space(directions);
  IntMat eqs;
  for (std::size_t i = 0; i < normals.rows(); ++i) {
    const RatVec scaled = primitive_integer_multiple(normals.row(i));
    IntVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = scaled[j].get_num();
    eqs.push_back(std::move(row));
  }
  return to_rat_mat(integer_kernel(eqs, n), n);
}

std::vector<mpz_class> smith_elementary_divisors(const RatMat& m) {
  IntMat a = to_int_rows(m);
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  auto is_diagonal = [&] {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j && a[i][j] != 0) return false;
      }
    }
    return true;
  };
  // Alternate row and column Hermite reduction; each pass does not increase
  // the leading entries, so the process reaches a diagonal matrix.
  while (!is_diagonal()) {
    hermite_reduce(a, cols);
    IntMat t(cols, IntVec(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    }
    hermite_reduce(t, rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = t[j][i];
    }
  }
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
    if (a[i][i] != 0) d.push_back(abs(a[i][i]));
  }
  // Enforce the divisibility chain d_1 | d_2 | ...
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

}  // namespace strata
