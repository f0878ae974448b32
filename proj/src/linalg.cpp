#include "typeident/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace typeident::linalg {

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix out(m[0].size(), RatVector(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) out[j][i] = m[i][j];
  return out;
}

RatMatrix select_rows(const RatMatrix& m, const std::vector<int>& rows) {
  RatMatrix out;
  out.reserve(rows.size());
  for (int r : rows) out.push_back(m.at(static_cast<size_t>(r)));
  return out;
}

RatMatrix select_columns(const RatMatrix& m, const std::vector<int>& cols) {
  RatMatrix out(m.size(), RatVector(cols.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      out[i][j] = m[i][static_cast<size_t>(cols[j])];
  return out;
}

std::vector<int> rref_inplace(RatMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const size_t nrows = m.size();
  const size_t ncols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < nrows; ++col) {
    size_t pivot = row;
    while (pivot < nrows && m[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < nrows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational factor = m[i][col];
      for (size_t j = col; j < ncols; ++j) m[i][j] -= factor * m[row][j];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

int rank(RatMatrix m) { return static_cast<int>(rref_inplace(m).size()); }

Rational determinant(RatMatrix m) {
  const size_t n = m.size();
  if (n == 0) return Rational(1);
  if (m[0].size() != n) throw std::invalid_argument("determinant of non-square matrix");
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[col], m[pivot]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = 1 / m[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (m[i][col] == 0) continue;
      const Rational factor = m[i][col] * inv;
      for (size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  return det;
}

RatMatrix kernel_basis(const RatMatrix& m) {
  if (m.empty()) return {};
  const size_t ncols = m[0].size();
  RatMatrix work = m;
  const std::vector<int> pivots = rref_inplace(work);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;

  RatMatrix basis;
  for (size_t free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVector v(ncols, Rational(0));
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<size_t>(pivots[i])] = -work[i][free_col];
    }
    basis.push_back(std::move(v));
  }
  return canonical_basis(std::move(basis));
}

RatMatrix canonical_basis(RatMatrix spanning_rows) {
  rref_inplace(spanning_rows);
  RatMatrix out;
  for (auto& row : spanning_rows) {
    const bool zero = std::all_of(row.begin(), row.end(),
                                  [](const Rational& q) { return q == 0; });
    if (!zero) out.push_back(std::move(row));
  }
  return out;
}

RatMatrix subspace_intersection(const RatMatrix& basis_a, const RatMatrix& basis_b,
                                int ambient) {
  if (basis_a.empty() || basis_b.empty()) return {};
  // Solve sum_i c_i a_i = sum_j d_j b_j: kernel of the ambient x (ka+kb)
  // matrix [A^T | -B^T], then map coefficient vectors back through A.
  const size_t ka = basis_a.size();
  const size_t kb = basis_b.size();
  RatMatrix system(static_cast<size_t>(ambient), RatVector(ka + kb, Rational(0)));
  for (size_t i = 0; i < ka; ++i)
    for (int x = 0; x < ambient; ++x) system[static_cast<size_t>(x)][i] = basis_a[i][static_cast<size_t>(x)];
  for (size_t j = 0; j < kb; ++j)
    for (int x = 0; x < ambient; ++x)
      system[static_cast<size_t>(x)][ka + j] = -basis_b[j][static_cast<size_t>(x)];

  const RatMatrix coeffs = kernel_basis(system);
  RatMatrix spanning;
  for (const auto& cd : coeffs) {
    RatVector v(static_cast<size_t>(ambient), Rational(0));
    for (size_t i = 0; i < ka; ++i)
      for (int x = 0; x < ambient; ++x) v[static_cast<size_t>(x)] += cd[i] * basis_a[i][static_cast<size_t>(x)];
    spanning.push_back(std::move(v));
  }
  return canonical_basis(std::move(spanning));
}

bool in_column_span(const RatMatrix& m, const std::vector<int>& cols, const RatVector& v) {
  RatMatrix sub = select_columns(m, cols);
  const int base_rank = rank(sub);
  for (size_t i = 0; i < sub.size(); ++i) sub[i].push_back(v[i]);
  return rank(std::move(sub)) == base_rank;
}

LinearSolution solve(const RatMatrix& m, const RatVector& b) {
  LinearSolution sol;
  if (m.empty() || m.size() != b.size()) {
    throw std::invalid_argument("solve: dimension mismatch");
  }
  const size_t ncols = m[0].size();
  RatMatrix aug = m;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const std::vector<int> pivots = rref_inplace(aug);
  for (int p : pivots) {
    if (static_cast<size_t>(p) == ncols) return sol;  // pivot in the rhs column
  }
  sol.consistent = true;
  sol.particular.assign(ncols, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) {
    sol.particular[static_cast<size_t>(pivots[i])] = aug[i][ncols];
  }
  sol.kernel = kernel_basis(m);
  return sol;
}

int kruskal_column_rank(const RatMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  const int ncols = static_cast<int>(m[0].size());
  for (int d = 1; d <= ncols; ++d) {
    std::vector<int> subset(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) subset[static_cast<size_t>(i)] = i;
    while (true) {
      if (rank(select_columns(m, subset)) < d) return d - 1;
      int i = d - 1;
      while (i >= 0 && subset[static_cast<size_t>(i)] == ncols - d + i) --i;
      if (i < 0) break;
      ++subset[static_cast<size_t>(i)];
      for (int j = i + 1; j < d; ++j) subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return ncols;
}

RatVector mat_vec(const RatMatrix& m, const RatVector& v) {
  RatVector out(m.size(), Rational(0));
  for (size_t i = 0; i < m.size(); ++i) {
    assert(m[i].size() == v.size());
    for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

}  // namespace typeident::linalg
