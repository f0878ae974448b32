#pragma once

#include <optional>
#include <vector>

#include "typeident/rational.hpp"

namespace typeident::linalg {

RatMatrix transpose(const RatMatrix& m);
RatMatrix select_rows(const RatMatrix& m, const std::vector<int>& rows);
RatMatrix select_columns(const RatMatrix& m, const std::vector<int>& cols);

// In-place reduction to reduced row-echelon form. Returns the pivot column
// of each nonzero row; rank == pivots.size().
std::vector<int> rref_inplace(RatMatrix& m);

int rank(RatMatrix m);

Rational determinant(RatMatrix m);

// Kernel basis in canonical reduced row-echelon form (basis vectors as
// rows, unique for a given subspace). Empty matrix for a trivial kernel.
RatMatrix kernel_basis(const RatMatrix& m);

// Canonicalizes a spanning set: RREF of the stacked rows, zero rows dropped.
RatMatrix canonical_basis(RatMatrix spanning_rows);

// Intersection of two row-spanned subspaces of the same ambient dimension,
// again as a canonical basis.
RatMatrix subspace_intersection(const RatMatrix& basis_a, const RatMatrix& basis_b,
                                int ambient);

// Is v in the span of the selected columns of m?
bool in_column_span(const RatMatrix& m, const std::vector<int>& cols, const RatVector& v);

struct LinearSolution {
  bool consistent = false;
  RatVector particular;   // one solution of m*x = b when consistent
  RatMatrix kernel;       // canonical kernel basis of m
};

LinearSolution solve(const RatMatrix& m, const RatVector& b);

// Largest d such that every d-subset of columns is linearly independent.
int kruskal_column_rank(const RatMatrix& m);

RatVector mat_vec(const RatMatrix& m, const RatVector& v);

}  // namespace typeident::linalg
