#pragma once

#include "sympspec/core.hpp"

namespace sympspec {

struct SymEig {
  Vec values;      // ascending
  Matrix vectors;  // orthogonal, column i pairs with values[i]
};

// Cyclic Jacobi with a fixed (p, q) sweep order; deterministic for a given
// input. Equal eigenvalues keep sweep order; each eigenvector is flipped so
// its first nonzero entry is positive.
SymEig sym_eig(const Matrix& s, const ToleranceConfig& tol = {});

// Symmetric positive definite square root V diag(sqrt(lambda)) V^T.
Matrix spd_sqrt(const Matrix& a, const ToleranceConfig& tol = {});

struct SkewCanonical {
  Matrix rotation;  // orthogonal; columns interleaved (x_1, y_1, x_2, y_2, ...)
  Vec d;            // ascending, strictly positive; length rows/2
};

// Orthogonal O with O^T K O = blockdiag([0, d_i; -d_i, 0]).
// Realized through the symmetric eigenproblem of -K^2: each eigenvalue d^2
// carries an even-dimensional eigenspace that splits into planes on which K
// rotates by d.
SkewCanonical skew_canonical(const Matrix& k, const ToleranceConfig& tol = {});

// Orthonormal basis of {b : ‖M b‖ <= rank_cut * sigma_max * ‖b‖}, via the
// Gram matrix M^T M. Zero columns is a valid result; for M = 0 the basis is
// the full identity.
Matrix nullspace(const Matrix& m, const ToleranceConfig& tol = {});

// Shared helper: orthonormalize the columns of m in place (modified
// Gram-Schmidt, two passes). Columns that collapse below `drop` times the
// original column norm are dropped; returns the surviving columns.
Matrix orthonormalize_columns(const Matrix& m, double drop = 1e-12);

}  // namespace sympspec
