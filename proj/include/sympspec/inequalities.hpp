#pragma once

#include <optional>
#include <vector>

#include "sympspec/williamson.hpp"

namespace sympspec {

struct WeylReport {
  std::size_t i = 0, j = 0;  // 1-based
  double lhs = 0.0;          // d_{i+j-1}(A+B)
  double rhs = 0.0;          // d_i(A) + d_j(B)
  double slack = 0.0;        // lhs - rhs
  bool inequality_ok = false;
  std::optional<EigenPair> witness;  // common pair; carries d_{i+j-1}(A+B)
  double witness_residual = 0.0;     // worst pair residual over A, B, A+B
};

WeylReport weyl_check(const Matrix& a, const Matrix& b, std::size_t i, std::size_t j,
                      const ToleranceConfig& tol = {});

// Intersects the eigenspaces ker(JX - i d I) for X in {A, B, A+B} over the
// reals and searches the intersection for a direction of positive symplectic
// norm. Present exactly when a normalized common pair exists numerically.
std::optional<EigenPair> weyl_equality_witness(const Matrix& a, const Matrix& b, std::size_t i,
                                               std::size_t j, const ToleranceConfig& tol = {});

struct TraceConditionReport {
  double trace_a = 0.0;     // Tr[M(t)^T A M(t)]
  double trace_b = 0.0;     // Tr[M(t)^T B M(t)]
  double residual_a = 0.0;  // trace_a / 2 - sum of selected d(A)
  double residual_b = 0.0;  // trace_b / 2 - sum of the k smallest d(B)
  bool degenerate = false;  // a selected eigenvalue of A+tB touches an unselected one
};

struct LidskiiReport {
  std::vector<std::size_t> indices;  // 1-based, strictly ascending
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool inequality_ok = false;
  // Filled by lidskii_equality_test:
  std::optional<double> linearity_residual;  // max |phi(t) - chord(t)| over the grid
  std::optional<bool> equality;              // endpoint slack and linearity both inside tolerance
  bool consistent = true;                    // endpoint and linearity verdicts agree
  Vec grid_t;
  Vec grid_phi;
  Vec degenerate_points;  // grid t where the selected set touches an unselected eigenvalue
  std::optional<TraceConditionReport> trace;
};

LidskiiReport lidskii_check(const Matrix& a, const Matrix& b,
                            const std::vector<std::size_t>& indices,
                            const ToleranceConfig& tol = {});

// Samples phi(t) = sum_j d_{i_j}(A + tB) on a uniform grid and tests the
// equality of the endpoint identity against linearity of the curve.
LidskiiReport lidskii_equality_test(const Matrix& a, const Matrix& b,
                                    const std::vector<std::size_t>& indices,
                                    std::size_t grid_size, const ToleranceConfig& tol = {});

TraceConditionReport lidskii_trace_conditions(const Matrix& a, const Matrix& b,
                                              const std::vector<std::size_t>& indices, double t,
                                              const ToleranceConfig& tol = {});

// (1/2) Tr[M^T B M] - sum of the k smallest d(B); nonnegative for symplectic M.
double trace_extremal_gap(const Matrix& b, const Matrix& m, const ToleranceConfig& tol = {});

struct SubspaceConditionReport {
  bool invariant_a = false;
  bool invariant_b = false;
  bool basis_of_b_pairs = false;
  bool associated_match = false;
  double invariance_residual_a = 0.0;
  double invariance_residual_b = 0.0;
};

// Checks a candidate subspace against the necessary equality conditions:
// JA/JB invariance, a basis of B-pairs for d_1(B)..d_k(B), and the match of
// associated eigenvalues of A+tB with the selected indices on [b, c].
SubspaceConditionReport verify_lidskii_subspace_conditions(
    const Matrix& a, const Matrix& b, const std::vector<std::size_t>& indices,
    const SymplecticSubspace& u, double interval_lo, double interval_hi, std::size_t grid_size,
    const ToleranceConfig& tol = {});

}  // namespace sympspec
