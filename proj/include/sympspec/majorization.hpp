#pragma once

#include <optional>

#include "sympspec/core.hpp"

namespace sympspec {

enum class MajorizationRelation { majorized, weakly_supermajorized, neither };

const char* relation_name(MajorizationRelation r);

struct MajorizationReport {
  MajorizationRelation relation = MajorizationRelation::neither;
  Vec prefix_slacks;      // sum_{i<=k} x_up - sum_{i<=k} y_up, k = 1..n
  double total_gap = 0.0;  // sum x - sum y
};

// Ascending prefix-sum comparison: x is weakly supermajorized by y when every
// prefix slack is nonnegative, majorized when additionally the totals agree.
MajorizationReport compare(const Vec& x, const Vec& y, const ToleranceConfig& tol = {});

// Doubly stochastic E with x = E y, built from a finite T-transform chain.
// Present exactly when compare reports majorized.
std::optional<Matrix> ds_witness(const Vec& x, const Vec& y, const ToleranceConfig& tol = {});

// The five diagonal-derived vectors compared against the symplectic spectrum.
struct DiagonalVectors {
  Vec mean;               // (diag(A11) + diag(A22)) / 2
  Vec spectrum;           // d_1(A)..d_n(A)
  Vec geometric;          // sqrt(diag(A11) . diag(A22)) entrywise
  Vec quadratic;          // sqrt((diag(A11)^2 + diag(A22)^2) / 2)
  Vec quadratic_coupled;  // adds the squared diagonal of A12
};

DiagonalVectors diagonal_vectors(const Matrix& a, const ToleranceConfig& tol = {});

// N~_ij = (p_ij^2 + q_ij^2 + r_ij^2 + s_ij^2) / 2 from the four n x n blocks.
Matrix n_tilde(const Matrix& n);

bool is_doubly_stochastic(const Matrix& e, const ToleranceConfig& tol = {});

struct SuperstochasticCheck {
  bool verdict = false;
  double flow = 0.0;                // max transportation flow, feasible iff n
  std::optional<Matrix> witness;    // doubly stochastic E <= F when feasible
};

// Transportation feasibility: unit supply per row, unit demand per column,
// arc capacities F_ij, decided by max flow.
SuperstochasticCheck is_doubly_superstochastic(const Matrix& f, const ToleranceConfig& tol = {});

// compare(mean diag vector, symplectic spectrum); anything weaker than weak
// supermajorization is a numerical failure.
MajorizationReport schur_horn_weak_check(const Matrix& a, const ToleranceConfig& tol = {});

struct OrthosymplecticWilliamson {
  Matrix n;  // orthosymplectic, A = N (D ⊕ D) N^T
  Vec d;     // ascending
  double recon_residual;
};

// Present exactly when A commutes with J; the witness comes from the unitary
// diagonalization of the Hermitian matrix that A represents under the
// OrSp(2n) = U(n) identification.
std::optional<OrthosymplecticWilliamson> orthosymplectic_williamson(const Matrix& a,
                                                                    const ToleranceConfig& tol = {});

// Level-cut v_i = min(x_i, L) with sum(v) = sum(y); reduces x weakly
// supermajorized by y to v majorized by y with v <= x entrywise.
Vec water_fill(const Vec& x, const Vec& y, const ToleranceConfig& tol = {});

// Orthogonal O with diag(O diag(y) O^T) = v, by bracketing Givens rotations.
Matrix horn_symmetric(const Vec& v, const Vec& y, const ToleranceConfig& tol = {});

struct SchurHornConstruction {
  Matrix a;
  double mean_residual;      // ‖mean diag vector - x‖_inf
  double spectrum_residual;  // ‖d_s(A) - sorted y‖_inf
};

// Constructive converse: positive x weakly supermajorized by positive y gives
// A with mean diag vector x and symplectic spectrum y, through water filling,
// the symmetric Horn step, and the diagonal symplectic scaling M_alpha.
SchurHornConstruction schur_horn_construct(const Vec& x, const Vec& y,
                                           const ToleranceConfig& tol = {});

}  // namespace sympspec
