#pragma once

#include <vector>

#include "sympspec/core.hpp"
#include "sympspec/symplectic.hpp"

namespace sympspec {

struct SymplecticSpectrum {
  Vec d;                 // ascending, positive
  Matrix m;              // symplectic eigenbasis, columns (u_1..u_n, v_1..v_n)
  double diag_residual;  // ‖M^T A M - D ⊕ D‖_F
  double symp_residual;  // ‖M^T J M - J‖_F
};

// Williamson decomposition M^T A M = D ⊕ D through the skew canonical form
// of A^{1/2} J A^{1/2}.
SymplecticSpectrum williamson(const Matrix& a, const ToleranceConfig& tol = {});

// A u = d J v, A v = -d J u with ⟨u, Jv⟩ = 1 when normalized.
struct EigenPair {
  Vec u, v;
  double d;
};

std::vector<EigenPair> eigenpairs(const SymplecticSpectrum& spectrum);

// max(‖A u - d J v‖, ‖A v + d J u‖)
double pair_residual(const Matrix& a, const EigenPair& p);

// u = sum(alpha_l u_l + beta_l v_l), v = sum(-beta_l u_l + alpha_l v_l);
// stays an eigenvector pair when all inputs share one eigenvalue.
EigenPair combine_pairs(const std::vector<EigenPair>& pairs, const Vec& alpha, const Vec& beta,
                        const ToleranceConfig& tol = {});

// Even-dimensional subspace with a certified symplectic basis.
struct SymplecticSubspace {
  Matrix basis;  // 2n x 2k, columns (u_1..u_k, v_1..v_k)
  double residual;

  static SymplecticSubspace from_basis(Matrix basis, const ToleranceConfig& tol = {});
  std::size_t half_dim() const { return basis.cols() / 2; }
};

struct InvarianceCheck {
  bool verdict;
  double residual;  // ‖(I - P) X Bas‖_F for the orthogonal projector P onto the span
};

InvarianceCheck is_invariant(const Matrix& x, const SymplecticSubspace& u,
                             const ToleranceConfig& tol = {});

// Eigenvector pairs of a inside a JA-invariant symplectic subspace, through
// the compression of A^{1/2} J A^{1/2} onto A^{1/2}(U + iU); the pair scaling
// follows ⟨x, Jy⟩ = 1/(2 gamma) with u = sqrt(2 gamma) x.
std::vector<EigenPair> subspace_eigenpairs(const Matrix& a, const SymplecticSubspace& u,
                                           const ToleranceConfig& tol = {});

// The associated symplectic eigenvalues gamma_1 <= ... <= gamma_k alone.
Vec associated_eigenvalues(const Matrix& a, const SymplecticSubspace& u,
                           const ToleranceConfig& tol = {});

struct CurveTable {
  std::vector<std::size_t> indices;  // 1-based, ascending
  Vec t;
  Matrix values;  // one row per grid point, one column per index
  Vec sum;
};

// Samples d_{i}(A + tB) on the given grid; each point is an independent
// Williamson decomposition, no continuity tracking across points.
CurveTable curve(const Matrix& a, const Matrix& b, const std::vector<std::size_t>& indices,
                 const Vec& grid, const ToleranceConfig& tol = {});

}  // namespace sympspec
