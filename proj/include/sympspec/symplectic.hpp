#pragma once

#include <cstdint>

#include "sympspec/core.hpp"

namespace sympspec {

// J_{2n} = [[0, I_n], [-I_n, 0]] in the grouped column convention
// (u_1..u_n, v_1..v_n) used throughout the library.
Matrix symplectic_form(std::size_t n);

// J * M without forming J: (x; y) -> (y; -x) per column.
Matrix apply_form(const Matrix& m);
Vec apply_form(const Vec& v);

// M^{-1} = -J M^T J for square symplectic M.
Matrix symplectic_inverse(const Matrix& m);

struct SymplecticCheck {
  bool verdict;
  double residual;  // ‖M^T J_{2n} M - J_{2k}‖_F
};

// Accepts rectangular 2n x 2k frames, rows >= cols.
SymplecticCheck is_symplectic(const Matrix& m, const ToleranceConfig& tol = {});

struct OrthosymplecticCheck {
  bool verdict;
  double symp_residual;
  double orth_residual;  // ‖M^T M - I‖_F
};

OrthosymplecticCheck is_orthosymplectic(const Matrix& m, const ToleranceConfig& tol = {});

// Matrix plus the residual that certified it.
struct SymplecticMatrix {
  Matrix entries;
  double residual;
};

SymplecticMatrix certify_symplectic(Matrix m, const ToleranceConfig& tol = {});

// xoshiro256++ seeded through splitmix64. The algorithm is pinned so that a
// seed names the same matrix in any faithful reimplementation; see README.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();   // [0, 1)
  double gaussian();  // Box-Muller on consecutive uniforms
  double log_uniform(double lo, double hi);

 private:
  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-style draw through the U(n) embedding: complex Gaussian, QR
// orthonormalization, then [[X, -Y], [Y, X]].
Matrix random_orthosymplectic(std::size_t n, std::uint64_t seed);
Matrix orthosymplectic_from(std::size_t n, Rng& rng);

// O1 (diag(c) ⊕ diag(1/c)) O2 with c log-uniform in [1/spread, spread].
Matrix random_symplectic(std::size_t n, std::uint64_t seed, double spread);

// Symmetric positive definite with eigenvalue ratio at most cond_target and
// a random overall scale in [1/2, 2].
Matrix random_spd(std::size_t dim, std::uint64_t seed, double cond_target);

}  // namespace sympspec
