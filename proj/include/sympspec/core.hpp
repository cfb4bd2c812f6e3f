#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympspec {

// Failure modes surfaced by the library. Every throw site picks one of
// these so callers (and the CLI exit-code mapping) can dispatch on it.
enum class Errc {
  not_symmetric,
  no_convergence,
  not_positive_definite,
  ill_conditioned,
  not_skew,
  singular_input,
  odd_dimension,
  shape_mismatch,
  mixed_eigenvalues,
  zero_combination,
  index_out_of_range,
  not_symplectic,
  not_invariant,
  numerical_failure,
  length_mismatch,
  negative_entry,
  not_majorized,
  not_weakly_supermajorized,
  verification_failed,
  parse_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

// Thresholds threaded through every numerical verdict in the library.
struct ToleranceConfig {
  double rel = 1e-9;        // relative residual bound
  double abs = 1e-12;       // absolute floor (positivity, singularity)
  double cluster = 1e-7;    // eigenvalue clustering threshold
  double rank_cut = 1e-8;   // singular-value cutoff for rank decisions
  double cond_max = 1e12;   // condition number ceiling

  void validate() const {
    if (!(rel > 0) || !(abs > 0) || !(cluster > 0) || !(rank_cut > 0) || !(cond_max > 0))
      fail(Errc::parse_error, "tolerances must be strictly positive");
    if (cluster < rel)
      fail(Errc::parse_error, "cluster tolerance must be at least the relative tolerance");
  }
};

using Vec = std::vector<double>;

// Dense row-major real matrix. All library routines assume binary64
// entries; finiteness is checked at the public entry points, not here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vec& d);
  // [[X, 0], [0, Y]]
  static Matrix direct_sum(const Matrix& x, const Matrix& y);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return a_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const Vec& data() const noexcept { return a_; }

  Matrix transposed() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  double frobenius() const;
  double max_abs() const;
  bool all_finite() const;
  double determinant() const;  // LU with partial pivoting

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Vec operator*(const Matrix& m, const Vec& v);

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

// y += s * x
inline void axpy(double s, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

inline void scale(Vec& x, double s) {
  for (double& e : x) e *= s;
}

bool all_finite(const Vec& v);

void require_finite(const Matrix& m, const char* where);
void require_finite(const Vec& v, const char* where);

double symmetry_residual(const Matrix& m);  // ‖M − Mᵀ‖_F
double skewness_residual(const Matrix& m);  // ‖M + Mᵀ‖_F

}  // namespace sympspec
