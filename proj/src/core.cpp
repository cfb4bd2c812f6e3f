#include "sympspec/core.hpp"

#include <algorithm>
#include <cstdlib>

namespace sympspec {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::not_positive_definite: return "NotPositiveDefinite";
    case Errc::ill_conditioned: return "IllConditioned";
    case Errc::not_skew: return "NotSkew";
    case Errc::singular_input: return "SingularInput";
    case Errc::odd_dimension: return "OddDimension";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::mixed_eigenvalues: return "MixedEigenvalues";
    case Errc::zero_combination: return "ZeroCombination";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::not_symplectic: return "NotSymplectic";
    case Errc::not_invariant: return "NotInvariant";
    case Errc::numerical_failure: return "NumericalFailure";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::negative_entry: return "NegativeEntry";
    case Errc::not_majorized: return "NotMajorized";
    case Errc::not_weakly_supermajorized: return "NotWeaklySupermajorized";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> entries)
    : rows_(rows), cols_(cols), a_(entries) {
  if (a_.size() != rows * cols)
    fail(Errc::shape_mismatch, "initializer size does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::direct_sum(const Matrix& x, const Matrix& y) {
  Matrix m(x.rows() + y.rows(), x.cols() + y.cols());
  m.set_block(0, 0, x);
  m.set_block(x.rows(), x.cols(), y);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) fail(Errc::shape_mismatch, "block out of range");
  Matrix b(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    fail(Errc::shape_mismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) fail(Errc::shape_mismatch, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (double e : a_) s += e * e;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double e : a_) m = std::max(m, std::abs(e));
  return m;
}

bool Matrix::all_finite() const {
  for (double e : a_)
    if (!std::isfinite(e)) return false;
  return true;
}

double Matrix::determinant() const {
  if (rows_ != cols_) fail(Errc::shape_mismatch, "determinant needs a square matrix");
  const std::size_t n = rows_;
  Matrix lu = *this;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(k, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(Errc::shape_mismatch, "matrix add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(Errc::shape_mismatch, "matrix sub");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& e : a_) e *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) fail(Errc::shape_mismatch, "matrix product");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double lik = lhs(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

Matrix operator*(double s, Matrix m) { return m *= s; }

Vec operator*(const Matrix& m, const Vec& v) {
  if (m.cols() != v.size()) fail(Errc::shape_mismatch, "matrix-vector product");
  Vec out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

bool all_finite(const Vec& v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}

void require_finite(const Matrix& m, const char* where) {
  if (!m.all_finite()) fail(Errc::parse_error, std::string(where) + ": non-finite entries");
}

void require_finite(const Vec& v, const char* where) {
  if (!all_finite(v)) fail(Errc::parse_error, std::string(where) + ": non-finite entries");
}

double symmetry_residual(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Errc::shape_mismatch, "symmetry residual needs a square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double d = m(i, j) - m(j, i);
      s += d * d;
    }
  return std::sqrt(s);
}

double skewness_residual(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Errc::shape_mismatch, "skewness residual needs a square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double d = m(i, j) + m(j, i);
      s += d * d;
    }
  return std::sqrt(s);
}

}  // namespace sympspec
