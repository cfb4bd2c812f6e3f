#include "sympspec/williamson.hpp"

#include <algorithm>
#include <cmath>

#include "sympspec/numeric.hpp"

namespace sympspec {

namespace {

struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
  double norm;
};

SpdRoots spd_roots(const Matrix& a, const ToleranceConfig& tol) {
  SymEig eig = sym_eig(a, tol);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (lo <= tol.abs) fail(Errc::not_positive_definite, "minimum eigenvalue below tolerance");
  if (hi / lo > tol.cond_max) fail(Errc::ill_conditioned, "condition number above ceiling");
  const std::size_t n = a.rows();
  SpdRoots out{Matrix(n, n), Matrix(n, n), a.frobenius()};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0, si = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = eig.vectors(i, k) * eig.vectors(j, k);
        const double r = std::sqrt(eig.values[k]);
        s += w * r;
        si += w / r;
      }
      out.sqrt(i, j) = out.sqrt(j, i) = s;
      out.inv_sqrt(i, j) = out.inv_sqrt(j, i) = si;
    }
  return out;
}

void require_even_square(const Matrix& a, const char* where) {
  if (a.rows() != a.cols()) fail(Errc::shape_mismatch, std::string(where) + ": square input required");
  if (a.rows() % 2 != 0) fail(Errc::odd_dimension, std::string(where) + ": even dimension required");
  require_finite(a, where);
}

}  // namespace

SymplecticSpectrum williamson(const Matrix& a, const ToleranceConfig& tol) {
  tol.validate();
  require_even_square(a, "williamson");
  const std::size_t n = a.rows() / 2;
  const double norm_a = a.frobenius();
  if (symmetry_residual(a) > tol.rel * std::max(1.0, norm_a))
    fail(Errc::not_symmetric, "input is not symmetric");

  SpdRoots roots = spd_roots(a, tol);

  // K = A^{1/2} J A^{1/2}, skew by construction; symmetrize the round-off.
  Matrix k = roots.sqrt * apply_form(roots.sqrt);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    k(i, i) = 0.0;
    for (std::size_t j = i + 1; j < 2 * n; ++j) {
      const double v = 0.5 * (k(i, j) - k(j, i));
      k(i, j) = v;
      k(j, i) = -v;
    }
  }

  SkewCanonical canon = skew_canonical(k, tol);

  // Interleaved planes (x_i, y_i) to grouped columns, then
  // M = A^{-1/2} O (sqrt(D) ⊕ sqrt(D)).
  Matrix grouped(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    grouped.set_col(i, canon.rotation.col(2 * i));
    grouped.set_col(n + i, canon.rotation.col(2 * i + 1));
  }
  Matrix m = roots.inv_sqrt * grouped;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const double s = std::sqrt(canon.d[j % n]);
    for (std::size_t i = 0; i < 2 * n; ++i) m(i, j) *= s;
  }

  Matrix diag_res = m.transposed() * a * m;
  for (std::size_t i = 0; i < n; ++i) {
    diag_res(i, i) -= canon.d[i];
    diag_res(n + i, n + i) -= canon.d[i];
  }
  Matrix symp_res = m.transposed() * apply_form(m);
  symp_res -= symplectic_form(n);

  SymplecticSpectrum out{std::move(canon.d), std::move(m), diag_res.frobenius(),
                         symp_res.frobenius()};
  if (out.diag_residual > 10.0 * tol.rel * std::max(1.0, norm_a) ||
      out.symp_residual > 10.0 * tol.rel * std::max(1.0, out.m.frobenius()))
    fail(Errc::numerical_failure, "Williamson residuals above tolerance");
  return out;
}

std::vector<EigenPair> eigenpairs(const SymplecticSpectrum& spectrum) {
  const std::size_t n = spectrum.d.size();
  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pairs.push_back({spectrum.m.col(i), spectrum.m.col(n + i), spectrum.d[i]});
  return pairs;
}

double pair_residual(const Matrix& a, const EigenPair& p) {
  if (a.rows() != a.cols() || a.rows() != p.u.size() || p.u.size() != p.v.size())
    fail(Errc::shape_mismatch, "pair residual: shapes disagree");
  Vec au = a * p.u;
  Vec av = a * p.v;
  Vec jv = apply_form(p.v);
  Vec ju = apply_form(p.u);
  axpy(-p.d, jv, au);  // A u - d J v
  axpy(p.d, ju, av);   // A v + d J u
  return std::max(norm2(au), norm2(av));
}

EigenPair combine_pairs(const std::vector<EigenPair>& pairs, const Vec& alpha, const Vec& beta,
                        const ToleranceConfig& tol) {
  tol.validate();
  if (pairs.empty()) fail(Errc::length_mismatch, "no pairs to combine");
  if (alpha.size() != pairs.size() || beta.size() != pairs.size())
    fail(Errc::length_mismatch, "coefficient count must match pair count");
  double dmax = 0.0;
  for (const EigenPair& p : pairs) dmax = std::max(dmax, std::abs(p.d));
  for (const EigenPair& p : pairs)
    if (std::abs(p.d - pairs.front().d) > tol.cluster * std::max(1.0, dmax))
      fail(Errc::mixed_eigenvalues, "pairs do not share a symplectic eigenvalue");
  double csq = 0.0;
  for (std::size_t l = 0; l < pairs.size(); ++l) csq += alpha[l] * alpha[l] + beta[l] * beta[l];
  if (csq == 0.0) fail(Errc::zero_combination, "all coefficients vanish");

  const std::size_t dim = pairs.front().u.size();
  EigenPair out{Vec(dim, 0.0), Vec(dim, 0.0), 0.0};
  for (std::size_t l = 0; l < pairs.size(); ++l) {
    if (pairs[l].u.size() != dim || pairs[l].v.size() != dim)
      fail(Errc::shape_mismatch, "pair dimensions disagree");
    axpy(alpha[l], pairs[l].u, out.u);
    axpy(beta[l], pairs[l].v, out.u);
    axpy(-beta[l], pairs[l].u, out.v);
    axpy(alpha[l], pairs[l].v, out.v);
    out.d += pairs[l].d;
  }
  out.d /= static_cast<double>(pairs.size());
  return out;
}

SymplecticSubspace SymplecticSubspace::from_basis(Matrix basis, const ToleranceConfig& tol) {
  SymplecticMatrix cert = certify_symplectic(std::move(basis), tol);
  return {std::move(cert.entries), cert.residual};
}

InvarianceCheck is_invariant(const Matrix& x, const SymplecticSubspace& u,
                             const ToleranceConfig& tol) {
  tol.validate();
  if (x.cols() != u.basis.rows()) fail(Errc::shape_mismatch, "operator and subspace disagree");
  Matrix q = orthonormalize_columns(u.basis);
  Matrix image = x * u.basis;
  Matrix residual = image - q * (q.transposed() * image);
  const double r = residual.frobenius();
  return {r <= tol.rel * std::max(1.0, x.frobenius()) * std::max(1.0, u.basis.frobenius()), r};
}

std::vector<EigenPair> subspace_eigenpairs(const Matrix& a, const SymplecticSubspace& u,
                                           const ToleranceConfig& tol) {
  tol.validate();
  require_even_square(a, "subspace_eigenpairs");
  if (symmetry_residual(a) > tol.rel * std::max(1.0, a.frobenius()))
    fail(Errc::not_symmetric, "input is not symmetric");
  InvarianceCheck inv = is_invariant(apply_form(a), u, tol);
  if (!inv.verdict) fail(Errc::not_invariant, "subspace is not invariant under JA");

  const std::size_t k = u.half_dim();
  SpdRoots roots = spd_roots(a, tol);

  // Orthonormal frame for A^{1/2} U; the compression of A^{1/2} J A^{1/2}
  // onto it is skew with canonical values gamma_1 <= ... <= gamma_k.
  Matrix q = orthonormalize_columns(roots.sqrt * u.basis);
  if (q.cols() != 2 * k) fail(Errc::numerical_failure, "subspace frame collapsed");
  Matrix kq = roots.sqrt * apply_form(roots.sqrt * q);
  Matrix sw = q.transposed() * kq;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    sw(i, i) = 0.0;
    for (std::size_t j = i + 1; j < 2 * k; ++j) {
      const double v = 0.5 * (sw(i, j) - sw(j, i));
      sw(i, j) = v;
      sw(j, i) = -v;
    }
  }
  SkewCanonical canon = skew_canonical(sw, tol);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<EigenPair> pairs;
  pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double gamma = canon.d[i];
    Vec p = canon.rotation.col(2 * i);
    Vec qq = canon.rotation.col(2 * i + 1);
    Vec x = roots.inv_sqrt * (q * p);
    Vec y = roots.inv_sqrt * (q * qq);
    const double s = std::sqrt(2.0 * gamma) * inv_sqrt2;
    scale(x, s);
    scale(y, s);
    pairs.push_back({std::move(x), std::move(y), gamma});
  }
  return pairs;
}

Vec associated_eigenvalues(const Matrix& a, const SymplecticSubspace& u,
                           const ToleranceConfig& tol) {
  std::vector<EigenPair> pairs = subspace_eigenpairs(a, u, tol);
  Vec gamma(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) gamma[i] = pairs[i].d;
  return gamma;
}

CurveTable curve(const Matrix& a, const Matrix& b, const std::vector<std::size_t>& indices,
                 const Vec& grid, const ToleranceConfig& tol) {
  tol.validate();
  require_even_square(a, "curve");
  require_even_square(b, "curve");
  if (a.rows() != b.rows()) fail(Errc::shape_mismatch, "matrices must share a dimension");
  const std::size_t n = a.rows() / 2;
  if (indices.empty()) fail(Errc::index_out_of_range, "index set is empty");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1 || indices[j] > n) fail(Errc::index_out_of_range, "index outside 1..n");
    if (j > 0 && indices[j] <= indices[j - 1])
      fail(Errc::index_out_of_range, "indices must be strictly ascending");
  }
  if (grid.empty()) fail(Errc::index_out_of_range, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0) fail(Errc::index_out_of_range, "grid point outside [0,1]");
    if (i > 0 && grid[i] < grid[i - 1]) fail(Errc::index_out_of_range, "grid must be sorted");
  }
  if (symmetry_residual(b) > tol.rel * std::max(1.0, b.frobenius()))
    fail(Errc::not_symmetric, "direction matrix is not symmetric");
  if (sym_eig(b, tol).values.front() <= tol.abs)
    fail(Errc::not_positive_definite, "direction matrix is not positive definite");

  CurveTable table;
  table.indices = indices;
  table.t = grid;
  table.values = Matrix(grid.size(), indices.size());
  table.sum.resize(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    Matrix at = a;
    Matrix scaled_b = b;
    scaled_b *= grid[g];
    at += scaled_b;
    SymplecticSpectrum spec = williamson(at, tol);
    double s = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
      const double val = spec.d[indices[j] - 1];
      table.values(g, j) = val;
      s += val;
    }
    table.sum[g] = s;
  }
  return table;
}

}  // namespace sympspec
