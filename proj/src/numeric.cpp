#include "sympspec/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sympspec {

namespace {

// Frobenius norm of the strict off-diagonal part.
double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

void sort_and_fix_signs(Vec& values, Matrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Vec sorted_vals(n);
  Matrix sorted_vecs(vectors.rows(), n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted_vals[j] = values[order[j]];
    Vec v = vectors.col(order[j]);
    std::size_t lead = 0;
    while (lead + 1 < v.size() && std::abs(v[lead]) <= 1e-10) ++lead;
    if (v[lead] < 0.0)
      for (double& e : v) e = -e;
    sorted_vecs.set_col(j, v);
  }
  values = std::move(sorted_vals);
  vectors = std::move(sorted_vecs);
}

}  // namespace

SymEig sym_eig(const Matrix& s, const ToleranceConfig& tol) {
  tol.validate();
  if (s.rows() != s.cols()) fail(Errc::shape_mismatch, "sym_eig needs a square matrix");
  require_finite(s, "sym_eig");
  const std::size_t n = s.rows();
  const double norm = s.frobenius();
  if (symmetry_residual(s) > tol.rel * std::max(1.0, norm))
    fail(Errc::not_symmetric, "symmetry residual above tolerance");

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
  Matrix v = Matrix::identity(n);

  const double stop = 1e-15 * std::max(1e-300, norm);
  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotations that cannot move the diagonal any more are flushed.
        if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * c;
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = a(p, r) = c * arp - sn * arq;
            a(r, q) = a(q, r) = sn * arp + c * arq;
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
  }
  if (sweep >= max_sweeps) fail(Errc::no_convergence, "Jacobi sweep cap exceeded");

  Vec values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  sort_and_fix_signs(values, v);
  return {std::move(values), std::move(v)};
}

Matrix spd_sqrt(const Matrix& a, const ToleranceConfig& tol) {
  SymEig eig = sym_eig(a, tol);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (lo <= tol.abs) fail(Errc::not_positive_definite, "minimum eigenvalue below tolerance");
  if (hi / lo > tol.cond_max) fail(Errc::ill_conditioned, "condition number above ceiling");

  const std::size_t n = a.rows();
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * eig.vectors(j, k);
      r(i, j) = r(j, i) = s;
    }
  return r;
}

SkewCanonical skew_canonical(const Matrix& k, const ToleranceConfig& tol) {
  tol.validate();
  if (k.rows() != k.cols()) fail(Errc::shape_mismatch, "skew_canonical needs a square matrix");
  if (k.rows() % 2 != 0) fail(Errc::odd_dimension, "skew canonical form needs even dimension");
  require_finite(k, "skew_canonical");
  const std::size_t n2 = k.rows();
  const std::size_t n = n2 / 2;
  const double norm = k.frobenius();
  if (skewness_residual(k) > tol.rel * std::max(1.0, norm))
    fail(Errc::not_skew, "skewness residual above tolerance");

  // -K^2 is symmetric PSD with eigenvalue d_i^2 on each invariant plane.
  Matrix p = -1.0 * (k * k);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = i + 1; j < n2; ++j) p(i, j) = p(j, i) = 0.5 * (p(i, j) + p(j, i));
  SymEig eig = sym_eig(p, tol);

  const double mu_max = std::max(1.0, eig.values.back());
  const double cluster_gap = tol.cluster * mu_max;

  struct Plane {
    Vec x, y;
    double d;
  };
  std::vector<Plane> planes;
  planes.reserve(n);

  std::size_t lo = 0;
  while (lo < n2) {
    std::size_t hi = lo + 1;
    while (hi < n2 && eig.values[hi] - eig.values[hi - 1] <= cluster_gap) ++hi;
    const std::size_t m2 = hi - lo;
    if (m2 % 2 != 0)
      fail(Errc::numerical_failure, "eigenvalue cluster of -K^2 has odd multiplicity");

    std::vector<Plane> group;
    while (group.size() < m2 / 2) {
      // Take the candidate with the largest component outside the chosen
      // planes; K maps that complement to itself, so the pair (x, -Kx/d)
      // stays orthogonal to everything already extracted.
      Vec best;
      double best_norm = -1.0;
      for (std::size_t cand = lo; cand < hi; ++cand) {
        Vec x = eig.vectors.col(cand);
        for (int pass = 0; pass < 2; ++pass)
          for (const Plane& pl : group) {
            axpy(-dot(pl.x, x), pl.x, x);
            axpy(-dot(pl.y, x), pl.y, x);
          }
        const double nx = norm2(x);
        if (nx > best_norm) {
          best_norm = nx;
          best = std::move(x);
        }
      }
      if (best_norm <= 1e-8) fail(Errc::numerical_failure, "degenerate plane extraction");
      scale(best, 1.0 / best_norm);
      Vec kx = k * best;
      const double d = norm2(kx);
      if (d <= tol.abs) fail(Errc::singular_input, "canonical value below tolerance");
      Vec y = kx;
      scale(y, -1.0 / d);
      for (int pass = 0; pass < 2; ++pass) {
        for (const Plane& pl : group) {
          axpy(-dot(pl.x, y), pl.x, y);
          axpy(-dot(pl.y, y), pl.y, y);
        }
        axpy(-dot(best, y), best, y);
      }
      const double ny = norm2(y);
      if (ny <= 1e-8) fail(Errc::numerical_failure, "degenerate plane extraction");
      scale(y, 1.0 / ny);
      group.push_back({std::move(best), std::move(y), d});
    }
    for (Plane& pl : group) planes.push_back(std::move(pl));
    lo = hi;
  }

  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& a, const Plane& b) { return a.d < b.d; });

  SkewCanonical out;
  out.rotation = Matrix(n2, n2);
  out.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.rotation.set_col(2 * i, planes[i].x);
    out.rotation.set_col(2 * i + 1, planes[i].y);
    out.d[i] = planes[i].d;
  }

  // Certify O^T K O against the interleaved block form.
  Matrix canon = out.rotation.transposed() * k * out.rotation;
  for (std::size_t i = 0; i < n; ++i) {
    canon(2 * i, 2 * i + 1) -= out.d[i];
    canon(2 * i + 1, 2 * i) += out.d[i];
  }
  if (canon.frobenius() > 10.0 * tol.rel * std::max(1.0, norm))
    fail(Errc::numerical_failure, "canonical form residual above tolerance");
  return out;
}

Matrix nullspace(const Matrix& m, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(m, "nullspace");
  const std::size_t c = m.cols();
  Matrix gram = m.transposed() * m;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j) gram(i, j) = gram(j, i) = 0.5 * (gram(i, j) + gram(j, i));
  SymEig eig = sym_eig(gram, tol);

  // The Gram route cannot resolve singular values below sqrt(eps) * sigma_max;
  // re-evaluating ‖M v‖ per eigenvector restores full precision for the rank
  // decision while keeping the (accurate) eigenvectors.
  Vec sigma(c);
  double sigma_max = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    sigma[i] = norm2(m * eig.vectors.col(i));
    sigma_max = std::max(sigma_max, sigma[i]);
  }
  if (sigma_max == 0.0) return Matrix::identity(c);

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < c; ++i)
    if (sigma[i] <= tol.rank_cut * sigma_max) keep.push_back(i);
  Matrix basis(c, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) basis.set_col(j, eig.vectors.col(keep[j]));
  return basis;
}

Matrix orthonormalize_columns(const Matrix& m, double drop) {
  const std::size_t rows = m.rows();
  std::vector<Vec> kept;
  kept.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Vec v = m.col(j);
    const double orig = norm2(v);
    if (orig == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : kept) axpy(-dot(u, v), u, v);
    const double nv = norm2(v);
    if (nv <= drop * orig) continue;
    scale(v, 1.0 / nv);
    kept.push_back(std::move(v));
  }
  Matrix out(rows, kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) out.set_col(j, kept[j]);
  return out;
}

}  // namespace sympspec
