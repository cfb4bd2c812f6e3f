#include "sympspec/inequalities.hpp"

#include <algorithm>
#include <cmath>

#include "sympspec/numeric.hpp"

namespace sympspec {

namespace {

void check_same_even_square(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    fail(Errc::shape_mismatch, std::string(where) + ": matrices must be square and equally sized");
  if (a.rows() % 2 != 0) fail(Errc::odd_dimension, std::string(where) + ": even dimension required");
}

void check_indices(const std::vector<std::size_t>& indices, std::size_t n, const char* where) {
  if (indices.empty()) fail(Errc::index_out_of_range, std::string(where) + ": empty index set");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1 || indices[j] > n)
      fail(Errc::index_out_of_range, std::string(where) + ": index outside 1..n");
    if (j > 0 && indices[j] <= indices[j - 1])
      fail(Errc::index_out_of_range, std::string(where) + ": indices must be strictly ascending");
  }
}

// Real representation of ker(JX - i d I): stacked (u; v) with
// JX u = -d v and JX v = d u.
Matrix eigenspace_system(const Matrix& x, double d) {
  const std::size_t n2 = x.rows();
  Matrix jx = apply_form(x);
  Matrix z(2 * n2, 2 * n2);
  z.set_block(0, 0, jx);
  z.set_block(n2, n2, jx);
  for (std::size_t i = 0; i < n2; ++i) {
    z(i, n2 + i) = d;
    z(n2 + i, i) = -d;
  }
  return z;
}

bool selected_touches_unselected(const Vec& d, const std::vector<std::size_t>& indices,
                                 const ToleranceConfig& tol) {
  const double thr = tol.cluster * std::max(1.0, d.back());
  std::vector<bool> selected(d.size(), false);
  for (std::size_t idx : indices) selected[idx - 1] = true;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (!selected[s]) continue;
    for (std::size_t u = 0; u < d.size(); ++u)
      if (!selected[u] && std::abs(d[s] - d[u]) <= thr) return true;
  }
  return false;
}

}  // namespace

WeylReport weyl_check(const Matrix& a, const Matrix& b, std::size_t i, std::size_t j,
                      const ToleranceConfig& tol) {
  tol.validate();
  check_same_even_square(a, b, "weyl_check");
  const std::size_t n = a.rows() / 2;
  if (i < 1 || j < 1 || i + j - 1 > n)
    fail(Errc::index_out_of_range, "weyl indices must satisfy 1 <= i, j and i + j - 1 <= n");

  SymplecticSpectrum wa = williamson(a, tol);
  SymplecticSpectrum wb = williamson(b, tol);
  SymplecticSpectrum ws = williamson(a + b, tol);

  WeylReport report;
  report.i = i;
  report.j = j;
  report.lhs = ws.d[i + j - 2];
  report.rhs = wa.d[i - 1] + wb.d[j - 1];
  report.slack = report.lhs - report.rhs;
  report.inequality_ok = report.slack >= -tol.rel * (std::abs(report.lhs) + std::abs(report.rhs));
  return report;
}

std::optional<EigenPair> weyl_equality_witness(const Matrix& a, const Matrix& b, std::size_t i,
                                               std::size_t j, const ToleranceConfig& tol) {
  tol.validate();
  check_same_even_square(a, b, "weyl_equality_witness");
  const std::size_t n = a.rows() / 2;
  if (i < 1 || j < 1 || i + j - 1 > n)
    fail(Errc::index_out_of_range, "weyl indices must satisfy 1 <= i, j and i + j - 1 <= n");
  const std::size_t n2 = 2 * n;

  Matrix sum = a + b;
  SymplecticSpectrum wa = williamson(a, tol);
  SymplecticSpectrum wb = williamson(b, tol);
  SymplecticSpectrum ws = williamson(sum, tol);
  const Matrix* mats[3] = {&a, &b, &sum};
  const double targets[3] = {wa.d[i - 1], wb.d[j - 1], ws.d[i + j - 2]};

  // Intersection of the three real eigenspace representations, via the
  // stacked complements of their orthonormal nullspace projectors.
  Matrix stacked(3 * 2 * n2, 2 * n2);
  for (int m = 0; m < 3; ++m) {
    Matrix basis = nullspace(eigenspace_system(*mats[m], targets[m]), tol);
    if (basis.cols() == 0) return std::nullopt;
    Matrix complement = Matrix::identity(2 * n2) - basis * basis.transposed();
    stacked.set_block(static_cast<std::size_t>(m) * 2 * n2, 0, complement);
  }
  Matrix common = nullspace(stacked, tol);
  if (common.cols() == 0) return std::nullopt;

  // Quadratic form w = (u; v) -> <u, Jv> on the intersection; a positive
  // direction is a normalizable common pair.
  const std::size_t m = common.cols();
  std::vector<Vec> us(m), vs(m), jvs(m);
  for (std::size_t c = 0; c < m; ++c) {
    Vec w = common.col(c);
    us[c] = Vec(w.begin(), w.begin() + n2);
    vs[c] = Vec(w.begin() + n2, w.end());
    jvs[c] = apply_form(vs[c]);
  }
  Matrix g(m, m);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = p; q < m; ++q)
      g(p, q) = g(q, p) = 0.5 * (dot(us[p], jvs[q]) + dot(us[q], jvs[p]));
  SymEig form = sym_eig(g, tol);
  if (form.values.back() <= tol.rank_cut) return std::nullopt;

  Vec coeff = form.vectors.col(m - 1);
  EigenPair pair{Vec(n2, 0.0), Vec(n2, 0.0), targets[2]};
  for (std::size_t c = 0; c < m; ++c) {
    axpy(coeff[c], us[c], pair.u);
    axpy(coeff[c], vs[c], pair.v);
  }
  const double s = dot(pair.u, apply_form(pair.v));
  if (s <= tol.rank_cut) return std::nullopt;
  const double inv = 1.0 / std::sqrt(s);
  scale(pair.u, inv);
  scale(pair.v, inv);

  // The intersection direction must actually behave as a pair of all three
  // matrices; reject spurious near-intersections.
  const double extent = norm2(pair.u) + norm2(pair.v);
  for (int t = 0; t < 3; ++t) {
    EigenPair candidate{pair.u, pair.v, targets[t]};
    const double r = pair_residual(*mats[t], candidate);
    if (r > tol.cluster * std::max(1.0, mats[t]->frobenius()) * extent) return std::nullopt;
  }
  return pair;
}

LidskiiReport lidskii_check(const Matrix& a, const Matrix& b,
                            const std::vector<std::size_t>& indices, const ToleranceConfig& tol) {
  tol.validate();
  check_same_even_square(a, b, "lidskii_check");
  const std::size_t n = a.rows() / 2;
  check_indices(indices, n, "lidskii_check");
  const std::size_t k = indices.size();

  SymplecticSpectrum wa = williamson(a, tol);
  SymplecticSpectrum wb = williamson(b, tol);
  SymplecticSpectrum ws = williamson(a + b, tol);

  LidskiiReport report;
  report.indices = indices;
  for (std::size_t j = 0; j < k; ++j) {
    report.lhs += ws.d[indices[j] - 1];
    report.rhs += wa.d[indices[j] - 1] + wb.d[j];
  }
  report.slack = report.lhs - report.rhs;
  report.inequality_ok = report.slack >= -tol.rel * (std::abs(report.lhs) + std::abs(report.rhs));
  return report;
}

LidskiiReport lidskii_equality_test(const Matrix& a, const Matrix& b,
                                    const std::vector<std::size_t>& indices,
                                    std::size_t grid_size, const ToleranceConfig& tol) {
  if (grid_size < 3) fail(Errc::index_out_of_range, "grid size must be at least 3");
  LidskiiReport report = lidskii_check(a, b, indices, tol);

  report.grid_t.resize(grid_size);
  report.grid_phi.resize(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
    Matrix at = a;
    Matrix tb = b;
    tb *= t;
    at += tb;
    SymplecticSpectrum spec = williamson(at, tol);
    double phi = 0.0;
    for (std::size_t idx : indices) phi += spec.d[idx - 1];
    report.grid_t[g] = t;
    report.grid_phi[g] = phi;
    if (selected_touches_unselected(spec.d, indices, tol)) report.degenerate_points.push_back(t);
  }

  const double phi0 = report.grid_phi.front();
  const double phi1 = report.grid_phi.back();
  double linres = 0.0;
  for (std::size_t g = 0; g < grid_size; ++g) {
    const double chord = phi0 + report.grid_t[g] * (phi1 - phi0);
    linres = std::max(linres, std::abs(report.grid_phi[g] - chord));
  }
  report.linearity_residual = linres;

  const double thr = 100.0 * tol.rel * std::max(1.0, std::abs(phi1));
  const bool endpoint_ok = report.slack <= thr;
  const bool linear_ok = linres <= thr;
  report.equality = endpoint_ok && linear_ok;
  // Theorem-level (i) <=> (ii): the two verdicts must agree; a split is a
  // numerical inconsistency, not a refutation.
  report.consistent = endpoint_ok == linear_ok;
  return report;
}

TraceConditionReport lidskii_trace_conditions(const Matrix& a, const Matrix& b,
                                              const std::vector<std::size_t>& indices, double t,
                                              const ToleranceConfig& tol) {
  tol.validate();
  check_same_even_square(a, b, "lidskii_trace_conditions");
  const std::size_t n = a.rows() / 2;
  check_indices(indices, n, "lidskii_trace_conditions");
  if (!(t > 0.0 && t < 1.0)) fail(Errc::index_out_of_range, "t must lie strictly inside (0,1)");
  const std::size_t k = indices.size();

  Matrix at = a;
  Matrix tb = b;
  tb *= t;
  at += tb;
  SymplecticSpectrum wt = williamson(at, tol);
  SymplecticSpectrum wa = williamson(a, tol);
  SymplecticSpectrum wb = williamson(b, tol);

  TraceConditionReport report;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t col_u = indices[j] - 1;
    const std::size_t col_v = n + indices[j] - 1;
    for (std::size_t cc : {col_u, col_v}) {
      Vec w = wt.m.col(cc);
      report.trace_a += dot(w, a * w);
      report.trace_b += dot(w, b * w);
    }
  }
  double sum_a = 0.0, sum_b = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    sum_a += wa.d[indices[j] - 1];
    sum_b += wb.d[j];
  }
  report.residual_a = 0.5 * report.trace_a - sum_a;
  report.residual_b = 0.5 * report.trace_b - sum_b;
  report.degenerate = selected_touches_unselected(wt.d, indices, tol);
  return report;
}

double trace_extremal_gap(const Matrix& b, const Matrix& m, const ToleranceConfig& tol) {
  tol.validate();
  if (b.rows() != b.cols() || m.rows() != b.rows())
    fail(Errc::shape_mismatch, "trace_extremal_gap: shapes disagree");
  SymplecticCheck sc = is_symplectic(m, tol);
  if (!sc.verdict) fail(Errc::not_symplectic, "frame is not symplectic");
  const std::size_t k = m.cols() / 2;

  SymplecticSpectrum wb = williamson(b, tol);
  double trace = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Vec w = m.col(c);
    trace += dot(w, b * w);
  }
  double sum_b = 0.0;
  for (std::size_t j = 0; j < k; ++j) sum_b += wb.d[j];
  return 0.5 * trace - sum_b;
}

SubspaceConditionReport verify_lidskii_subspace_conditions(
    const Matrix& a, const Matrix& b, const std::vector<std::size_t>& indices,
    const SymplecticSubspace& u, double interval_lo, double interval_hi, std::size_t grid_size,
    const ToleranceConfig& tol) {
  tol.validate();
  check_same_even_square(a, b, "verify_lidskii_subspace_conditions");
  const std::size_t n = a.rows() / 2;
  check_indices(indices, n, "verify_lidskii_subspace_conditions");
  if (u.half_dim() != indices.size())
    fail(Errc::shape_mismatch, "subspace dimension must be twice the index count");
  if (!(0.0 <= interval_lo && interval_lo < interval_hi && interval_hi <= 1.0))
    fail(Errc::index_out_of_range, "interval must satisfy 0 <= b < c <= 1");
  if (grid_size < 2) fail(Errc::index_out_of_range, "grid size must be at least 2");

  SubspaceConditionReport report;
  InvarianceCheck inv_a = is_invariant(apply_form(a), u, tol);
  InvarianceCheck inv_b = is_invariant(apply_form(b), u, tol);
  report.invariant_a = inv_a.verdict;
  report.invariant_b = inv_b.verdict;
  report.invariance_residual_a = inv_a.residual;
  report.invariance_residual_b = inv_b.residual;

  SymplecticSpectrum wb = williamson(b, tol);
  if (report.invariant_b) {
    try {
      Vec gamma = associated_eigenvalues(b, u, tol);
      bool match = gamma.size() == indices.size();
      for (std::size_t j = 0; match && j < gamma.size(); ++j)
        match = std::abs(gamma[j] - wb.d[j]) <= tol.cluster * std::max(1.0, wb.d[j]);
      report.basis_of_b_pairs = match;
    } catch (const Error&) {
      report.basis_of_b_pairs = false;
    }
  }

  if (report.invariant_a && report.invariant_b) {
    bool match = true;
    for (std::size_t g = 0; g < grid_size && match; ++g) {
      const double t = interval_lo + (interval_hi - interval_lo) * static_cast<double>(g) /
                                         static_cast<double>(grid_size - 1);
      Matrix at = a;
      Matrix tb = b;
      tb *= t;
      at += tb;
      try {
        Vec gamma = associated_eigenvalues(at, u, tol);
        SymplecticSpectrum wt = williamson(at, tol);
        for (std::size_t j = 0; j < indices.size() && match; ++j) {
          const double want = wt.d[indices[j] - 1];
          match = std::abs(gamma[j] - want) <= tol.cluster * std::max(1.0, want);
        }
      } catch (const Error&) {
        match = false;
      }
    }
    report.associated_match = match;
  }
  return report;
}

}  // namespace sympspec
