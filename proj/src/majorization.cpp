#include "sympspec/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "sympspec/numeric.hpp"
#include "sympspec/symplectic.hpp"
#include "sympspec/williamson.hpp"

namespace sympspec {

namespace {

double one_norm(const Vec& v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

double inf_norm(const Vec& v) {
  double s = 0.0;
  for (double e : v) s = std::max(s, std::abs(e));
  return s;
}

std::vector<std::size_t> sort_permutation(const Vec& v, bool ascending) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? v[a] < v[b] : v[a] > v[b];
  });
  return order;
}

}  // namespace

const char* relation_name(MajorizationRelation r) {
  switch (r) {
    case MajorizationRelation::majorized: return "majorized";
    case MajorizationRelation::weakly_supermajorized: return "weakly_supermajorized";
    case MajorizationRelation::neither: return "neither";
  }
  return "unknown";
}

MajorizationReport compare(const Vec& x, const Vec& y, const ToleranceConfig& tol) {
  tol.validate();
  if (x.empty() || x.size() != y.size())
    fail(Errc::length_mismatch, "compare needs equal nonempty lengths");
  require_finite(x, "compare");
  require_finite(y, "compare");

  Vec xs = x, ys = y;
  std::stable_sort(xs.begin(), xs.end());
  std::stable_sort(ys.begin(), ys.end());

  MajorizationReport report;
  report.prefix_slacks.resize(x.size());
  double px = 0.0, py = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    px += xs[k];
    py += ys[k];
    report.prefix_slacks[k] = px - py;
  }
  report.total_gap = px - py;

  const double thr = tol.rel * std::max({1.0, one_norm(x), one_norm(y)});
  bool weak = true;
  for (double s : report.prefix_slacks)
    if (s < -thr) weak = false;
  if (!weak)
    report.relation = MajorizationRelation::neither;
  else if (std::abs(report.total_gap) <= thr)
    report.relation = MajorizationRelation::majorized;
  else
    report.relation = MajorizationRelation::weakly_supermajorized;
  return report;
}

std::optional<Matrix> ds_witness(const Vec& x, const Vec& y, const ToleranceConfig& tol) {
  MajorizationReport rel = compare(x, y, tol);
  if (rel.relation != MajorizationRelation::majorized) return std::nullopt;
  const std::size_t n = x.size();
  const double scale = std::max({1.0, inf_norm(x), inf_norm(y)});
  const double eq_eps = 1e-12 * scale;

  // Classic chain on descending-sorted copies: repeatedly pick the deepest
  // index j still above target, the first index k past it below target, and
  // average the pair.
  std::vector<std::size_t> px = sort_permutation(x, false);
  std::vector<std::size_t> py = sort_permutation(y, false);
  Vec xs(n), work(n);
  for (std::size_t s = 0; s < n; ++s) {
    xs[s] = x[px[s]];
    work[s] = y[py[s]];
  }

  Matrix chain = Matrix::identity(n);
  for (std::size_t step = 0; step < 4 * n + 8; ++step) {
    std::size_t j = n;
    for (std::size_t s = 0; s < n; ++s)
      if (work[s] - xs[s] > eq_eps) j = s;
    if (j == n) break;  // every coordinate reached its target
    std::size_t k = n;
    for (std::size_t s = j + 1; s < n && k == n; ++s)
      if (xs[s] - work[s] > eq_eps) k = s;
    if (k == n) fail(Errc::numerical_failure, "T-transform chain lost its pivot");

    const double delta = std::min(work[j] - xs[j], xs[k] - work[k]);
    const double mix = delta / (work[j] - work[k]);  // 1 - lambda
    // Row-combined update of the accumulated product: T * chain.
    for (std::size_t c = 0; c < n; ++c) {
      const double ej = chain(j, c), ek = chain(k, c);
      chain(j, c) = (1.0 - mix) * ej + mix * ek;
      chain(k, c) = mix * ej + (1.0 - mix) * ek;
    }
    const double wj = work[j], wk = work[k];
    work[j] = (1.0 - mix) * wj + mix * wk;
    work[k] = mix * wj + (1.0 - mix) * wk;
  }
  for (std::size_t s = 0; s < n; ++s)
    if (std::abs(work[s] - xs[s]) > 1e4 * eq_eps)
      fail(Errc::numerical_failure, "T-transform chain did not converge");

  // Undo the two sorts: x = P_x xs, xs = chain * ys, ys = P_y^T y.
  Matrix e(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) e(px[r], py[s]) = chain(r, s);
  return e;
}

DiagonalVectors diagonal_vectors(const Matrix& a, const ToleranceConfig& tol) {
  tol.validate();
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    fail(Errc::odd_dimension, "diagonal_vectors needs an even square matrix");
  const std::size_t n = a.rows() / 2;
  SymplecticSpectrum w = williamson(a, tol);

  DiagonalVectors out;
  out.mean.resize(n);
  out.geometric.resize(n);
  out.quadratic.resize(n);
  out.quadratic_coupled.resize(n);
  out.spectrum = w.d;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double d11 = a(i, i);
    const double d22 = a(n + i, n + i);
    const double d12 = a(i, n + i);
    out.mean[i] = 0.5 * (d11 + d22);
    out.geometric[i] = std::sqrt(d11 * d22);
    out.quadratic[i] = inv_sqrt2 * std::sqrt(d11 * d11 + d22 * d22);
    out.quadratic_coupled[i] = inv_sqrt2 * std::sqrt(d11 * d11 + d22 * d22 + 2.0 * d12 * d12);
  }
  return out;
}

Matrix n_tilde(const Matrix& n) {
  if (n.rows() != n.cols() || n.rows() % 2 != 0)
    fail(Errc::odd_dimension, "n_tilde needs an even square matrix");
  require_finite(n, "n_tilde");
  const std::size_t half = n.rows() / 2;
  Matrix out(half, half);
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      const double p = n(i, j);
      const double q = n(i, half + j);
      const double r = n(half + i, j);
      const double s = n(half + i, half + j);
      out(i, j) = 0.5 * (p * p + q * q + r * r + s * s);
    }
  return out;
}

bool is_doubly_stochastic(const Matrix& e, const ToleranceConfig& tol) {
  tol.validate();
  if (e.rows() != e.cols()) fail(Errc::shape_mismatch, "doubly stochastic test needs a square matrix");
  require_finite(e, "is_doubly_stochastic");
  const std::size_t n = e.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (e(i, j) < -tol.rel) return false;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += e(i, j);
      col += e(j, i);
    }
    if (std::abs(row - 1.0) > tol.rel || std::abs(col - 1.0) > tol.rel) return false;
  }
  return true;
}

SuperstochasticCheck is_doubly_superstochastic(const Matrix& f, const ToleranceConfig& tol) {
  tol.validate();
  if (f.rows() != f.cols()) fail(Errc::shape_mismatch, "superstochastic test needs a square matrix");
  require_finite(f, "is_doubly_superstochastic");
  const std::size_t n = f.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (f(i, j) < -tol.rel) fail(Errc::negative_entry, "capacity matrix has a negative entry");

  // Nodes: 0 source, 1..n rows, n+1..2n columns, 2n+1 sink.
  const std::size_t nodes = 2 * n + 2;
  const std::size_t sink = 2 * n + 1;
  Matrix cap(nodes, nodes);
  for (std::size_t i = 0; i < n; ++i) {
    cap(0, 1 + i) = 1.0;
    cap(1 + n + i, sink) = 1.0;
    for (std::size_t j = 0; j < n; ++j) cap(1 + i, 1 + n + j) = std::max(0.0, f(i, j));
  }

  const double eps = 1e-13;
  double flow = 0.0;
  while (true) {
    // BFS for the shortest augmenting path with slack above eps.
    std::vector<std::size_t> parent(nodes, nodes);
    parent[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty() && parent[sink] == nodes) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < nodes; ++v)
        if (parent[v] == nodes && cap(u, v) > eps) {
          parent[v] = u;
          queue.push_back(v);
        }
    }
    if (parent[sink] == nodes) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (std::size_t v = sink; v != 0; v = parent[v])
      bottleneck = std::min(bottleneck, cap(parent[v], v));
    for (std::size_t v = sink; v != 0; v = parent[v]) {
      cap(parent[v], v) -= bottleneck;
      cap(v, parent[v]) += bottleneck;
    }
    flow += bottleneck;
  }

  SuperstochasticCheck out;
  out.flow = flow;
  out.verdict = flow >= static_cast<double>(n) - tol.rel * static_cast<double>(n);
  if (out.verdict) {
    Matrix witness(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        witness(i, j) = std::max(0.0, f(i, j)) - cap(1 + i, 1 + n + j);
    out.witness = std::move(witness);
  }
  return out;
}

MajorizationReport schur_horn_weak_check(const Matrix& a, const ToleranceConfig& tol) {
  DiagonalVectors vectors = diagonal_vectors(a, tol);
  MajorizationReport report = compare(vectors.mean, vectors.spectrum, tol);
  if (report.relation == MajorizationRelation::neither)
    fail(Errc::numerical_failure, "weak supermajorization failed; numerics are broken");
  return report;
}

std::optional<OrthosymplecticWilliamson> orthosymplectic_williamson(const Matrix& a,
                                                                    const ToleranceConfig& tol) {
  tol.validate();
  if (a.rows() != a.cols() || a.rows() % 2 != 0)
    fail(Errc::odd_dimension, "orthosymplectic_williamson needs an even square matrix");
  require_finite(a, "orthosymplectic_williamson");
  const double norm_a = a.frobenius();
  if (symmetry_residual(a) > tol.rel * std::max(1.0, norm_a))
    fail(Errc::not_symmetric, "input is not symmetric");
  // A J = -(J A)^T for symmetric A, so the commutator is the symmetric part
  // of J A.
  if (skewness_residual(apply_form(a)) > tol.rel * norm_a) return std::nullopt;

  const std::size_t n = a.rows() / 2;
  SymEig eig = sym_eig(a, tol);
  if (eig.values.front() <= tol.abs)
    fail(Errc::not_positive_definite, "minimum eigenvalue below tolerance");

  // Eigenspaces of a J-commuting matrix are J-invariant; extract a
  // complex-orthonormal set (w, -Jw orthogonal to every chosen pair).
  std::vector<Vec> ws;
  ws.reserve(n);
  const double thr = tol.cluster * std::max(1.0, eig.values.back());
  std::size_t lo = 0;
  while (lo < 2 * n) {
    std::size_t hi = lo + 1;
    while (hi < 2 * n && eig.values[hi] - eig.values[hi - 1] <= thr) ++hi;
    if ((hi - lo) % 2 != 0) fail(Errc::numerical_failure, "odd eigenvalue cluster");
    const std::size_t pairs = (hi - lo) / 2;
    std::vector<Vec> cluster_ws, cluster_jws;
    while (cluster_ws.size() < pairs) {
      Vec best;
      double best_norm = -1.0;
      for (std::size_t cand = lo; cand < hi; ++cand) {
        Vec w = eig.vectors.col(cand);
        for (int pass = 0; pass < 2; ++pass)
          for (std::size_t s = 0; s < cluster_ws.size(); ++s) {
            axpy(-dot(cluster_ws[s], w), cluster_ws[s], w);
            axpy(-dot(cluster_jws[s], w), cluster_jws[s], w);
          }
        const double nw = norm2(w);
        if (nw > best_norm) {
          best_norm = nw;
          best = std::move(w);
        }
      }
      if (best_norm <= 1e-8) fail(Errc::numerical_failure, "degenerate eigenspace extraction");
      scale(best, 1.0 / best_norm);
      Vec jw = apply_form(best);
      scale(jw, -1.0);
      cluster_ws.push_back(best);
      cluster_jws.push_back(jw);
    }
    for (Vec& w : cluster_ws) ws.push_back(std::move(w));
    lo = hi;
  }

  OrthosymplecticWilliamson out;
  out.n = Matrix(2 * n, 2 * n);
  out.d.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec jw = apply_form(ws[i]);
    scale(jw, -1.0);
    out.n.set_col(i, ws[i]);
    out.n.set_col(n + i, jw);
    out.d[i] = 0.5 * (dot(ws[i], a * ws[i]) + dot(jw, a * jw));
  }

  Matrix recon(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = i; j < 2 * n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 2 * n; ++k)
        s += out.n(i, k) * out.d[k % n] * out.n(j, k);
      recon(i, j) = recon(j, i) = s;
    }
  recon -= a;
  out.recon_residual = recon.frobenius();
  OrthosymplecticCheck check = is_orthosymplectic(out.n, tol);
  if (!check.verdict || out.recon_residual > 10.0 * tol.rel * std::max(1.0, norm_a))
    fail(Errc::numerical_failure, "orthosymplectic witness failed verification");
  return out;
}

Vec water_fill(const Vec& x, const Vec& y, const ToleranceConfig& tol) {
  MajorizationReport rel = compare(x, y, tol);
  if (rel.relation == MajorizationRelation::neither)
    fail(Errc::not_weakly_supermajorized, "x is not weakly supermajorized by y");
  for (double e : x)
    if (e <= 0.0) fail(Errc::negative_entry, "entries must be positive");
  for (double e : y)
    if (e <= 0.0) fail(Errc::negative_entry, "entries must be positive");
  if (rel.relation == MajorizationRelation::majorized) return x;

  const std::size_t n = x.size();
  const double target = std::accumulate(y.begin(), y.end(), 0.0);
  Vec xs = x;
  std::stable_sort(xs.begin(), xs.end());

  // S(L) = sum min(x_i, L) is piecewise linear and increasing; find the
  // segment where it crosses the target.
  double level = 0.0;
  double prefix = 0.0;
  bool found = false;
  for (std::size_t m = 0; m < n && !found; ++m) {
    const double lo = m == 0 ? 0.0 : xs[m - 1];
    const double hi = xs[m];
    const double cand = (target - prefix) / static_cast<double>(n - m);
    if (cand >= lo - 1e-14 * std::max(1.0, hi) && cand <= hi) {
      level = cand;
      found = true;
    }
    prefix += xs[m];
  }
  if (!found) fail(Errc::numerical_failure, "water level not bracketed");

  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::min(x[i], level);
  MajorizationReport post = compare(v, y, tol);
  if (post.relation != MajorizationRelation::majorized)
    fail(Errc::numerical_failure, "water filling failed to reach majorization");
  return v;
}

Matrix horn_symmetric(const Vec& v, const Vec& y, const ToleranceConfig& tol) {
  MajorizationReport rel = compare(v, y, tol);
  if (rel.relation != MajorizationRelation::majorized)
    fail(Errc::not_majorized, "v must be majorized by y");
  const std::size_t n = v.size();
  const double scale_y = std::max(1.0, inf_norm(y));

  // Work in slot space: slots start as diag(y); each step fixes one sorted
  // target with a rotation of a bracketing active pair. The active block of
  // R diag(y) R^T stays diagonal throughout.
  Matrix rot = Matrix::identity(n);
  Vec value(y);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> fixed_slot(n);  // sorted-target order -> slot

  std::vector<std::size_t> target_order = sort_permutation(v, true);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    const double t = v[target_order[step]];
    std::size_t below = n, above = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s]) continue;
      if (value[s] <= t && (below == n || value[s] > value[below])) below = s;
      if (value[s] >= t && (above == n || value[s] < value[above])) above = s;
    }
    if (below == n) below = above;  // target hugs the active minimum
    if (above == n) above = below;  // target hugs the active maximum
    if (below == n) fail(Errc::numerical_failure, "no active slots left");

    if (below == above || std::abs(value[above] - value[below]) <= 1e-15 * scale_y) {
      fixed_slot[step] = below;
      active[below] = false;
      continue;
    }
    const double s2 =
        std::clamp((t - value[below]) / (value[above] - value[below]), 0.0, 1.0);
    const double sn = std::sqrt(s2);
    const double cs = std::sqrt(1.0 - s2);
    // Plane rotation on (below, above): new diagonal entries are
    // c^2 a + s^2 b and a + b - that.
    for (std::size_t c = 0; c < n; ++c) {
      const double rb = rot(below, c), ra = rot(above, c);
      rot(below, c) = cs * rb + sn * ra;
      rot(above, c) = -sn * rb + cs * ra;
    }
    const double newly_fixed = cs * cs * value[below] + s2 * value[above];
    value[above] = value[below] + value[above] - newly_fixed;
    value[below] = newly_fixed;
    fixed_slot[step] = below;
    active[below] = false;
  }
  for (std::size_t s = 0; s < n; ++s)
    if (active[s]) fixed_slot[n - 1] = s;

  // Route slot diagonals to the original positions of v.
  Matrix o(n, n);
  for (std::size_t step = 0; step < n; ++step)
    for (std::size_t c = 0; c < n; ++c) o(target_order[step], c) = rot(fixed_slot[step], c);

  Matrix check = o * Matrix::diagonal(y) * o.transposed();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(check(i, i) - v[i]) > 1e4 * tol.rel * scale_y)
      fail(Errc::numerical_failure, "Horn construction missed the target diagonal");
  return o;
}

SchurHornConstruction schur_horn_construct(const Vec& x, const Vec& y,
                                           const ToleranceConfig& tol) {
  tol.validate();
  if (x.empty() || x.size() != y.size())
    fail(Errc::length_mismatch, "construct needs equal nonempty lengths");
  MajorizationReport rel = compare(x, y, tol);
  if (rel.relation == MajorizationRelation::neither)
    fail(Errc::not_weakly_supermajorized, "x is not weakly supermajorized by y");
  for (double e : x)
    if (e <= 0.0) fail(Errc::negative_entry, "entries must be positive");
  for (double e : y)
    if (e <= 0.0) fail(Errc::negative_entry, "entries must be positive");

  const std::size_t n = x.size();
  Vec v = water_fill(x, y, tol);
  Matrix o = horn_symmetric(v, y, tol);

  // A' = (O ⊕ O)(diag(y) ⊕ diag(y))(O ⊕ O)^T has mean diag vector v and
  // spectrum y; the symplectic scaling M_alpha lifts v back to x without
  // moving the spectrum.
  Matrix core = o * Matrix::diagonal(y) * o.transposed();
  Vec alpha_sqrt(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::max(1.0, x[i] / v[i]);
    const double alpha = r + std::sqrt(std::max(0.0, r * r - 1.0));
    alpha_sqrt[i] = std::sqrt(alpha);
    alpha_sqrt[n + i] = 1.0 / std::sqrt(alpha);
  }
  Matrix a(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double c = core(i, j);
      a(i, j) = alpha_sqrt[i] * alpha_sqrt[j] * c;
      a(n + i, n + j) = alpha_sqrt[n + i] * alpha_sqrt[n + j] * c;
    }

  DiagonalVectors post = diagonal_vectors(a, tol);
  Vec ys = y;
  std::stable_sort(ys.begin(), ys.end());
  double mean_res = 0.0, spec_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_res = std::max(mean_res, std::abs(post.mean[i] - x[i]));
    spec_res = std::max(spec_res, std::abs(post.spectrum[i] - ys[i]));
  }
  const double gate = 100.0 * tol.rel * std::max({1.0, inf_norm(x), inf_norm(y)});
  if (mean_res > gate || spec_res > gate)
    fail(Errc::verification_failed, "construction post-checks exceeded tolerance");
  return {std::move(a), mean_res, spec_res};
}

}  // namespace sympspec
