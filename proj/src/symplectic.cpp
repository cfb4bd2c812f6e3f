#include "sympspec/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace sympspec {

Matrix symplectic_form(std::size_t n) {
  Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, n + i) = 1.0;
    j(n + i, i) = -1.0;
  }
  return j;
}

Matrix apply_form(const Matrix& m) {
  if (m.rows() % 2 != 0) fail(Errc::odd_dimension, "J needs an even row count");
  const std::size_t n = m.rows() / 2;
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = m(n + i, j);
      out(n + i, j) = -m(i, j);
    }
  return out;
}

Vec apply_form(const Vec& v) {
  if (v.size() % 2 != 0) fail(Errc::odd_dimension, "J needs an even length");
  const std::size_t n = v.size() / 2;
  Vec out(v.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = v[n + i];
    out[n + i] = -v[i];
  }
  return out;
}

Matrix symplectic_inverse(const Matrix& m) {
  if (m.rows() != m.cols()) fail(Errc::shape_mismatch, "symplectic inverse needs a square matrix");
  // -J M^T J: apply_form(m) = J M, transpose gives -M^T J, one more J in front.
  return apply_form(apply_form(m).transposed());
}

SymplecticCheck is_symplectic(const Matrix& m, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(m, "is_symplectic");
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
    fail(Errc::odd_dimension, "symplectic frames have even dimensions");
  if (m.rows() < m.cols()) fail(Errc::shape_mismatch, "frame has more columns than rows");
  const std::size_t k = m.cols() / 2;
  Matrix form = m.transposed() * apply_form(m);
  form -= symplectic_form(k);
  const double residual = form.frobenius();
  const double norm = m.frobenius();
  return {residual <= tol.rel * std::max(1.0, norm * norm), residual};
}

OrthosymplecticCheck is_orthosymplectic(const Matrix& m, const ToleranceConfig& tol) {
  SymplecticCheck sc = is_symplectic(m, tol);
  Matrix gram = m.transposed() * m;
  gram -= Matrix::identity(m.cols());
  const double orth = gram.frobenius();
  const bool ok = sc.verdict && orth <= tol.rel * std::max(1.0, static_cast<double>(m.cols()));
  return {ok, sc.residual, orth};
}

SymplecticMatrix certify_symplectic(Matrix m, const ToleranceConfig& tol) {
  SymplecticCheck sc = is_symplectic(m, tol);
  if (!sc.verdict) fail(Errc::not_symplectic, "symplectic residual above tolerance");
  return {std::move(m), sc.residual};
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Rng::log_uniform(double lo, double hi) {
  return lo * std::exp(uniform() * std::log(hi / lo));
}

namespace {

using Cx = std::complex<double>;

// Modified Gram-Schmidt with a second pass; columns that collapse are
// redrawn from the stream so the result is still deterministic in the seed.
template <typename Scalar, typename Draw, typename Dot>
void mgs_columns(std::vector<std::vector<Scalar>>& cols, Draw draw, Dot cdot) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto& v = cols[j];
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < j; ++i) {
          const Scalar c = cdot(cols[i], v);
          for (std::size_t r = 0; r < v.size(); ++r) v[r] -= c * cols[i][r];
        }
      double nv = 0.0;
      for (const Scalar& e : v) nv += std::norm(Cx(e));
      nv = std::sqrt(nv);
      if (nv > 1e-10) {
        for (Scalar& e : v) e /= nv;
        break;
      }
      draw(v);
    }
  }
}

}  // namespace

Matrix orthosymplectic_from(std::size_t n, Rng& rng) {
  if (n < 1) fail(Errc::shape_mismatch, "half-dimension must be at least 1");
  std::vector<std::vector<Cx>> cols(n, std::vector<Cx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      cols[j][i] = Cx(re, im);
    }
  auto draw = [&](std::vector<Cx>& v) {
    for (Cx& e : v) e = Cx(rng.gaussian(), rng.gaussian());
  };
  auto cdot = [](const std::vector<Cx>& a, const std::vector<Cx>& b) {
    Cx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  mgs_columns<Cx>(cols, draw, cdot);

  Matrix out(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double x = cols[j][i].real();
      const double y = cols[j][i].imag();
      out(i, j) = x;
      out(n + i, j) = y;
      out(i, n + j) = -y;
      out(n + i, n + j) = x;
    }
  return out;
}

Matrix random_orthosymplectic(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return orthosymplectic_from(n, rng);
}

Matrix random_symplectic(std::size_t n, std::uint64_t seed, double spread) {
  if (spread < 1.0) fail(Errc::parse_error, "spread must be at least 1");
  Rng rng(seed);
  Matrix o1 = orthosymplectic_from(n, rng);
  Vec stretch(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = rng.log_uniform(1.0 / spread, spread);
    stretch[i] = c;
    stretch[n + i] = 1.0 / c;
  }
  Matrix o2 = orthosymplectic_from(n, rng);
  return o1 * Matrix::diagonal(stretch) * o2;
}

Matrix random_spd(std::size_t dim, std::uint64_t seed, double cond_target) {
  if (dim < 2 || dim % 2 != 0) fail(Errc::odd_dimension, "dimension must be even and at least 2");
  if (cond_target < 1.0) fail(Errc::parse_error, "cond_target must be at least 1");
  Rng rng(seed);
  std::vector<std::vector<double>> cols(dim, std::vector<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) cols[j][i] = rng.gaussian();
  auto draw = [&](std::vector<double>& v) {
    for (double& e : v) e = rng.gaussian();
  };
  auto rdot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  mgs_columns<double>(cols, draw, rdot);

  Vec lambda(dim);
  for (double& l : lambda) l = rng.log_uniform(1.0, cond_target);
  const double overall = rng.log_uniform(0.5, 2.0);

  Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += cols[k][i] * lambda[k] * cols[k][j];
      a(i, j) = a(j, i) = overall * s;
    }
  return a;
}

}  // namespace sympspec
