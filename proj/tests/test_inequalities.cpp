#include <doctest.h>

#include <cmath>

#include "sympspec/inequalities.hpp"
#include "test_support.hpp"

using namespace sympspec;
using testsupport::lidskii_equality_instance;
using testsupport::pair_span;
using testsupport::weyl_equality_instance;

TEST_CASE("weyl_check closed forms") {
  WeylReport same = weyl_check(Matrix::identity(4), Matrix::identity(4), 1, 1);
  CHECK(same.lhs == doctest::Approx(2.0));
  CHECK(same.rhs == doctest::Approx(2.0));
  CHECK(same.slack == doctest::Approx(0.0));
  CHECK(same.inequality_ok);

  // d of diag(a, b) is sqrt(ab): A+B = diag(3, 9) gives sqrt(27).
  WeylReport strict = weyl_check(Matrix(2, 2, {2, 0, 0, 8}), Matrix::identity(2), 1, 1);
  CHECK(strict.lhs == doctest::Approx(std::sqrt(27.0)).epsilon(1e-12));
  CHECK(strict.rhs == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(strict.slack == doctest::Approx(std::sqrt(27.0) - 5.0).epsilon(1e-9));
}

TEST_CASE("weyl_check index validation") {
  CHECK_THROWS_WITH_AS(weyl_check(Matrix::identity(4), Matrix::identity(4), 2, 2),
                       doctest::Contains("IndexOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(weyl_check(Matrix::identity(4), Matrix::identity(4), 0, 1),
                       doctest::Contains("IndexOutOfRange"), Error);
}

TEST_CASE("weyl inequality sweep on random pairs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const std::size_t n = 4;
    Matrix a = random_spd(2 * n, seed, 100.0);
    Matrix b = random_spd(2 * n, seed + 1000, 100.0);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; i + j - 1 <= n; ++j) {
        WeylReport r = weyl_check(a, b, i, j);
        CHECK(r.slack >= -1e-9 * (r.lhs + r.rhs));
      }
  }
}

TEST_CASE("weyl witness on the identity pair") {
  std::optional<EigenPair> w =
      weyl_equality_witness(Matrix::identity(4), Matrix::identity(4), 1, 1);
  REQUIRE(w.has_value());
  CHECK(dot(w->u, apply_form(w->v)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pair_residual(Matrix::identity(4), {w->u, w->v, 1.0}) <= 1e-8);
  Matrix two = Matrix::identity(4);
  two *= 2.0;
  CHECK(pair_residual(two, {w->u, w->v, 2.0}) <= 1e-8);
}

TEST_CASE("weyl witness on an engineered equality instance") {
  testsupport::WeylInstance inst = weyl_equality_instance(3, 1, 1, 5);
  WeylReport r = weyl_check(inst.a, inst.b, inst.i, inst.j);
  CHECK(std::abs(r.slack) <= 1e-7 * r.lhs);

  std::optional<EigenPair> w = weyl_equality_witness(inst.a, inst.b, inst.i, inst.j);
  REQUIRE(w.has_value());
  SymplecticSpectrum wa = williamson(inst.a);
  SymplecticSpectrum wb = williamson(inst.b);
  Matrix sum = inst.a + inst.b;
  const double extent = inst.a.frobenius();
  CHECK(pair_residual(inst.a, {w->u, w->v, wa.d[inst.i - 1]}) <= 1e-7 * extent);
  CHECK(pair_residual(inst.b, {w->u, w->v, wb.d[inst.j - 1]}) <= 1e-7 * extent);
  CHECK(pair_residual(sum, {w->u, w->v, w->d}) <= 1e-7 * extent);
  CHECK(dot(w->u, apply_form(w->v)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("weyl witness at interior indices") {
  testsupport::WeylInstance inst = weyl_equality_instance(4, 2, 2, 11);
  WeylReport r = weyl_check(inst.a, inst.b, 2, 2);
  CHECK(std::abs(r.slack) <= 1e-7 * r.lhs);
  std::optional<EigenPair> w = weyl_equality_witness(inst.a, inst.b, 2, 2);
  REQUIRE(w.has_value());
  CHECK(pair_residual(inst.a + inst.b, {w->u, w->v, w->d}) <= 1e-7 * inst.a.frobenius());
}

TEST_CASE("weyl witness is absent under strict slack") {
  for (std::uint64_t seed : {2, 3}) {
    Matrix a = random_spd(6, seed, 50.0);
    Matrix b = random_spd(6, seed + 77, 50.0);
    WeylReport r = weyl_check(a, b, 1, 1);
    REQUIRE(r.slack > 1e-3);  // generic pairs sit far from equality
    CHECK_FALSE(weyl_equality_witness(a, b, 1, 1).has_value());
  }
}

TEST_CASE("lidskii_check special cases") {
  // Full index set reduces to the trace-like sum inequality.
  Matrix a = random_spd(6, 21, 40.0);
  Matrix b = random_spd(6, 22, 40.0);
  LidskiiReport full = lidskii_check(a, b, {1, 2, 3});
  SymplecticSpectrum wa = williamson(a), wb = williamson(b), ws = williamson(a + b);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    lhs += ws.d[i];
    rhs += wa.d[i] + wb.d[i];
  }
  CHECK(full.lhs == doctest::Approx(lhs));
  CHECK(full.rhs == doctest::Approx(rhs));
  CHECK(full.inequality_ok);

  // k=1 coincides with Weyl at i=j=1.
  LidskiiReport single =
      lidskii_check(Matrix(2, 2, {2, 0, 0, 8}), Matrix::identity(2), {1});
  CHECK(single.lhs == doctest::Approx(std::sqrt(27.0)).epsilon(1e-12));
  CHECK(single.rhs == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("lidskii inequality sweep") {
  for (std::uint64_t seed : {31, 32, 33}) {
    Matrix a = random_spd(8, seed, 60.0);
    Matrix b = random_spd(8, seed + 500, 60.0);
    LidskiiReport r = lidskii_check(a, b, {1, 3});
    CHECK(r.slack >= -1e-9 * (r.lhs + r.rhs));
  }
}

TEST_CASE("lidskii equality test on an engineered instance") {
  testsupport::LidskiiInstance inst = lidskii_equality_instance(4, {1, 3}, 9);
  LidskiiReport r = lidskii_equality_test(inst.a, inst.b, inst.indices, 21);
  CHECK(std::abs(r.slack) <= 1e-8 * std::max(1.0, r.lhs));
  CHECK(*r.linearity_residual <= 1e-8 * std::max(1.0, r.grid_phi.back()));
  CHECK(*r.equality);
  CHECK(r.consistent);
}

TEST_CASE("lidskii equality for A = B holds exactly when indices are leading") {
  Matrix a = random_spd(6, 41, 30.0);
  LidskiiReport leading = lidskii_equality_test(a, a, {1, 2}, 11);
  CHECK(*leading.equality);
  CHECK(*leading.linearity_residual <= 1e-8 * std::max(1.0, leading.grid_phi.back()));

  LidskiiReport skipped = lidskii_equality_test(a, a, {1, 3}, 11);
  CHECK_FALSE(*skipped.equality);
  // phi is linear for A = B, so only the endpoint test fails;
  // the report flags the verdict split as an inconsistency signal.
  CHECK(*skipped.linearity_residual <= 1e-8 * std::max(1.0, skipped.grid_phi.back()));
  CHECK(skipped.slack > 1e-4);
  CHECK_FALSE(skipped.consistent);
}

TEST_CASE("lidskii equality test fails on generic pairs") {
  Matrix a = random_spd(6, 51, 40.0);
  Matrix b = random_spd(6, 52, 40.0);
  LidskiiReport r = lidskii_equality_test(a, b, {1, 2}, 15);
  CHECK_FALSE(*r.equality);
  CHECK(r.slack > 1e-4);
}

TEST_CASE("lidskii trace conditions on an equality instance") {
  testsupport::LidskiiInstance inst = lidskii_equality_instance(3, {2}, 19);
  TraceConditionReport trace = lidskii_trace_conditions(inst.a, inst.b, inst.indices, 0.5);
  CHECK_FALSE(trace.degenerate);
  CHECK(std::abs(trace.residual_a) <= 1e-7);
  CHECK(std::abs(trace.residual_b) <= 1e-7);
}

TEST_CASE("lidskii trace conditions flag degeneracy") {
  TraceConditionReport trace =
      lidskii_trace_conditions(Matrix::identity(4), Matrix::identity(4), {1}, 0.5);
  CHECK(trace.degenerate);
}

TEST_CASE("lidskii trace conditions detect strict slope excess") {
  Matrix a = random_spd(6, 61, 40.0);
  Matrix b = random_spd(6, 62, 40.0);
  std::vector<std::size_t> indices{2};
  TraceConditionReport trace = lidskii_trace_conditions(a, b, indices, 0.5);
  REQUIRE_FALSE(trace.degenerate);
  // (1/2) Tr[M(t)^T B M(t)] = phi'(t) > sum d_j(B) away from equality; the
  // finite-difference slope of phi must agree on the excess.
  CHECK(trace.residual_b > 1e-6);
  LidskiiReport r = lidskii_equality_test(a, b, indices, 41);
  const double h = r.grid_t[1] - r.grid_t[0];
  const double fd_slope = (r.grid_phi[21] - r.grid_phi[19]) / (2.0 * h);
  const double sum_b = 0.5 * trace.trace_b - trace.residual_b;
  CHECK(fd_slope >= sum_b - 1e-7);

  CHECK_THROWS_WITH_AS(lidskii_trace_conditions(a, b, indices, 1.0),
                       doctest::Contains("IndexOutOfRange"), Error);
}

TEST_CASE("trace_extremal_gap at the minimizer and beyond") {
  Matrix b = random_spd(8, 71, 50.0);
  SymplecticSpectrum wb = williamson(b);
  Matrix frame = pair_span(wb.m, {1, 2});
  CHECK(trace_extremal_gap(b, frame) == doctest::Approx(0.0).epsilon(1e-9));

  // For B = I the gap is ‖M‖_F^2 / 2 - k >= 0.
  Matrix m = random_symplectic(4, 72, 3.0);
  Matrix sub = pair_span(m, {1, 3});
  const double gap = trace_extremal_gap(Matrix::identity(8), sub);
  const double expected = 0.5 * sub.frobenius() * sub.frobenius() - 2.0;
  CHECK(gap == doctest::Approx(expected).epsilon(1e-9));
  CHECK(gap >= -1e-9);

  CHECK_THROWS_WITH_AS(trace_extremal_gap(Matrix::identity(4), Matrix(4, 2, {1, 0, 0, 0, 0, 0, 0, 1})),
                       doctest::Contains("NotSymplectic"), Error);
}

TEST_CASE("trace_extremal_gap random sweep") {
  for (std::uint64_t seed : {81, 82, 83, 84}) {
    Matrix b = random_spd(8, seed, 80.0);
    Matrix m = random_symplectic(4, seed + 99, 2.0);
    Matrix frame = pair_span(m, {1, 4});
    CHECK(trace_extremal_gap(b, frame) >= -1e-9);
  }
}

TEST_CASE("subspace conditions on an equality instance") {
  testsupport::LidskiiInstance inst = lidskii_equality_instance(3, {1}, 29);
  SymplecticSubspace good = SymplecticSubspace::from_basis(pair_span(inst.shared_basis, {1}));
  SubspaceConditionReport r =
      verify_lidskii_subspace_conditions(inst.a, inst.b, inst.indices, good, 0.1, 0.9, 9);
  CHECK(r.invariant_a);
  CHECK(r.invariant_b);
  CHECK(r.basis_of_b_pairs);
  CHECK(r.associated_match);

  // The span of pair 2 is invariant but tracks the wrong index.
  SymplecticSubspace wrong = SymplecticSubspace::from_basis(pair_span(inst.shared_basis, {2}));
  SubspaceConditionReport w =
      verify_lidskii_subspace_conditions(inst.a, inst.b, inst.indices, wrong, 0.1, 0.9, 9);
  CHECK(w.invariant_a);
  CHECK(w.invariant_b);
  CHECK_FALSE(w.associated_match);
}

TEST_CASE("subspace conditions reject a non-invariant subspace") {
  testsupport::LidskiiInstance inst = lidskii_equality_instance(3, {1}, 39);
  Matrix other = random_symplectic(3, 40, 2.0);
  SymplecticSubspace random_u = SymplecticSubspace::from_basis(pair_span(other, {1}));
  SubspaceConditionReport r =
      verify_lidskii_subspace_conditions(inst.a, inst.b, inst.indices, random_u, 0.1, 0.9, 5);
  CHECK_FALSE(r.invariant_a);
  CHECK_FALSE(r.associated_match);
}
