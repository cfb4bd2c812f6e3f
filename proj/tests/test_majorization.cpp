#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sympspec/majorization.hpp"
#include "sympspec/numeric.hpp"
#include "sympspec/symplectic.hpp"
#include "sympspec/williamson.hpp"
#include "test_support.hpp"

using namespace sympspec;
using testsupport::max_abs_diff;

TEST_CASE("compare verdicts") {
  MajorizationReport maj = compare({3, 3}, {2, 4});
  CHECK(maj.relation == MajorizationRelation::majorized);
  CHECK(maj.prefix_slacks[0] == doctest::Approx(1.0));
  CHECK(maj.total_gap == doctest::Approx(0.0));

  MajorizationReport weak = compare({4, 5, 20}, {1, 7, 7});
  CHECK(weak.relation == MajorizationRelation::weakly_supermajorized);
  CHECK(weak.prefix_slacks[0] == doctest::Approx(3.0));
  CHECK(weak.prefix_slacks[1] == doctest::Approx(1.0));
  CHECK(weak.total_gap == doctest::Approx(14.0));

  CHECK(compare({1, 10}, {2, 3}).relation == MajorizationRelation::neither);
  CHECK_THROWS_WITH_AS(compare({1.0}, {1.0, 2.0}), doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("ds_witness closed forms") {
  Vec x{2, 3, 4};
  std::optional<Matrix> same = ds_witness(x, x);
  REQUIRE(same.has_value());
  CHECK((*same - Matrix::identity(3)).frobenius() <= 1e-12);

  std::optional<Matrix> half = ds_witness({3, 3}, {2, 4});
  REQUIRE(half.has_value());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK((*half)(i, j) == doctest::Approx(0.5));

  CHECK_FALSE(ds_witness({1, 10}, {2, 3}).has_value());
  CHECK_FALSE(ds_witness({4, 5, 20}, {1, 7, 7}).has_value());  // weak only
}

TEST_CASE("ds_witness on random majorized pairs") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 5;
    Vec y(n);
    for (double& e : y) e = 1.0 + 4.0 * rng.uniform();
    // Averaging along a random doubly stochastic mix majorizes.
    Vec x(n, 0.0);
    Matrix mix(n, n);
    Vec row(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) row[j] = rng.uniform();
      const double s = std::accumulate(row.begin(), row.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) mix(i, j) = row[j] / s;
    }
    // Sinkhorn-style balancing to reach (near) doubly stochastic.
    for (int pass = 0; pass < 200; ++pass) {
      for (std::size_t j = 0; j < n; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += mix(i, j);
        for (std::size_t i = 0; i < n; ++i) mix(i, j) /= c;
      }
      for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += mix(i, j);
        for (std::size_t j = 0; j < n; ++j) mix(i, j) /= r;
      }
    }
    if (!is_doubly_stochastic(mix, {.rel = 1e-10})) continue;
    x = mix * y;

    std::optional<Matrix> e = ds_witness(x, y);
    REQUIRE(e.has_value());
    Vec back = *e * y;
    CHECK(max_abs_diff(back, x) <= 1e-9 * std::max(1.0, std::abs(y[0])));
    CHECK(is_doubly_stochastic(*e, {.rel = 1e-9}));
  }
}

TEST_CASE("diagonal_vectors closed forms") {
  DiagonalVectors ident = diagonal_vectors(Matrix::identity(6));
  for (const Vec* v : {&ident.mean, &ident.spectrum, &ident.geometric, &ident.quadratic,
                       &ident.quadratic_coupled})
    for (double e : *v) CHECK(e == doctest::Approx(1.0));

  DiagonalVectors d28 = diagonal_vectors(Matrix(2, 2, {2, 0, 0, 8}));
  CHECK(d28.mean[0] == doctest::Approx(5.0));
  CHECK(d28.spectrum[0] == doctest::Approx(4.0));
  CHECK(d28.geometric[0] == doctest::Approx(4.0));
  CHECK(d28.quadratic[0] == doctest::Approx(std::sqrt(34.0)));
  CHECK(d28.quadratic_coupled[0] == doctest::Approx(d28.quadratic[0]));
}

TEST_CASE("diagonal_vectors entrywise dominance of the coupled variant") {
  for (std::uint64_t seed : {3, 4, 5}) {
    Matrix a = random_spd(8, seed, 50.0);
    DiagonalVectors v = diagonal_vectors(a);
    for (std::size_t i = 0; i < 4; ++i) CHECK(v.quadratic_coupled[i] >= v.quadratic[i] - 1e-12);
  }
}

TEST_CASE("n_tilde closed forms") {
  CHECK((n_tilde(Matrix::identity(6)) - Matrix::identity(3)).frobenius() <= 1e-15);

  Matrix stretch(2, 2, {std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)});
  Matrix nt = n_tilde(stretch);
  CHECK(nt(0, 0) == doctest::Approx(1.25));

  CHECK_THROWS_WITH_AS(n_tilde(Matrix(3, 3)), doctest::Contains("OddDimension"), Error);
}

TEST_CASE("n_tilde of orthosymplectic frames is doubly stochastic") {
  for (std::uint64_t seed : {11, 12, 13}) {
    Matrix n = random_orthosymplectic(4, seed);
    CHECK(is_doubly_stochastic(n_tilde(n)));
  }
}

TEST_CASE("is_doubly_stochastic verdicts") {
  CHECK(is_doubly_stochastic(Matrix::identity(3)));
  CHECK(is_doubly_stochastic(Matrix(2, 2, {0.5, 0.5, 0.5, 0.5})));
  CHECK_FALSE(is_doubly_stochastic(Matrix(1, 1, {1.25})));
  CHECK_FALSE(is_doubly_stochastic(Matrix(2, 2, {1.5, -0.5, -0.5, 1.5})));
}

TEST_CASE("is_doubly_superstochastic verdicts and witnesses") {
  SuperstochasticCheck easy = is_doubly_superstochastic(Matrix(2, 2, {1, 0, 0.5, 1}));
  CHECK(easy.verdict);
  REQUIRE(easy.witness.has_value());
  CHECK(is_doubly_stochastic(*easy.witness, {.rel = 1e-9}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK((*easy.witness)(i, j) <= Matrix(2, 2, {1, 0, 0.5, 1})(i, j) + 1e-12);

  SuperstochasticCheck tight = is_doubly_superstochastic(Matrix(2, 2, {0.4, 0.4, 0.4, 0.4}));
  CHECK_FALSE(tight.verdict);
  CHECK(tight.flow == doctest::Approx(1.6));

  CHECK_THROWS_WITH_AS(is_doubly_superstochastic(Matrix(2, 2, {-0.2, 1, 1, 0})),
                       doctest::Contains("NegativeEntry"), Error);
}

TEST_CASE("n_tilde of symplectic frames is doubly superstochastic") {
  for (std::uint64_t seed : {21, 22, 23}) {
    Matrix n = random_symplectic(3, seed, 3.0);
    SuperstochasticCheck check = is_doubly_superstochastic(n_tilde(n));
    CHECK(check.verdict);
    REQUIRE(check.witness.has_value());
    CHECK(is_doubly_stochastic(*check.witness, {.rel = 1e-8}));
  }
}

TEST_CASE("schur_horn_weak_check verdicts") {
  CHECK(schur_horn_weak_check(Matrix::identity(4)).relation == MajorizationRelation::majorized);

  MajorizationReport strict = schur_horn_weak_check(Matrix(2, 2, {2, 0, 0, 8}));
  CHECK(strict.relation == MajorizationRelation::weakly_supermajorized);
  CHECK(strict.total_gap == doctest::Approx(1.0));  // 5 - 4

  Vec d{1.0, 2.5, 4.0};
  Matrix n = random_orthosymplectic(3, 31);
  Vec doubled(6);
  for (std::size_t i = 0; i < 3; ++i) doubled[i] = doubled[3 + i] = d[i];
  Matrix a = n * Matrix::diagonal(doubled) * n.transposed();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  CHECK(schur_horn_weak_check(a).relation == MajorizationRelation::majorized);
}

TEST_CASE("orthosymplectic_williamson closed forms") {
  std::optional<OrthosymplecticWilliamson> ident = orthosymplectic_williamson(Matrix::identity(4));
  REQUIRE(ident.has_value());
  CHECK((ident->n - Matrix::identity(4)).frobenius() <= 1e-12);
  CHECK(ident->recon_residual <= 1e-12);

  CHECK_FALSE(orthosymplectic_williamson(Matrix(2, 2, {2, 0, 0, 8})).has_value());
}

TEST_CASE("orthosymplectic_williamson round trip") {
  for (std::uint64_t seed : {41, 42, 43}) {
    Rng rng(seed);
    const std::size_t n = 3;
    Vec d(n);
    for (double& e : d) e = 0.5 + 2.5 * rng.uniform();
    std::sort(d.begin(), d.end());
    Matrix n0 = random_orthosymplectic(n, seed + 7);
    Vec doubled(2 * n);
    for (std::size_t i = 0; i < n; ++i) doubled[i] = doubled[n + i] = d[i];
    Matrix a = n0 * Matrix::diagonal(doubled) * n0.transposed();
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = i + 1; j < 2 * n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

    std::optional<OrthosymplecticWilliamson> w = orthosymplectic_williamson(a);
    REQUIRE(w.has_value());
    CHECK(is_orthosymplectic(w->n).verdict);
    CHECK(w->recon_residual <= 1e-8 * a.frobenius());
    CHECK(max_abs_diff(w->d, d) <= 1e-8 * std::max(1.0, d.back()));
    CHECK(compare(diagonal_vectors(a).mean, w->d).relation == MajorizationRelation::majorized);
  }
}

TEST_CASE("orthosymplectic_williamson is absent for generic SPD input") {
  Matrix a = random_spd(6, 51, 40.0);
  const double commutator = skewness_residual(apply_form(a));
  REQUIRE(commutator > 1e-6 * a.frobenius());
  CHECK_FALSE(orthosymplectic_williamson(a).has_value());
}

TEST_CASE("water_fill closed forms") {
  // Already majorized: nothing to cap.
  Vec same = water_fill({3, 3}, {2, 4});
  CHECK(same == Vec{3, 3});

  Vec filled = water_fill({4, 5, 20}, {1, 7, 7});
  CHECK(filled == Vec{4, 5, 6});

  Vec single = water_fill({5}, {4});
  CHECK(single[0] == doctest::Approx(4.0));

  CHECK_THROWS_WITH_AS(water_fill({1, 10}, {2, 3}), doctest::Contains("NotWeaklySupermajorized"),
                       Error);
}

TEST_CASE("water_fill output is majorized and dominated") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 6;
    Vec y(n), x(n);
    for (double& e : y) e = 0.5 + 3.0 * rng.uniform();
    Vec ys = y;
    std::stable_sort(ys.begin(), ys.end());
    // Entrywise inflation of sorted y keeps every ascending prefix ahead,
    // so x is weakly supermajorized by y by construction.
    for (std::size_t i = 0; i < n; ++i) x[i] = ys[i];
    for (std::size_t i = 0; i + 1 < n; ++i) x[i + 1] += rng.uniform() * x[i + 1];
    x[n - 1] += rng.uniform();
    MajorizationReport rel = compare(x, y);
    REQUIRE(rel.relation != MajorizationRelation::neither);
    Vec v = water_fill(x, y);
    CHECK(compare(v, y).relation == MajorizationRelation::majorized);
    for (std::size_t i = 0; i < n; ++i) CHECK(v[i] <= x[i] + 1e-12);
  }
}

TEST_CASE("horn_symmetric closed forms") {
  Vec y{2, 4};
  Matrix o = horn_symmetric({3, 3}, y);
  Matrix w = o * Matrix::diagonal(y) * o.transposed();
  CHECK(w(0, 0) == doctest::Approx(3.0));
  CHECK(w(1, 1) == doctest::Approx(3.0));
  // sin^2 theta = 1/2 at this bracket
  CHECK(std::abs(o(0, 0) * o(0, 0) - 0.5) <= 1e-12);

  Matrix fixed = horn_symmetric({1, 7, 7}, {1, 7, 7});
  Matrix wf = fixed * Matrix::diagonal(Vec{1, 7, 7}) * fixed.transposed();
  CHECK(wf(0, 0) == doctest::Approx(1.0));

  Matrix deep = horn_symmetric({4, 5, 6}, {1, 7, 7});
  Matrix wd = deep * Matrix::diagonal(Vec{1, 7, 7}) * deep.transposed();
  CHECK(wd(0, 0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(wd(1, 1) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(wd(2, 2) == doctest::Approx(6.0).epsilon(1e-10));
  CHECK((deep * deep.transposed() - Matrix::identity(3)).frobenius() <= 1e-10);

  CHECK_THROWS_WITH_AS(horn_symmetric({4, 5, 20}, {1, 7, 7}), doctest::Contains("NotMajorized"),
                       Error);
}

TEST_CASE("schur_horn_construct n=1 closed form") {
  SchurHornConstruction built = schur_horn_construct({5}, {4});
  CHECK(built.a(0, 0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(built.a(1, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(built.mean_residual <= 1e-12);
  CHECK(built.spectrum_residual <= 1e-12);
}

TEST_CASE("schur_horn_construct flat target") {
  Vec ones{1, 1, 1};
  SchurHornConstruction built = schur_horn_construct(ones, ones);
  DiagonalVectors v = diagonal_vectors(built.a);
  CHECK(max_abs_diff(v.mean, ones) <= 1e-10);
  CHECK(max_abs_diff(v.spectrum, ones) <= 1e-10);
}

TEST_CASE("schur_horn_construct round trip") {
  SchurHornConstruction built = schur_horn_construct({4, 5, 20}, {1, 7, 7});
  DiagonalVectors v = diagonal_vectors(built.a);
  CHECK(max_abs_diff(v.mean, {4, 5, 20}) <= 1e-7);
  Vec sorted_y{1, 7, 7};
  CHECK(max_abs_diff(v.spectrum, sorted_y) <= 1e-7);
  // Independent spectrum route.
  CHECK(max_abs_diff(testsupport::oracle_symplectic_spectrum(built.a), sorted_y) <= 1e-7);

  CHECK_THROWS_WITH_AS(schur_horn_construct({1, 10}, {2, 3}),
                       doctest::Contains("NotWeaklySupermajorized"), Error);
}

TEST_CASE("lemma equivalence: witness exists exactly for majorized pairs") {
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Vec x(n), y(n);
    for (double& e : x) e = rng.uniform() * 5.0;
    for (double& e : y) e = rng.uniform() * 5.0;
    MajorizationReport rel = compare(x, y);
    std::optional<Matrix> e = ds_witness(x, y);
    CHECK(e.has_value() == (rel.relation == MajorizationRelation::majorized));
    if (e) {
      Vec back = *e * y;
      CHECK(max_abs_diff(back, x) <= 1e-9 * std::max(1.0, std::abs(x[0])));
    }
  }
}
