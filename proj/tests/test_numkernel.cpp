// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "distvar/numkernel.hpp"
#include "test_util.hpp"

using namespace distvar;
using testutil::multisetDistance;
using testutil::randomHermitian;
using testutil::randomMatrix;
using testutil::randomPsd;

namespace {
const Complex kI{0.0, 1.0};
const double kPi = std::acos(-1.0);

// Independent oracle for the numerical radius: dense angle sweep of the
// largest eigenvalue of the rotated Hermitian part.
double radiusSweepOracle(const ComplexMatrix& a, std::size_t angles) {
    double best = 0.0;
    for (std::size_t k = 0; k < angles; ++k) {
        double th = 2.0 * kPi * double(k) / double(angles);
        Complex phase = std::polar(1.0, th);
        ComplexMatrix h = 0.5 * (phase * a + std::conj(phase) * a.adjoint());
        HermitianEig e = hermitianEig(h);
        best = std::max(best, e.values.back());
    }
    return best;
}
}  // namespace

TEST_CASE("adjoint basics") {
    CHECK((ComplexMatrix::identity(2).adjoint() - ComplexMatrix::identity(2)).maxAbs() == 0.0);
    ComplexMatrix shift = ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}});
    ComplexMatrix shiftAdj = ComplexMatrix::fromRows({{0.0, 0.0}, {1.0, 0.0}});
    CHECK((shift.adjoint() - shiftAdj).maxAbs() == 0.0);
    ComplexMatrix im = ComplexMatrix::fromRows({{kI}});
    CHECK(im.adjoint()(0, 0) == -kI);
}

TEST_CASE("schur on diagonal and nilpotent matrices") {
    SchurResult d = schur(ComplexMatrix::diagonal({1.0, 2.0}));
    auto eig = eigenvalues(ComplexMatrix::diagonal({1.0, 2.0}));
    CHECK(multisetDistance(eig, {1.0, 2.0}) < 1e-12);
    CHECK((d.q.adjoint() * d.q - ComplexMatrix::identity(2)).maxAbs() < 1e-12);

    ComplexMatrix nil = ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}});
    SchurResult s = schur(nil);
    CHECK(std::abs(s.t(0, 0)) < 1e-12);
    CHECK(std::abs(s.t(1, 1)) < 1e-12);
}

TEST_CASE("schur residuals on random matrices") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t d = 6 + (rep % 3);
        ComplexMatrix a = randomMatrix(d, d, rng);
        SchurResult s = schur(a);
        CHECK((s.q.adjoint() * s.q - ComplexMatrix::identity(d)).frobeniusNorm() < 1e-10);
        CHECK((s.q.adjoint() * a * s.q - s.t).frobeniusNorm() < 1e-9 * a.frobeniusNorm());
        double lower = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < i; ++j) lower += std::abs(s.t(i, j));
        CHECK(lower < 1e-10 * std::max(1.0, a.frobeniusNorm()));
    }
}

TEST_CASE("schur rejects non-square input") {
    CHECK_THROWS_AS(schur(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("hermitianEig reconstructs and orders") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix h = randomHermitian(5, rng);
        HermitianEig e = hermitianEig(h);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        ComplexMatrix recon(5, 5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                Complex s{};
                for (std::size_t l = 0; l < 5; ++l)
                    s += e.values[l] * e.vectors(i, l) * std::conj(e.vectors(j, l));
                recon(i, j) = s;
            }
        CHECK((recon - h).frobeniusNorm() < 1e-10 * std::max(1.0, h.frobeniusNorm()));
        CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::identity(5)).frobeniusNorm() <
              1e-10);
    }
}

TEST_CASE("psdSqrt closed forms") {
    CHECK((psdSqrt(ComplexMatrix::identity(3)) - ComplexMatrix::identity(3)).maxAbs() < 1e-12);
    ComplexMatrix r = psdSqrt(ComplexMatrix::diagonal({4.0, 9.0}));
    CHECK((r - ComplexMatrix::diagonal({2.0, 3.0})).maxAbs() < 1e-12);
    // I - T*T for T = 0.5 I
    ComplexMatrix m = ComplexMatrix::identity(2) - (0.25 * ComplexMatrix::identity(2));
    CHECK((psdSqrt(m) - std::sqrt(0.75) * ComplexMatrix::identity(2)).maxAbs() < 1e-12);
}

TEST_CASE("psdSqrt squares back on random PSD matrices") {
    std::mt19937_64 rng(17);
    Tolerances tol;
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t d = 2 + (rep % 5);
        ComplexMatrix m = randomPsd(d, rng);
        ComplexMatrix r = psdSqrt(m);
        CHECK((r - r.adjoint()).frobeniusNorm() < 1e-10 * std::max(1.0, m.frobeniusNorm()));
        CHECK((r * r - m).frobeniusNorm() <
              tol.spectral * double(d) * std::max(1.0, m.frobeniusNorm()));
    }
}

TEST_CASE("psdSqrt rejects bad input") {
    ComplexMatrix notHerm = ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(psdSqrt(notHerm), Error);
    CHECK_THROWS_AS(psdSqrt(ComplexMatrix::diagonal({-1.0, 1.0})), Error);
}

TEST_CASE("numericalRadius closed forms and oracle") {
    CHECK(numericalRadius(ComplexMatrix(3, 3)) == doctest::Approx(0.0));
    ComplexMatrix shift = ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}});
    CHECK(numericalRadius(shift) == doctest::Approx(0.5).epsilon(1e-8));
    ComplexMatrix u = ComplexMatrix::fromRows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(numericalRadius(u) == doctest::Approx(1.0).epsilon(1e-8));

    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix a = randomMatrix(4, 4, rng);
        double w = numericalRadius(a);
        CHECK(w == doctest::Approx(radiusSweepOracle(a, 10000)).epsilon(1e-6));
        double nrm = operatorNorm(a);
        CHECK(w >= 0.5 * nrm - 1e-8);
        CHECK(w <= nrm + 1e-8);
    }
}

TEST_CASE("spectralRadius closed forms") {
    CHECK(spectralRadius(ComplexMatrix::diagonal({0.3, 0.9 * kI})) == doctest::Approx(0.9));
    CHECK(spectralRadius(ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}})) ==
          doctest::Approx(0.0));
    ComplexMatrix u = ComplexMatrix::fromRows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(spectralRadius(u) == doctest::Approx(1.0));
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix a = randomMatrix(5, 5, rng);
        CHECK(spectralRadius(a) <= operatorNorm(a) + 1e-9);
    }
}

TEST_CASE("operatorNorm closed forms") {
    CHECK(operatorNorm(ComplexMatrix::identity(3)) == doctest::Approx(1.0));
    CHECK(operatorNorm(ComplexMatrix::diagonal({2.0, 0.5})) == doctest::Approx(2.0));
    CHECK(operatorNorm(ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}})) == doctest::Approx(1.0));
}

TEST_CASE("svd reconstructs") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t r = 3 + (rep % 3), c = 3 + ((rep + 1) % 3);
        ComplexMatrix a = randomMatrix(r, c, rng);
        Svd s = svd(a);
        CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
        ComplexMatrix recon = s.u * ComplexMatrix::diagonal(
                                        std::vector<Complex>(s.sigma.begin(), s.sigma.end())) *
                              s.v.adjoint();
        CHECK((recon - a).frobeniusNorm() < 1e-8 * std::max(1.0, a.frobeniusNorm()));
    }
}

TEST_CASE("smallestSingular finds near-null vectors accurately") {
    std::mt19937_64 rng(31);
    ComplexMatrix a = randomMatrix(4, 4, rng);
    // Plant an exact null direction.
    ComplexMatrix v = randomMatrix(4, 1, rng);
    double nn = v.frobeniusNorm();
    for (std::size_t i = 0; i < 4; ++i) v(i, 0) /= nn;
    ComplexMatrix killer = a * (ComplexMatrix::identity(4) - v * v.adjoint());
    SmallestSingular ss = smallestSingular(killer);
    CHECK(ss.value < 1e-12 * a.frobeniusNorm());
    CHECK((killer * ss.vector).frobeniusNorm() < 1e-12 * a.frobeniusNorm());
}

TEST_CASE("solveLinear and determinant") {
    std::mt19937_64 rng(37);
    ComplexMatrix a = randomMatrix(5, 5, rng);
    ComplexMatrix b = randomMatrix(5, 2, rng);
    ComplexMatrix x = solveLinear(a, b);
    CHECK((a * x - b).frobeniusNorm() < 1e-9 * b.frobeniusNorm());

    CHECK(std::abs(determinant(ComplexMatrix::diagonal({2.0, 3.0, kI})) - 6.0 * kI) < 1e-12);
    CHECK(std::abs(determinant(ComplexMatrix::fromRows({{0.0, 1.0}, {0.0, 0.0}}))) < 1e-15);
}

TEST_CASE("solveLeastSquaresRight solves X A = B") {
    std::mt19937_64 rng(41);
    ComplexMatrix a = randomMatrix(3, 6, rng);  // wide: exact solution exists generically
    ComplexMatrix xTrue = randomMatrix(2, 3, rng);
    ComplexMatrix b = xTrue * a;
    ComplexMatrix x = solveLeastSquaresRight(a, b);
    CHECK((x * a - b).frobeniusNorm() < 1e-9 * b.frobeniusNorm());
}

TEST_CASE("rootsOfMonic matches the quadratic formula") {
    // t^2 - 0.7 t + 0.12 = (t - 0.3)(t - 0.4)
    auto r = rootsOfMonic({0.12, -0.7});
    CHECK(multisetDistance(r, {0.3, 0.4}) < 1e-10);
    // t^3 = 0
    auto r3 = rootsOfMonic({0.0, 0.0, 0.0});
    CHECK(multisetDistance(r3, {0.0, 0.0, 0.0}) < 1e-5);
    // t^2 + 1
    auto ri = rootsOfMonic({1.0, 0.0});
    CHECK(multisetDistance(ri, {kI, -kI}) < 1e-10);
}

TEST_CASE("kron shapes and values") {
    ComplexMatrix a = ComplexMatrix::fromRows({{1.0, 2.0}});
    ComplexMatrix b = ComplexMatrix::fromRows({{3.0}, {4.0}});
    ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 2);
    REQUIRE(k.cols() == 2);
    CHECK(k(0, 0) == Complex{3.0});
    CHECK(k(1, 1) == Complex{8.0});
}

TEST_CASE("nearestUnitary is the unitary polar factor") {
    std::mt19937_64 rng(43);
    ComplexMatrix a = randomMatrix(4, 4, rng);
    ComplexMatrix w = nearestUnitary(a);
    CHECK((w.adjoint() * w - ComplexMatrix::identity(4)).frobeniusNorm() < 1e-10);
    // W* A must be positive semidefinite Hermitian (polar decomposition).
    ComplexMatrix h = w.adjoint() * a;
    CHECK((h - h.adjoint()).frobeniusNorm() < 1e-9 * a.frobeniusNorm());
    HermitianEig e = hermitianEig(h);
    CHECK(e.values.front() > -1e-9 * a.frobeniusNorm());
}
