// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/generate.hpp"

#include <cmath>
#include <random>

#include "distvar/numkernel.hpp"

namespace distvar {

namespace {

ComplexMatrix randomGaussian(std::size_t d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = Complex{g(rng), g(rng)};
    return m;
}

// Modified Gram-Schmidt; fine at desk-scale dimensions.
ComplexMatrix orthonormalize(ComplexMatrix m) {
    const std::size_t d = m.rows();
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot{};
            for (std::size_t i = 0; i < d; ++i) dot += std::conj(m(i, k)) * m(i, j);
            for (std::size_t i = 0; i < d; ++i) m(i, j) -= dot * m(i, k);
        }
        double nn = 0.0;
        for (std::size_t i = 0; i < d; ++i) nn += std::norm(m(i, j));
        nn = std::sqrt(nn);
        if (nn < 1e-8) {
            // Degenerate draw; replace by a unit vector and restart the column.
            for (std::size_t i = 0; i < d; ++i) m(i, j) = (i == j) ? 1.0 : 0.0;
            --j;
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) m(i, j) /= nn;
    }
    return m;
}

SigmaData diagonalSigma(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    SigmaData s;
    s.n = n;
    s.d = d;
    std::vector<std::vector<Complex>> diag(n, std::vector<Complex>(d));
    for (std::size_t k = 0; k < d; ++k) {
        Complex prod{1.0, 0.0};
        for (std::size_t i = 0; i + 1 < n; ++i) {
            diag[i][k] = std::polar(1.0, angle(rng));
            prod *= diag[i][k];
        }
        // Last unitary closes the product to the identity.
        diag[n - 1][k] = Complex{1.0, 0.0} / prod;
    }
    std::vector<std::vector<Complex>> proj(n, std::vector<Complex>(d, Complex{}));
    for (std::size_t k = 0; k < d; ++k) proj[pick(rng)][k] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.unitaries.push_back(ComplexMatrix::diagonal(diag[i]));
        s.projections.push_back(ComplexMatrix::diagonal(proj[i]));
    }
    return s;
}

}  // namespace

SigmaKind sigmaKindFromString(const std::string& s) {
    if (s == "diagonal") return SigmaKind::Diagonal;
    if (s == "swaplike") return SigmaKind::Swaplike;
    if (s == "conjugated-diagonal" || s == "conjugatedDiagonal")
        return SigmaKind::ConjugatedDiagonal;
    throw Error(Errc::UnsupportedKind, "unknown sigma kind '" + s + "'");
}

ComplexMatrix randomUnitary(std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return orthonormalize(randomGaussian(d, rng));
}

SigmaData generateSigma(SigmaKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n == 0 || d == 0) throw Error(Errc::InvalidArgument, "generateSigma: n, d must be positive");
    std::mt19937_64 rng(seed);
    switch (kind) {
        case SigmaKind::Diagonal:
            return diagonalSigma(n, d, rng);
        case SigmaKind::Swaplike: {
            if (n != 2)
                throw Error(Errc::UnsupportedKind, "swaplike sigma is only defined for n = 2");
            if (d < 2)
                throw Error(Errc::UnsupportedKind, "swaplike sigma needs d >= 2");
            ComplexMatrix u = orthonormalize(randomGaussian(d, rng));
            std::uniform_int_distribution<std::size_t> rankDist(1, d - 1);
            std::size_t r = rankDist(rng);
            ComplexMatrix frame = orthonormalize(randomGaussian(d, rng));
            ComplexMatrix p(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    Complex s{};
                    for (std::size_t k = 0; k < r; ++k)
                        s += frame(i, k) * std::conj(frame(j, k));
                    p(i, j) = s;
                }
            SigmaData s;
            s.n = 2;
            s.d = d;
            ComplexMatrix pperp = ComplexMatrix::identity(d) - p;
            s.unitaries = {u, u.adjoint()};
            s.projections = {p, u * pperp * u.adjoint()};
            return s;
        }
        case SigmaKind::ConjugatedDiagonal: {
            SigmaData s = diagonalSigma(n, d, rng);
            ComplexMatrix w = orthonormalize(randomGaussian(d, rng));
            for (auto& m : s.projections) m = w.adjoint() * m * w;
            for (auto& m : s.unitaries) m = w.adjoint() * m * w;
            return s;
        }
    }
    throw Error(Errc::UnsupportedKind, "unknown sigma kind");
}

SigmaData swapSigmaFixture() {
    SigmaData s;
    s.n = 2;
    s.d = 2;
    ComplexMatrix swap = ComplexMatrix::fromRows({{0.0, 1.0}, {1.0, 0.0}});
    ComplexMatrix p = ComplexMatrix::fromRows({{1.0, 0.0}, {0.0, 0.0}});
    s.unitaries = {swap, swap};
    s.projections = {p, p};
    return s;
}

}  // namespace distvar
