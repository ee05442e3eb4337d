// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/jointspec.hpp"

#include <cmath>
#include <random>

#include "distvar/numkernel.hpp"

namespace distvar {

CommutingTuple makeCommutingTuple(std::vector<ComplexMatrix> matrices) {
    if (matrices.empty())
        throw Error(Errc::InvalidArgument, "commuting tuple: need at least one matrix");
    const std::size_t d = matrices.front().rows();
    for (const auto& m : matrices) {
        if (!m.isSquare()) throw Error(Errc::NonSquare, "commuting tuple: matrices must be square");
        if (m.rows() != d)
            throw Error(Errc::DimensionMismatch, "commuting tuple: dimensions must agree");
        if (!m.allFinite())
            throw Error(Errc::InvalidArgument, "commuting tuple: non-finite entries");
    }
    CommutingTuple t;
    t.matrices = std::move(matrices);
    for (std::size_t i = 0; i < t.matrices.size(); ++i)
        for (std::size_t j = i + 1; j < t.matrices.size(); ++j) {
            double defect =
                (t.matrices[i] * t.matrices[j] - t.matrices[j] * t.matrices[i]).frobeniusNorm();
            t.commutatorDefect = std::max(t.commutatorDefect, defect);
        }
    return t;
}

namespace {

double tupleScale(const CommutingTuple& t) {
    double s = 0.0;
    for (const auto& m : t.matrices) s = std::max(s, m.frobeniusNorm());
    return std::max(s, 1.0);
}

ComplexMatrix stackedShifted(const CommutingTuple& t, const std::vector<Complex>& w) {
    const std::size_t d = t.dim();
    const std::size_t n = t.size();
    ComplexMatrix s(n * d, d);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Complex v = t.matrices[k](i, j);
                if (i == j) v -= w[k];
                s(k * d + i, j) = v;
            }
    }
    return s;
}

// Reads position-matched eigenvalue tuples from simultaneously triangularized
// matrices. Clusters of near-equal combination eigenvalues are recursed on so
// that within-cluster pairing stays consistent across the tuple.
void readTuples(const std::vector<ComplexMatrix>& tri, const std::vector<Complex>& combDiag,
                const Tolerances& tol, std::uint64_t seed, int depth,
                std::vector<std::vector<Complex>>& out);

std::vector<std::vector<Complex>> computeTuples(const std::vector<ComplexMatrix>& mats,
                                                const Tolerances& tol, std::uint64_t seed,
                                                int depth) {
    const std::size_t d = mats.front().rows();
    const std::size_t n = mats.size();
    double scale = 1.0;
    for (const auto& m : mats) scale = std::max(scale, m.frobeniusNorm());

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));

    const int maxTries = 5;
    for (int attempt = 0; attempt < maxTries; ++attempt) {
        std::vector<Complex> coeff(n);
        for (auto& c : coeff) c = std::polar(1.0, angle(rng));
        ComplexMatrix b(d, d);
        for (std::size_t k = 0; k < n; ++k) b += coeff[k] * mats[k];
        SchurResult sc = schur(b, tol);

        std::vector<ComplexMatrix> tri(n);
        for (std::size_t k = 0; k < n; ++k) tri[k] = sc.q.adjoint() * mats[k] * sc.q;

        std::vector<Complex> diag(d);
        for (std::size_t i = 0; i < d; ++i) diag[i] = sc.t(i, i);

        // Cluster boundaries: consecutive positions with near-equal diag(B).
        std::vector<std::size_t> clusterStart;
        clusterStart.push_back(0);
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(diag[i] - diag[i - 1]) >= tol.spectral * scale) clusterStart.push_back(i);
        clusterStart.push_back(d);

        // Triangularity check, ignoring within-cluster blocks.
        bool triangular = true;
        for (std::size_t k = 0; k < n && triangular; ++k) {
            for (std::size_t c = 0; c + 1 < clusterStart.size() && triangular; ++c) {
                for (std::size_t i = clusterStart[c + 1]; i < d && triangular; ++i)
                    for (std::size_t j = clusterStart[c]; j < clusterStart[c + 1]; ++j)
                        if (std::abs(tri[k](i, j)) > tol.spectral * scale) triangular = false;
            }
        }
        if (!triangular) continue;

        std::vector<std::vector<Complex>> out;
        readTuples(tri, diag, tol, seed + 0x9e3779b97f4a7c15ULL * (attempt + 1), depth, out);
        return out;
    }
    throw Error(Errc::GenericCombinationFailure,
                "jointEigenvalues: no generic combination triangularized the tuple");
}

void readTuples(const std::vector<ComplexMatrix>& tri, const std::vector<Complex>& combDiag,
                const Tolerances& tol, std::uint64_t seed, int depth,
                std::vector<std::vector<Complex>>& out) {
    const std::size_t d = combDiag.size();
    const std::size_t n = tri.size();
    double scale = 1.0;
    for (const auto& m : tri) scale = std::max(scale, m.frobeniusNorm());

    std::size_t i = 0;
    while (i < d) {
        std::size_t j = i + 1;
        while (j < d && std::abs(combDiag[j] - combDiag[j - 1]) < tol.spectral * scale) ++j;
        std::size_t g = j - i;
        if (g == 1) {
            std::vector<Complex> w(n);
            for (std::size_t k = 0; k < n; ++k) w[k] = tri[k](i, i);
            out.push_back(std::move(w));
        } else if (depth >= 2 || g == d) {
            // Repeated joint eigenvalue (or an unsplittable cluster): the
            // diagonal entries are position-matched within tolerance already.
            for (std::size_t p = i; p < j; ++p) {
                std::vector<Complex> w(n);
                for (std::size_t k = 0; k < n; ++k) w[k] = tri[k](p, p);
                out.push_back(std::move(w));
            }
        } else {
            std::vector<ComplexMatrix> sub(n);
            for (std::size_t k = 0; k < n; ++k) sub[k] = tri[k].block(i, i, g, g);
            auto inner = computeTuples(sub, tol, seed ^ (0xabcdULL + i), depth + 1);
            for (auto& w : inner) out.push_back(std::move(w));
        }
        i = j;
    }
}

}  // namespace

double jointWitnessResidual(const CommutingTuple& t, const std::vector<Complex>& values) {
    if (values.size() != t.size())
        throw Error(Errc::DimensionMismatch, "joint eigenvalue length differs from tuple length");
    SmallestSingular ss = smallestSingular(stackedShifted(t, values));
    return ss.value;
}

std::vector<JointEigenvalue> jointEigenvalues(const CommutingTuple& t, const Tolerances& tol,
                                              std::uint64_t seed) {
    tol.validate();
    if (t.matrices.empty())
        throw Error(Errc::InvalidArgument, "jointEigenvalues: empty tuple");
    if (t.commutatorDefect > tol.structural * tupleScale(t))
        throw Error(Errc::NotCommuting, "jointEigenvalues: tuple does not commute within tolerance");

    auto tuples = computeTuples(t.matrices, tol, seed, 0);

    std::vector<JointEigenvalue> out(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        out[i].values = tuples[i];
        out[i].witnessResidual = jointWitnessResidual(t, tuples[i]);
    }
    double scale = tupleScale(t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t mult = 0;
        for (std::size_t j = 0; j < out.size(); ++j) {
            double dist = 0.0;
            for (std::size_t k = 0; k < t.size(); ++k)
                dist = std::max(dist, std::abs(out[i].values[k] - out[j].values[k]));
            if (dist < tol.spectral * scale) ++mult;
        }
        out[i].multiplicityHint = mult;
    }
    return out;
}

bool verifyJointEigenvalue(const CommutingTuple& t, const JointEigenvalue& w,
                           const Tolerances& tol) {
    tol.validate();
    return jointWitnessResidual(t, w.values) <= tol.spectral * tupleScale(t);
}

}  // namespace distvar
