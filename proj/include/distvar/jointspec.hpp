// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_JOINTSPEC_HPP
#define DISTVAR_JOINTSPEC_HPP

#include <cstdint>
#include <vector>

#include "distvar/matrix.hpp"

namespace distvar {

/// One point of the joint spectrum: a value per matrix of the tuple plus the
/// smallest-singular-value witness of the stacked null-space test.
struct JointEigenvalue {
    std::vector<Complex> values;
    double witnessResidual = 0.0;
    std::size_t multiplicityHint = 1;
};

struct CommutingTuple {
    std::vector<ComplexMatrix> matrices;
    double commutatorDefect = 0.0;

    std::size_t dim() const { return matrices.empty() ? 0 : matrices.front().rows(); }
    std::size_t size() const { return matrices.size(); }
};

/// Builds the tuple and records max ||A_i A_j - A_j A_i||.
CommutingTuple makeCommutingTuple(std::vector<ComplexMatrix> matrices);

/// Joint eigenvalues of a commuting matrix tuple via a random generic linear
/// combination and simultaneous Schur triangularization. Returns dim(tuple)
/// tuples, multiplicities kept. Deterministic for a fixed seed.
std::vector<JointEigenvalue> jointEigenvalues(const CommutingTuple& t, const Tolerances& tol = {},
                                              std::uint64_t seed = 0x5eed);

/// True iff the stacked matrix [A_1 - w_1 I; ...; A_n - w_n I] is numerically
/// rank deficient, i.e. a common eigenvector exists.
bool verifyJointEigenvalue(const CommutingTuple& t, const JointEigenvalue& w,
                           const Tolerances& tol = {});

/// The witness residual used by verifyJointEigenvalue: ||S v|| for the best
/// candidate null vector v of the stacked matrix S.
double jointWitnessResidual(const CommutingTuple& t, const std::vector<Complex>& values);

}  // namespace distvar

#endif
