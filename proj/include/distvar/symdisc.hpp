// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_SYMDISC_HPP
#define DISTVAR_SYMDISC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "distvar/matrix.hpp"
#include "distvar/pencilvariety.hpp"

namespace distvar {

/// A point (s_1, ..., s_{n-1}, p) of elementary-symmetric coordinates.
struct SymPoint {
    std::vector<Complex> s;
    Complex p;

    std::size_t degree() const { return s.size() + 1; }  // n
};

enum class GnMembership { Inside, BoundaryBand, Outside };

const char* toString(GnMembership m);

struct GnVerdict {
    GnMembership membership = GnMembership::Outside;
    double maxRootModulus = 0.0;
};

/// The matrices F_1..F_{n-1} of the symmetric-coordinate pencil representation.
struct FPencilData {
    std::size_t n = 0;  // number of polydisc variables; n-1 matrices
    std::vector<ComplexMatrix> f;
};

struct FPencilReport {
    double commutatorDefect = 0.0;     // max ||[F_i, F_j]||
    double crossRelationDefect = 0.0;  // max ||[F_i*, F_{n-j}] - [F_j*, F_{n-i}]||
    bool spectrumInGn = true;
    std::vector<Complex> violatingZ;
    bool fiberFinitenessHeuristic = true;  // sampled fibers have <= dim points
    bool conditionOnePass = false;
    bool pass = false;

    std::string toJson() const;
};

/// Elementary symmetric values of the coordinates, by incremental expansion
/// of prod (t - z_k).
SymPoint symmetrize(const std::vector<Complex>& z);

/// Membership in the symmetrized polydisc: all roots of
/// t^n - s_1 t^{n-1} + ... + (-1)^n p inside the unit disc.
GnVerdict inGn(const SymPoint& q, const Tolerances& tol = {});

/// The n roots of the associated monic polynomial, nonincreasing modulus,
/// angle tie-break.
std::vector<Complex> preimage(const SymPoint& q, const Tolerances& tol = {});

/// Conditions (i) and sampled (ii) of the symmetric-pencil representation,
/// plus a heuristic finite-fiber flag. Conditions on regular sequences and
/// irreducible components are not decided.
FPencilReport validateFPencil(const FPencilData& f, std::size_t zSamples,
                              const Tolerances& tol = {}, std::uint64_t seed = 0x5eed);

struct LambdaPoint {
    SymPoint q;
    double witnessResidual = 0.0;
};

/// For each p in the grid, the joint eigenvalues of
/// (F_1* + p F_{n-1}, ..., F_{n-1}* + p F_1) as points (s, p).
std::vector<LambdaPoint> traceLambda(const FPencilData& f, const std::vector<Complex>& pGrid,
                                     const Tolerances& tol = {}, std::uint64_t seed = 0x5eed);

/// Root preimages of symmetric-coordinate points as polydisc points in
/// canonical order, classified by largest root modulus.
std::vector<VarietyPoint> pullbackToPolydisc(const std::vector<SymPoint>& points,
                                             const Tolerances& tol = {});

/// w-values of det(A* + A z w - (z + w) I) = 0 at fixed z, via the pencil
/// (A* - z I) + w (z A - I).
std::vector<Complex> bidiscDeterminantalFiber(const ComplexMatrix& a, Complex z,
                                              const Tolerances& tol = {});

}  // namespace distvar

#endif
