// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_PENCILVARIETY_HPP
#define DISTVAR_PENCILVARIETY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "distvar/jointspec.hpp"
#include "distvar/matrix.hpp"

namespace distvar {

/// The pencil data (P_1..P_n, U_1..U_n, d): orthogonal projections and
/// commuting unitaries with U_1...U_n = I, defining Phi_i(z) = U_i P_i^perp + z U_i P_i.
struct SigmaData {
    std::size_t n = 0;  // number of pencils
    std::size_t d = 0;  // matrix order
    std::vector<ComplexMatrix> projections;
    std::vector<ComplexMatrix> unitaries;
};

struct SigmaValidationReport {
    double condition1Defect = 0.0;       // pencil co-isometric parts commute
    double condition2Defect = 0.0;       // U_i P_i blocks commute
    double condition3Defect = 0.0;       // conjugated projections partition I
    double productIdentityDefect = 0.0;  // prod Phi_i(z) = z I on sampled z
    bool pass = false;

    std::string toJson() const;
};

enum class PointClass { Interior, Boundary, Exterior };

const char* toString(PointClass c);
PointClass pointClassFromString(const std::string& s);

struct VarietyPoint {
    Complex z;                       // base point, = prod coordinates
    std::vector<Complex> coordinates;
    PointClass classification = PointClass::Interior;
    double witnessResidual = 0.0;
};

struct VarietyPointCloud {
    std::size_t n = 0;  // coordinates per point
    std::vector<VarietyPoint> points;
    std::string grid;   // description of the sampled base points
};

struct DistinguishedCertificate {
    bool interiorNonEmpty = false;
    bool exitsThroughTorus = false;
    std::size_t exteriorViolations = 0;
    std::size_t interiorCount = 0;
    std::size_t boundaryCount = 0;
    std::size_t boundaryAngles = 0;
    double maxBoundaryCoordinateDefect = 0.0;  // max | |z_i| - 1 | at unimodular z
    double maxBoundaryUnitarityDefect = 0.0;   // max || Phi_i(z)* Phi_i(z) - I ||
    bool pass = false;

    std::string toJson() const;
};

/// Checks the structural invariants of the data itself (each P_i a projection,
/// each U_i unitary, the U_i commuting, their product I). Throws MalformedSigma
/// naming the first offending matrix.
void requireWellFormedSigma(const SigmaData& s, const Tolerances& tol = {});

/// The three pencil-commutation/partition conditions plus the sampled product
/// identity prod Phi_i(z) = z I on circles |z| = 0.5 and |z| = 1.
SigmaValidationReport validateSigma(const SigmaData& s, const Tolerances& tol = {},
                                    std::size_t zSamples = 32);

/// Phi_i(z) = U_i P_i^perp + z U_i P_i; i is zero-based here.
ComplexMatrix pencil(const SigmaData& s, std::size_t i, Complex z);

/// Joint eigenvalues of (Phi_1(z), ..., Phi_n(z)) as classified variety points.
std::vector<VarietyPoint> fiber(const SigmaData& s, Complex z, const Tolerances& tol = {},
                                std::uint64_t seed = 0x5eed);

/// Union of fibers over the polar grid {r e^{2 pi i k / angles}}.
VarietyPointCloud traceVariety(const SigmaData& s, const std::vector<double>& radii,
                               std::size_t anglesPerRadius, const Tolerances& tol = {},
                               std::uint64_t seed = 0x5eed);

/// Distinguished-set certificate: the cloud must meet the open polydisc, every
/// boundary fiber must lie on the n-torus with unitary pencils, and no point
/// may escape the closed polydisc.
DistinguishedCertificate certifyDistinguished(const SigmaData& s, const VarietyPointCloud& cloud,
                                              std::size_t boundaryAngles,
                                              const Tolerances& tol = {},
                                              std::uint64_t seed = 0x5eed);

}  // namespace distvar

#endif
