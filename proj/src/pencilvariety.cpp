// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/pencilvariety.hpp"

#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "distvar/numkernel.hpp"

namespace distvar {

namespace {

const double kTwoPi = 2.0 * std::acos(-1.0);

ComplexMatrix perp(const ComplexMatrix& p) { return ComplexMatrix::identity(p.rows()) - p; }

// Seed for the fiber at z, stable across grid orders.
std::uint64_t fiberSeed(std::uint64_t seed, Complex z) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(z.real());
    mix(z.imag());
    return h;
}

}  // namespace

const char* toString(PointClass c) {
    switch (c) {
        case PointClass::Interior: return "interior";
        case PointClass::Boundary: return "boundary";
        case PointClass::Exterior: return "exterior";
    }
    return "?";
}

PointClass pointClassFromString(const std::string& s) {
    if (s == "interior") return PointClass::Interior;
    if (s == "boundary") return PointClass::Boundary;
    if (s == "exterior") return PointClass::Exterior;
    throw Error(Errc::ParseError, "unknown point class '" + s + "'");
}

void requireWellFormedSigma(const SigmaData& s, const Tolerances& tol) {
    tol.validate();
    if (s.n == 0 || s.d == 0)
        throw Error(Errc::MalformedSigma, "sigma: n and d must be positive");
    if (s.projections.size() != s.n || s.unitaries.size() != s.n)
        throw Error(Errc::MalformedSigma, "sigma: expected n projections and n unitaries");
    const ComplexMatrix id = ComplexMatrix::identity(s.d);
    for (std::size_t i = 0; i < s.n; ++i) {
        const ComplexMatrix& p = s.projections[i];
        const ComplexMatrix& u = s.unitaries[i];
        if (!p.isSquare() || p.rows() != s.d || !u.isSquare() || u.rows() != s.d)
            throw Error(Errc::MalformedSigma,
                        "sigma: matrix " + std::to_string(i + 1) + " has wrong dimension");
        if ((p - p.adjoint()).maxAbs() > tol.structural || (p * p - p).maxAbs() > tol.structural)
            throw Error(Errc::MalformedSigma,
                        "sigma: P" + std::to_string(i + 1) + " is not an orthogonal projection");
        if ((u.adjoint() * u - id).maxAbs() > tol.structural)
            throw Error(Errc::MalformedSigma,
                        "sigma: U" + std::to_string(i + 1) + " is not unitary");
    }
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = i + 1; j < s.n; ++j)
            if ((s.unitaries[i] * s.unitaries[j] - s.unitaries[j] * s.unitaries[i]).maxAbs() >
                tol.structural)
                throw Error(Errc::MalformedSigma,
                            "sigma: U" + std::to_string(i + 1) + " and U" + std::to_string(j + 1) +
                                " do not commute");
    ComplexMatrix prod = ComplexMatrix::identity(s.d);
    for (const auto& u : s.unitaries) prod = prod * u;
    if ((prod - id).maxAbs() > tol.structural)
        throw Error(Errc::MalformedSigma, "sigma: product of unitaries is not the identity");
}

std::string SigmaValidationReport::toJson() const {
    nlohmann::json j;
    j["condition1_defect"] = condition1Defect;
    j["condition2_defect"] = condition2Defect;
    j["condition3_defect"] = condition3Defect;
    j["product_identity_defect"] = productIdentityDefect;
    j["verdict"] = pass ? "pass" : "fail";
    return j.dump(2);
}

SigmaValidationReport validateSigma(const SigmaData& s, const Tolerances& tol,
                                    std::size_t zSamples) {
    requireWellFormedSigma(s, tol);
    SigmaValidationReport rep;

    for (std::size_t i = 0; i < s.n; ++i) {
        ComplexMatrix ai = perp(s.projections[i]) * s.unitaries[i].adjoint();
        ComplexMatrix bi = s.unitaries[i] * s.projections[i];
        for (std::size_t j = i + 1; j < s.n; ++j) {
            ComplexMatrix aj = perp(s.projections[j]) * s.unitaries[j].adjoint();
            ComplexMatrix bj = s.unitaries[j] * s.projections[j];
            rep.condition1Defect =
                std::max(rep.condition1Defect, (ai * aj - aj * ai).frobeniusNorm());
            rep.condition2Defect =
                std::max(rep.condition2Defect, (bi * bj - bj * bi).frobeniusNorm());
        }
    }

    // P_1 + U_1* P_2 U_1 + U_1* U_2* P_3 U_2 U_1 + ... = I.
    ComplexMatrix sum(s.d, s.d);
    ComplexMatrix w = ComplexMatrix::identity(s.d);
    for (std::size_t i = 0; i < s.n; ++i) {
        sum += w.adjoint() * s.projections[i] * w;
        w = s.unitaries[i] * w;
    }
    rep.condition3Defect = (sum - ComplexMatrix::identity(s.d)).frobeniusNorm();

    const ComplexMatrix id = ComplexMatrix::identity(s.d);
    for (double r : {0.5, 1.0}) {
        for (std::size_t k = 0; k < zSamples; ++k) {
            Complex z = std::polar(r, kTwoPi * k / std::max<std::size_t>(zSamples, 1));
            ComplexMatrix prod = id;
            for (std::size_t i = 0; i < s.n; ++i) prod = prod * pencil(s, i, z);
            rep.productIdentityDefect =
                std::max(rep.productIdentityDefect, (prod - z * id).frobeniusNorm());
        }
    }

    rep.pass = rep.condition1Defect <= tol.structural && rep.condition2Defect <= tol.structural &&
               rep.condition3Defect <= tol.structural &&
               rep.productIdentityDefect <= tol.structural;
    return rep;
}

ComplexMatrix pencil(const SigmaData& s, std::size_t i, Complex z) {
    if (i >= s.n) throw Error(Errc::IndexOutOfRange, "pencil: index out of range");
    return s.unitaries[i] * perp(s.projections[i]) + z * (s.unitaries[i] * s.projections[i]);
}

std::vector<VarietyPoint> fiber(const SigmaData& s, Complex z, const Tolerances& tol,
                                std::uint64_t seed) {
    tol.validate();
    std::vector<ComplexMatrix> pencils(s.n);
    for (std::size_t i = 0; i < s.n; ++i) pencils[i] = pencil(s, i, z);

    CommutingTuple t;
    t.matrices = std::move(pencils);
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t j = i + 1; j < s.n; ++j)
            t.commutatorDefect = std::max(
                t.commutatorDefect,
                (t.matrices[i] * t.matrices[j] - t.matrices[j] * t.matrices[i]).frobeniusNorm());
    if (t.commutatorDefect > tol.structural * std::max(1.0, std::abs(z)))
        throw Error(Errc::NotCommutingAtZ, "fiber: pencils do not commute at z; sigma is invalid");

    auto joints = jointEigenvalues(t, tol, fiberSeed(seed, z));
    std::vector<VarietyPoint> out;
    out.reserve(joints.size());
    for (auto& w : joints) {
        VarietyPoint p;
        p.z = z;
        p.coordinates = std::move(w.values);
        p.witnessResidual = w.witnessResidual;
        Complex prod{1.0, 0.0};
        double maxMod = 0.0;
        for (const Complex& c : p.coordinates) {
            prod *= c;
            maxMod = std::max(maxMod, std::abs(c));
        }
        if (std::abs(prod - z) > tol.spectral * std::max(1.0, std::abs(z)))
            throw Error(Errc::GenericCombinationFailure,
                        "fiber: coordinate product does not reproduce the base point");
        if (maxMod < 1.0 - tol.spectral)
            p.classification = PointClass::Interior;
        else if (maxMod <= 1.0 + tol.spectral)
            p.classification = PointClass::Boundary;
        else
            p.classification = PointClass::Exterior;
        out.push_back(std::move(p));
    }
    return out;
}

VarietyPointCloud traceVariety(const SigmaData& s, const std::vector<double>& radii,
                               std::size_t anglesPerRadius, const Tolerances& tol,
                               std::uint64_t seed) {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0.0 || radii[i] > 1.0)
            throw Error(Errc::InvalidArgument, "traceVariety: radii must lie in (0, 1]");
        if (i > 0 && radii[i] < radii[i - 1])
            throw Error(Errc::InvalidArgument, "traceVariety: radii must be sorted ascending");
    }
    VarietyPointCloud cloud;
    cloud.n = s.n;
    cloud.grid = "polar r=" + std::to_string(radii.size()) + " x angles=" +
                 std::to_string(anglesPerRadius);
    for (double r : radii) {
        for (std::size_t k = 0; k < anglesPerRadius; ++k) {
            Complex z = std::polar(r, kTwoPi * k / anglesPerRadius);
            for (auto& p : fiber(s, z, tol, seed)) cloud.points.push_back(std::move(p));
        }
    }
    return cloud;
}

std::string DistinguishedCertificate::toJson() const {
    nlohmann::json j;
    j["interior_nonempty"] = interiorNonEmpty;
    j["exits_through_torus"] = exitsThroughTorus;
    j["exterior_violations"] = exteriorViolations;
    j["interior_points"] = interiorCount;
    j["boundary_points"] = boundaryCount;
    j["boundary_angles"] = boundaryAngles;
    j["max_boundary_coordinate_defect"] = maxBoundaryCoordinateDefect;
    j["max_boundary_unitarity_defect"] = maxBoundaryUnitarityDefect;
    j["verdict"] = pass ? "pass" : "fail";
    return j.dump(2);
}

DistinguishedCertificate certifyDistinguished(const SigmaData& s, const VarietyPointCloud& cloud,
                                              std::size_t boundaryAngles, const Tolerances& tol,
                                              std::uint64_t seed) {
    tol.validate();
    if (cloud.points.empty() && boundaryAngles == 0)
        throw Error(Errc::EmptyCloud, "certifyDistinguished: empty cloud and no boundary angles");

    DistinguishedCertificate cert;
    cert.boundaryAngles = boundaryAngles;
    for (const auto& p : cloud.points) {
        switch (p.classification) {
            case PointClass::Interior: ++cert.interiorCount; break;
            case PointClass::Boundary: ++cert.boundaryCount; break;
            case PointClass::Exterior: ++cert.exteriorViolations; break;
        }
        for (const Complex& c : p.coordinates)
            if (std::abs(c) > 1.0 + tol.spectral && p.classification != PointClass::Exterior)
                ++cert.exteriorViolations;
    }
    cert.interiorNonEmpty = cert.interiorCount > 0;

    const ComplexMatrix id = ComplexMatrix::identity(s.d);
    bool torus = boundaryAngles > 0;
    for (std::size_t k = 0; k < boundaryAngles; ++k) {
        Complex z = std::polar(1.0, kTwoPi * k / boundaryAngles);
        for (std::size_t i = 0; i < s.n; ++i) {
            ComplexMatrix phi = pencil(s, i, z);
            double defect = (phi.adjoint() * phi - id).frobeniusNorm();
            cert.maxBoundaryUnitarityDefect = std::max(cert.maxBoundaryUnitarityDefect, defect);
            if (defect > tol.structural) torus = false;
        }
        for (const auto& p : fiber(s, z, tol, seed)) {
            for (const Complex& c : p.coordinates) {
                double defect = std::abs(std::abs(c) - 1.0);
                cert.maxBoundaryCoordinateDefect =
                    std::max(cert.maxBoundaryCoordinateDefect, defect);
                if (defect > tol.spectral) torus = false;
            }
        }
    }
    cert.exitsThroughTorus = torus;
    cert.pass = cert.interiorNonEmpty && cert.exitsThroughTorus && cert.exteriorViolations == 0;
    return cert;
}

}  // namespace distvar
