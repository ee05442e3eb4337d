// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/symdisc.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "distvar/jointspec.hpp"
#include "distvar/numkernel.hpp"

namespace distvar {

namespace {

const double kTwoPi = 2.0 * std::acos(-1.0);

// Ascending coefficients of the monic polynomial with the given roots.
std::vector<Complex> monicFromRoots(const std::vector<Complex>& roots) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= r * c[j];
        }
        c = std::move(next);
    }
    return c;
}

// Ascending coefficients c[0..n-1] of t^n - s1 t^{n-1} + ... + (-1)^n p.
std::vector<Complex> monicCoeffs(const SymPoint& q) {
    const std::size_t n = q.degree();
    std::vector<Complex> c(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t i = n - j;                       // coefficient of t^j carries s_i
        Complex si = (i == n) ? q.p : q.s[i - 1];
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        c[j] = sign * si;
    }
    return c;
}

void requireFPencilShape(const FPencilData& f) {
    if (f.n < 2) throw Error(Errc::InvalidArgument, "f-pencil: need n >= 2");
    if (f.f.size() != f.n - 1)
        throw Error(Errc::DimensionMismatch, "f-pencil: expected n-1 matrices");
    const std::size_t d = f.f.front().rows();
    for (const auto& m : f.f)
        if (!m.isSquare() || m.rows() != d)
            throw Error(Errc::DimensionMismatch, "f-pencil: matrices must be square, equal order");
}

std::vector<ComplexMatrix> lambdaPencils(const FPencilData& f, Complex p) {
    const std::size_t m = f.f.size();
    std::vector<ComplexMatrix> mats(m);
    for (std::size_t i = 0; i < m; ++i) mats[i] = f.f[i].adjoint() + p * f.f[m - 1 - i];
    return mats;
}

}  // namespace

const char* toString(GnMembership m) {
    switch (m) {
        case GnMembership::Inside: return "inside";
        case GnMembership::BoundaryBand: return "boundary-band";
        case GnMembership::Outside: return "outside";
    }
    return "?";
}

SymPoint symmetrize(const std::vector<Complex>& z) {
    const std::size_t n = z.size();
    std::vector<Complex> c = monicFromRoots(z);  // ascending, c[n] = 1
    SymPoint q;
    q.s.resize(n > 0 ? n - 1 : 0);
    for (std::size_t i = 1; i < n; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        q.s[i - 1] = sign * c[n - i];
    }
    if (n > 0) {
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        q.p = sign * c[0];
    }
    return q;
}

std::vector<Complex> preimage(const SymPoint& q, const Tolerances& tol) {
    std::vector<Complex> roots = rootsOfMonic(monicCoeffs(q), tol);
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        double ma = std::abs(a);
        double mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) return ma > mb;
        return std::arg(a) < std::arg(b);
    });
    return roots;
}

GnVerdict inGn(const SymPoint& q, const Tolerances& tol) {
    tol.validate();
    GnVerdict v;
    for (const Complex& r : preimage(q, tol)) v.maxRootModulus = std::max(v.maxRootModulus, std::abs(r));
    if (v.maxRootModulus < 1.0 - tol.spectral)
        v.membership = GnMembership::Inside;
    else if (v.maxRootModulus <= 1.0 + tol.spectral)
        v.membership = GnMembership::BoundaryBand;
    else
        v.membership = GnMembership::Outside;
    return v;
}

std::string FPencilReport::toJson() const {
    nlohmann::json j;
    j["commutator_defect"] = commutatorDefect;
    j["cross_relation_defect"] = crossRelationDefect;
    j["condition1"] = conditionOnePass ? "pass" : "fail";
    j["spectrum_in_gn"] = spectrumInGn;
    nlohmann::json viol = nlohmann::json::array();
    for (const Complex& z : violatingZ) viol.push_back({z.real(), z.imag()});
    j["violating_z"] = viol;
    j["fiber_finiteness_heuristic"] = fiberFinitenessHeuristic;
    j["verdict"] = pass ? "pass" : "fail";
    return j.dump(2);
}

FPencilReport validateFPencil(const FPencilData& f, std::size_t zSamples, const Tolerances& tol,
                              std::uint64_t seed) {
    tol.validate();
    requireFPencilShape(f);
    FPencilReport rep;
    const std::size_t m = f.f.size();  // n - 1

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            rep.commutatorDefect = std::max(
                rep.commutatorDefect, (f.f[i] * f.f[j] - f.f[j] * f.f[i]).frobeniusNorm());
            // [F_i*, F_{n-j}] = [F_j*, F_{n-i}] with 1-based indices: F_{n-j}
            // is f[m - 1 - j] here.
            ComplexMatrix lhs = f.f[i].adjoint() * f.f[m - 1 - j] - f.f[m - 1 - j] * f.f[i].adjoint();
            ComplexMatrix rhs = f.f[j].adjoint() * f.f[m - 1 - i] - f.f[m - 1 - i] * f.f[j].adjoint();
            rep.crossRelationDefect = std::max(rep.crossRelationDefect, (lhs - rhs).frobeniusNorm());
        }
    }
    rep.conditionOnePass =
        rep.commutatorDefect <= tol.structural && rep.crossRelationDefect <= tol.structural;

    const std::size_t d = f.f.front().rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    for (double r : {0.25, 0.5, 0.75, 0.95}) {
        for (std::size_t k = 0; k < zSamples; ++k) {
            Complex z = std::polar(r, kTwoPi * k / std::max<std::size_t>(zSamples, 1));
            auto mats = lambdaPencils(f, z);
            mats.push_back(z * id);
            auto joints = jointEigenvalues(makeCommutingTuple(std::move(mats)), tol,
                                           seed ^ (k * 1315423911ULL + std::size_t(r * 100)));
            std::size_t distinct = 0;
            std::vector<std::vector<Complex>> seen;
            for (const auto& w : joints) {
                SymPoint q;
                q.s.assign(w.values.begin(), w.values.end() - 1);
                q.p = w.values.back();
                if (inGn(q, tol).membership == GnMembership::Outside) {
                    rep.spectrumInGn = false;
                    rep.violatingZ.push_back(z);
                }
                bool isNew = true;
                for (const auto& prev : seen) {
                    double dist = 0.0;
                    for (std::size_t c = 0; c < w.values.size(); ++c)
                        dist = std::max(dist, std::abs(prev[c] - w.values[c]));
                    if (dist < tol.spectral) isNew = false;
                }
                if (isNew) {
                    seen.push_back(w.values);
                    ++distinct;
                }
            }
            if (distinct > d) rep.fiberFinitenessHeuristic = false;
        }
    }
    rep.pass = rep.conditionOnePass && rep.spectrumInGn;
    return rep;
}

std::vector<LambdaPoint> traceLambda(const FPencilData& f, const std::vector<Complex>& pGrid,
                                     const Tolerances& tol, std::uint64_t seed) {
    tol.validate();
    requireFPencilShape(f);
    std::vector<LambdaPoint> out;
    std::uint64_t k = 0;
    for (const Complex& p : pGrid) {
        auto joints =
            jointEigenvalues(makeCommutingTuple(lambdaPencils(f, p)), tol, seed ^ (++k * 2654435761ULL));
        for (const auto& w : joints) {
            LambdaPoint lp;
            lp.q.s = w.values;
            lp.q.p = p;
            lp.witnessResidual = w.witnessResidual;
            out.push_back(std::move(lp));
        }
    }
    return out;
}

std::vector<VarietyPoint> pullbackToPolydisc(const std::vector<SymPoint>& points,
                                             const Tolerances& tol) {
    tol.validate();
    std::vector<VarietyPoint> out;
    out.reserve(points.size());
    for (const SymPoint& q : points) {
        VarietyPoint vp;
        vp.coordinates = preimage(q, tol);
        vp.z = q.p;
        double maxMod = 0.0;
        for (const Complex& c : vp.coordinates) maxMod = std::max(maxMod, std::abs(c));
        if (maxMod < 1.0 - tol.spectral)
            vp.classification = PointClass::Interior;
        else if (maxMod <= 1.0 + tol.spectral)
            vp.classification = PointClass::Boundary;
        else
            vp.classification = PointClass::Exterior;
        // Round-trip defect of the root solve stands in for a witness.
        SymPoint back = symmetrize(vp.coordinates);
        double res = std::abs(back.p - q.p);
        for (std::size_t i = 0; i < q.s.size(); ++i)
            res = std::max(res, std::abs(back.s[i] - q.s[i]));
        vp.witnessResidual = res;
        out.push_back(std::move(vp));
    }
    return out;
}

std::vector<Complex> bidiscDeterminantalFiber(const ComplexMatrix& a, Complex z,
                                              const Tolerances& tol) {
    tol.validate();
    if (!a.isSquare()) throw Error(Errc::NonSquare, "bidisc fiber: matrix must be square");
    const std::size_t d = a.rows();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    ComplexMatrix m0 = a.adjoint() - z * id;  // constant term
    ComplexMatrix m1 = z * a - id;            // w coefficient

    double scale = std::max({m0.maxAbs(), m1.maxAbs(), 1.0});
    // Identically singular pencil: det vanishes at generic probe points.
    const Complex probes[3] = {{0.7366, 0.3121}, {-1.2043, 0.5477}, {0.1931, -1.6125}};
    bool allZero = true;
    for (const Complex& w : probes) {
        Complex det = determinant(m0 + w * m1);
        if (std::abs(det) > 1e-10 * std::pow(scale, static_cast<double>(d))) allZero = false;
    }
    if (allZero)
        throw Error(Errc::SingularPencilEverywhere,
                    "bidisc fiber: determinant vanishes identically in w");

    SmallestSingular m1s = smallestSingular(m1);
    if (m1s.value > 1e-8 * scale) {
        // Regular pencil: w are the eigenvalues of -M1^{-1} M0.
        ComplexMatrix g = solveLinear(m1, m0);
        g *= Complex{-1.0, 0.0};
        return eigenvalues(g, tol);
    }

    // Near-singular w-coefficient: interpolate det(M0 + w M1) on scaled roots
    // of unity and take companion roots of the nonzero part.
    const std::size_t nNodes = d + 1;
    const double radius = 1.3;
    std::vector<Complex> vals(nNodes);
    for (std::size_t k = 0; k < nNodes; ++k) {
        Complex w = std::polar(radius, kTwoPi * k / nNodes);
        vals[k] = determinant(m0 + w * m1);
    }
    std::vector<Complex> coeff(nNodes);
    for (std::size_t j = 0; j < nNodes; ++j) {
        Complex sum{};
        for (std::size_t k = 0; k < nNodes; ++k)
            sum += vals[k] * std::polar(1.0, -kTwoPi * static_cast<double>(j * k) / nNodes);
        coeff[j] = sum / (static_cast<double>(nNodes) * std::pow(radius, static_cast<double>(j)));
    }
    double maxc = 0.0;
    for (const Complex& c : coeff) maxc = std::max(maxc, std::abs(c));
    std::size_t deg = 0;
    for (std::size_t j = 0; j < nNodes; ++j)
        if (std::abs(coeff[j]) > 1e-10 * maxc) deg = j;
    if (deg == 0) return {};  // nonzero constant: no finite roots
    std::vector<Complex> monic(deg);
    for (std::size_t j = 0; j < deg; ++j) monic[j] = coeff[j] / coeff[deg];
    return rootsOfMonic(monic, tol);
}

}  // namespace distvar
