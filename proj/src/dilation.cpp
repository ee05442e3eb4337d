// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "distvar/numkernel.hpp"

namespace distvar {

namespace {

// sigma matrix acting on the full space through an orthonormal frame.
ComplexMatrix lift(const ComplexMatrix& frame, const ComplexMatrix& x) {
    return frame * x * frame.adjoint();
}

ComplexMatrix nearestProjection(const ComplexMatrix& k) {
    HermitianEig e = hermitianEig(k);
    const std::size_t d = k.rows();
    ComplexMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Complex s{};
            for (std::size_t l = 0; l < d; ++l)
                if (e.values[l] >= 0.5) s += e.vectors(i, l) * std::conj(e.vectors(j, l));
            p(i, j) = s;
        }
    return p;
}

}  // namespace

ContractionTuple makeContractionTuple(std::vector<ComplexMatrix> t, const Tolerances& tol) {
    tol.validate();
    if (t.empty()) throw Error(Errc::InvalidArgument, "contraction tuple: need at least one matrix");
    ContractionTuple out;
    out.m = t.front().rows();
    for (const auto& ti : t) {
        if (!ti.isSquare() || ti.rows() != out.m)
            throw Error(Errc::DimensionMismatch, "contraction tuple: dimensions must agree");
        if (operatorNorm(ti) > 1.0 + tol.structural)
            throw Error(Errc::NotAContraction, "contraction tuple: matrix has norm above one");
    }
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j)
            out.commutatorDefect =
                std::max(out.commutatorDefect, (t[i] * t[j] - t[j] * t[i]).frobeniusNorm());
    if (out.commutatorDefect > tol.structural)
        throw Error(Errc::NotCommuting, "contraction tuple: matrices do not commute");
    out.product = ComplexMatrix::identity(out.m);
    for (const auto& ti : t) out.product = out.product * ti;
    out.t = std::move(t);
    return out;
}

DefectData defects(const ContractionTuple& t, const Tolerances& tol) {
    tol.validate();
    const ComplexMatrix id = ComplexMatrix::identity(t.m);
    DefectData d;
    d.dT = psdSqrt(id - t.product.adjoint() * t.product, tol);
    d.dTstar = psdSqrt(id - t.product * t.product.adjoint(), tol);

    auto frameOf = [&](const ComplexMatrix& dd, std::size_t& dim) {
        HermitianEig e = hermitianEig(dd);
        double top = e.values.empty() ? 0.0 : std::max(0.0, e.values.back());
        double cutoff = tol.rank * std::max(1.0, top);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < e.values.size(); ++i)
            if (e.values[i] > cutoff) keep.push_back(i);
        dim = keep.size();
        ComplexMatrix frame(t.m, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t i = 0; i < t.m; ++i) frame(i, j) = e.vectors(i, keep[j]);
        return frame;
    };
    d.rangeBasisT = frameOf(d.dT, d.defectDim);
    d.rangeBasisTstar = frameOf(d.dTstar, d.defectStarDim);
    return d;
}

bool isPureC0(const ComplexMatrix& t, const Tolerances& tol) {
    tol.validate();
    if (!t.isSquare()) throw Error(Errc::NonSquare, "isPureC0: matrix must be square");
    if (operatorNorm(t) > 1.0 + tol.structural)
        throw Error(Errc::NotAContraction, "isPureC0: matrix is not a contraction");
    return spectralRadius(t) < 1.0 - tol.spectral;
}

std::string FundamentalEqReport::toJson() const {
    nlohmann::json j;
    j["residuals"] = residuals;
    if (!defectSqResiduals.empty()) j["defect_square_residuals"] = defectSqResiduals;
    j["verdict"] = pass ? "pass" : "fail";
    return j.dump(2);
}

FundamentalEqReport checkFundamentalEqStar(const ContractionTuple& t, const SigmaData& s,
                                           const DefectData& def, const Tolerances& tol) {
    tol.validate();
    if (s.d != def.defectStarDim)
        throw Error(Errc::DimensionMismatch,
                    "fundamental equation: sigma order differs from T* defect rank");
    const ComplexMatrix& frame = def.rangeBasisTstar;
    const ComplexMatrix& d = def.dTstar;
    const ComplexMatrix tStar = t.product.adjoint();
    const ComplexMatrix id = ComplexMatrix::identity(s.d);

    FundamentalEqReport rep;
    rep.pass = true;
    for (std::size_t i = 0; i < s.n; ++i) {
        ComplexMatrix a = (id - s.projections[i]) * s.unitaries[i].adjoint();
        ComplexMatrix b = s.projections[i] * s.unitaries[i].adjoint();
        ComplexMatrix res =
            d * t.t[i].adjoint() - lift(frame, a) * d - lift(frame, b) * d * tStar;
        double r = res.frobeniusNorm();
        rep.residuals.push_back(r);
        if (r > tol.spectral * static_cast<double>(t.m)) rep.pass = false;
    }
    return rep;
}

FundamentalEqReport checkFundamentalEqUnimain(const ContractionTuple& t, const SigmaData& s,
                                              const DefectData& def, const Tolerances& tol) {
    tol.validate();
    if (s.d != def.defectDim)
        throw Error(Errc::DimensionMismatch,
                    "fundamental equation: sigma order differs from T defect rank");
    const ComplexMatrix& frame = def.rangeBasisT;
    const ComplexMatrix& d = def.dT;
    const ComplexMatrix idM = ComplexMatrix::identity(t.m);
    const ComplexMatrix idD = ComplexMatrix::identity(s.d);

    FundamentalEqReport rep;
    rep.pass = true;
    for (std::size_t i = 0; i < s.n; ++i) {
        ComplexMatrix a = (idD - s.projections[i]) * s.unitaries[i].adjoint();
        ComplexMatrix b = s.projections[i] * s.unitaries[i].adjoint();
        ComplexMatrix res = d * t.t[i] - lift(frame, a) * d - lift(frame, b) * d * t.product;
        double r = res.frobeniusNorm();
        rep.residuals.push_back(r);
        if (r > tol.spectral * static_cast<double>(t.m)) rep.pass = false;

        ComplexMatrix upu = s.unitaries[i] * s.projections[i] * s.unitaries[i].adjoint();
        ComplexMatrix res4 = d * lift(frame, upu) * d - (idM - t.t[i].adjoint() * t.t[i]);
        double r4 = res4.frobeniusNorm();
        rep.defectSqResiduals.push_back(r4);
        if (r4 > tol.spectral * static_cast<double>(t.m)) rep.pass = false;
    }
    return rep;
}

SigmaSolveResult solveSigmaStar(const ContractionTuple& t, const DefectData& def,
                                const Tolerances& tol, std::size_t maxIter) {
    tol.validate();
    SigmaSolveResult out;
    if (!isPureC0(t.product, tol)) {
        throw Error(Errc::NotPure, "solveSigmaStar: product is not a pure contraction");
    }
    const std::size_t d = def.defectStarDim;
    if (d == 0) throw Error(Errc::NotPure, "solveSigmaStar: trivial defect space");
    const std::size_t n = t.t.size();
    const std::size_t m = t.m;

    SigmaData sigma;
    sigma.n = n;
    sigma.d = d;
    sigma.projections.resize(n);
    sigma.unitaries.resize(n);

    if (n == 1) {
        // The partition condition forces P_1 = I and U_1 = I; the fundamental
        // equation then holds identically.
        sigma.projections[0] = ComplexMatrix::identity(d);
        sigma.unitaries[0] = ComplexMatrix::identity(d);
        out.residualHistory.push_back(0.0);
    } else {
        const ComplexMatrix& frame = def.rangeBasisTstar;
        ComplexMatrix x = frame.adjoint() * def.dTstar;                      // d x m
        ComplexMatrix y = frame.adjoint() * def.dTstar * t.product.adjoint();  // d x m

        // Constraint matrix M = [X; Y] and the projector onto its left range.
        ComplexMatrix bigM(2 * d, m);
        bigM.setBlock(0, 0, x);
        bigM.setBlock(d, 0, y);
        Svd ms = svd(bigM);
        double smax = ms.sigma.empty() ? 0.0 : ms.sigma[0];
        double cutoff = std::max(1e-12 * smax, 1e-300);
        std::size_t rank = 0;
        for (double sv : ms.sigma)
            if (sv > cutoff) ++rank;
        ComplexMatrix ur = ms.u.block(0, 0, 2 * d, rank);
        ComplexMatrix rangeProj = ur * ur.adjoint();  // 2d x 2d

        const double passBound = tol.spectral * static_cast<double>(m);
        for (std::size_t i = 0; i < n; ++i) {
            ComplexMatrix c = frame.adjoint() * def.dTstar * t.t[i].adjoint();  // d x m
            ComplexMatrix z0 = solveLeastSquaresRight(bigM, c);                 // d x 2d
            ComplexMatrix z = z0;
            double best = std::numeric_limits<double>::infinity();
            ComplexMatrix bestA, bestB;
            for (std::size_t it = 0; it < maxIter; ++it) {
                ComplexMatrix a = z.block(0, 0, d, d);
                ComplexMatrix b = z.block(0, d, d, d);
                // Structure projection: unitary polar factor and a clean
                // projection split.
                ComplexMatrix w = nearestUnitary(a + b);
                ComplexMatrix p = nearestProjection(b * w.adjoint());
                ComplexMatrix bS = p * w;
                ComplexMatrix aS = w - bS;
                double res = (aS * x + bS * y - c).frobeniusNorm();
                out.residualHistory.push_back(res);
                if (res < best) {
                    best = res;
                    bestA = aS;
                    bestB = bS;
                }
                if (res <= 0.1 * passBound) break;
                // Project back onto the affine solution set of the equation:
                // Z = Z0 + (Zs - Z0)(I - range projector).
                ComplexMatrix zs(d, 2 * d);
                zs.setBlock(0, 0, aS);
                zs.setBlock(0, d, bS);
                z = z0 + (zs - z0) * (ComplexMatrix::identity(2 * d) - rangeProj);
            }
            if (best > passBound) {
                out.failureReason = "equation residual did not converge for index " +
                                    std::to_string(i + 1);
                return out;
            }
            ComplexMatrix w = bestA + bestB;
            sigma.unitaries[i] = w.adjoint();
            sigma.projections[i] = bestB * w.adjoint();
        }
    }

    // Verification gate: never return an unverified sigma.
    try {
        SigmaValidationReport v = validateSigma(sigma, tol);
        if (!v.pass) {
            out.failureReason = "recovered sigma failed validation";
            return out;
        }
    } catch (const Error& e) {
        out.failureReason = std::string("recovered sigma malformed: ") + e.what();
        return out;
    }
    FundamentalEqReport feq = checkFundamentalEqStar(t, sigma, def, tol);
    if (!feq.pass) {
        out.failureReason = "recovered sigma failed the fundamental equation";
        return out;
    }
    out.sigma = std::move(sigma);
    return out;
}

ToeplitzModel buildToeplitzModel(const SigmaData& s, std::size_t n, const Tolerances& tol) {
    tol.validate();
    if (n < 2) throw Error(Errc::InvalidArgument, "toeplitz model: truncation degree must be >= 2");
    SigmaValidationReport v = validateSigma(s, tol);
    if (!v.pass) throw Error(Errc::InvalidSigma, "toeplitz model: sigma failed validation");

    ComplexMatrix idN = ComplexMatrix::identity(n);
    ComplexMatrix shift(n, n);
    for (std::size_t k = 0; k + 1 < n; ++k) shift(k + 1, k) = 1.0;

    ToeplitzModel model;
    model.sigma = s;
    model.truncationDegree = n;
    const ComplexMatrix idD = ComplexMatrix::identity(s.d);
    for (std::size_t i = 0; i < s.n; ++i) {
        ComplexMatrix a = s.unitaries[i] * (idD - s.projections[i]);
        ComplexMatrix b = s.unitaries[i] * s.projections[i];
        model.blocks.push_back(kron(idN, a) + kron(shift, b));
    }
    return model;
}

ComplexMatrix evalMatPoly(const MatPoly& p, const std::vector<Complex>& z) {
    if (p.terms.empty()) throw Error(Errc::InvalidArgument, "empty polynomial");
    if (z.size() != p.vars)
        throw Error(Errc::DimensionMismatch, "polynomial arity differs from point dimension");
    const std::size_t q = p.terms.front().coeff.rows();
    ComplexMatrix acc(q, q);
    for (const auto& term : p.terms) {
        Complex mono{1.0, 0.0};
        for (std::size_t k = 0; k < p.vars; ++k)
            for (unsigned e = 0; e < term.exponents[k]; ++e) mono *= z[k];
        acc += mono * term.coeff;
    }
    return acc;
}

namespace {

bool gradedLexLess(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

ComplexMatrix evalMatPoly(const MatPoly& p, const std::vector<ComplexMatrix>& t) {
    if (p.terms.empty()) throw Error(Errc::InvalidArgument, "empty polynomial");
    if (t.size() != p.vars)
        throw Error(Errc::DimensionMismatch, "polynomial arity differs from tuple length");
    const std::size_t m = t.front().rows();
    const std::size_t q = p.terms.front().coeff.rows();

    std::vector<unsigned> maxExp(p.vars, 0);
    for (const auto& term : p.terms) {
        if (term.exponents.size() != p.vars || term.coeff.rows() != q || term.coeff.cols() != q)
            throw Error(Errc::ShapeError, "inconsistent polynomial term");
        for (std::size_t k = 0; k < p.vars; ++k) maxExp[k] = std::max(maxExp[k], term.exponents[k]);
    }
    std::vector<std::vector<ComplexMatrix>> powers(p.vars);
    for (std::size_t k = 0; k < p.vars; ++k) {
        powers[k].push_back(ComplexMatrix::identity(m));
        for (unsigned e = 1; e <= maxExp[k]; ++e) powers[k].push_back(powers[k].back() * t[k]);
    }

    std::vector<const MatPolyTerm*> sorted;
    for (const auto& term : p.terms) sorted.push_back(&term);
    std::stable_sort(sorted.begin(), sorted.end(), [](const MatPolyTerm* a, const MatPolyTerm* b) {
        return gradedLexLess(a->exponents, b->exponents);
    });

    ComplexMatrix acc(q * m, q * m);
    for (const MatPolyTerm* term : sorted) {
        ComplexMatrix mono = powers[0][term->exponents[0]];
        for (std::size_t k = 1; k < p.vars; ++k) mono = mono * powers[k][term->exponents[k]];
        acc += kron(term->coeff, mono);
    }
    return acc;
}

std::string VnReport::toJson() const {
    nlohmann::json j;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : polys) {
        nlohmann::json e;
        e["name"] = r.name;
        e["lhs"] = r.lhs;
        e["rhs"] = r.rhs;
        e["margin"] = r.margin;
        e["satisfied"] = r.satisfied;
        arr.push_back(e);
    }
    j["polynomials"] = arr;
    j["boundary_sampled"] = boundarySampled;
    j["verdict"] = allSatisfied ? "pass" : "fail";
    return j.dump(2);
}

VnReport vnCheck(const ContractionTuple& t, const VarietyPointCloud& cloud,
                 const std::vector<MatPoly>& polys, const Tolerances& tol) {
    tol.validate();
    if (cloud.points.empty()) throw Error(Errc::EmptyCloud, "vnCheck: empty cloud");
    VnReport rep;
    for (const auto& p : cloud.points)
        if (p.classification == PointClass::Boundary) rep.boundarySampled = true;

    rep.allSatisfied = true;
    for (const MatPoly& p : polys) {
        VnPolyReport r;
        r.name = p.name;
        r.lhs = operatorNorm(evalMatPoly(p, t.t));
        r.rhs = 0.0;
        for (const auto& pt : cloud.points)
            r.rhs = std::max(r.rhs, operatorNorm(evalMatPoly(p, pt.coordinates)));
        r.margin = r.rhs - r.lhs;
        r.satisfied = r.margin >= -tol.spectral;
        if (!r.satisfied) rep.allSatisfied = false;
        rep.polys.push_back(std::move(r));
    }
    return rep;
}

}  // namespace distvar
