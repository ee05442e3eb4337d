// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_DILATION_HPP
#define DISTVAR_DILATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distvar/matrix.hpp"
#include "distvar/pencilvariety.hpp"

namespace distvar {

/// Commuting contractions T_1..T_n with their cached product.
struct ContractionTuple {
    std::size_t m = 0;  // space dimension
    std::vector<ComplexMatrix> t;
    ComplexMatrix product;
    double commutatorDefect = 0.0;
};

ContractionTuple makeContractionTuple(std::vector<ComplexMatrix> t, const Tolerances& tol = {});

/// Defect operators D_T = (I - T*T)^{1/2}, D_{T*} = (I - TT*)^{1/2} of the
/// product, with numerical ranks and orthonormal range frames.
struct DefectData {
    ComplexMatrix dT;
    ComplexMatrix dTstar;
    std::size_t defectDim = 0;
    std::size_t defectStarDim = 0;
    ComplexMatrix rangeBasisT;      // m x defectDim, orthonormal columns
    ComplexMatrix rangeBasisTstar;  // m x defectStarDim
};

DefectData defects(const ContractionTuple& t, const Tolerances& tol = {});

/// Pure (C.0) test: spectral radius < 1 - tol.spectral, exact for matrices.
bool isPureC0(const ComplexMatrix& t, const Tolerances& tol = {});

struct FundamentalEqReport {
    std::vector<double> residuals;          // per index i
    std::vector<double> defectSqResiduals;  // only for the D_T variant, condition (4)
    bool pass = false;

    std::string toJson() const;
};

/// Residuals of D_{T*} T_i* = P_i^perp U_i* D_{T*} + P_i U_i* D_{T*} T*, with
/// sigma acting on the defect space through the T* range frame.
FundamentalEqReport checkFundamentalEqStar(const ContractionTuple& t, const SigmaData& s,
                                           const DefectData& def, const Tolerances& tol = {});

/// Residuals of D_T T_i = P_i^perp U_i* D_T + P_i U_i* D_T T and of
/// D_T U_i P_i U_i* D_T = D_{T_i}^2, on the D_T frame.
FundamentalEqReport checkFundamentalEqUnimain(const ContractionTuple& t, const SigmaData& s,
                                              const DefectData& def, const Tolerances& tol = {});

struct SigmaSolveResult {
    std::optional<SigmaData> sigma;      // empty on failure; never unverified
    std::vector<double> residualHistory; // equation residual per iteration
    std::string failureReason;
};

/// Best-effort recovery of (P_i, U_i) on the T* defect space from the
/// fundamental equations: per-index least squares followed by alternating
/// projection onto the structured set (unitary U_i, projection split).
/// A returned sigma always passes validateSigma and checkFundamentalEqStar.
SigmaSolveResult solveSigmaStar(const ContractionTuple& t, const DefectData& def,
                                const Tolerances& tol = {}, std::size_t maxIter = 200);

/// Truncated Toeplitz model of the pencil tuple on degrees 0..N-1:
/// V_i = I_N (x) U_i P_i^perp + S_N (x) U_i P_i.
struct ToeplitzModel {
    SigmaData sigma;
    std::size_t truncationDegree = 0;  // N
    std::vector<ComplexMatrix> blocks;
};

ToeplitzModel buildToeplitzModel(const SigmaData& s, std::size_t n, const Tolerances& tol = {});

/// A polynomial in n commuting variables with matrix coefficients.
struct MatPolyTerm {
    std::vector<unsigned> exponents;
    ComplexMatrix coeff;
};

struct MatPoly {
    std::string name;
    std::size_t vars = 0;
    std::vector<MatPolyTerm> terms;
};

/// Evaluation at a scalar point (sum of coeff * z^alpha).
ComplexMatrix evalMatPoly(const MatPoly& p, const std::vector<Complex>& z);

/// Evaluation at a commuting matrix tuple: sum of coeff (x) T^alpha, fixed
/// graded-lexicographic term order.
ComplexMatrix evalMatPoly(const MatPoly& p, const std::vector<ComplexMatrix>& t);

struct VnPolyReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool satisfied = false;
};

struct VnReport {
    std::vector<VnPolyReport> polys;
    bool boundarySampled = false;
    bool allSatisfied = false;

    std::string toJson() const;
};

/// von Neumann test: ||p(T)|| against the sampled sup of ||p|| over the cloud.
/// A failed verdict is grid evidence, not proof.
VnReport vnCheck(const ContractionTuple& t, const VarietyPointCloud& cloud,
                 const std::vector<MatPoly>& polys, const Tolerances& tol = {});

}  // namespace distvar

#endif
