// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#ifndef DISTVAR_NUMKERNEL_HPP
#define DISTVAR_NUMKERNEL_HPP

#include <vector>

#include "distvar/matrix.hpp"

namespace distvar {

struct SchurResult {
    ComplexMatrix q;  // unitary
    ComplexMatrix t;  // upper triangular, Q* A Q = T
};

/// Complex Schur decomposition via Hessenberg reduction and shifted QR.
SchurResult schur(const ComplexMatrix& a, const Tolerances& tol = {});

/// Eigenvalues of a general square matrix (diagonal of the Schur form).
std::vector<Complex> eigenvalues(const ComplexMatrix& a, const Tolerances& tol = {});

struct HermitianEig {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, orthonormal
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. The input is Hermitized ((A + A*)/2) before iterating.
HermitianEig hermitianEig(const ComplexMatrix& a);

/// Hermitian PSD square root; eigenvalues in [-tol.spectral, 0) are clamped
/// to zero so defect operators of near-isometries stay computable.
ComplexMatrix psdSqrt(const ComplexMatrix& m, const Tolerances& tol = {});

/// Numerical radius w(A): coarse 512-angle sweep of the largest eigenvalue
/// of (e^{i t}A + e^{-i t}A*)/2, then golden-section refinement of the best cell.
double numericalRadius(const ComplexMatrix& a, const Tolerances& tol = {});

double spectralRadius(const ComplexMatrix& a);

/// Largest singular value.
double operatorNorm(const ComplexMatrix& a);

struct Svd {
    ComplexMatrix u;            // rows(a) x k, orthonormal columns
    std::vector<double> sigma;  // descending, length k = min(rows, cols)
    ComplexMatrix v;            // cols(a) x k, orthonormal columns
};

/// Thin SVD via the Hermitian eigenproblem on the Gram matrix.
Svd svd(const ComplexMatrix& a);

/// Smallest singular value together with the achieving right-singular vector,
/// refined by one direct residual evaluation ||A v||.
struct SmallestSingular {
    double value;
    ComplexMatrix vector;  // cols(a) x 1 unit vector
};
SmallestSingular smallestSingular(const ComplexMatrix& a);

/// Solve A X = B by LU with partial pivoting.
ComplexMatrix solveLinear(const ComplexMatrix& a, const ComplexMatrix& b);

Complex determinant(const ComplexMatrix& a);

/// Least-squares / minimum-norm solve of X A = B for X via the SVD of A.
ComplexMatrix solveLeastSquaresRight(const ComplexMatrix& a, const ComplexMatrix& b,
                                     double rcond = 1e-12);

/// Roots of t^n + c[n-1] t^{n-1} + ... + c[0], computed as companion-matrix
/// eigenvalues.
std::vector<Complex> rootsOfMonic(const std::vector<Complex>& c, const Tolerances& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Nearest unitary in Frobenius norm (unitary polar factor).
ComplexMatrix nearestUnitary(const ComplexMatrix& a);

}  // namespace distvar

#endif
