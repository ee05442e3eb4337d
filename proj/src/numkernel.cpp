// distvar - distinguished sets in the polydisc via matrix pencils
// SPDX-License-Identifier: Apache-2.0

#include "distvar/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace distvar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void requireSquare(const ComplexMatrix& a, const char* who) {
    if (!a.isSquare()) throw Error(Errc::NonSquare, std::string(who) + ": matrix must be square");
}

// Unitary Givens pair: with r = [[c, s], [-conj(s), c]] acting on rows (k, k+1),
// r * [a; b] has zero second component.
struct Givens {
    double c;
    Complex s;
};

Givens makeGivens(Complex a, Complex b) {
    double absa = std::abs(a);
    double absb = std::abs(b);
    if (absb == 0.0) return {1.0, Complex{0.0, 0.0}};
    if (absa == 0.0) return {0.0, std::conj(b) / absb};
    double t = std::hypot(absa, absb);
    return {absa / t, (a / absa) * std::conj(b) / t};
}

void applyGivensLeft(ComplexMatrix& m, std::size_t k, const Givens& g) {
    const std::size_t n = m.cols();
    for (std::size_t j = 0; j < n; ++j) {
        Complex x = m(k, j);
        Complex y = m(k + 1, j);
        m(k, j) = g.c * x + g.s * y;
        m(k + 1, j) = -std::conj(g.s) * x + g.c * y;
    }
}

void applyGivensRightAdj(ComplexMatrix& m, std::size_t k, const Givens& g) {
    // Multiply by the adjoint rotation on the right: columns (k, k+1).
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        Complex x = m(i, k);
        Complex y = m(i, k + 1);
        m(i, k) = g.c * x + std::conj(g.s) * y;
        m(i, k + 1) = -g.s * x + g.c * y;
    }
}

void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
    const std::size_t n = h.rows();
    q = ComplexMatrix::identity(n);
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector zeroing h(k+2.., k).
        std::size_t m = n - k - 1;
        std::vector<Complex> v(m);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = h(k + 1 + i, k);
            xnorm += std::norm(v[i]);
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm <= kEps * h.maxAbs()) continue;
        Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex{1.0, 0.0};
        v[0] += phase * xnorm;
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 == 0.0) continue;
        double beta = 2.0 / vnorm2;

        // H <- (I - beta v v*) H on rows k+1..n-1.
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot{};
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
            dot *= beta;
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * dot;
        }
        // H <- H (I - beta v v*) on cols k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = 0; j < m; ++j) dot += h(i, k + 1 + j) * v[j];
            dot *= beta;
            for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        // Q <- Q (I - beta v v*).
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot{};
            for (std::size_t j = 0; j < m; ++j) dot += q(i, k + 1 + j) * v[j];
            dot *= beta;
            for (std::size_t j = 0; j < m; ++j) q(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }
}

Complex wilkinsonShift(const ComplexMatrix& h, std::size_t hi) {
    Complex a = h(hi - 1, hi - 1);
    Complex b = h(hi - 1, hi);
    Complex c = h(hi, hi - 1);
    Complex d = h(hi, hi);
    Complex tr = a + d;
    Complex det = a * d - b * c;
    Complex disc = std::sqrt(tr * tr - 4.0 * det);
    Complex l1 = 0.5 * (tr + disc);
    Complex l2 = 0.5 * (tr - disc);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

SchurResult schur(const ComplexMatrix& a, const Tolerances& tol) {
    requireSquare(a, "schur");
    tol.validate();
    const std::size_t n = a.rows();
    SchurResult res;
    res.t = a;
    if (n == 0) {
        res.q = ComplexMatrix(0, 0);
        return res;
    }
    hessenberg(res.t, res.q);
    ComplexMatrix& h = res.t;
    ComplexMatrix& q = res.q;

    const double scale = std::max(h.maxAbs(), 1e-300);
    auto negligible = [&](std::size_t i) {
        double bound = kEps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)));
        if (bound == 0.0) bound = kEps * scale;
        return std::abs(h(i, i - 1)) <= bound;
    };

    std::size_t hi = n - 1;
    std::size_t totalIter = 0;
    std::size_t sinceDeflate = 0;
    const std::size_t cap = 30 * n + 30;
    while (hi > 0) {
        // Deflate negligible subdiagonals at the bottom of the active block.
        if (negligible(hi)) {
            h(hi, hi - 1) = Complex{};
            --hi;
            sinceDeflate = 0;
            continue;
        }
        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = Complex{};

        if (++totalIter > cap)
            throw Error(Errc::ConvergenceFailure, "schur: QR iteration cap exceeded");
        ++sinceDeflate;

        Complex mu = wilkinsonShift(h, hi);
        if (sinceDeflate % 12 == 0) {
            // Exceptional shift to break rare cycling.
            mu = h(hi, hi) + Complex{std::abs(h(hi, hi - 1)), 0.0} * 1.5;
        }

        // Explicit single-shift QR step on rows/cols lo..hi.
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Givens> rot(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) {
            Givens g = makeGivens(h(k, k), h(k + 1, k));
            rot[k - lo] = g;
            applyGivensLeft(h, k, g);
            h(k + 1, k) = Complex{};
        }
        for (std::size_t k = lo; k < hi; ++k) {
            applyGivensRightAdj(h, k, rot[k - lo]);
            applyGivensRightAdj(q, k, rot[k - lo]);
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }

    // Clean the strict lower triangle (roundoff only).
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = Complex{};
    return res;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a, const Tolerances& tol) {
    SchurResult s = schur(a, tol);
    std::vector<Complex> w(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) w[i] = s.t(i, i);
    return w;
}

HermitianEig hermitianEig(const ComplexMatrix& a) {
    requireSquare(a, "hermitianEig");
    const std::size_t n = a.rows();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto offNorm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(m(i, j));
        return std::sqrt(2.0 * s);
    };

    const double target = 64.0 * kEps * std::max(m.frobeniusNorm(), 1e-300);
    for (int sweep = 0; sweep < 60 && offNorm() > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = m(p, q);
                double g = std::abs(apq);
                if (g <= kEps * target) continue;
                Complex phase = apq / g;  // a_pq = g * phase
                double app = m(p, p).real();
                double aqq = m(q, q).real();
                double tau = (aqq - app) / (2.0 * g);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // Columns of the rotation J on (p, q): J_pp = c*phase,
                // J_qp = -s, J_pq = s*phase, J_qq = c; update M <- J* M J, V <- V J.
                for (std::size_t i = 0; i < n; ++i) {
                    Complex xp = m(i, p);
                    Complex xq = m(i, q);
                    m(i, p) = c * phase * xp - s * xq;
                    m(i, q) = s * phase * xp + c * xq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    Complex xp = m(p, j);
                    Complex xq = m(q, j);
                    m(p, j) = c * std::conj(phase) * xp - s * xq;
                    m(q, j) = s * std::conj(phase) * xp + c * xq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    Complex xp = v(i, p);
                    Complex xq = v(i, q);
                    v(i, p) = c * phase * xp - s * xq;
                    v(i, q) = s * phase * xp + c * xq;
                }
                m(p, q) = Complex{};
                m(q, p) = Complex{};
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });
    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = m(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

ComplexMatrix psdSqrt(const ComplexMatrix& m, const Tolerances& tol) {
    requireSquare(m, "psdSqrt");
    tol.validate();
    const std::size_t n = m.rows();
    double herm = (m - m.adjoint()).maxAbs();
    if (herm > tol.structural * std::max(1.0, m.maxAbs()))
        throw Error(Errc::NotHermitian, "psdSqrt: matrix is not Hermitian within tolerance");
    HermitianEig eig = hermitianEig(m);
    for (double& lam : eig.values) {
        if (lam < -tol.spectral)
            throw Error(Errc::NegativeEigenvalue, "psdSqrt: eigenvalue below -spectral tolerance");
        if (lam < 0.0) lam = 0.0;
    }
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * std::conj(eig.vectors(j, k));
            r(i, j) = s;
        }
    }
    // Hermitize away roundoff.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex s = 0.5 * (r(i, j) + std::conj(r(j, i)));
            r(i, j) = s;
            r(j, i) = std::conj(s);
        }
    return r;
}

namespace {

double hermitianPartMaxEig(const ComplexMatrix& a, double theta) {
    const std::size_t n = a.rows();
    Complex phase = std::polar(1.0, theta);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (phase * a(i, j) + std::conj(phase * a(j, i)));
    HermitianEig e = hermitianEig(h);
    return e.values.empty() ? 0.0 : e.values.back();
}

}  // namespace

double numericalRadius(const ComplexMatrix& a, const Tolerances& tol) {
    requireSquare(a, "numericalRadius");
    tol.validate();
    const std::size_t n = a.rows();
    if (n == 0 || a.maxAbs() == 0.0) return 0.0;

    constexpr int kGrid = 512;
    const double twoPi = 2.0 * std::acos(-1.0);
    double best = -std::numeric_limits<double>::infinity();
    int bestK = 0;
    for (int k = 0; k < kGrid; ++k) {
        double val = hermitianPartMaxEig(a, twoPi * k / kGrid);
        if (val > best) {
            best = val;
            bestK = k;
        }
    }
    // Golden-section refinement over the two cells around the best angle.
    double lo = twoPi * (bestK - 1) / kGrid;
    double hi = twoPi * (bestK + 1) / kGrid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = hermitianPartMaxEig(a, x1);
    double f2 = hermitianPartMaxEig(a, x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = hermitianPartMaxEig(a, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = hermitianPartMaxEig(a, x1);
        }
    }
    return std::max({best, f1, f2});
}

double spectralRadius(const ComplexMatrix& a) {
    requireSquare(a, "spectralRadius");
    double r = 0.0;
    for (const Complex& w : eigenvalues(a)) r = std::max(r, std::abs(w));
    return r;
}

double operatorNorm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // Largest eigenvalue of the smaller Gram matrix.
    ComplexMatrix g = a.rows() <= a.cols() ? a * a.adjoint() : a.adjoint() * a;
    HermitianEig e = hermitianEig(g);
    return std::sqrt(std::max(0.0, e.values.back()));
}

Svd svd(const ComplexMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Svd out;
    if (m == 0 || n == 0) {
        out.u = ComplexMatrix(m, 0);
        out.v = ComplexMatrix(n, 0);
        return out;
    }
    const std::size_t k = std::min(m, n);
    ComplexMatrix g = a.adjoint() * a;  // n x n
    HermitianEig e = hermitianEig(g);
    out.sigma.resize(k);
    out.v = ComplexMatrix(n, k);
    out.u = ComplexMatrix(m, k);
    // Descending order: eigenvalues come ascending.
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t src = n - 1 - j;
        out.sigma[j] = std::sqrt(std::max(0.0, e.values[src]));
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = e.vectors(i, src);
    }
    double smax = out.sigma.empty() ? 0.0 : out.sigma[0];
    double cutoff = std::max(static_cast<double>(std::max(m, n)) * kEps * smax, 1e-300);
    for (std::size_t j = 0; j < k; ++j) {
        if (out.sigma[j] > cutoff) {
            for (std::size_t i = 0; i < m; ++i) {
                Complex s{};
                for (std::size_t l = 0; l < n; ++l) s += a(i, l) * out.v(l, j);
                out.u(i, j) = s / out.sigma[j];
            }
        } else {
            // Complete with a unit vector orthogonal to the previous columns.
            for (std::size_t e2 = 0; e2 < m; ++e2) {
                ComplexMatrix cand(m, 1);
                cand(e2, 0) = 1.0;
                for (std::size_t p = 0; p < j; ++p) {
                    Complex dot{};
                    for (std::size_t i = 0; i < m; ++i) dot += std::conj(out.u(i, p)) * cand(i, 0);
                    for (std::size_t i = 0; i < m; ++i) cand(i, 0) -= dot * out.u(i, p);
                }
                double nn = cand.frobeniusNorm();
                if (nn > 0.5) {
                    for (std::size_t i = 0; i < m; ++i) out.u(i, j) = cand(i, 0) / nn;
                    break;
                }
            }
        }
    }
    return out;
}

SmallestSingular smallestSingular(const ComplexMatrix& a) {
    const std::size_t n = a.cols();
    if (n == 0) throw Error(Errc::InvalidArgument, "smallestSingular: empty matrix");
    ComplexMatrix g = a.adjoint() * a;
    HermitianEig e = hermitianEig(g);
    SmallestSingular out;
    out.vector = ComplexMatrix(n, 1);
    for (std::size_t i = 0; i < n; ++i) out.vector(i, 0) = e.vectors(i, 0);
    // Direct residual beats sqrt of the Gram eigenvalue near zero.
    out.value = (a * out.vector).frobeniusNorm();
    return out;
}

ComplexMatrix solveLinear(const ComplexMatrix& a, const ComplexMatrix& b) {
    requireSquare(a, "solveLinear");
    if (a.rows() != b.rows())
        throw Error(Errc::DimensionMismatch, "solveLinear: rhs row count mismatch");
    const std::size_t n = a.rows();
    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw Error(Errc::ConvergenceFailure, "solveLinear: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = lu(i, k) / lu(k, k);
            lu(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            Complex s = x(kk, j);
            for (std::size_t l = kk + 1; l < n; ++l) s -= lu(kk, l) * x(l, j);
            x(kk, j) = s / lu(kk, kk);
        }
    }
    return x;
}

Complex determinant(const ComplexMatrix& a) {
    requireSquare(a, "determinant");
    const std::size_t n = a.rows();
    if (n == 0) return Complex{1.0, 0.0};
    ComplexMatrix lu = a;
    Complex det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) return Complex{};
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = lu(i, k) / lu(k, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    return det;
}

ComplexMatrix solveLeastSquaresRight(const ComplexMatrix& a, const ComplexMatrix& b,
                                     double rcond) {
    // Minimum-norm least-squares X with X A ~= B, via the pseudo-inverse of A.
    if (a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "solveLeastSquaresRight: column count mismatch");
    Svd s = svd(a);
    double smax = s.sigma.empty() ? 0.0 : s.sigma[0];
    double cutoff = std::max(rcond * smax, 1e-300);
    // pinv(A) = V diag(1/sigma) U*; X = B pinv(A).
    ComplexMatrix bv = b * s.v;  // rows(b) x k
    for (std::size_t j = 0; j < s.sigma.size(); ++j) {
        Complex scale = s.sigma[j] > cutoff ? Complex{1.0 / s.sigma[j], 0.0} : Complex{};
        for (std::size_t i = 0; i < bv.rows(); ++i) bv(i, j) *= scale;
    }
    return bv * s.u.adjoint();
}

std::vector<Complex> rootsOfMonic(const std::vector<Complex>& c, const Tolerances& tol) {
    const std::size_t n = c.size();
    if (n == 0) return {};
    if (n == 1) return {-c[0]};
    ComplexMatrix comp(n, n);
    for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i];
    return eigenvalues(comp, tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix nearestUnitary(const ComplexMatrix& a) {
    requireSquare(a, "nearestUnitary");
    Svd s = svd(a);
    return s.u * s.v.adjoint();
}

}  // namespace distvar
