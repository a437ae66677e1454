// SPDX-License-Identifier: Apache-2.0
#include "zwm/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zwm {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim)
        throw DimensionError("matrix dimension " + std::to_string(dim) + " outside [1, " +
                             std::to_string(kMaxDim) + "]");
    entries_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::max_hermitian_asymmetry() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = i; j < dim_; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

static void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(op) + ": dimension mismatch " + std::to_string(a.dim()) +
                             " vs " + std::to_string(b.dim()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_dim(*this, o, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_dim(*this, o, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex c) {
    for (Complex& e : entries_) e *= c;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex c, ComplexMatrix a) { return a *= c; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v) {
    if (static_cast<int>(v.size()) != a.dim())
        throw DimensionError("matrix-vector dimension mismatch");
    std::vector<Complex> out(v.size(), Complex(0.0, 0.0));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out[i] += a.at(i, j) * v[j];
    return out;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_product");
    Complex t = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) t += a.at(i, j) * b.at(j, i);
    return t;
}

// Closed-form eigensolution of the Hermitian 2x2 block [[app, apq], [conj(apq), aqq]].
// Columns of v are the eigenvectors for (lm, lp).
static void eig2(double app, double aqq, Complex apq, double& lm, double& lp, Complex v[2][2]) {
    const double b = std::abs(apq);
    if (b == 0.0) {
        if (app <= aqq) {
            lm = app; lp = aqq;
            v[0][0] = 1.0; v[1][0] = 0.0;
            v[0][1] = 0.0; v[1][1] = 1.0;
        } else {
            lm = aqq; lp = app;
            v[0][0] = 0.0; v[1][0] = 1.0;
            v[0][1] = 1.0; v[1][1] = 0.0;
        }
        return;
    }
    const double mean = 0.5 * (app + aqq);
    const double h = 0.5 * (app - aqq);
    const double rho = std::hypot(h, b);
    lm = mean - rho;
    lp = mean + rho;
    // eigenvector for lp; pick the better-conditioned of the two analytic forms
    Complex u0, u1;
    const double n1 = b * b + (lp - app) * (lp - app);
    const double n2 = (lp - aqq) * (lp - aqq) + b * b;
    if (n1 >= n2) {
        u0 = apq;
        u1 = Complex(lp - app, 0.0);
    } else {
        u0 = Complex(lp - aqq, 0.0);
        u1 = std::conj(apq);
    }
    const double nrm = std::sqrt(std::norm(u0) + std::norm(u1));
    u0 /= nrm;
    u1 /= nrm;
    // orthogonal complement is the lm eigenvector
    v[0][0] = -std::conj(u1); v[1][0] = std::conj(u0);
    v[0][1] = u0;             v[1][1] = u1;
}

static void phase_fix_column(ComplexMatrix& vecs, int col) {
    for (int i = 0; i < vecs.dim(); ++i) {
        const Complex x = vecs.at(i, col);
        const double a = std::abs(x);
        if (a > 1e-8) {
            const Complex phase = std::conj(x) / a;
            for (int k = 0; k < vecs.dim(); ++k) vecs.at(k, col) *= phase;
            return;
        }
    }
}

static double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

static EigenSystem hermitian_eig_impl(const ComplexMatrix& m, int max_dim) {
    const int n = m.dim();
    if (n < 1 || n > max_dim)
        throw DimensionError("hermitian_eig: dim " + std::to_string(n) + " outside [1, " +
                             std::to_string(max_dim) + "]");
    const double asym = m.max_hermitian_asymmetry();
    if (asym > kHermitianTol)
        throw NonHermitianError("hermitian_eig: input not Hermitian, max asymmetry " +
                                    std::to_string(asym),
                                asym);

    // symmetrize the sub-tolerance asymmetry away
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));

    EigenSystem sys;
    sys.eigenvalues.assign(n, 0.0);
    sys.eigenvectors = ComplexMatrix::identity(n);

    if (n == 1) {
        sys.eigenvalues[0] = a.at(0, 0).real();
        return sys;
    }

    ComplexMatrix& vecs = sys.eigenvectors;
    if (n == 2) {
        Complex v[2][2];
        double lm, lp;
        eig2(a.at(0, 0).real(), a.at(1, 1).real(), a.at(0, 1), lm, lp, v);
        sys.eigenvalues = {lm, lp};
        vecs.at(0, 0) = v[0][0]; vecs.at(1, 0) = v[1][0];
        vecs.at(0, 1) = v[0][1]; vecs.at(1, 1) = v[1][1];
    } else {
        constexpr int kMaxSweeps = 100;
        int sweep = 0;
        for (; sweep < kMaxSweeps; ++sweep) {
            if (offdiag_frobenius(a) < kJacobiOffTol) break;
            for (int p = 0; p < n - 1; ++p) {
                for (int q = p + 1; q < n; ++q) {
                    const Complex apq = a.at(p, q);
                    if (std::abs(apq) < 1e-300) continue;
                    Complex v[2][2];
                    double lm, lp;
                    eig2(a.at(p, p).real(), a.at(q, q).real(), apq, lm, lp, v);
                    // columns p,q: right-multiply by the 2x2 rotation
                    for (int k = 0; k < n; ++k) {
                        const Complex akp = a.at(k, p), akq = a.at(k, q);
                        a.at(k, p) = akp * v[0][0] + akq * v[1][0];
                        a.at(k, q) = akp * v[0][1] + akq * v[1][1];
                        const Complex vkp = vecs.at(k, p), vkq = vecs.at(k, q);
                        vecs.at(k, p) = vkp * v[0][0] + vkq * v[1][0];
                        vecs.at(k, q) = vkp * v[0][1] + vkq * v[1][1];
                    }
                    // rows p,q: left-multiply by the adjoint
                    for (int k = 0; k < n; ++k) {
                        const Complex apk = a.at(p, k), aqk = a.at(q, k);
                        a.at(p, k) = std::conj(v[0][0]) * apk + std::conj(v[1][0]) * aqk;
                        a.at(q, k) = std::conj(v[0][1]) * apk + std::conj(v[1][1]) * aqk;
                    }
                    a.at(p, p) = Complex(lm, 0.0);
                    a.at(q, q) = Complex(lp, 0.0);
                    a.at(p, q) = 0.0;
                    a.at(q, p) = 0.0;
                }
            }
        }
        if (sweep == kMaxSweeps) throw Error("hermitian_eig: Jacobi iteration did not converge");
        for (int i = 0; i < n; ++i) sys.eigenvalues[i] = a.at(i, i).real();

        // sort ascending, permuting eigenvector columns along
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return sys.eigenvalues[x] < sys.eigenvalues[y];
        });
        std::vector<double> vals(n);
        ComplexMatrix sorted(n);
        for (int c = 0; c < n; ++c) {
            vals[c] = sys.eigenvalues[order[c]];
            for (int r = 0; r < n; ++r) sorted.at(r, c) = vecs.at(r, order[c]);
        }
        sys.eigenvalues = vals;
        sys.eigenvectors = sorted;
    }

    for (int c = 0; c < n; ++c) phase_fix_column(sys.eigenvectors, c);
    return sys;
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
    return hermitian_eig_impl(m, ComplexMatrix::kMaxEigDim);
}

double trace_norm(const ComplexMatrix& m) {
    const EigenSystem sys = hermitian_eig(m);
    double s = 0.0;
    for (double l : sys.eigenvalues) s += std::abs(l);
    return s;
}

bool psd_check(const ComplexMatrix& m, double tol) {
    const EigenSystem sys = hermitian_eig(m);
    return sys.eigenvalues.front() >= -tol;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const EigenSystem sys = hermitian_eig(m);
    const int n = m.dim();
    ComplexMatrix out(n);
    std::vector<double> roots(n);
    for (int k = 0; k < n; ++k) {
        double l = sys.eigenvalues[k];
        if (l < -kPsdTol)
            throw PositivityError("matrix_sqrt_psd: eigenvalue " + std::to_string(l) +
                                      " below -" + std::to_string(kPsdTol),
                                  l);
        roots[k] = std::sqrt(std::max(l, 0.0));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < n; ++k)
                s += roots[k] * sys.eigenvectors.at(i, k) * std::conj(sys.eigenvectors.at(j, k));
            out.at(i, j) = s;
        }
    return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.dim() < 1 || mat_.dim() > ComplexMatrix::kMaxEigDim)
        throw DimensionError("DensityMatrix: dim outside [1, 64]");
    const double asym = mat_.max_hermitian_asymmetry();
    if (asym > kHermitianTol)
        throw NonHermitianError("DensityMatrix: not Hermitian, max asymmetry " +
                                    std::to_string(asym),
                                asym);
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-9)
        throw Error("DensityMatrix: trace " + std::to_string(tr.real()) + " not 1");
    const EigenSystem sys = hermitian_eig(mat_);
    if (sys.eigenvalues.front() < -kPsdTol)
        throw PositivityError("DensityMatrix: negative eigenvalue " +
                                  std::to_string(sys.eigenvalues.front()),
                              sys.eigenvalues.front());
}

double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionError("uhlmann_fidelity: dimension mismatch");
    // Tr sqrt(sqrt(a) b sqrt(a)) equals the nuclear norm of sqrt(a) sqrt(b).
    // The singular values come from the Hermitian dilation [[0, X], [X+, 0]],
    // whose eigenvalue noise stays linear; eigendecomposing X+X directly
    // would amplify the near-null noise floor through the square root.
    const int n = a.dim();
    const ComplexMatrix x = matrix_sqrt_psd(a.matrix()) * matrix_sqrt_psd(b.matrix());
    ComplexMatrix dilation(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            dilation.at(i, n + j) = x.at(i, j);
            dilation.at(n + j, i) = std::conj(x.at(i, j));
        }
    const EigenSystem sys = hermitian_eig_impl(dilation, 2 * ComplexMatrix::kMaxEigDim);
    double f = 0.0;
    for (double l : sys.eigenvalues) f += std::max(l, 0.0);
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace zwm
