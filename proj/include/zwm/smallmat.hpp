// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zwm {

using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NonHermitianError : public Error {
public:
    NonHermitianError(const std::string& what, double max_asymmetry)
        : Error(what), max_asymmetry(max_asymmetry) {}
    double max_asymmetry;
};

class PositivityError : public Error {
public:
    PositivityError(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

/// Dense row-major complex matrix. Eigen-decomposition and everything built
/// on it is limited to dim <= kMaxEigDim; larger matrices (up to kMaxDim,
/// needed for truncated two-mode Fock unitaries) support only the basic
/// arithmetic.
class ComplexMatrix {
public:
    static constexpr int kMaxDim = 1024;
    static constexpr int kMaxEigDim = 64;

    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }
    const Complex& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    /// max_ij |a_ij - conj(a_ji)|
    double max_hermitian_asymmetry() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex c);

private:
    int dim_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex c, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v);

/// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

// Tolerances shared across the numeric kernels.
inline constexpr double kHermitianTol = 1e-12;   // absolute entry asymmetry
inline constexpr double kJacobiOffTol = 1e-12;   // off-diagonal Frobenius norm
inline constexpr double kPsdTol = 1e-10;         // eigenvalue clamp window

/// Hermitian eigen-decomposition. dim 2 uses the closed-form quadratic,
/// dim 3..64 cyclic Jacobi rotations iterated until the off-diagonal
/// Frobenius norm drops below kJacobiOffTol. Eigenvector phases are fixed
/// by making the first component above 1e-8 real positive.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

/// True iff the smallest eigenvalue is >= -tol.
bool psd_check(const ComplexMatrix& m, double tol);

/// Principal square root of a PSD matrix. Eigenvalues in [-kPsdTol, 0) are
/// clamped to zero; anything below -kPsdTol is rejected.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// Hermitian PSD unit-trace matrix, validated at construction.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m);
    const ComplexMatrix& matrix() const { return mat_; }
    int dim() const { return mat_.dim(); }

private:
    ComplexMatrix mat_;
};

/// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)), clamped to [0, 1].
double uhlmann_fidelity(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace zwm
