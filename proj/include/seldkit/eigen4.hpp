#pragma once

#include <array>
#include <complex>

#include "seldkit/errors.hpp"

namespace seld {

using Complex = std::complex<double>;

/// 4x4 complex Hermitian matrix, row-major dense storage.
struct HermitianMatrix4 {
    std::array<Complex, 16> m{};

    Complex& at(int r, int c) { return m[static_cast<std::size_t>(r) * 4 + c]; }
    const Complex& at(int r, int c) const {
        return m[static_cast<std::size_t>(r) * 4 + c];
    }

    double trace_real() const {
        return m[0].real() + m[5].real() + m[10].real() + m[15].real();
    }
};

// R += x * conj(y)^T outer-product accumulation helper.
void accumulate_outer(HermitianMatrix4& r, const std::array<Complex, 4>& x);

// Largest absolute difference between R and its conjugate transpose.
double hermitian_defect(const HermitianMatrix4& r);

/// Full eigendecomposition: real eigenvalues sorted descending and the
/// matching unit eigenvectors (vectors[i] pairs with values[i]).
struct EigenDecomposition4 {
    std::array<double, 4> values{};
    std::array<std::array<Complex, 4>, 4> vectors{};
};

/// Descending eigenvalues plus the principal (largest-eigenvalue) unit
/// eigenvector with a deterministic phase: the reference component
/// (index 0) is rotated to be real and non-negative; when its magnitude is
/// below 1e-9 the largest-magnitude component is used instead.
struct EigenPair {
    std::array<double, 4> values{};
    std::array<Complex, 4> principal{};
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// 1e-12 times the trace (at most 50 sweeps). Input must be Hermitian within
/// 1e-10 relative to its Frobenius norm; otherwise NumericError is thrown.
EigenDecomposition4 eigen_decompose_4x4(const HermitianMatrix4& r);

EigenPair eigen_4x4_hermitian(const HermitianMatrix4& r);

}  // namespace seld
