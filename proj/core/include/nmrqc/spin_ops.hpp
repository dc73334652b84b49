#pragma once

#include "nmrqc/complex_matrix.hpp"

#include <cstddef>
#include <vector>

namespace nmrqc {

enum class Axis { X, Y, Z };

char axis_to_char(Axis axis);
/// Accepts 'x', 'y', 'z'; throws std::invalid_argument otherwise.
Axis axis_from_char(char c);

/// Position of one spin-1/2 within a tensor-product ordering. The first spin
/// (index 0) is the leftmost, index-major factor.
struct SpinIndex {
    std::size_t index;
    std::size_t nspins;

    SpinIndex(std::size_t index, std::size_t nspins);
};

/// Tensor product with a's indices major: out[(ia*db+ib),(ja*db+jb)] = a(ia,ja)*b(ib,jb).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma_axis/2 on the addressed spin, identity factors elsewhere.
ComplexMatrix spin_operator(Axis axis, SpinIndex which);

/// Eigendecomposition of a Hermitian matrix (cyclic complex Jacobi).
/// Eigenvalues ascending; `vectors` holds the corresponding eigenvectors as
/// columns. Throws std::invalid_argument if h is not Hermitian within tol.
struct Eigensystem {
    std::vector<double> values;
    ComplexMatrix vectors;
};
Eigensystem eigh(const ComplexMatrix& h, double hermiticity_tol = 1e-12);

/// exp(scale*h) for Hermitian h, via eigendecomposition. Unitary whenever
/// scale is purely imaginary.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex scale, double hermiticity_tol = 1e-12);

/// |trace(u^dag v)| / dim. 1 exactly when u and v agree up to a global phase.
/// Throws on dimension mismatch or when either argument is not unitary
/// within unitarity_tol.
double phase_fidelity(const ComplexMatrix& u, const ComplexMatrix& v, double unitarity_tol = 1e-10);

} // namespace nmrqc
