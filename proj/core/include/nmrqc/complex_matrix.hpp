#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nmrqc {

using Complex = std::complex<double>;

/// Dense square complex matrix, the carrier for operators, propagators and
/// density matrices. Row-major storage; dimensions stay tiny (2..8), so all
/// operations are straightforward O(n^3) loops.
///
/// Equality is always tolerance-based via approx_equal(); there is no
/// operator== on purpose.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(std::size_t dim);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> entries);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    [[nodiscard]] std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] Complex trace() const;

    /// Largest |entry|.
    [[nodiscard]] double max_abs() const;
    /// Largest |a_ij - b_ij|.
    [[nodiscard]] double max_abs_diff(const ComplexMatrix& other) const;
    [[nodiscard]] bool approx_equal(const ComplexMatrix& other, double tol) const;

    [[nodiscard]] bool is_hermitian(double tol) const;
    /// max |(U^dag U - I)_ij|
    [[nodiscard]] double unitarity_defect() const;
    [[nodiscard]] bool is_unitary(double tol) const { return unitarity_defect() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex{-1.0, 0.0}; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    /// Fixed-point text form, 6 significant digits per component.
    [[nodiscard]] std::string to_string() const;

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

} // namespace nmrqc
