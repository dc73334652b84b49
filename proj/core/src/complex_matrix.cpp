#include "nmrqc/complex_matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace nmrqc {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {
    if (dim == 0) {
        throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = Complex{1.0, 0.0};
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    ComplexMatrix m(rows.size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) {
            throw std::invalid_argument("ComplexMatrix::from_rows: ragged initializer");
        }
        std::size_t c = 0;
        for (const auto& v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("ComplexMatrix::max_abs_diff: dimension mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        m = std::max(m, std::abs(data_[i] - other.data_[i]));
    }
    return m;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
    return other.dim_ == dim_ && max_abs_diff(other) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double ComplexMatrix::unitarity_defect() const {
    const ComplexMatrix gram = adjoint() * (*this);
    return gram.max_abs_diff(identity(dim_));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in +=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) {
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in -=");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& v : data_) {
        v *= scalar;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) {
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in *");
    }
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex arv = a(r, k);
            if (arv == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += arv * b(k, c);
            }
        }
    }
    return out;
}

std::string ComplexMatrix::to_string() const {
    std::string out;
    char buf[64];
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            const Complex v = (*this)(r, c);
            std::snprintf(buf, sizeof(buf), "%+.6g%+.6gi", v.real(), v.imag());
            out += buf;
            out += (c + 1 == dim_) ? '\n' : ' ';
        }
    }
    return out;
}

} // namespace nmrqc
