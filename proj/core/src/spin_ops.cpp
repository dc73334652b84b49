#include "nmrqc/spin_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nmrqc {

namespace {

constexpr std::size_t kMaxSpins = 3; // dims 2, 4, 8

ComplexMatrix pauli_half(Axis axis) {
    ComplexMatrix m(2);
    switch (axis) {
    case Axis::X:
        m(0, 1) = 0.5;
        m(1, 0) = 0.5;
        break;
    case Axis::Y:
        m(0, 1) = Complex{0.0, -0.5};
        m(1, 0) = Complex{0.0, 0.5};
        break;
    case Axis::Z:
        m(0, 0) = 0.5;
        m(1, 1) = -0.5;
        break;
    }
    return m;
}

} // namespace

char axis_to_char(Axis axis) {
    switch (axis) {
    case Axis::X:
        return 'x';
    case Axis::Y:
        return 'y';
    case Axis::Z:
        return 'z';
    }
    return '?';
}

Axis axis_from_char(char c) {
    switch (c) {
    case 'x':
        return Axis::X;
    case 'y':
        return Axis::Y;
    case 'z':
        return Axis::Z;
    default:
        throw std::invalid_argument(std::string("invalid axis '") + c + "'");
    }
}

SpinIndex::SpinIndex(std::size_t index, std::size_t nspins) : index(index), nspins(nspins) {
    if (nspins == 0 || nspins > kMaxSpins) {
        throw std::invalid_argument("SpinIndex: spin count must be 1.." + std::to_string(kMaxSpins));
    }
    if (index >= nspins) {
        throw std::out_of_range("SpinIndex: index " + std::to_string(index) + " out of range for " +
                                std::to_string(nspins) + " spins");
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t ia = 0; ia < da; ++ia) {
        for (std::size_t ja = 0; ja < da; ++ja) {
            const Complex av = a(ia, ja);
            if (av == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t ib = 0; ib < db; ++ib) {
                for (std::size_t jb = 0; jb < db; ++jb) {
                    out(ia * db + ib, ja * db + jb) = av * b(ib, jb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix spin_operator(Axis axis, SpinIndex which) {
    ComplexMatrix out = which.index == 0 ? pauli_half(axis) : ComplexMatrix::identity(2);
    for (std::size_t k = 1; k < which.nspins; ++k) {
        out = kron(out, k == which.index ? pauli_half(axis) : ComplexMatrix::identity(2));
    }
    return out;
}

Eigensystem eigh(const ComplexMatrix& h, double hermiticity_tol) {
    if (!h.is_hermitian(hermiticity_tol)) {
        throw std::invalid_argument("eigh: matrix is not Hermitian within tolerance");
    }
    const std::size_t n = h.dim();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.max_abs());
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off = std::max(off, std::abs(a(p, q)));
            }
        }
        if (off <= 1e-16 * scale) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r <= 1e-300) {
                    continue;
                }
                // Unitary 2x2 rotation zeroing a_pq:
                //   [ c           -s e^{i phi} ]
                //   [ s e^{-i phi}  c          ]
                // with phi = arg(a_pq) and tan(2 theta) = 2r / (a_pp - a_qq).
                const double phi = std::arg(a(p, q));
                const double theta = 0.5 * std::atan2(2.0 * r, a(p, p).real() - a(q, q).real());
                const Complex c{std::cos(theta), 0.0};
                const Complex s_pos = std::polar(std::sin(theta), phi);  // s e^{i phi}

                // Columns p,q of A <- A U.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * std::conj(s_pos);
                    a(k, q) = -akp * s_pos + akq * c;
                }
                // Rows p,q of A <- U^dag A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + s_pos * aqk;
                    a(q, k) = -std::conj(s_pos) * apk + c * aqk;
                }
                // Accumulate V <- V U.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * std::conj(s_pos);
                    v(k, q) = -vkp * s_pos + vkq * c;
                }
            }
        }
    }

    Eigensystem out{std::vector<double>(n), ComplexMatrix(n)};
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t rw = 0; rw < n; ++rw) {
            out.vectors(rw, c) = v(rw, order[c]);
        }
    }
    return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, Complex scale, double hermiticity_tol) {
    const Eigensystem es = eigh(h, hermiticity_tol);
    const std::size_t n = h.dim();
    // V diag(exp(scale*lambda)) V^dag
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex sum{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) {
                sum += es.vectors(r, k) * std::exp(scale * es.values[k]) * std::conj(es.vectors(c, k));
            }
            out(r, c) = sum;
        }
    }
    return out;
}

double phase_fidelity(const ComplexMatrix& u, const ComplexMatrix& v, double unitarity_tol) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("phase_fidelity: dimension mismatch");
    }
    if (!u.is_unitary(unitarity_tol) || !v.is_unitary(unitarity_tol)) {
        throw std::invalid_argument("phase_fidelity: arguments must be unitary");
    }
    return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.dim());
}

} // namespace nmrqc
