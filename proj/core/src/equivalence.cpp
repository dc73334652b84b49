#include "nmrqc/equivalence.hpp"

#include "nmrqc/spin_ops.hpp"

#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>
#include <vector>

namespace nmrqc {

namespace {

constexpr double kStructuralZero = 1e-6;

} // namespace

ComplexMatrix cnot_matrix() {
    return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                     {0.0, 1.0, 0.0, 0.0},
                                     {0.0, 0.0, 0.0, 1.0},
                                     {0.0, 0.0, 1.0, 0.0}});
}

bool equivalent_global_phase(const ComplexMatrix& u, const ComplexMatrix& v, double tol) {
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("equivalent_global_phase: dimension mismatch");
    }
    return phase_fidelity(u, v) >= 1.0 - tol;
}

bool equivalent_global_phase(const CompiledUnitary& u, const CompiledUnitary& v, double tol) {
    return equivalent_global_phase(u.matrix, v.matrix, tol);
}

bool equivalent_up_to_diagonal_phases(const ComplexMatrix& u, const ComplexMatrix& v, double tol) {
    const std::size_t d = u.dim();
    if (d != v.dim()) {
        throw std::invalid_argument("equivalent_up_to_diagonal_phases: dimension mismatch");
    }
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (std::abs(std::abs(u(r, c)) - std::abs(v(r, c))) > tol) {
                return false;
            }
        }
    }
    // Solve alpha_r + beta_c = arg(v_rc) - arg(u_rc) on the bipartite graph of
    // significant entries; each connected component is anchored at phase 0.
    std::vector<double> alpha(d, 0.0);
    std::vector<double> beta(d, 0.0);
    std::vector<char> row_known(d, 0);
    std::vector<char> col_known(d, 0);
    auto significant = [&](std::size_t r, std::size_t c) {
        return std::abs(u(r, c)) > kStructuralZero;
    };
    auto needed_phase = [&](std::size_t r, std::size_t c) {
        return std::arg(v(r, c)) - std::arg(u(r, c));
    };
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (row_known[r0]) {
            continue;
        }
        row_known[r0] = 1;
        alpha[r0] = 0.0;
        std::deque<std::pair<bool, std::size_t>> frontier{{true, r0}};
        while (!frontier.empty()) {
            const auto [is_row, idx] = frontier.front();
            frontier.pop_front();
            if (is_row) {
                for (std::size_t c = 0; c < d; ++c) {
                    if (!col_known[c] && significant(idx, c)) {
                        beta[c] = needed_phase(idx, c) - alpha[idx];
                        col_known[c] = 1;
                        frontier.emplace_back(false, c);
                    }
                }
            } else {
                for (std::size_t r = 0; r < d; ++r) {
                    if (!row_known[r] && significant(r, idx)) {
                        alpha[r] = needed_phase(r, idx) - beta[idx];
                        row_known[r] = 1;
                        frontier.emplace_back(true, r);
                    }
                }
            }
        }
    }
    // Witness check D1 u D2 against v; over-constrained components fail here.
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (!significant(r, c)) {
                continue;
            }
            const Complex w = std::polar(1.0, alpha[r] + beta[c]) * u(r, c);
            if (std::abs(w - v(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool equivalent_up_to_diagonal_phases(const CompiledUnitary& u, const CompiledUnitary& v,
                                      double tol) {
    return equivalent_up_to_diagonal_phases(u.matrix, v.matrix, tol);
}

} // namespace nmrqc
