#pragma once

#include "nmrqc/complex_matrix.hpp"
#include "nmrqc/seq_ast.hpp"
#include "nmrqc/spin_system.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

// Independently constructed reference values. Everything in this header is
// written out from closed-form arithmetic (no calls into the propagator or
// compiler code paths under test), so the tests compare two separate
// derivations of the same physics.
namespace oracles {

using nmrqc::Complex;
using nmrqc::ComplexMatrix;

inline constexpr double kPi = std::numbers::pi;

/// e^{-i pi/4} * CNOT (control = first tensor factor). This is the exact
/// product of the five-event spin-echo CNOT construction.
inline ComplexMatrix cnot_v1_reference() {
    const Complex p = std::polar(1.0, -kPi / 4.0);
    return ComplexMatrix::from_rows({
        {p, 0, 0, 0},
        {0, p, 0, 0},
        {0, 0, 0, p},
        {0, 0, p, 0},
    });
}

/// Exact product of the three-event CNOT shortcut: a CNOT dressed with
/// non-global diagonal phases, so its phase fidelity against CNOT is 1/2.
inline ComplexMatrix cnot_v2_reference() {
    const Complex a = std::polar(1.0, kPi / 4.0);
    const Complex b = std::polar(1.0, 3.0 * kPi / 4.0);
    return ComplexMatrix::from_rows({
        {a, 0, 0, 0},
        {0, std::conj(a), 0, 0},
        {0, 0, 0, a},
        {0, 0, b, 0},
    });
}

/// exp(i 2 theta IzIz) at theta = pi/2: (sqrt2/2) diag(1+i, 1-i, 1-i, 1+i).
inline ComplexMatrix coupling_half_pi_reference() {
    const double r = std::sqrt(2.0) / 2.0;
    const Complex d0{r, r};
    const Complex d1{r, -r};
    const std::vector<Complex> d{d0, d1, d1, d0};
    return ComplexMatrix::diagonal(d);
}

/// exp(i 2 theta IzIz) at theta = pi: i diag(1, -1, -1, 1).
inline ComplexMatrix coupling_pi_reference() {
    const Complex i01{0.0, 1.0};
    const std::vector<Complex> d{i01, -i01, -i01, i01};
    return ComplexMatrix::diagonal(d);
}

/// 90-degree y rotation of a single spin-1/2: (1/sqrt2) [[1, 1], [-1, 1]].
inline ComplexMatrix ry90_reference() {
    const double r = 1.0 / std::sqrt(2.0);
    return ComplexMatrix::from_rows({{r, r}, {-r, r}});
}

/// O(N^2) reference DFT, X_m = sum_k x_k exp(-2 pi i m k / N).
inline std::vector<Complex> naive_dft(const std::vector<Complex>& x) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = -2.0 * kPi * static_cast<double>(m) * static_cast<double>(k) /
                                 static_cast<double>(n);
            acc += x[k] * std::polar(1.0, phase);
        }
        out[m] = acc;
    }
    return out;
}

/// The fixture system of the CNOT constructions: 129Xe control declared
/// first, 1H target second, J = 100 Hz, offsets exercising refocusing.
inline nmrqc::SpinSystem xe_h_system() {
    nmrqc::SpinSystem sys;
    sys.add_spin("B", "129Xe");
    sys.add_spin("A", "1H");
    sys.set_offset_hz("B", -120.0);
    sys.set_offset_hz("A", 150.0);
    sys.set_coupling_hz("B", "A", 100.0);
    return sys;
}

/// Uniform draw from a fixed grid. Grid angles (multiples of 15 degrees) keep
/// optimizer cancellations reachable; the range spans past one full turn so
/// the 720-degree spinor period is exercised.
inline double grid_angle_deg(std::mt19937& rng) {
    std::uniform_int_distribution<int> steps(-30, 30);
    return 15.0 * static_cast<double>(steps(rng));
}

/// Random well-formed sequence over the given system: hard pulses, composite
/// z rotations, delays (some refocused, some zero) and coupling periods.
inline nmrqc::SequenceAST random_sequence(std::mt19937& rng, const nmrqc::SpinSystem& sys,
                                          std::size_t max_events) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<int> axis(0, 1);
    std::uniform_int_distribution<std::size_t> spin(0, sys.nspins() - 1);
    std::uniform_int_distribution<int> delay_steps(0, 8);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::size_t> count(0, max_events);

    const auto pairs = sys.coupled_pairs();
    nmrqc::SequenceAST seq;
    seq.name = "rnd";
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        switch (kind(rng)) {
        case 0:
            seq.events.push_back(nmrqc::PulseEvent{sys.spin(spin(rng)).label,
                                                   axis(rng) == 0 ? nmrqc::Axis::X : nmrqc::Axis::Y,
                                                   grid_angle_deg(rng)});
            break;
        case 1:
            seq.events.push_back(nmrqc::ZCompositeEvent{sys.spin(spin(rng)).label, grid_angle_deg(rng)});
            break;
        case 2:
            seq.events.push_back(nmrqc::DelayEvent{2.5e-4 * delay_steps(rng), coin(rng) == 1});
            break;
        default:
            if (pairs.empty()) {
                seq.events.push_back(nmrqc::PulseEvent{sys.spin(spin(rng)).label, nmrqc::Axis::X,
                                                       grid_angle_deg(rng)});
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
                const auto [a, b] = pairs[pick(rng)];
                seq.events.push_back(nmrqc::CoupleEvent{sys.spin(a).label, sys.spin(b).label,
                                                        grid_angle_deg(rng)});
            }
            break;
        }
    }
    seq.positions.assign(seq.events.size(), nmrqc::SourcePos{});
    return seq;
}

} // namespace oracles
