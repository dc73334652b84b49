#pragma once

#include "nmrqc/complex_matrix.hpp"
#include "nmrqc/conventions.hpp"
#include "nmrqc/spin_ops.hpp"
#include "nmrqc/spin_system.hpp"

#include <span>
#include <string>

namespace nmrqc {

/// One rf field in the rotating-frame Hamiltonian. The amplitude is carried
/// for Hamiltonian construction but ignored by the hard-pulse propagators.
struct PulseSpec {
    std::string target;
    Axis axis = Axis::X;
    double angle_rad = 0.0;
    double rf_amplitude_rad_s = 0.0;
};

/// Rotating-frame Hamiltonian: Zeeman offsets, weak-coupling IzSz terms and
/// one rf term per active pulse. rad/s units throughout.
ComplexMatrix hamiltonian(const SpinSystem& sys, std::span<const PulseSpec> active_pulses = {});

/// Hard pulse: exp(sign * i * angle * I_axis) on the target spin, offsets and
/// couplings neglected for the pulse duration.
ComplexMatrix rotation_propagator(const SpinSystem& sys, const std::string& target, Axis axis,
                                  double angle_rad,
                                  const RotationConvention& conv = kFrozenConvention);

/// Coupling evolution in closed form on the pair's subspace:
/// cos(theta/2) I + i sin(theta/2) diag(1,-1,-1,1), i.e. exp(i 2 theta Iz Sz).
/// theta = pi J tau for an evolution period tau. Requires a declared coupling.
ComplexMatrix coupling_propagator(const SpinSystem& sys, const std::string& a, const std::string& b,
                                  double theta_rad);

/// Free precession exp(+i H0 duration) under the pulse-free Hamiltonian.
/// With refocus_offsets the Zeeman terms are zeroed (ideal refocusing) and
/// only coupling terms evolve.
ComplexMatrix delay_propagator(const SpinSystem& sys, double duration_s, bool refocus_offsets);

} // namespace nmrqc
