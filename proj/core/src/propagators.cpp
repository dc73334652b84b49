#include "nmrqc/propagators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nmrqc {

ComplexMatrix hamiltonian(const SpinSystem& sys, std::span<const PulseSpec> active_pulses) {
    const std::size_t n = sys.nspins();
    if (n == 0) {
        throw std::invalid_argument("hamiltonian: empty spin system");
    }
    ComplexMatrix h(sys.dim());
    for (std::size_t k = 0; k < n; ++k) {
        const double omega = sys.offset_rad_s(k);
        if (omega != 0.0) {
            ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(k, n));
            iz *= Complex(omega, 0.0);
            h += iz;
        }
    }
    for (const auto& [i, j] : sys.coupled_pairs()) {
        const double w = 2.0 * std::numbers::pi * sys.coupling_hz(i, j);
        ComplexMatrix zz = spin_operator(Axis::Z, SpinIndex(i, n)) *
                           spin_operator(Axis::Z, SpinIndex(j, n));
        zz *= Complex(w, 0.0);
        h += zz;
    }
    for (const PulseSpec& p : active_pulses) {
        ComplexMatrix ia = spin_operator(p.axis, SpinIndex(sys.index_of(p.target), n));
        ia *= Complex(p.rf_amplitude_rad_s, 0.0);
        h += ia;
    }
    return h;
}

ComplexMatrix rotation_propagator(const SpinSystem& sys, const std::string& target, Axis axis,
                                  double angle_rad, const RotationConvention& conv) {
    const std::size_t n = sys.nspins();
    const SpinIndex idx(sys.index_of(target), n);
    const double sign = (axis == Axis::Z) ? conv.z_sign : conv.xy_sign;
    // exp(i s theta I_a) = cos(theta/2) 1 + 2 i s sin(theta/2) I_a, since (2 I_a)^2 = 1.
    ComplexMatrix u = ComplexMatrix::identity(sys.dim());
    u *= Complex(std::cos(angle_rad / 2.0), 0.0);
    ComplexMatrix ia = spin_operator(axis, idx);
    ia *= Complex(0.0, 2.0 * sign * std::sin(angle_rad / 2.0));
    u += ia;
    return u;
}

ComplexMatrix coupling_propagator(const SpinSystem& sys, const std::string& a, const std::string& b,
                                  double theta_rad) {
    const std::size_t n = sys.nspins();
    const std::size_t ia = sys.index_of(a);
    const std::size_t ib = sys.index_of(b);
    if (!sys.has_coupling(ia, ib)) {
        throw UnknownCouplingError(sys.spin(ia).label, sys.spin(ib).label);
    }
    // exp(i 2 theta Iza Izb) = cos(theta/2) 1 + i sin(theta/2) D with D = 4 Iza Izb = diag(+-1).
    ComplexMatrix d = spin_operator(Axis::Z, SpinIndex(ia, n)) *
                      spin_operator(Axis::Z, SpinIndex(ib, n));
    d *= Complex(0.0, 4.0 * std::sin(theta_rad / 2.0));
    ComplexMatrix u = ComplexMatrix::identity(sys.dim());
    u *= Complex(std::cos(theta_rad / 2.0), 0.0);
    u += d;
    return u;
}

ComplexMatrix delay_propagator(const SpinSystem& sys, double duration_s, bool refocus_offsets) {
    if (duration_s < 0.0) {
        throw std::domain_error("delay_propagator: negative duration");
    }
    ComplexMatrix h = hamiltonian(sys);
    if (refocus_offsets) {
        // Ideal refocusing: keep only the bilinear coupling terms.
        const std::size_t n = sys.nspins();
        for (std::size_t k = 0; k < n; ++k) {
            const double omega = sys.offset_rad_s(k);
            if (omega != 0.0) {
                ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(k, n));
                iz *= Complex(-omega, 0.0);
                h += iz;
            }
        }
    }
    return expm_hermitian(h, Complex(0.0, duration_s));
}

} // namespace nmrqc
