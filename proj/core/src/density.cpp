#include "nmrqc/density.hpp"

#include "nmrqc/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace nmrqc {

namespace {

std::size_t nspins_from_dim(std::size_t dim) {
    std::size_t n = 0;
    std::size_t d = 1;
    while (d < dim) {
        d <<= 1;
        ++n;
    }
    if (d != dim || n == 0) {
        throw std::invalid_argument("density: dimension is not a power of two");
    }
    return n;
}

std::vector<double> polarizations_of(const ComplexMatrix& rho) {
    const std::size_t n = nspins_from_dim(rho.dim());
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        p[k] = longitudinal_polarization(rho, k);
    }
    return p;
}

} // namespace

void RelaxationParams::validate(std::size_t nspins) const {
    if (!t1_s.empty()) {
        if (t1_s.size() != nspins) {
            throw std::invalid_argument("RelaxationParams: t1 list size mismatch");
        }
        for (double t : t1_s) {
            if (!(t > 0.0)) {
                throw std::domain_error("RelaxationParams: t1 must be positive");
            }
        }
    }
    if (!linewidth_hz.empty()) {
        if (linewidth_hz.size() != nspins) {
            throw std::invalid_argument("RelaxationParams: linewidth list size mismatch");
        }
        for (double lw : linewidth_hz) {
            if (lw < 0.0) {
                throw std::domain_error("RelaxationParams: linewidth must be nonnegative");
            }
        }
    }
    if (!equilibrium_polarization.empty() && equilibrium_polarization.size() != nspins) {
        throw std::invalid_argument("RelaxationParams: equilibrium list size mismatch");
    }
}

double longitudinal_polarization(const ComplexMatrix& rho, std::size_t spin) {
    const std::size_t n = nspins_from_dim(rho.dim());
    const ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(spin, n));
    Complex tr(0.0, 0.0);
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            tr += rho(r, c) * iz(c, r);
        }
    }
    return 4.0 * tr.real();
}

DensityState thermal_state(const SpinSystem& sys, double temperature_k) {
    if (!(temperature_k > 0.0)) {
        throw std::domain_error("thermal_state: temperature must be positive");
    }
    const std::size_t n = sys.nspins();
    const std::size_t dim = sys.dim();
    ComplexMatrix rho = ComplexMatrix::identity(dim);
    rho *= Complex(1.0 / static_cast<double>(dim), 0.0);
    std::vector<double> pol(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double eps =
            sys.spin(k).gamma_rad_s_t * kHbarJs * sys.b0_tesla() / (kBoltzmannJK * temperature_k);
        ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(k, n));
        iz *= Complex(eps / static_cast<double>(dim), 0.0);
        rho += iz;
        pol[k] = eps;
    }
    return DensityState{std::move(rho), std::move(pol)};
}

DensityState hyperpolarized_state(const SpinSystem& sys, const std::string& target,
                                  double enhancement, int sign, double temperature_k) {
    if (!(enhancement > 0.0)) {
        throw std::domain_error("hyperpolarized_state: enhancement must be positive");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("hyperpolarized_state: sign must be +1 or -1");
    }
    const std::size_t t = sys.index_of(target);
    DensityState state = thermal_state(sys, temperature_k);
    const double p_old = state.polarization[t];
    const double p_new = static_cast<double>(sign) * enhancement * p_old;
    const std::size_t dim = sys.dim();
    ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(t, sys.nspins()));
    iz *= Complex((p_new - p_old) / static_cast<double>(dim), 0.0);
    state.rho += iz;
    state.polarization[t] = p_new;
    return state;
}

DensityState evolve(const DensityState& state, const ComplexMatrix& u, double unitarity_tol) {
    if (u.dim() != state.rho.dim()) {
        throw std::invalid_argument("evolve: dimension mismatch");
    }
    if (!u.is_unitary(unitarity_tol)) {
        throw std::invalid_argument("evolve: propagator is not unitary");
    }
    ComplexMatrix rho = u * state.rho * u.adjoint();
    std::vector<double> pol = polarizations_of(rho);
    return DensityState{std::move(rho), std::move(pol)};
}

DensityState t1_decay(const DensityState& state, const RelaxationParams& params,
                      double elapsed_s) {
    if (elapsed_s < 0.0) {
        throw std::domain_error("t1_decay: negative elapsed time");
    }
    const std::size_t n = nspins_from_dim(state.rho.dim());
    params.validate(n);
    DensityState out = state;
    if (params.t1_s.empty() || elapsed_s == 0.0) {
        return out;
    }
    const std::size_t dim = state.rho.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const double p_eq =
            params.equilibrium_polarization.empty() ? 0.0 : params.equilibrium_polarization[k];
        const double p0 = longitudinal_polarization(out.rho, k);
        const double p1 = p_eq + (p0 - p_eq) * std::exp(-elapsed_s / params.t1_s[k]);
        ComplexMatrix iz = spin_operator(Axis::Z, SpinIndex(k, n));
        iz *= Complex((p1 - p0) / static_cast<double>(dim), 0.0);
        out.rho += iz;
        out.polarization[k] = p1;
    }
    return out;
}

} // namespace nmrqc
