#pragma once

#include "nmrqc/complex_matrix.hpp"
#include "nmrqc/spin_system.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nmrqc {

inline constexpr double kHbarJs = 1.054571817e-34;
inline constexpr double kBoltzmannJK = 1.380649e-23;

/// Ensemble density matrix with per-spin longitudinal polarization bookkeeping.
/// Invariant: polarization[k] = 4 Re tr(rho Iz_k), so thermal states carry the
/// small epsilon of the high-temperature expansion and hyperpolarized states
/// carry +-enhancement*epsilon.
struct DensityState {
    ComplexMatrix rho;
    std::vector<double> polarization;
};

/// Per-spin relaxation inputs, indexed by declaration order. Empty vectors
/// mean "not configured" (infinite T1 / zero linewidth / zero equilibrium).
struct RelaxationParams {
    std::vector<double> t1_s;
    std::vector<double> linewidth_hz;
    std::vector<double> equilibrium_polarization;

    void validate(std::size_t nspins) const;
};

/// Longitudinal polarization read back from a density matrix: 4 Re tr(rho Iz_k).
/// nspins is inferred from the matrix dimension.
double longitudinal_polarization(const ComplexMatrix& rho, std::size_t spin);

/// High-temperature expansion rho = 1/dim + sum_k eps_k Iz_k/dim with
/// eps_k = gamma_k hbar B0 / (kB T).
DensityState thermal_state(const SpinSystem& sys, double temperature_k);

/// Thermal state with the named spin's epsilon replaced by sign*enhancement*epsilon.
/// sign is +1 or -1 (pump-helicity control); enhancement 1, sign +1 reproduces
/// thermal_state exactly.
DensityState hyperpolarized_state(const SpinSystem& sys, const std::string& target,
                                  double enhancement, int sign, double temperature_k);

/// rho' = u rho u+. Rejects non-unitary u; refreshes the polarization bookkeeping.
DensityState evolve(const DensityState& state, const ComplexMatrix& u,
                    double unitarity_tol = 1e-10);

/// Exponential longitudinal relaxation of every spin toward its equilibrium
/// polarization: p(t) = p_eq + (p0 - p_eq) exp(-t/T1). Spins without a
/// configured T1 are untouched.
DensityState t1_decay(const DensityState& state, const RelaxationParams& params,
                      double elapsed_s);

} // namespace nmrqc
