#pragma once

#include "nmrqc/density.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmrqc {

/// 31P gyromagnetic ratio, rad s^-1 T^-1.
inline constexpr double kGamma31P = 1.08394e8;

enum class Helicity { SigmaPlus, SigmaMinus };

std::string helicity_to_string(Helicity h);
Helicity helicity_from_string(const std::string& text);

struct PumpConfig {
    Helicity helicity = Helicity::SigmaMinus;
    double power_w = 0.0;
    double band_gap_ev = 1.42; // stored config constant for the pump tuning
};

/// Hyperfine frequency-shift model: shift = A * rho * <Sz>, resonance
/// nu = gamma B0 / 2pi + shift.
struct OverhauserModel {
    double coupling_a_hz = 1e5;
    double density_rho = 1.0;
    double gamma_rad_s_t = kGamma31P;
    double b0_tesla = 2.0;
};

/// One lattice site. The electron spin is a classical control variable in
/// [-1/2, +1/2]; only the nuclear qubit is density-matrix simulated.
struct Cell {
    std::size_t index = 0;
    double z_m = 0.0;
    PumpConfig pump{};
    double electron_sz = 0.0;
    DensityState qubit;
};

/// Named configuration constants; none of these have first-principles values
/// in the underlying gate model, so they ship as documented defaults.
struct LatticeConstants {
    double coupling_a_hz = 1e5;     // Overhauser shift scale A
    double density_rho = 1.0;       // electron density envelope rho(z')
    double p_sat_w = 1.0;           // saturation power of the pump law
    double j_max_hz = 100.0;        // mediated coupling at full saturation
    double gamma_rad_s_t = kGamma31P;
    double b0_tesla = 2.0;
    double linewidth_hz = 20.0;     // addressability criterion
    double flip_bandwidth_hz = 1e4; // selective-pulse bandwidth
};

struct Lattice {
    std::vector<Cell> cells;
    double gradient_t_m = 0.0;
    LatticeConstants constants{};
};

/// Single-spin diagonal state with the given <sigma_z> in [-1, +1].
DensityState nuclear_state(double sigma_z);
double nuclear_sigma_z(const DensityState& qubit);

/// Bounded monotone pump response P/(P + P_sat).
double saturation(double power_w, double p_sat_w);

/// Optical pumping: sigma- drives the electron toward +1/2, sigma+ toward
/// -1/2, scaled by the saturation law. A nonzero pump also reinitializes the
/// nuclear qubit along z with the electron's sign (hyperfine transfer);
/// zero power leaves both untouched.
Cell pump(const Cell& cell, const PumpConfig& config, const LatticeConstants& k);

/// Convex polarization transfer: target' = eta*source + (1-eta)*target.
double cross_polarize(double source_pol, double target_pol, double efficiency);

/// Gate selection by the (Xe, H) polarization sign pair. The two pulse
/// sequences act as the same controlled rotation with opposite sense.
enum class CpAction { NoOp, SequenceA, SequenceB };
CpAction cp_gate(int xe_sign, int h_sign);
double cp_rotation_sense(CpAction action); // +1 (A), -1 (B), 0 (no-op)

double overhauser_shift(const OverhauserModel& model, double electron_sz);
double resonance_frequency(const OverhauserModel& model, double electron_sz);

/// The Overhauser model of one cell, assembled from the lattice constants.
OverhauserModel cell_model(const Lattice& lat, std::size_t cell);

/// Selective pi rotation of the cell's nuclear qubit, applied only when the
/// pulse falls within bandwidth/2 of the cell's shifted resonance. With the
/// electron prepared as control this is a CNOT on basis states.
Cell conditional_flip(const Cell& cell, const OverhauserModel& model, double pulse_freq_hz,
                      double bandwidth_hz);

/// Laser-mediated coupling J_eff = J_max * P/(P + P_sat).
double mediated_coupling(double power_w, const LatticeConstants& k);

/// Mediated coupling between cells (left, left+1); the link saturates at the
/// weaker of the two pump powers.
double pair_coupling_hz(const Lattice& lat, std::size_t left);

struct TraceRow {
    std::size_t step = 0;
    std::size_t cell = 0; // 0-based; rendered 1-based in CSV
    std::string operation;
};

class TransportBlockedError : public std::runtime_error {
  public:
    explicit TransportBlockedError(std::size_t gap_cell)
        : std::runtime_error("transport blocked at cell " + std::to_string(gap_cell + 1)),
          gap_cell_(gap_cell) {}

    [[nodiscard]] std::size_t gap_cell() const noexcept { return gap_cell_; }

  private:
    std::size_t gap_cell_;
};

struct TransportResult {
    Lattice lattice;
    std::size_t hops = 0;
    std::size_t flips = 0; // conditional-flip invocations, 3 per hop
    std::vector<TraceRow> trace;
};

/// Move the qubit state from one cell to another by nearest-neighbor SWAPs,
/// each built from three electron-controlled conditional flips. Exact on
/// basis states; throws TransportBlockedError when a link on the path has
/// zero mediated coupling.
TransportResult ca_transport(const Lattice& lat, std::size_t from, std::size_t to);

/// Gradient addressing frequency nu(z) = gamma (B0 + G z) / 2pi.
double gradient_address(const Lattice& lat, std::size_t cell);

/// Two cells are addressable when their frequency gap exceeds the linewidth.
bool addressable(const Lattice& lat, std::size_t a, std::size_t b);

Lattice lattice_from_json(const nlohmann::json& doc);
nlohmann::json lattice_to_json(const Lattice& lat);

/// CSV with header step,cell,operation; cell numbers are 1-based.
void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out);

} // namespace nmrqc
