#include "nmrqc/lattice.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace nmrqc {

namespace {

ComplexMatrix pi_x_rotation() {
    // exp(i pi Ix) = i sigma_x; the i is a global phase on the qubit.
    return ComplexMatrix::from_rows({{Complex(0.0, 0.0), Complex(0.0, 1.0)},
                                     {Complex(0.0, 1.0), Complex(0.0, 0.0)}});
}

void check_cell_index(const Lattice& lat, std::size_t cell, const char* who) {
    if (cell >= lat.cells.size()) {
        throw std::out_of_range(std::string(who) + ": cell index out of range");
    }
}

} // namespace

std::string helicity_to_string(Helicity h) {
    return h == Helicity::SigmaPlus ? "sigma+" : "sigma-";
}

Helicity helicity_from_string(const std::string& text) {
    if (text == "sigma+") {
        return Helicity::SigmaPlus;
    }
    if (text == "sigma-") {
        return Helicity::SigmaMinus;
    }
    throw std::invalid_argument("helicity must be \"sigma+\" or \"sigma-\", got \"" + text + "\"");
}

DensityState nuclear_state(double sigma_z) {
    if (std::abs(sigma_z) > 1.0) {
        throw std::domain_error("nuclear_state: <sigma_z> must lie in [-1, 1]");
    }
    ComplexMatrix rho = ComplexMatrix::diagonal(
        std::vector<Complex>{Complex((1.0 + sigma_z) / 2.0, 0.0),
                             Complex((1.0 - sigma_z) / 2.0, 0.0)});
    return DensityState{std::move(rho), {2.0 * sigma_z}};
}

double nuclear_sigma_z(const DensityState& qubit) {
    if (qubit.rho.dim() != 2) {
        throw std::invalid_argument("nuclear_sigma_z: expected a single-spin state");
    }
    return qubit.rho(0, 0).real() - qubit.rho(1, 1).real();
}

double saturation(double power_w, double p_sat_w) {
    if (power_w < 0.0) {
        throw std::domain_error("saturation: negative power");
    }
    if (!(p_sat_w > 0.0)) {
        throw std::domain_error("saturation: saturation power must be positive");
    }
    return power_w / (power_w + p_sat_w);
}

Cell pump(const Cell& cell, const PumpConfig& config, const LatticeConstants& k) {
    const double sat = saturation(config.power_w, k.p_sat_w);
    const double sign = config.helicity == Helicity::SigmaMinus ? 1.0 : -1.0;
    Cell out = cell;
    out.pump = config;
    out.electron_sz = 0.5 * sign * sat;
    if (out.electron_sz != 0.0) {
        out.qubit = nuclear_state(2.0 * out.electron_sz);
    }
    return out;
}

double cross_polarize(double source_pol, double target_pol, double efficiency) {
    if (efficiency < 0.0 || efficiency > 1.0) {
        throw std::domain_error("cross_polarize: efficiency must lie in [0, 1]");
    }
    return efficiency * source_pol + (1.0 - efficiency) * target_pol;
}

CpAction cp_gate(int xe_sign, int h_sign) {
    if ((xe_sign != 1 && xe_sign != -1) || (h_sign != 1 && h_sign != -1)) {
        throw std::invalid_argument("cp_gate: signs must be +1 or -1");
    }
    if (xe_sign < 0) {
        return CpAction::NoOp;
    }
    return h_sign > 0 ? CpAction::SequenceA : CpAction::SequenceB;
}

double cp_rotation_sense(CpAction action) {
    switch (action) {
    case CpAction::SequenceA: return 1.0;
    case CpAction::SequenceB: return -1.0;
    case CpAction::NoOp: return 0.0;
    }
    throw std::invalid_argument("cp_rotation_sense: bad action");
}

double overhauser_shift(const OverhauserModel& model, double electron_sz) {
    if (std::abs(electron_sz) > 0.5) {
        throw std::domain_error("overhauser_shift: |<Sz>| must not exceed 1/2");
    }
    if (model.density_rho < 0.0) {
        throw std::domain_error("overhauser_shift: negative density");
    }
    return model.coupling_a_hz * model.density_rho * electron_sz;
}

double resonance_frequency(const OverhauserModel& model, double electron_sz) {
    return model.gamma_rad_s_t * model.b0_tesla / (2.0 * std::numbers::pi) +
           overhauser_shift(model, electron_sz);
}

OverhauserModel cell_model(const Lattice& lat, std::size_t cell) {
    check_cell_index(lat, cell, "cell_model");
    return OverhauserModel{lat.constants.coupling_a_hz, lat.constants.density_rho,
                           lat.constants.gamma_rad_s_t, lat.constants.b0_tesla};
}

Cell conditional_flip(const Cell& cell, const OverhauserModel& model, double pulse_freq_hz,
                      double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) {
        throw std::domain_error("conditional_flip: bandwidth must be positive");
    }
    Cell out = cell;
    const double nu = resonance_frequency(model, cell.electron_sz);
    if (std::abs(pulse_freq_hz - nu) <= bandwidth_hz / 2.0) {
        out.qubit = evolve(cell.qubit, pi_x_rotation());
    }
    return out;
}

double mediated_coupling(double power_w, const LatticeConstants& k) {
    return k.j_max_hz * saturation(power_w, k.p_sat_w);
}

double pair_coupling_hz(const Lattice& lat, std::size_t left) {
    check_cell_index(lat, left + 1, "pair_coupling_hz");
    const double p = std::min(lat.cells[left].pump.power_w, lat.cells[left + 1].pump.power_w);
    return mediated_coupling(p, lat.constants);
}

namespace {

/// CNOT with the control nucleus read classically (via its Overhauser shift)
/// and the target's electron steered so a pulse at nu(+1/2) flips the target
/// nucleus exactly when the control is |1> (<sigma_z> < 0).
void cross_cnot(Lattice& lat, std::size_t control, std::size_t target, std::size_t& step,
                std::size_t& flips, std::vector<TraceRow>& trace) {
    const double ctrl_sz = nuclear_sigma_z(lat.cells[control].qubit);
    lat.cells[target].electron_sz = ctrl_sz < 0.0 ? 0.5 : -0.5;
    const OverhauserModel model = cell_model(lat, target);
    const double pulse = resonance_frequency(model, 0.5);
    lat.cells[target] =
        conditional_flip(lat.cells[target], model, pulse, lat.constants.flip_bandwidth_hz);
    ++flips;
    ++step;
    trace.push_back(TraceRow{step, target,
                             "cnot " + std::to_string(control + 1) + "->" +
                                 std::to_string(target + 1)});
}

} // namespace

TransportResult ca_transport(const Lattice& lat, std::size_t from, std::size_t to) {
    check_cell_index(lat, from, "ca_transport");
    check_cell_index(lat, to, "ca_transport");
    TransportResult result{lat, 0, 0, {}};
    std::size_t step = 0;
    const std::ptrdiff_t dir = to >= from ? 1 : -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from);
         i != static_cast<std::ptrdiff_t>(to); i += dir) {
        const std::size_t a = static_cast<std::size_t>(i);
        const std::size_t b = static_cast<std::size_t>(i + dir);
        const std::size_t left = std::min(a, b);
        if (pair_coupling_hz(result.lattice, left) <= 0.0) {
            const std::size_t gap =
                result.lattice.cells[b].pump.power_w <= result.lattice.cells[a].pump.power_w ? b
                                                                                             : a;
            throw TransportBlockedError(gap);
        }
        cross_cnot(result.lattice, a, b, step, result.flips, result.trace);
        cross_cnot(result.lattice, b, a, step, result.flips, result.trace);
        cross_cnot(result.lattice, a, b, step, result.flips, result.trace);
        ++result.hops;
    }
    return result;
}

double gradient_address(const Lattice& lat, std::size_t cell) {
    check_cell_index(lat, cell, "gradient_address");
    return lat.constants.gamma_rad_s_t *
           (lat.constants.b0_tesla + lat.gradient_t_m * lat.cells[cell].z_m) /
           (2.0 * std::numbers::pi);
}

bool addressable(const Lattice& lat, std::size_t a, std::size_t b) {
    return std::abs(gradient_address(lat, a) - gradient_address(lat, b)) >
           lat.constants.linewidth_hz;
}

Lattice lattice_from_json(const nlohmann::json& doc) {
    Lattice lat;
    lat.gradient_t_m = doc.value("gradient_t_m", 0.0);
    if (doc.contains("constants")) {
        const nlohmann::json& k = doc.at("constants");
        LatticeConstants defaults;
        lat.constants.coupling_a_hz = k.value("coupling_a_hz", defaults.coupling_a_hz);
        lat.constants.density_rho = k.value("density_rho", defaults.density_rho);
        lat.constants.p_sat_w = k.value("p_sat_w", defaults.p_sat_w);
        lat.constants.j_max_hz = k.value("j_max_hz", defaults.j_max_hz);
        lat.constants.gamma_rad_s_t = k.value("gamma_rad_s_t", defaults.gamma_rad_s_t);
        lat.constants.b0_tesla = k.value("b0_tesla", defaults.b0_tesla);
        lat.constants.linewidth_hz = k.value("linewidth_hz", defaults.linewidth_hz);
        lat.constants.flip_bandwidth_hz =
            k.value("flip_bandwidth_hz", defaults.flip_bandwidth_hz);
    }
    if (doc.contains("cells")) {
        std::size_t index = 0;
        for (const nlohmann::json& c : doc.at("cells")) {
            PumpConfig pump_cfg;
            pump_cfg.helicity = helicity_from_string(c.value("helicity", std::string("sigma-")));
            pump_cfg.power_w = c.value("power_w", 0.0);
            pump_cfg.band_gap_ev = c.value("band_gap_ev", pump_cfg.band_gap_ev);
            if (pump_cfg.power_w < 0.0) {
                throw std::domain_error("lattice_from_json: negative pump power");
            }
            Cell cell{index,
                      c.value("z_m", static_cast<double>(index) * 1e-3),
                      pump_cfg,
                      c.value("electron_sz", 0.0),
                      nuclear_state(c.value("nuclear_sigma_z", 1.0))};
            if (std::abs(cell.electron_sz) > 0.5) {
                throw std::domain_error("lattice_from_json: |electron_sz| must not exceed 1/2");
            }
            lat.cells.push_back(std::move(cell));
            ++index;
        }
    }
    return lat;
}

nlohmann::json lattice_to_json(const Lattice& lat) {
    nlohmann::json doc;
    doc["gradient_t_m"] = lat.gradient_t_m;
    doc["constants"] = {{"coupling_a_hz", lat.constants.coupling_a_hz},
                        {"density_rho", lat.constants.density_rho},
                        {"p_sat_w", lat.constants.p_sat_w},
                        {"j_max_hz", lat.constants.j_max_hz},
                        {"gamma_rad_s_t", lat.constants.gamma_rad_s_t},
                        {"b0_tesla", lat.constants.b0_tesla},
                        {"linewidth_hz", lat.constants.linewidth_hz},
                        {"flip_bandwidth_hz", lat.constants.flip_bandwidth_hz}};
    doc["cells"] = nlohmann::json::array();
    for (const Cell& cell : lat.cells) {
        doc["cells"].push_back({{"z_m", cell.z_m},
                                {"helicity", helicity_to_string(cell.pump.helicity)},
                                {"power_w", cell.pump.power_w},
                                {"band_gap_ev", cell.pump.band_gap_ev},
                                {"electron_sz", cell.electron_sz},
                                {"nuclear_sigma_z", nuclear_sigma_z(cell.qubit)}});
    }
    return doc;
}

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out) {
    out << "step,cell,operation\n";
    for (const TraceRow& row : trace) {
        out << row.step << ',' << row.cell + 1 << ',' << row.operation << '\n';
    }
}

} // namespace nmrqc
