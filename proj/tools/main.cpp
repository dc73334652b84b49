#include "nmrqc/density.hpp"
#include "nmrqc/equivalence.hpp"
#include "nmrqc/lattice.hpp"
#include "nmrqc/propagators.hpp"
#include "nmrqc/seq_compiler.hpp"
#include "nmrqc/seq_parser.hpp"
#include "nmrqc/spectrum.hpp"
#include "nmrqc/spin_system.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json load_json(const std::string& path) {
    return json::parse(read_file(path));
}

std::filesystem::path out_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return std::filesystem::path(out_dir) / name;
}

json matrix_to_json(const nmrqc::ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nmrqc::ComplexMatrix matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) {
        throw std::runtime_error("matrix file: expected a nonempty array of rows");
    }
    nmrqc::ComplexMatrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const json& row = rows.at(r);
        if (!row.is_array() || row.size() != rows.size()) {
            throw std::runtime_error("matrix file: ragged rows");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            const json& e = row.at(c);
            m(r, c) = nmrqc::Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

const nmrqc::SequenceAST& pick_sequence(const nmrqc::ParseResult& file, const std::string& name) {
    if (file.sequences.empty()) {
        throw std::runtime_error("file contains no sequences");
    }
    if (name.empty()) {
        return file.sequences.front();
    }
    for (const nmrqc::SequenceAST& seq : file.sequences) {
        if (seq.name == name) {
            return seq;
        }
    }
    throw std::runtime_error("no sequence named '" + name + "'");
}

struct VerifyOpts {
    std::string file;
    std::string target = "cnot";
    std::string sequence;
};

struct CompileOpts {
    std::string file;
    std::string sequence;
    bool expand_z = false;
    bool optimize = false;
};

struct SpectrumOpts {
    std::string system_file;
    std::string observe;
    bool hyper = false;
    std::string hyper_spin;
    double enhancement = 1e5;
    int sign = 1;
    double temperature_k = 300.0;
    std::size_t points = 4096;
    double dwell_s = 1.0 / 4096.0;
    double linewidth_hz = 20.0;
};

struct LatticeOpts {
    std::string lattice_file;
    std::string script_file;
};

int run_verify(const VerifyOpts& o, double tol, const std::string& /*out_dir*/) {
    const nmrqc::ParseResult file = nmrqc::parse(read_file(o.file));
    const nmrqc::SequenceAST& seq = pick_sequence(file, o.sequence);
    const nmrqc::CompiledUnitary compiled = nmrqc::compile(seq, file.system);

    nmrqc::ComplexMatrix target = o.target == "cnot" ? nmrqc::cnot_matrix()
                                  : o.target == "identity"
                                      ? nmrqc::ComplexMatrix::identity(compiled.matrix.dim())
                                      : matrix_from_json(load_json(o.target));

    std::printf("sequence %s: %zu events, duration %.6g s\n", seq.name.c_str(),
                compiled.event_count, compiled.total_duration_s);
    std::fputs(compiled.matrix.to_string().c_str(), stdout);
    const double fid = nmrqc::phase_fidelity(compiled.matrix, target);
    const bool global_ok = nmrqc::equivalent_global_phase(compiled.matrix, target, tol);
    const bool diag_ok = nmrqc::equivalent_up_to_diagonal_phases(compiled.matrix, target, tol);
    std::printf("phase fidelity vs %s: %.6f\n", o.target.c_str(), fid);
    std::printf("global-phase equivalent:   %s\n", global_ok ? "yes" : "no");
    std::printf("diagonal-phase equivalent: %s\n", diag_ok ? "yes" : "no");
    return global_ok ? 0 : 1;
}

int run_compile(const CompileOpts& o, const std::string& out_dir) {
    const nmrqc::ParseResult file = nmrqc::parse(read_file(o.file));
    nmrqc::SequenceAST seq = pick_sequence(file, o.sequence);
    if (o.expand_z) {
        seq = nmrqc::expand_composite_z(seq);
    }
    if (o.optimize) {
        seq = nmrqc::optimize(seq, file.system);
    }
    const nmrqc::CompiledUnitary compiled = nmrqc::compile(seq, file.system);
    std::printf("sequence %s: %zu events, duration %.6g s, unitarity defect %.3g\n",
                seq.name.c_str(), compiled.event_count, compiled.total_duration_s,
                compiled.matrix.unitarity_defect());
    std::fputs(compiled.matrix.to_string().c_str(), stdout);
    const std::filesystem::path path = out_path(out_dir, "matrix.json");
    std::ofstream out(path);
    out << matrix_to_json(compiled.matrix).dump(2) << '\n';
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int run_spectrum(const SpectrumOpts& o, const std::string& out_dir) {
    const nmrqc::SpinSystem sys = nmrqc::SpinSystem::from_json(load_json(o.system_file));
    nmrqc::DensityState state =
        o.hyper ? nmrqc::hyperpolarized_state(sys, o.hyper_spin.empty() ? o.observe : o.hyper_spin,
                                              o.enhancement, o.sign, o.temperature_k)
                : nmrqc::thermal_state(sys, o.temperature_k);
    state = nmrqc::evolve(
        state, nmrqc::rotation_propagator(sys, o.observe, nmrqc::Axis::Y, std::numbers::pi / 2.0));

    nmrqc::RelaxationParams params;
    params.linewidth_hz.assign(sys.nspins(), o.linewidth_hz);
    const nmrqc::Spectrum spec =
        nmrqc::fid_and_spectrum(state, sys, params, o.observe, o.points, o.dwell_s);

    const std::vector<nmrqc::Peak> peaks = nmrqc::find_peaks(spec);
    std::printf("%zu peak(s):\n", peaks.size());
    for (const nmrqc::Peak& p : peaks) {
        std::printf("  %+.6g Hz  magnitude %.6g\n", p.frequency_hz, p.magnitude);
    }
    const std::filesystem::path path = out_path(out_dir, "spectrum.csv");
    std::ofstream out(path);
    nmrqc::write_csv(spec, out);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

std::size_t script_cell(const nmrqc::Lattice& lat, long value, std::size_t line_no) {
    if (value < 1 || static_cast<std::size_t>(value) > lat.cells.size()) {
        throw std::runtime_error("script line " + std::to_string(line_no) +
                                 ": cell number out of range");
    }
    return static_cast<std::size_t>(value - 1);
}

int run_lattice(const LatticeOpts& o, const std::string& out_dir) {
    nmrqc::Lattice lat = nmrqc::lattice_from_json(load_json(o.lattice_file));
    std::istringstream script(read_file(o.script_file));

    std::vector<nmrqc::TraceRow> trace;
    std::size_t step = 0;
    int exit_code = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(script, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream words(line);
        std::string cmd;
        if (!(words >> cmd)) {
            continue;
        }
        auto bad = [&](const std::string& why) {
            return std::runtime_error("script line " + std::to_string(line_no) + ": " + why);
        };
        if (cmd == "pump") {
            long cell = 0;
            std::string helicity;
            double power = 0.0;
            if (!(words >> cell >> helicity >> power)) {
                throw bad("usage: pump CELL sigma+|sigma- POWER");
            }
            const std::size_t idx = script_cell(lat, cell, line_no);
            nmrqc::PumpConfig cfg = lat.cells[idx].pump;
            cfg.helicity = nmrqc::helicity_from_string(helicity);
            cfg.power_w = power;
            lat.cells[idx] = nmrqc::pump(lat.cells[idx], cfg, lat.constants);
            char op[64];
            std::snprintf(op, sizeof(op), "pump %s %.9g", helicity.c_str(), power);
            trace.push_back({++step, idx, op});
        } else if (cmd == "flip") {
            long cell = 0;
            double freq = 0.0;
            if (!(words >> cell >> freq)) {
                throw bad("usage: flip CELL FREQ_HZ");
            }
            const std::size_t idx = script_cell(lat, cell, line_no);
            lat.cells[idx] = nmrqc::conditional_flip(lat.cells[idx], nmrqc::cell_model(lat, idx),
                                                     freq, lat.constants.flip_bandwidth_hz);
            char op[64];
            std::snprintf(op, sizeof(op), "flip %.9g", freq);
            trace.push_back({++step, idx, op});
        } else if (cmd == "transport") {
            long from = 0;
            long to = 0;
            if (!(words >> from >> to)) {
                throw bad("usage: transport FROM TO");
            }
            const std::size_t a = script_cell(lat, from, line_no);
            const std::size_t b = script_cell(lat, to, line_no);
            try {
                nmrqc::TransportResult result = nmrqc::ca_transport(lat, a, b);
                lat = std::move(result.lattice);
                for (nmrqc::TraceRow& row : result.trace) {
                    row.step = ++step;
                    trace.push_back(std::move(row));
                }
                std::printf("transport %ld->%ld: %zu hops (%zu conditional flips)\n", from, to,
                            result.hops, result.flips);
            } catch (const nmrqc::TransportBlockedError& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                exit_code = 1;
                break;
            }
        } else {
            throw bad("unknown command '" + cmd + "'");
        }
    }

    const std::filesystem::path path = out_path(out_dir, "trace.csv");
    std::ofstream out(path);
    nmrqc::write_trace_csv(trace, out);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), trace.size());
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulse-level simulator and compiler for two-spin NMR logic"};
    app.require_subcommand(1);

    double tol = 1e-9;
    unsigned seed = 0;
    std::string out_dir = ".";
    if (const char* env = std::getenv("NMRQC_OUT")) {
        out_dir = env;
    }
    app.add_option("--tol", tol, "equivalence tolerance")->capture_default_str();
    app.add_option("--seed", seed, "random seed recorded for reproducibility")
        ->capture_default_str();
    app.add_option("--out", out_dir, "output directory for generated files")
        ->capture_default_str();

    VerifyOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "compile a sequence and check equivalence");
    verify->fallthrough();
    verify->add_option("file", vo.file, "pulse-program file")->required();
    verify->add_option("--target", vo.target, "cnot, identity, or a matrix JSON file")
        ->capture_default_str();
    verify->add_option("--sequence", vo.sequence, "sequence name (default: first)");

    CompileOpts co;
    CLI::App* compile = app.add_subcommand("compile", "compile a sequence and dump the matrix");
    compile->fallthrough();
    compile->add_option("file", co.file, "pulse-program file")->required();
    compile->add_option("--sequence", co.sequence, "sequence name (default: first)");
    compile->add_flag("--expand-z", co.expand_z, "expand composite z-pulses first");
    compile->add_flag("--optimize", co.optimize, "run the peephole optimizer first");

    SpectrumOpts so;
    CLI::App* spectrum = app.add_subcommand("spectrum", "simulate a spectrum from a system file");
    spectrum->fallthrough();
    spectrum->add_option("system", so.system_file, "spin-system JSON file")->required();
    spectrum->add_option("--observe", so.observe, "spin label to detect")->required();
    spectrum->add_flag("--hyper", so.hyper, "start from a hyperpolarized state");
    spectrum->add_option("--hyper-spin", so.hyper_spin, "spin to enhance (default: observed)");
    spectrum->add_option("--enhancement", so.enhancement, "polarization enhancement factor")
        ->capture_default_str();
    spectrum->add_option("--sign", so.sign, "hyperpolarization sign, +1 or -1")
        ->capture_default_str();
    spectrum->add_option("--temperature", so.temperature_k, "temperature in kelvin")
        ->capture_default_str();
    spectrum->add_option("--points", so.points, "FID points (power of two)")
        ->capture_default_str();
    spectrum->add_option("--dwell", so.dwell_s, "dwell time in seconds")->capture_default_str();
    spectrum->add_option("--linewidth", so.linewidth_hz, "Lorentzian FWHM in Hz")
        ->capture_default_str();

    LatticeOpts lo;
    CLI::App* lattice = app.add_subcommand("lattice", "run pump/flip/transport script on a lattice");
    lattice->fallthrough();
    lattice->add_option("lattice", lo.lattice_file, "lattice JSON file")->required();
    lattice->add_option("script", lo.script_file, "command script")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            return run_verify(vo, tol, out_dir);
        }
        if (app.got_subcommand(compile)) {
            return run_compile(co, out_dir);
        }
        if (app.got_subcommand(spectrum)) {
            return run_spectrum(so, out_dir);
        }
        return run_lattice(lo, out_dir);
    } catch (const nmrqc::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
