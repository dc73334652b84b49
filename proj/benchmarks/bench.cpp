#include "nmrqc/lattice.hpp"
#include "nmrqc/propagators.hpp"
#include "nmrqc/seq_compiler.hpp"
#include "nmrqc/seq_parser.hpp"
#include "nmrqc/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <numbers>
#include <string>

namespace {

const std::string kCnotProgram = "system {\n"
                                 "  spin B \"129Xe\"\n"
                                 "  spin A \"1H\"\n"
                                 "  J B A 100 Hz\n"
                                 "}\n"
                                 "sequence cnot {\n"
                                 "  pulse A y 90\n"
                                 "  delay 1/(2*J) refocus\n"
                                 "  zpulse A -90\n"
                                 "  zpulse B -90\n"
                                 "  pulse A y -90\n"
                                 "}\n";

void bm_parse_and_compile_cnot(benchmark::State& state) {
    for (auto _ : state) {
        const auto file = nmrqc::parse(kCnotProgram);
        const auto u = nmrqc::compile(file.sequences[0], file.system);
        benchmark::DoNotOptimize(u.matrix(0, 0));
    }
}
BENCHMARK(bm_parse_and_compile_cnot);

void bm_compile_cnot(benchmark::State& state) {
    const auto file = nmrqc::parse(kCnotProgram);
    for (auto _ : state) {
        const auto u = nmrqc::compile(file.sequences[0], file.system);
        benchmark::DoNotOptimize(u.matrix(0, 0));
    }
}
BENCHMARK(bm_compile_cnot);

void bm_three_spin_delay_propagator(benchmark::State& state) {
    // 8x8 hermitian exponential, the largest matrix the simulator handles.
    nmrqc::SpinSystem sys;
    sys.add_spin("A", "1H");
    sys.add_spin("B", "13C");
    sys.add_spin("C", "15N");
    sys.set_offset_hz("A", 150.0);
    sys.set_offset_hz("B", -120.0);
    sys.set_offset_hz("C", 75.0);
    sys.set_coupling_hz("A", "B", 100.0);
    sys.set_coupling_hz("B", "C", 35.0);
    for (auto _ : state) {
        const auto u = nmrqc::delay_propagator(sys, 1.25e-3, false);
        benchmark::DoNotOptimize(u(0, 0));
    }
}
BENCHMARK(bm_three_spin_delay_propagator);

void bm_spectrum_4096(benchmark::State& state) {
    nmrqc::SpinSystem sys;
    sys.add_spin("B", "129Xe");
    sys.add_spin("A", "1H");
    sys.set_offset_hz("A", 150.0);
    sys.set_offset_hz("B", -120.0);
    sys.set_coupling_hz("B", "A", 100.0);
    const auto st = nmrqc::evolve(
        nmrqc::thermal_state(sys, 300.0),
        nmrqc::rotation_propagator(sys, "A", nmrqc::Axis::Y, std::numbers::pi / 2.0));
    nmrqc::RelaxationParams params;
    params.linewidth_hz = {20.0, 20.0};
    for (auto _ : state) {
        const auto spec = nmrqc::fid_and_spectrum(st, sys, params, "A", 4096, 1.0 / 4096.0);
        benchmark::DoNotOptimize(spec.amplitude[0]);
    }
}
BENCHMARK(bm_spectrum_4096);

void bm_transport_16_cells(benchmark::State& state) {
    nmrqc::Lattice lat;
    for (std::size_t i = 0; i < 16; ++i) {
        lat.cells.push_back(nmrqc::Cell{i, static_cast<double>(i) * 1e-3,
                                        nmrqc::PumpConfig{nmrqc::Helicity::SigmaMinus, 5.0, 1.42},
                                        0.0, nmrqc::nuclear_state(i == 0 ? -1.0 : 1.0)});
    }
    for (auto _ : state) {
        const auto moved = nmrqc::ca_transport(lat, 0, 15);
        benchmark::DoNotOptimize(moved.hops);
    }
}
BENCHMARK(bm_transport_16_cells);

} // namespace

BENCHMARK_MAIN();
