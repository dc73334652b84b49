#include "doctest.h"

#include "nmrqc/propagators.hpp"
#include "nmrqc/spectrum.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

using nmrqc::Complex;
using nmrqc::DensityState;
using nmrqc::RelaxationParams;
using nmrqc::SpinSystem;
using nmrqc::Spectrum;

namespace {

constexpr double kPi = std::numbers::pi;

/// Thermal (or hyperpolarized) state tipped into the transverse plane on the
/// observed spin, the standard pulse-acquire preparation.
DensityState excite(const SpinSystem& sys, const DensityState& st, const std::string& observe) {
    return nmrqc::evolve(st, nmrqc::rotation_propagator(sys, observe, nmrqc::Axis::Y, kPi / 2.0));
}

RelaxationParams linewidths(const SpinSystem& sys, double lw_hz) {
    RelaxationParams params;
    params.linewidth_hz.assign(sys.nspins(), lw_hz);
    return params;
}

double max_magnitude(const Spectrum& spec) {
    double m = 0.0;
    for (const Complex& a : spec.amplitude) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

} // namespace

TEST_CASE("fft matches the direct DFT") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> x(64);
    for (auto& v : x) {
        v = Complex{u(rng), u(rng)};
    }
    auto fast = x;
    nmrqc::fft_radix2(fast);
    const auto slow = oracles::naive_dft(x);
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        worst = std::max(worst, std::abs(fast[k] - slow[k]));
    }
    CHECK(worst < 1e-10);

    SUBCASE("non-power-of-two length is rejected") {
        std::vector<Complex> bad(48);
        CHECK_THROWS_AS(nmrqc::fft_radix2(bad), std::invalid_argument);
    }
}

TEST_CASE("single resonance lands at its offset") {
    SpinSystem sys;
    sys.add_spin("A", "1H");
    sys.set_offset_hz("A", 150.0);
    const auto st = excite(sys, nmrqc::thermal_state(sys, 300.0), "A");
    const auto spec = nmrqc::fid_and_spectrum(st, sys, linewidths(sys, 20.0), "A", 4096,
                                              1.0 / 4096.0);
    CHECK(spec.bin_hz() == doctest::Approx(1.0));
    CHECK(spec.frequency_hz.front() == doctest::Approx(-2048.0));

    const auto peaks = nmrqc::find_peaks(spec);
    REQUIRE(peaks.size() == 1);
    CHECK(std::abs(peaks[0].frequency_hz - 150.0) <= spec.bin_hz());

    SUBCASE("negative offsets land on the negative axis") {
        SpinSystem neg;
        neg.add_spin("A", "1H");
        neg.set_offset_hz("A", -300.0);
        const auto st2 = excite(neg, nmrqc::thermal_state(neg, 300.0), "A");
        const auto spec2 = nmrqc::fid_and_spectrum(st2, neg, linewidths(neg, 20.0), "A", 4096,
                                                   1.0 / 4096.0);
        const auto peaks2 = nmrqc::find_peaks(spec2);
        REQUIRE(peaks2.size() == 1);
        CHECK(std::abs(peaks2[0].frequency_hz + 300.0) <= spec2.bin_hz());
    }
}

TEST_CASE("scalar coupling splits the line into a doublet") {
    for (const double j_hz : {10.0, 50.0, 100.0}) {
        SpinSystem sys;
        sys.add_spin("B", "129Xe");
        sys.add_spin("A", "1H");
        sys.set_offset_hz("A", 150.0);
        sys.set_offset_hz("B", -120.0);
        sys.set_coupling_hz("B", "A", j_hz);

        const auto st = excite(sys, nmrqc::thermal_state(sys, 300.0), "A");
        const auto spec = nmrqc::fid_and_spectrum(st, sys, linewidths(sys, 2.0), "A", 4096,
                                                  1.0 / 4096.0);
        const auto peaks = nmrqc::find_peaks(spec);
        REQUIRE(peaks.size() == 2);
        const double split = std::abs(peaks[1].frequency_hz - peaks[0].frequency_hz);
        CHECK(std::abs(split - j_hz) <= spec.bin_hz());
        const double center = (peaks[1].frequency_hz + peaks[0].frequency_hz) / 2.0;
        CHECK(std::abs(center - 150.0) <= spec.bin_hz());
    }
}

TEST_CASE("hyperpolarization scales the signal by the enhancement") {
    const auto sys = oracles::xe_h_system();
    const auto params = linewidths(sys, 20.0);
    const auto thermal = excite(sys, nmrqc::thermal_state(sys, 300.0), "B");
    const auto hyper =
        excite(sys, nmrqc::hyperpolarized_state(sys, "B", 1.0e5, 1, 300.0), "B");
    const auto spec_t = nmrqc::fid_and_spectrum(thermal, sys, params, "B", 2048, 1.0 / 2048.0);
    const auto spec_h = nmrqc::fid_and_spectrum(hyper, sys, params, "B", 2048, 1.0 / 2048.0);
    const double ratio = max_magnitude(spec_h) / max_magnitude(spec_t);
    CHECK(std::abs(ratio - 1.0e5) / 1.0e5 < 1e-6);
}

TEST_CASE("fitted linewidth reproduces the damping width") {
    SpinSystem sys;
    sys.add_spin("A", "1H");
    sys.set_offset_hz("A", 150.0);
    const auto st = excite(sys, nmrqc::thermal_state(sys, 300.0), "A");
    const auto spec = nmrqc::fid_and_spectrum(st, sys, linewidths(sys, 20.0), "A", 4096,
                                              1.0 / 4096.0);
    const auto peaks = nmrqc::find_peaks(spec);
    REQUIRE(peaks.size() == 1);
    const double fwhm = nmrqc::fitted_fwhm_hz(spec, peaks[0].index);
    CHECK(std::abs(fwhm - 20.0) <= spec.bin_hz());
}

TEST_CASE("peak picking") {
    Spectrum spec;
    for (int j = 0; j < 11; ++j) {
        spec.frequency_hz.push_back(static_cast<double>(j));
        spec.amplitude.push_back(Complex{0.0, 0.0});
    }
    spec.amplitude[2] = Complex{1.0, 0.0};
    spec.amplitude[7] = Complex{0.05, 0.0};

    const auto major = nmrqc::find_peaks(spec); // default 10% floor hides the minor bump
    REQUIRE(major.size() == 1);
    CHECK(major[0].index == 2);
    CHECK(major[0].magnitude == doctest::Approx(1.0));

    const auto all = nmrqc::find_peaks(spec, 0.01);
    CHECK(all.size() == 2);
}

TEST_CASE("half-maximum interpolation on a synthetic absorption line") {
    // Lorentzian of width w sampled off-grid; the interpolated FWHM must come
    // out within a fraction of the sample spacing.
    const double w = 3.0;
    Spectrum spec;
    for (int j = -50; j <= 50; ++j) {
        const double f = 0.4 * static_cast<double>(j);
        spec.frequency_hz.push_back(f);
        spec.amplitude.push_back(Complex{1.0 / (1.0 + std::pow(2.0 * f / w, 2.0)), 0.0});
    }
    const auto peaks = nmrqc::find_peaks(spec);
    REQUIRE(peaks.size() == 1);
    CHECK(nmrqc::fitted_fwhm_hz(spec, peaks[0].index) == doctest::Approx(w).epsilon(0.02));

    SUBCASE("unbracketed half maximum throws") {
        Spectrum flat;
        for (int j = 0; j < 8; ++j) {
            flat.frequency_hz.push_back(static_cast<double>(j));
            flat.amplitude.push_back(Complex{1.0, 0.0});
        }
        CHECK_THROWS_AS(nmrqc::fitted_fwhm_hz(flat, 4), std::domain_error);
        CHECK_THROWS_AS(nmrqc::fitted_fwhm_hz(flat, 99), std::out_of_range);
    }
}

TEST_CASE("spectrum csv serialization") {
    Spectrum spec;
    spec.frequency_hz = {-1.0, 0.0};
    spec.amplitude = {Complex{0.5, -0.25}, Complex{1.0, 0.0}};
    std::ostringstream out;
    nmrqc::write_csv(spec, out);
    const std::string text = out.str();
    CHECK(text.rfind("frequency_hz,real,imag,magnitude\n", 0) == 0);
    CHECK(text.find("-1,0.5,-0.25,") != std::string::npos);

    std::ostringstream again;
    nmrqc::write_csv(spec, again);
    CHECK(text == again.str()); // deterministic formatting
}

TEST_CASE("acquisition parameter validation") {
    const auto sys = oracles::xe_h_system();
    const auto st = nmrqc::thermal_state(sys, 300.0);
    CHECK_THROWS_AS(nmrqc::fid_and_spectrum(st, sys, {}, "A", 1000, 1.0 / 1000.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(nmrqc::fid_and_spectrum(st, sys, {}, "A", 1024, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(nmrqc::fid_and_spectrum(st, sys, {}, "Q", 1024, 1e-3),
                    nmrqc::UnknownSpinError);
    RelaxationParams bad;
    bad.linewidth_hz = {20.0}; // two spins in the system
    CHECK_THROWS_AS(nmrqc::fid_and_spectrum(st, sys, bad, "A", 1024, 1e-3),
                    std::invalid_argument);
}
