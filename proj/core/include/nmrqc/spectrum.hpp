#pragma once

#include "nmrqc/density.hpp"
#include "nmrqc/spin_system.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace nmrqc {

/// Frequency-domain signal on an ascending axis -fs/2 .. +fs/2 - 1 bin.
struct Spectrum {
    std::vector<double> frequency_hz;
    std::vector<Complex> amplitude;

    double bin_hz() const;
};

struct Peak {
    std::size_t index;
    double frequency_hz;
    double magnitude;
};

/// In-place forward DFT, X_m = sum_k x_k exp(-2 pi i m k / N). N must be a
/// power of two.
void fft_radix2(std::vector<Complex>& data);

/// Simulate the complex FID s(t) = tr((Ix - i Iy)_obs rho(t)) under free
/// evolution, damped by exp(-pi * linewidth * t), and return its spectrum.
/// The Ix - i Iy detector places a spin at offset +Omega at +Omega/2pi Hz.
/// n_points must be a power of two; dwell > 0.
Spectrum fid_and_spectrum(const DensityState& state, const SpinSystem& sys,
                          const RelaxationParams& params, const std::string& observe,
                          std::size_t n_points, double dwell_s);

/// Local maxima of the magnitude spectrum above rel_threshold * max magnitude.
std::vector<Peak> find_peaks(const Spectrum& spec, double rel_threshold = 0.1);

/// Full width at half maximum of the phased absorption lineshape around one
/// peak, by linear interpolation of the half-maximum crossings.
double fitted_fwhm_hz(const Spectrum& spec, std::size_t peak_index);

/// CSV with header frequency_hz,real,imag,magnitude. Deterministic formatting.
void write_csv(const Spectrum& spec, std::ostream& out);

} // namespace nmrqc
