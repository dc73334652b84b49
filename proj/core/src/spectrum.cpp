#include "nmrqc/spectrum.hpp"

#include "nmrqc/propagators.hpp"
#include "nmrqc/spin_ops.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace nmrqc {

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex tr(0.0, 0.0);
    for (std::size_t r = 0; r < a.dim(); ++r) {
        for (std::size_t c = 0; c < a.dim(); ++c) {
            tr += a(r, c) * b(c, r);
        }
    }
    return tr;
}

} // namespace

double Spectrum::bin_hz() const {
    if (frequency_hz.size() < 2) {
        throw std::domain_error("Spectrum: too few points for a bin width");
    }
    return frequency_hz[1] - frequency_hz[0];
}

void fft_radix2(std::vector<Complex>& data) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    }
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(data[i], data[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t base = 0; base < n; base += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const Complex u = data[base + k];
                const Complex v = data[base + k + len / 2] * w;
                data[base + k] = u + v;
                data[base + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

Spectrum fid_and_spectrum(const DensityState& state, const SpinSystem& sys,
                          const RelaxationParams& params, const std::string& observe,
                          std::size_t n_points, double dwell_s) {
    if (!is_power_of_two(n_points) || n_points < 2) {
        throw std::invalid_argument("fid_and_spectrum: n_points must be a power of two >= 2");
    }
    if (!(dwell_s > 0.0)) {
        throw std::invalid_argument("fid_and_spectrum: dwell must be positive");
    }
    if (state.rho.dim() != sys.dim()) {
        throw std::invalid_argument("fid_and_spectrum: state does not match system");
    }
    params.validate(sys.nspins());
    const std::size_t obs = sys.index_of(observe);
    const double lw = params.linewidth_hz.empty() ? 0.0 : params.linewidth_hz[obs];

    const std::size_t n = sys.nspins();
    ComplexMatrix detector = spin_operator(Axis::X, SpinIndex(obs, n));
    ComplexMatrix iy = spin_operator(Axis::Y, SpinIndex(obs, n));
    iy *= Complex(0.0, -1.0);
    detector += iy;

    const ComplexMatrix u_dwell = delay_propagator(sys, dwell_s, false);
    const ComplexMatrix u_dwell_adj = u_dwell.adjoint();

    std::vector<Complex> fid(n_points);
    ComplexMatrix rho = state.rho;
    for (std::size_t k = 0; k < n_points; ++k) {
        const double t = static_cast<double>(k) * dwell_s;
        fid[k] = trace_product(detector, rho) * std::exp(-std::numbers::pi * lw * t);
        rho = u_dwell * rho * u_dwell_adj;
    }

    fft_radix2(fid);
    const double fs = 1.0 / dwell_s;
    Spectrum spec;
    spec.frequency_hz.resize(n_points);
    spec.amplitude.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
        const double offset = static_cast<double>(j) - static_cast<double>(n_points) / 2.0;
        spec.frequency_hz[j] = offset * fs / static_cast<double>(n_points);
        spec.amplitude[j] = fid[(j + n_points / 2) % n_points];
    }
    return spec;
}

std::vector<Peak> find_peaks(const Spectrum& spec, double rel_threshold) {
    const std::size_t n = spec.amplitude.size();
    if (n < 3) {
        return {};
    }
    double max_mag = 0.0;
    for (const Complex& a : spec.amplitude) {
        max_mag = std::max(max_mag, std::abs(a));
    }
    const double floor = rel_threshold * max_mag;
    std::vector<Peak> peaks;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double m = std::abs(spec.amplitude[j]);
        if (m >= floor && m > std::abs(spec.amplitude[j - 1]) &&
            m >= std::abs(spec.amplitude[j + 1])) {
            peaks.push_back(Peak{j, spec.frequency_hz[j], m});
        }
    }
    return peaks;
}

double fitted_fwhm_hz(const Spectrum& spec, std::size_t peak_index) {
    const std::size_t n = spec.amplitude.size();
    if (peak_index >= n) {
        throw std::out_of_range("fitted_fwhm_hz: peak index out of range");
    }
    // Phase so the peak bin is purely absorptive, then bracket the half maximum
    // on the real part. Magnitude lineshapes would read sqrt(3) wide.
    const Complex peak = spec.amplitude[peak_index];
    if (std::abs(peak) == 0.0) {
        throw std::domain_error("fitted_fwhm_hz: empty peak");
    }
    const Complex phase = std::conj(peak) / std::abs(peak);
    auto absorptive = [&](std::size_t j) { return (spec.amplitude[j] * phase).real(); };
    const double half = absorptive(peak_index) / 2.0;

    auto crossing = [&](bool rightward) {
        std::size_t j = peak_index;
        while (true) {
            const std::size_t next = rightward ? j + 1 : j - 1;
            if ((rightward && next >= n) || (!rightward && j == 0)) {
                throw std::domain_error("fitted_fwhm_hz: half maximum not bracketed");
            }
            const double a = absorptive(j);
            const double b = absorptive(next);
            if (b <= half) {
                const double f0 = spec.frequency_hz[j];
                const double f1 = spec.frequency_hz[next];
                return f0 + (f1 - f0) * (half - a) / (b - a);
            }
            j = next;
        }
    };
    const double right = crossing(true);
    const double left = crossing(false);
    return right - left;
}

void write_csv(const Spectrum& spec, std::ostream& out) {
    out << "frequency_hz,real,imag,magnitude\n";
    char line[160];
    for (std::size_t j = 0; j < spec.amplitude.size(); ++j) {
        const Complex& a = spec.amplitude[j];
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g\n", spec.frequency_hz[j], a.real(),
                      a.imag(), std::abs(a));
        out << line;
    }
}

} // namespace nmrqc
