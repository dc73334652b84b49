#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace nmrqc {

struct UnknownSpinError : std::invalid_argument {
    explicit UnknownSpinError(const std::string& label)
        : std::invalid_argument("unknown spin '" + label + "'"), label(label) {}
    std::string label;
};

struct UnknownCouplingError : std::invalid_argument {
    UnknownCouplingError(const std::string& a, const std::string& b)
        : std::invalid_argument("no coupling declared between '" + a + "' and '" + b + "'") {}
};

struct Spin {
    std::string label;
    std::string isotope;
    double gamma_rad_s_t = 0.0; // gyromagnetic ratio, rad s^-1 T^-1
};

/// Labeled spins with resonance offsets and scalar couplings; the tensor
/// ordering of all operators follows the order in which spins were added
/// (first added = leftmost factor). At most 3 spins.
class SpinSystem {
  public:
    SpinSystem() = default;
    explicit SpinSystem(double b0_tesla) : b0_(b0_tesla) {}

    void add_spin(const std::string& label, const std::string& isotope, double gamma_rad_s_t);
    /// Adds a spin with gamma looked up from the isotope table (0 if unknown).
    void add_spin(const std::string& label, const std::string& isotope);

    void set_offset_rad_s(const std::string& label, double omega);
    void set_offset_hz(const std::string& label, double hz);
    void set_coupling_hz(const std::string& a, const std::string& b, double j_hz);

    [[nodiscard]] std::size_t nspins() const { return spins_.size(); }
    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << spins_.size(); }
    [[nodiscard]] std::size_t index_of(const std::string& label) const;
    [[nodiscard]] bool has_spin(const std::string& label) const;
    [[nodiscard]] const Spin& spin(std::size_t index) const { return spins_.at(index); }
    [[nodiscard]] double offset_rad_s(std::size_t index) const { return offsets_.at(index); }

    [[nodiscard]] bool has_coupling(std::size_t i, std::size_t j) const;
    [[nodiscard]] double coupling_hz(std::size_t i, std::size_t j) const;
    /// All declared pairs, each with i < j, in lexicographic index order.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> coupled_pairs() const;

    [[nodiscard]] double b0_tesla() const { return b0_; }
    void set_b0_tesla(double b0) { b0_ = b0; }

    static SpinSystem from_json(const nlohmann::json& doc);
    [[nodiscard]] nlohmann::json to_json() const;

    /// Gyromagnetic ratio for a named isotope (rad s^-1 T^-1); nullopt when
    /// the isotope is not in the built-in table.
    static std::optional<double> isotope_gamma(const std::string& isotope);

  private:
    std::vector<Spin> spins_;
    std::vector<double> offsets_; // rad/s
    std::map<std::pair<std::size_t, std::size_t>, double> couplings_hz_;
    double b0_ = 0.1; // 1 kG default operating field
};

} // namespace nmrqc
