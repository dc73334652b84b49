#include "nmrqc/spin_system.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace nmrqc {

namespace {
constexpr std::size_t kMaxSpins = 3;
}

void SpinSystem::add_spin(const std::string& label, const std::string& isotope, double gamma_rad_s_t) {
    if (has_spin(label)) {
        throw std::invalid_argument("duplicate spin label '" + label + "'");
    }
    if (spins_.size() >= kMaxSpins) {
        throw std::invalid_argument("spin systems are limited to " + std::to_string(kMaxSpins) + " spins");
    }
    spins_.push_back(Spin{label, isotope, gamma_rad_s_t});
    offsets_.push_back(0.0);
}

void SpinSystem::add_spin(const std::string& label, const std::string& isotope) {
    add_spin(label, isotope, isotope_gamma(isotope).value_or(0.0));
}

void SpinSystem::set_offset_rad_s(const std::string& label, double omega) {
    offsets_.at(index_of(label)) = omega;
}

void SpinSystem::set_offset_hz(const std::string& label, double hz) {
    set_offset_rad_s(label, 2.0 * std::numbers::pi * hz);
}

void SpinSystem::set_coupling_hz(const std::string& a, const std::string& b, double j_hz) {
    const std::size_t i = index_of(a);
    const std::size_t j = index_of(b);
    if (i == j) {
        throw std::invalid_argument("coupling requires two distinct spins, got '" + a + "' twice");
    }
    couplings_hz_[std::minmax(i, j)] = j_hz;
}

std::size_t SpinSystem::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < spins_.size(); ++i) {
        if (spins_[i].label == label) {
            return i;
        }
    }
    throw UnknownSpinError(label);
}

bool SpinSystem::has_spin(const std::string& label) const {
    for (const auto& s : spins_) {
        if (s.label == label) {
            return true;
        }
    }
    return false;
}

bool SpinSystem::has_coupling(std::size_t i, std::size_t j) const {
    return couplings_hz_.count(std::minmax(i, j)) != 0;
}

double SpinSystem::coupling_hz(std::size_t i, std::size_t j) const {
    const auto it = couplings_hz_.find(std::minmax(i, j));
    if (it == couplings_hz_.end()) {
        throw UnknownCouplingError(spins_.at(i).label, spins_.at(j).label);
    }
    return it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> SpinSystem::coupled_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(couplings_hz_.size());
    for (const auto& [pair, j] : couplings_hz_) {
        out.push_back(pair);
    }
    return out;
}

SpinSystem SpinSystem::from_json(const nlohmann::json& doc) {
    SpinSystem sys;
    if (doc.contains("b0_tesla")) {
        sys.set_b0_tesla(doc.at("b0_tesla").get<double>());
    }
    for (const auto& spin : doc.at("spins")) {
        const auto label = spin.at("label").get<std::string>();
        const auto isotope = spin.value("isotope", std::string{});
        if (spin.contains("gamma_rad_s_t")) {
            sys.add_spin(label, isotope, spin.at("gamma_rad_s_t").get<double>());
        } else {
            sys.add_spin(label, isotope);
        }
        if (spin.contains("offset_hz")) {
            sys.set_offset_hz(label, spin.at("offset_hz").get<double>());
        }
    }
    if (doc.contains("couplings")) {
        for (const auto& c : doc.at("couplings")) {
            const auto& pair = c.at("spins");
            sys.set_coupling_hz(pair.at(0).get<std::string>(), pair.at(1).get<std::string>(),
                                c.at("j_hz").get<double>());
        }
    }
    return sys;
}

nlohmann::json SpinSystem::to_json() const {
    nlohmann::json doc;
    doc["b0_tesla"] = b0_;
    doc["spins"] = nlohmann::json::array();
    for (std::size_t i = 0; i < spins_.size(); ++i) {
        nlohmann::json s;
        s["label"] = spins_[i].label;
        s["isotope"] = spins_[i].isotope;
        s["gamma_rad_s_t"] = spins_[i].gamma_rad_s_t;
        s["offset_hz"] = offsets_[i] / (2.0 * std::numbers::pi);
        doc["spins"].push_back(std::move(s));
    }
    doc["couplings"] = nlohmann::json::array();
    for (const auto& [pair, j] : couplings_hz_) {
        nlohmann::json c;
        c["spins"] = {spins_[pair.first].label, spins_[pair.second].label};
        c["j_hz"] = j;
        doc["couplings"].push_back(std::move(c));
    }
    return doc;
}

std::optional<double> SpinSystem::isotope_gamma(const std::string& isotope) {
    // Config defaults, rad s^-1 T^-1.
    static const std::map<std::string, double> table = {
        {"1H", 2.6752e8},  {"13C", 6.7283e7},  {"15N", -2.7116e7}, {"19F", 2.5181e8},
        {"31P", 1.08394e8}, {"129Xe", -7.452e7}, {"131Xe", 2.2091e7},
    };
    const auto it = table.find(isotope);
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

} // namespace nmrqc
