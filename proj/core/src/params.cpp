#include "fob/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fob {

namespace {

void require_finite_positive(double v, const char* name, bool allow_zero = false) {
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be finite and " +
                                    (allow_zero ? ">= 0" : "> 0"));
    }
}

}  // namespace

void PhysicalParams::validate() const {
    require_finite_positive(attenuation_db_per_km, "attenuation_db_per_km");
    require_finite_positive(nonlinearity, "nonlinearity", /*allow_zero=*/true);
    require_finite_positive(length_km, "length_km");
    require_finite_positive(noise_bandwidth_hz, "noise_bandwidth_hz");
    require_finite_positive(emission_factor, "emission_factor");
    require_finite_positive(photon_energy_j, "photon_energy_j");
}

double attenuation_per_m(double alpha_db_per_km) {
    // alpha[m^-1] = alpha[dB/km] * ln10 / (10 * 1000)
    return alpha_db_per_km * std::log(10.0) / 1e4;
}

DiscreteChannelParams derive_discrete(const PhysicalParams& phys) {
    phys.validate();
    DiscreteChannelParams d;
    d.eta = phys.nonlinearity * phys.length_km;  // (W km)^-1 * km
    const double alpha_m = attenuation_per_m(phys.attenuation_db_per_km);
    const double length_m = phys.length_km * 1e3;
    d.noise_power_w = 2.0 * alpha_m * phys.emission_factor * phys.photon_energy_j *
                      length_m * phys.noise_bandwidth_hz;
    return d;
}

double dbm_to_watt(double p_dbm) {
    if (!std::isfinite(p_dbm)) throw std::invalid_argument("dbm_to_watt: non-finite input");
    return std::pow(10.0, p_dbm / 10.0) * 1e-3;
}

double watt_to_dbm(double p_w) {
    if (!std::isfinite(p_w) || p_w <= 0.0) {
        throw std::invalid_argument("watt_to_dbm: power must be finite and > 0");
    }
    return 10.0 * std::log10(p_w / 1e-3);
}

double nats_to_bits(double nats) { return nats / std::log(2.0); }

PhysicalParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    std::map<std::string, double*> fields;
    PhysicalParams p;
    fields["attenuation_db_per_km"] = &p.attenuation_db_per_km;
    fields["nonlinearity"] = &p.nonlinearity;
    fields["length_km"] = &p.length_km;
    fields["noise_bandwidth_hz"] = &p.noise_bandwidth_hz;
    fields["emission_factor"] = &p.emission_factor;
    fields["photon_energy_j"] = &p.photon_energy_j;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string val = line.substr(eq + 1);

        auto it = fields.find(key);
        if (it == fields.end()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        std::istringstream vs(val);
        if (!(vs >> *it->second)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
    p.validate();
    return p;
}

}  // namespace fob
