#pragma once

#include <string>

namespace fob {

/// Fiber and amplifier constants. Power-related quantities are in linear
/// units (watts, hertz, joules); attenuation is kept in its customary
/// dB/km form and converted where needed.
struct PhysicalParams {
    double attenuation_db_per_km = 0.2;     // alpha
    double nonlinearity = 1.27;             // gamma, (W km)^-1, >= 0
    double length_km = 5000.0;              // L
    double noise_bandwidth_hz = 125e9;      // W_N
    double emission_factor = 1.0;           // n_sp
    double photon_energy_j = 1.28e-19;      // h*nu (stored as the product)

    void validate() const;  // throws std::invalid_argument
};

/// Per-sample discrete-model constants derived from PhysicalParams.
struct DiscreteChannelParams {
    double eta = 0.0;           // nonlinear strength, W^-1
    double noise_power_w = 0.0; // total noise power P_N, W
};

// dB/km -> nepers/m
double attenuation_per_m(double alpha_db_per_km);

DiscreteChannelParams derive_discrete(const PhysicalParams& phys);

double dbm_to_watt(double p_dbm);
double watt_to_dbm(double p_w);  // requires p_w > 0

double nats_to_bits(double nats);

/// Reads the six physical fields from a flat key = value config file
/// (TOML syntax, '#' comments). Unknown keys are rejected.
PhysicalParams load_params(const std::string& path);

}  // namespace fob
