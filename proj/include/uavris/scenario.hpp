#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavris/errors.hpp"
#include "uavris/linalg.hpp"

namespace uavris {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// All radio quantities are stored in SI linear units (watts, Hz, bits).
// dB / dBm appear only in config keys and are converted at the load boundary.
struct RadioParams {
    double bandwidth_hz = 1e6;
    double p_max_w = dbm_to_watts(50.0);
    double p_bs_circuit_w = dbm_to_watts(39.0);
    double noise_power_w = dbm_to_watts(-104.0);
    double p_gu_circuit_w = dbm_to_watts(10.0);
    double p_ris_element_w = dbm_to_watts(10.0);
    double beta0 = db_to_linear(-30.0);     // reference channel gain at 1 m
    double rician_a = db_to_linear(20.0);   // LoS-to-scatter power ratio
    double amp_efficiency_mu = 0.8;
    double data_size_bits = 1e7;
    int n_bs = 32;
    int n_r = 8;
    int n_c = 8;
    int quant_bits_c = 3;
    double element_spacing_ratio = 0.5;     // d / lambda, fixed at 1/2

    int n_ris() const { return n_r * n_c; }
    int phase_levels() const { return 1 << quant_bits_c; }
};

struct UavParams {
    double mass_kg = 2.0;
    double gravity = 9.8;
    double cruise_speed = 10.0;             // V
    double initial_speed = 0.0;             // V0
    double initial_height = 0.0;            // z at takeoff
    double blade_power_w = 79.8563;         // P_B
    double induced_power_w = 88.6279;       // P_I
    double tip_speed = 120.0;               // U_tip
    double mean_rotor_velocity = 4.03;      // v0
    double fuselage_drag = 0.6;             // d0
    double air_density = 1.225;             // rho
    double rotor_solidity = 0.05;           // s
    double rotor_disc_area = 0.503;         // A
};

struct Geometry {
    Vec3 bs_position{0.0, 0.0, 0.0};
    std::vector<Vec3> gu_positions;
    double l_min = 0.0;
    double l_max = 200.0;
    double z_min = 50.0;
    double z_max = 200.0;
    int m_uavs = 4;
    Vec3 uav_start{0.0, 0.0, 0.0};

    int k_gus() const { return static_cast<int>(gu_positions.size()); }
};

struct AlgoParams {
    int pop_size = 50;
    int max_gens = 200;
    double sbx_eta = 20.0;
    double mut_eta = 20.0;
    double crossover_prob = 0.9;
    // When unset, defaults to 1/(3M): one expected flip per position vector.
    std::optional<double> mutation_prob;
    double inertia_eps = 0.4;
    double learn_c1 = 2.0;
    double learn_c2 = 2.0;
    std::uint64_t rng_seed = 1;
    int trials = 30;

    double mutation_prob_for(int m_uavs) const {
        return mutation_prob ? *mutation_prob : 1.0 / (3.0 * m_uavs);
    }
};

struct Scenario {
    RadioParams radio;
    UavParams uav;
    Geometry geom;
    AlgoParams algo;
};

// Table II defaults: 10 fixed ground users (a K-variant takes a prefix).
Scenario default_scenario();

// Throws ValidationError naming the first violated invariant.
void validate(const Scenario& s);

Scenario load_scenario(const std::string& path);
Scenario scenario_from_string(const std::string& text); // same schema, for tests

// Campaign cells reshape a base scenario: M UAVs, first K ground users.
Scenario with_m_and_k(const Scenario& base, int m_uavs, int k_gus);

} // namespace uavris
