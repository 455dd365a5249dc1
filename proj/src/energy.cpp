#include "uavris/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavris/errors.hpp"

namespace uavris {

double propulsion_power(const UavParams& u, double v) {
    if (v < 0.0) throw ValidationError("propulsion_power: speed must be >= 0");
    double v2 = v * v;
    double v0_4 = std::pow(u.mean_rotor_velocity, 4.0);
    double blade = u.blade_power_w * (1.0 + 3.0 * v2 / (u.tip_speed * u.tip_speed));
    double induced =
        u.induced_power_w * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * v0_4)) - v2 / (2.0 * v0_4));
    double parasite = 0.5 * u.fuselage_drag * u.air_density * u.rotor_solidity * u.rotor_disc_area *
                      v2 * v;
    return blade + induced + parasite;
}

double deployment_energy(const Scenario& s, const std::vector<Vec3>& uav_positions) {
    const UavParams& u = s.uav;
    if (u.cruise_speed <= 0.0) throw ValidationError("deployment_energy: cruise speed must be > 0");
    double p_cruise = propulsion_power(u, u.cruise_speed);
    double total = 0.0;
    for (const Vec3& pos : uav_positions) {
        double flight_time = norm(pos - s.geom.uav_start) / u.cruise_speed;
        total += p_cruise * flight_time + u.mass_kg * u.gravity * (pos.z - u.initial_height);
    }
    double m = static_cast<double>(uav_positions.size());
    total += m * u.mass_kg *
             (u.cruise_speed * u.cruise_speed - u.initial_speed * u.initial_speed) / 2.0;
    return total;
}

double comm_power(const Scenario& s, const CMat& beamforming) {
    const RadioParams& r = s.radio;
    double transmit = squared_norm(beamforming) / r.amp_efficiency_mu;
    double gu_circuit = static_cast<double>(s.geom.k_gus()) * r.p_gu_circuit_w;
    double ris = static_cast<double>(s.geom.m_uavs) * r.n_ris() * r.p_ris_element_w;
    return transmit + r.p_bs_circuit_w + gu_circuit + ris;
}

EnergyBreakdown hover_energy(const Scenario& s, const std::vector<double>& rates,
                             const CMat& beamforming) {
    EnergyBreakdown e;
    e.p_comm = comm_power(s, beamforming);
    e.per_gu_tx_time.reserve(rates.size());
    double t_max = 0.0;
    bool unbounded = false;
    for (double rate : rates) {
        double t = rate > 0.0 ? s.radio.data_size_bits / rate
                              : std::numeric_limits<double>::infinity();
        e.per_gu_tx_time.push_back(t);
        if (std::isinf(t))
            unbounded = true;
        else
            t_max = std::max(t_max, t);
    }
    double gravity_power =
        static_cast<double>(s.geom.m_uavs) * (s.uav.blade_power_w + s.uav.induced_power_w);
    if (unbounded) {
        e.t_hover = std::numeric_limits<double>::infinity();
        e.e_hover = kInfeasibleEnergy;
    } else {
        e.t_hover = t_max;
        e.e_hover = (gravity_power + e.p_comm) * e.t_hover;
    }
    return e;
}

} // namespace uavris
