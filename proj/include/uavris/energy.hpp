#pragma once

#include <vector>

#include "uavris/linalg.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

// Finite stand-in for an unbounded hover (some user has zero rate); keeps
// dominance comparisons total.
inline constexpr double kInfeasibleEnergy = 1e12;

struct EnergyBreakdown {
    double e_deploy = 0.0;                // J
    double e_hover = 0.0;                 // J, kInfeasibleEnergy when unbounded
    double p_comm = 0.0;                  // W
    double t_hover = 0.0;                 // s, +inf when some rate is zero
    std::vector<double> per_gu_tx_time;   // s

    double total() const { return e_deploy + e_hover; }
};

// Rotary-wing propulsion power at forward speed v.
double propulsion_power(const UavParams& u, double v);

// Climb-out energy for all UAVs flying from the configured start point to
// their hover positions at cruise speed: propulsion over the flight time,
// potential energy, and the fleet kinetic term.
double deployment_energy(const Scenario& s, const std::vector<Vec3>& uav_positions);

// Transmit power (amplifier-scaled), BS and GU circuit power, RIS elements.
double comm_power(const Scenario& s, const CMat& beamforming);

// Hover-phase breakdown given per-user rates; e_deploy is left at zero.
EnergyBreakdown hover_energy(const Scenario& s, const std::vector<double>& rates,
                             const CMat& beamforming);

} // namespace uavris
