#pragma once

#include <utility>
#include <vector>

#include "uavris/linalg.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

// Quantized phase-shift indices of all RISs, row-major M x N_RIS.
// Index n of RIS m maps to the phase (2*pi / levels) * idx.
struct PhaseMatrix {
    int n_ris = 0;
    int levels = 2;
    std::vector<int> idx;

    PhaseMatrix() = default;
    PhaseMatrix(int m, int n_ris_, int levels_)
        : n_ris(n_ris_), levels(levels_), idx(static_cast<std::size_t>(m) * n_ris_, 0) {}

    int m_count() const { return n_ris == 0 ? 0 : static_cast<int>(idx.size()) / n_ris; }
    int& at(int m, int n) { return idx[static_cast<std::size_t>(m) * n_ris + n]; }
    int at(int m, int n) const { return idx[static_cast<std::size_t>(m) * n_ris + n]; }
    double theta(int m, int n) const { return kTwoPi * at(m, n) / levels; }
    cplx unit(int m, int n) const { return std::polar(1.0, theta(m, n)); }

    bool operator==(const PhaseMatrix&) const = default;
};

// Progressive-phase response of an n_c x n_r planar array at half-wavelength
// spacing: element (p*n_r + q) = exp(j*pi*(p*phi + q*omega)).
cvec planar_response(double phi, double omega, int n_c, int n_r);

// Half-wavelength line array: entry p = exp(j*pi*p*sin_theta).
cvec linear_response(double sin_theta, int n);

// Per-candidate derived channel quantities.
struct ChannelState {
    std::vector<CMat> g_bs_to_ris;              // M matrices, N_RIS x N_BS
    std::vector<std::vector<cvec>> h_ris_to_gu; // [k][m], length N_RIS
    std::vector<cvec> effective;                // K rows of length N_BS
};

CMat bs_to_ris_channel(const Scenario& s, const Vec3& uav_pos);
cvec ris_to_gu_channel(const Scenario& s, const Vec3& uav_pos, const Vec3& gu_pos);

// Lean path used by the evaluator: effective per-user rows without
// materializing the per-RIS matrices (rank-1 contraction).
std::vector<cvec> effective_rows(const Scenario& s, const std::vector<Vec3>& uav_positions,
                                 const PhaseMatrix& phases);

ChannelState effective_channels(const Scenario& s, const std::vector<Vec3>& uav_positions,
                                const PhaseMatrix& phases);

// beamforming is N_BS x K; returns (sinr, rates) per user.
std::pair<std::vector<double>, std::vector<double>>
sinr_and_rates(const Scenario& s, const ChannelState& state, const CMat& beamforming);

std::pair<std::vector<double>, std::vector<double>>
sinr_and_rates_rows(const Scenario& s, const std::vector<cvec>& effective, const CMat& beamforming);

} // namespace uavris
