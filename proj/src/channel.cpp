#include "uavris/channel.hpp"

#include <algorithm>
#include <cmath>

#include "uavris/errors.hpp"

namespace uavris {

namespace {

constexpr double kAngleSlack = 1e-9;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Zenith/azimuth geometry shared by both link directions. The azimuth is
// undefined when the horizontal offset vanishes; the limit direction is
// straight up, where phi = omega = 0 for any azimuth, so 0 is used.
struct LinkAngles {
    double sin_zenith; // sin(theta), equals horizontal/total distance
    double azimuth;    // eta
};

} // namespace

cvec planar_response(double phi, double omega, int n_c, int n_r) {
    if (std::abs(phi) > 1.0 + kAngleSlack || std::abs(omega) > 1.0 + kAngleSlack)
        throw ValidationError("planar_response: angle parameters must lie in [-1, 1]");
    if (n_c < 1 || n_r < 1) throw ValidationError("planar_response: array axes must be >= 1");
    cvec out(static_cast<std::size_t>(n_c) * n_r);
    for (int p = 0; p < n_c; ++p)
        for (int q = 0; q < n_r; ++q)
            out[static_cast<std::size_t>(p) * n_r + q] = std::polar(1.0, kPi * (p * phi + q * omega));
    return out;
}

cvec linear_response(double sin_theta, int n) {
    if (std::abs(sin_theta) > 1.0 + kAngleSlack)
        throw ValidationError("linear_response: sin_theta must lie in [-1, 1]");
    if (n < 1) throw ValidationError("linear_response: array size must be >= 1");
    cvec out(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) out[static_cast<std::size_t>(p)] = std::polar(1.0, kPi * p * sin_theta);
    return out;
}

namespace {

double los_prefactor(const RadioParams& r, double distance) {
    return std::sqrt(r.beta0 / (distance * distance)) * std::sqrt(r.rician_a / (1.0 + r.rician_a));
}

// Receive side at the RIS: zenith from horizontal/total ratio, azimuth from
// the |x| offset via arccos.
LinkAngles rx_angles(const Vec3& uav, const Vec3& bs, double dist) {
    double h = hnorm(uav - bs);
    LinkAngles a;
    a.sin_zenith = clamp_unit(h / dist);
    a.azimuth = h > 0.0 ? std::acos(clamp_unit(std::abs(uav.x - bs.x) / h)) : 0.0;
    return a;
}

// Transmit side toward a ground user: azimuth from the |y| offset via arcsin.
LinkAngles tx_angles(const Vec3& uav, const Vec3& gu, double dist) {
    double h = hnorm(uav - gu);
    LinkAngles a;
    a.sin_zenith = clamp_unit(h / dist);
    a.azimuth = h > 0.0 ? std::asin(clamp_unit(std::abs(uav.y - gu.y) / h)) : 0.0;
    return a;
}

} // namespace

CMat bs_to_ris_channel(const Scenario& s, const Vec3& uav_pos) {
    const RadioParams& r = s.radio;
    double dist = norm(uav_pos - s.geom.bs_position);
    if (dist <= 0.0) throw ValidationError("bs_to_ris_channel: UAV coincides with the BS");
    if (uav_pos.z <= 0.0) throw ValidationError("bs_to_ris_channel: UAV must be above ground");

    LinkAngles ang = rx_angles(uav_pos, s.geom.bs_position, dist);
    double phi = ang.sin_zenith * std::cos(ang.azimuth);
    double omega = ang.sin_zenith * std::sin(ang.azimuth);
    cvec a_r = planar_response(phi, omega, r.n_c, r.n_r);
    cvec a_t = linear_response(ang.sin_zenith, r.n_bs);
    double pref = los_prefactor(r, dist);

    CMat g(r.n_ris(), r.n_bs);
    for (int i = 0; i < r.n_ris(); ++i)
        for (int j = 0; j < r.n_bs; ++j)
            g(i, j) = pref * a_r[static_cast<std::size_t>(i)] * std::conj(a_t[static_cast<std::size_t>(j)]);
    return g;
}

cvec ris_to_gu_channel(const Scenario& s, const Vec3& uav_pos, const Vec3& gu_pos) {
    const RadioParams& r = s.radio;
    double dist = norm(uav_pos - gu_pos);
    if (dist <= 0.0) throw ValidationError("ris_to_gu_channel: UAV coincides with the ground user");
    if (uav_pos.z <= 0.0) throw ValidationError("ris_to_gu_channel: UAV must be above ground");

    LinkAngles ang = tx_angles(uav_pos, gu_pos, dist);
    double phi = ang.sin_zenith * std::cos(ang.azimuth);
    double omega = ang.sin_zenith * std::sin(ang.azimuth);
    cvec a = planar_response(phi, omega, r.n_c, r.n_r);
    double pref = los_prefactor(r, dist);

    cvec h(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) h[i] = pref * a[i];
    return h;
}

namespace {

struct RisLink {
    double pref;
    cvec a_r;  // N_RIS
    cvec a_t;  // N_BS
};

RisLink bs_link(const Scenario& s, const Vec3& uav_pos) {
    const RadioParams& r = s.radio;
    double dist = norm(uav_pos - s.geom.bs_position);
    if (dist <= 0.0) throw ValidationError("effective_channels: UAV coincides with the BS");
    LinkAngles ang = rx_angles(uav_pos, s.geom.bs_position, dist);
    RisLink link;
    link.pref = los_prefactor(r, dist);
    link.a_r = planar_response(ang.sin_zenith * std::cos(ang.azimuth),
                               ang.sin_zenith * std::sin(ang.azimuth), r.n_c, r.n_r);
    link.a_t = linear_response(ang.sin_zenith, r.n_bs);
    return link;
}

} // namespace

std::vector<cvec> effective_rows(const Scenario& s, const std::vector<Vec3>& uav_positions,
                                 const PhaseMatrix& phases) {
    const RadioParams& r = s.radio;
    const int m_count = static_cast<int>(uav_positions.size());
    const int k_count = s.geom.k_gus();
    if (m_count != s.geom.m_uavs)
        throw ValidationError("effective_rows: UAV position count does not match the scenario");
    if (phases.m_count() != m_count || phases.n_ris != r.n_ris())
        throw ValidationError("effective_rows: phase matrix dimensions do not match the scenario");

    std::vector<RisLink> links;
    links.reserve(static_cast<std::size_t>(m_count));
    for (const Vec3& pos : uav_positions) links.push_back(bs_link(s, pos));

    std::vector<cvec> rows(static_cast<std::size_t>(k_count), cvec(static_cast<std::size_t>(r.n_bs)));
    for (int k = 0; k < k_count; ++k) {
        for (int m = 0; m < m_count; ++m) {
            cvec h = ris_to_gu_channel(s, uav_positions[static_cast<std::size_t>(m)],
                                       s.geom.gu_positions[static_cast<std::size_t>(k)]);
            // h^H Theta a_r collapses the RIS dimension; the BS dimension is
            // the rank-1 factor a_t^H scaled by that contraction.
            cplx contraction{0.0, 0.0};
            for (int n = 0; n < r.n_ris(); ++n)
                contraction += std::conj(h[static_cast<std::size_t>(n)]) * phases.unit(m, n) *
                               links[static_cast<std::size_t>(m)].a_r[static_cast<std::size_t>(n)];
            contraction *= links[static_cast<std::size_t>(m)].pref;
            for (int j = 0; j < r.n_bs; ++j)
                rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] +=
                    contraction * std::conj(links[static_cast<std::size_t>(m)].a_t[static_cast<std::size_t>(j)]);
        }
    }
    return rows;
}

ChannelState effective_channels(const Scenario& s, const std::vector<Vec3>& uav_positions,
                                const PhaseMatrix& phases) {
    ChannelState state;
    state.effective = effective_rows(s, uav_positions, phases);
    state.g_bs_to_ris.reserve(uav_positions.size());
    for (const Vec3& pos : uav_positions) state.g_bs_to_ris.push_back(bs_to_ris_channel(s, pos));
    state.h_ris_to_gu.resize(static_cast<std::size_t>(s.geom.k_gus()));
    for (int k = 0; k < s.geom.k_gus(); ++k)
        for (const Vec3& pos : uav_positions)
            state.h_ris_to_gu[static_cast<std::size_t>(k)].push_back(
                ris_to_gu_channel(s, pos, s.geom.gu_positions[static_cast<std::size_t>(k)]));
    return state;
}

std::pair<std::vector<double>, std::vector<double>>
sinr_and_rates_rows(const Scenario& s, const std::vector<cvec>& effective, const CMat& beamforming) {
    const int k_count = s.geom.k_gus();
    if (static_cast<int>(effective.size()) != k_count)
        throw ValidationError("sinr_and_rates: effective channel count does not match the scenario");
    if (beamforming.rows != s.radio.n_bs || beamforming.cols != k_count)
        throw ValidationError("sinr_and_rates: beamforming must be N_BS x K");

    std::vector<double> sinr(static_cast<std::size_t>(k_count));
    std::vector<double> rates(static_cast<std::size_t>(k_count));
    for (int k = 0; k < k_count; ++k) {
        double signal = 0.0;
        double interference = 0.0;
        for (int i = 0; i < k_count; ++i) {
            double power = std::norm(row_dot_col(effective[static_cast<std::size_t>(k)], beamforming, i));
            if (i == k)
                signal = power;
            else
                interference += power;
        }
        sinr[static_cast<std::size_t>(k)] = signal / (interference + s.radio.noise_power_w);
        rates[static_cast<std::size_t>(k)] =
            s.radio.bandwidth_hz * std::log2(1.0 + sinr[static_cast<std::size_t>(k)]);
    }
    return {sinr, rates};
}

std::pair<std::vector<double>, std::vector<double>>
sinr_and_rates(const Scenario& s, const ChannelState& state, const CMat& beamforming) {
    return sinr_and_rates_rows(s, state.effective, beamforming);
}

} // namespace uavris
