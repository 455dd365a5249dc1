#include "uavris/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "uavris/errors.hpp"
#include "uavris/operators.hpp"

namespace uavris {

namespace {

constexpr double kBoundsSlack = 1e-9;
constexpr double kPowerSlack = 1e-9; // relative

bool within(double v, double lo, double hi) { return v >= lo - kBoundsSlack && v <= hi + kBoundsSlack; }

} // namespace

void check_constraints(const Scenario& s, const Candidate& c) {
    const Geometry& g = s.geom;
    if (static_cast<int>(c.positions.size()) != g.m_uavs)
        throw ValidationError("candidate: UAV position count does not match the scenario");
    for (const Vec3& p : c.positions) {
        if (!within(p.x, g.l_min, g.l_max) || !within(p.y, g.l_min, g.l_max))
            throw ValidationError("candidate: horizontal position outside [l_min, l_max]");
        if (!within(p.z, g.z_min, g.z_max))
            throw ValidationError("candidate: altitude outside [z_min, z_max]");
    }
    if (c.phases.m_count() != g.m_uavs || c.phases.n_ris != s.radio.n_ris() ||
        c.phases.levels != s.radio.phase_levels())
        throw ValidationError("candidate: phase matrix dimensions do not match the scenario");
    for (int index : c.phases.idx)
        if (index < 0 || index >= c.phases.levels)
            throw ValidationError("candidate: phase index outside {0, ..., C-1}");
    if (c.w.rows != s.radio.n_bs || c.w.cols != g.k_gus())
        throw ValidationError("candidate: beamforming must be N_BS x K");
    if (squared_norm(c.w) > s.radio.p_max_w * (1.0 + kPowerSlack))
        throw ValidationError("candidate: transmit power exceeds p_max");
}

bool satisfies_constraints(const Scenario& s, const Candidate& c) {
    try {
        check_constraints(s, c);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

ObjectiveVector make_objectives(const std::vector<double>& rates, double total_energy) {
    double min_rate = *std::min_element(rates.begin(), rates.end());
    double sum_rate = 0.0;
    for (double r : rates) sum_rate += r;
    double f3 = total_energy;
    if (!(f3 < kInfeasibleEnergy)) f3 = kInfeasibleEnergy;
    return {-min_rate, -sum_rate, f3};
}

ObjectiveVector compute_objectives(const Scenario& s, const Candidate& c) {
    check_constraints(s, c);
    auto rows = effective_rows(s, c.positions, c.phases);
    auto [sinr, rates] = sinr_and_rates_rows(s, rows, c.w);
    double e_deploy = deployment_energy(s, c.positions);
    EnergyBreakdown hover = hover_energy(s, rates, c.w);
    return make_objectives(rates, e_deploy + hover.e_hover);
}

const ObjectiveVector& evaluate(const Scenario& s, Candidate& c, long long& eval_count) {
    if (!c.objectives) {
        c.objectives = compute_objectives(s, c);
        ++eval_count;
        if (!c.pbest_obj) {
            // fresh candidate: its own first evaluation is its personal best
            c.pbest_w = c.w;
            c.pbest_obj = c.objectives;
        }
    }
    return *c.objectives;
}

Candidate random_candidate(const Scenario& s, RngStream& rng) {
    const Geometry& g = s.geom;
    Candidate c;
    c.positions.reserve(static_cast<std::size_t>(g.m_uavs));
    for (int m = 0; m < g.m_uavs; ++m)
        c.positions.push_back({rng.uniform(g.l_min, g.l_max), rng.uniform(g.l_min, g.l_max),
                               rng.uniform(g.z_min, g.z_max)});
    c.phases = PhaseMatrix(g.m_uavs, s.radio.n_ris(), s.radio.phase_levels());
    for (int& index : c.phases.idx) index = rng.uniform_int(c.phases.levels);
    c.w = CMat(s.radio.n_bs, g.k_gus());
    for (cplx& v : c.w.a) {
        double re = rng.uniform(-1.0, 1.0);
        double im = rng.uniform(-1.0, 1.0);
        v = {re, im};
    }
    normalize_power(c.w, s.radio.p_max_w, rng);
    c.velocity = CMat(s.radio.n_bs, g.k_gus());
    c.pbest_w = c.w;
    return c;
}

namespace {

using nlohmann::json;

json cmat_to_json(const CMat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat cmat_from_json(const json& j, int rows, int cols, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ConfigError(std::string("candidate json: bad row count for ") + what);
    CMat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ConfigError(std::string("candidate json: bad column count for ") + what);
        for (int c = 0; c < cols; ++c) {
            const json& pair = row[static_cast<std::size_t>(c)];
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError(std::string("candidate json: entries must be [re, im] for ") + what);
            m(r, c) = {pair[0].get<double>(), pair[1].get<double>()};
        }
    }
    return m;
}

} // namespace

std::string candidate_to_json(const Candidate& c) {
    json j;
    json pos = json::array();
    for (const Vec3& p : c.positions) pos.push_back({p.x, p.y, p.z});
    j["positions"] = std::move(pos);
    json rows = json::array();
    for (int m = 0; m < c.phases.m_count(); ++m) {
        json row = json::array();
        for (int n = 0; n < c.phases.n_ris; ++n) row.push_back(c.phases.at(m, n));
        rows.push_back(std::move(row));
    }
    j["phase_indices"] = std::move(rows);
    j["beamforming"] = cmat_to_json(c.w);
    if (c.objectives) j["objectives"] = *c.objectives;
    return j.dump();
}

Candidate candidate_from_json(const Scenario& s, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("candidate json: ") + e.what());
    }
    Candidate c;
    for (const auto& p : j.at("positions"))
        c.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    c.phases = PhaseMatrix(s.geom.m_uavs, s.radio.n_ris(), s.radio.phase_levels());
    const json& rows = j.at("phase_indices");
    if (static_cast<int>(rows.size()) != s.geom.m_uavs)
        throw ConfigError("candidate json: bad phase row count");
    for (int m = 0; m < s.geom.m_uavs; ++m)
        for (int n = 0; n < s.radio.n_ris(); ++n)
            c.phases.at(m, n) = rows[static_cast<std::size_t>(m)].at(static_cast<std::size_t>(n)).get<int>();
    c.w = cmat_from_json(j.at("beamforming"), s.radio.n_bs, s.geom.k_gus(), "beamforming");
    if (j.contains("objectives"))
        c.objectives = ObjectiveVector{j["objectives"].at(0).get<double>(),
                                       j["objectives"].at(1).get<double>(),
                                       j["objectives"].at(2).get<double>()};
    c.velocity = CMat(s.radio.n_bs, s.geom.k_gus());
    c.pbest_w = c.w;
    c.pbest_obj = c.objectives;
    return c;
}

} // namespace uavris
