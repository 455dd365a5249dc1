#include "uavris/scenario.hpp"

#include <cmath>

#include "uavris/config.hpp"

namespace uavris {

Scenario default_scenario() {
    Scenario s;
    s.geom.gu_positions = {
        {40.0, 160.0, 0.0},  {160.0, 40.0, 0.0}, {100.0, 100.0, 0.0},
        {30.0, 60.0, 0.0},   {170.0, 150.0, 0.0},
        {60.0, 30.0, 0.0},   {140.0, 170.0, 0.0}, {20.0, 110.0, 0.0},
        {180.0, 90.0, 0.0},  {90.0, 20.0, 0.0},
    };
    return s;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError("scenario: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void validate(const Scenario& s) {
    const RadioParams& r = s.radio;
    require(positive(r.bandwidth_hz), "bandwidth_hz must be > 0");
    require(positive(r.p_max_w), "p_max must convert to a positive wattage");
    require(positive(r.p_bs_circuit_w), "p_bs_circuit must convert to a positive wattage");
    require(positive(r.noise_power_w), "noise_power must convert to a positive wattage");
    require(positive(r.p_gu_circuit_w), "p_gu_circuit must convert to a positive wattage");
    require(positive(r.p_ris_element_w), "p_ris_element must convert to a positive wattage");
    require(positive(r.beta0), "beta0 must be positive in linear units");
    require(positive(r.rician_a), "rician_a must be positive in linear units");
    require(r.amp_efficiency_mu > 0.0 && r.amp_efficiency_mu <= 1.0,
            "amp_efficiency_mu must lie in (0, 1]");
    require(positive(r.data_size_bits), "data_size_bits must be > 0");
    require(r.n_bs >= 1, "n_bs must be >= 1");
    require(r.n_r >= 1 && r.n_c >= 1, "n_r and n_c must be >= 1");
    require(r.quant_bits_c >= 1, "quant_bits_c must be >= 1 (at least two phase levels)");
    require(r.element_spacing_ratio == 0.5, "element_spacing_ratio is fixed at 1/2");

    const UavParams& u = s.uav;
    require(positive(u.mass_kg), "uav_mass_kg must be > 0");
    require(positive(u.gravity), "gravity must be > 0");
    require(positive(u.cruise_speed), "cruise_speed must be > 0");
    require(std::isfinite(u.initial_speed) && u.initial_speed >= 0.0, "initial_speed must be >= 0");
    require(std::isfinite(u.initial_height) && u.initial_height >= 0.0, "initial_height must be >= 0");
    require(positive(u.blade_power_w), "blade_power_w must be > 0");
    require(positive(u.induced_power_w), "induced_power_w must be > 0");
    require(positive(u.tip_speed), "tip_speed must be > 0");
    require(positive(u.mean_rotor_velocity), "mean_rotor_velocity must be > 0");
    require(positive(u.fuselage_drag), "fuselage_drag must be > 0");
    require(positive(u.air_density), "air_density must be > 0");
    require(positive(u.rotor_solidity), "rotor_solidity must be > 0");
    require(positive(u.rotor_disc_area), "rotor_disc_area must be > 0");

    const Geometry& g = s.geom;
    require(g.l_min < g.l_max, "l_min must be < l_max");
    require(0.0 < g.z_min && g.z_min < g.z_max, "altitude band requires 0 < z_min < z_max");
    require(g.k_gus() >= 1, "at least one ground user is required");
    require(g.m_uavs >= 1, "at least one UAV is required");
    require(g.bs_position.z == 0.0, "bs_position must have z = 0");
    for (const Vec3& p : g.gu_positions)
        require(p.z == 0.0, "gu_positions must have z = 0");

    const AlgoParams& a = s.algo;
    require(a.pop_size >= 4 && a.pop_size % 2 == 0, "pop_size must be even and >= 4");
    require(a.max_gens >= 0, "max_gens must be >= 0");
    require(a.crossover_prob >= 0.0 && a.crossover_prob <= 1.0, "crossover_prob must lie in [0, 1]");
    if (a.mutation_prob)
        require(*a.mutation_prob >= 0.0 && *a.mutation_prob <= 1.0, "mutation_prob must lie in [0, 1]");
    require(positive(a.sbx_eta) && positive(a.mut_eta), "distribution indices must be > 0");
    require(a.trials >= 1, "trials must be >= 1");
}

namespace {

Scenario scenario_from_kv(KvFile& kv) {
    Scenario def = default_scenario();
    Scenario s;

    s.radio.bandwidth_hz = kv.get_double_or("bandwidth_hz", def.radio.bandwidth_hz);
    s.radio.p_max_w = dbm_to_watts(kv.get_double_or("p_max_dbm", watts_to_dbm(def.radio.p_max_w)));
    s.radio.p_bs_circuit_w =
        dbm_to_watts(kv.get_double_or("p_bs_circuit_dbm", watts_to_dbm(def.radio.p_bs_circuit_w)));
    s.radio.noise_power_w =
        dbm_to_watts(kv.get_double_or("noise_power_dbm", watts_to_dbm(def.radio.noise_power_w)));
    s.radio.p_gu_circuit_w =
        dbm_to_watts(kv.get_double_or("p_gu_circuit_dbm", watts_to_dbm(def.radio.p_gu_circuit_w)));
    s.radio.p_ris_element_w =
        dbm_to_watts(kv.get_double_or("p_ris_element_dbm", watts_to_dbm(def.radio.p_ris_element_w)));
    s.radio.beta0 = db_to_linear(kv.get_double_or("beta0_db", linear_to_db(def.radio.beta0)));
    s.radio.rician_a = db_to_linear(kv.get_double_or("rician_a_db", linear_to_db(def.radio.rician_a)));
    s.radio.amp_efficiency_mu = kv.get_double_or("amp_efficiency_mu", def.radio.amp_efficiency_mu);
    s.radio.data_size_bits = kv.get_double_or("data_size_bits", def.radio.data_size_bits);
    s.radio.n_bs = kv.get_int_or("n_bs", def.radio.n_bs);
    s.radio.n_r = kv.get_int_or("n_r", def.radio.n_r);
    s.radio.n_c = kv.get_int_or("n_c", def.radio.n_c);
    s.radio.quant_bits_c = kv.get_int_or("quant_bits_c", def.radio.quant_bits_c);
    s.radio.element_spacing_ratio =
        kv.get_double_or("element_spacing_ratio", def.radio.element_spacing_ratio);

    s.uav.mass_kg = kv.get_double_or("uav_mass_kg", def.uav.mass_kg);
    s.uav.gravity = kv.get_double_or("gravity_m_s2", def.uav.gravity);
    s.uav.cruise_speed = kv.get_double_or("cruise_speed_m_s", def.uav.cruise_speed);
    s.uav.initial_speed = kv.get_double_or("initial_speed_m_s", def.uav.initial_speed);
    s.uav.initial_height = kv.get_double_or("initial_height_m", def.uav.initial_height);
    s.uav.blade_power_w = kv.get_double_or("blade_power_w", def.uav.blade_power_w);
    s.uav.induced_power_w = kv.get_double_or("induced_power_w", def.uav.induced_power_w);
    s.uav.tip_speed = kv.get_double_or("tip_speed_m_s", def.uav.tip_speed);
    s.uav.mean_rotor_velocity = kv.get_double_or("mean_rotor_velocity_m_s", def.uav.mean_rotor_velocity);
    s.uav.fuselage_drag = kv.get_double_or("fuselage_drag_ratio", def.uav.fuselage_drag);
    s.uav.air_density = kv.get_double_or("air_density_kg_m3", def.uav.air_density);
    s.uav.rotor_solidity = kv.get_double_or("rotor_solidity", def.uav.rotor_solidity);
    s.uav.rotor_disc_area = kv.get_double_or("rotor_disc_area_m2", def.uav.rotor_disc_area);

    s.geom.bs_position = kv.get_vec3_or("bs_position_m", def.geom.bs_position);
    s.geom.uav_start = kv.get_vec3_or("uav_start_m", def.geom.uav_start);
    s.geom.l_min = kv.get_double_or("l_min_m", def.geom.l_min);
    s.geom.l_max = kv.get_double_or("l_max_m", def.geom.l_max);
    s.geom.z_min = kv.get_double_or("z_min_m", def.geom.z_min);
    s.geom.z_max = kv.get_double_or("z_max_m", def.geom.z_max);
    s.geom.m_uavs = kv.get_int_or("m_uavs", def.geom.m_uavs);
    s.geom.gu_positions =
        kv.has("gu_positions_m") ? kv.get_vec3_list("gu_positions_m") : def.geom.gu_positions;

    s.algo.pop_size = kv.get_int_or("pop_size", def.algo.pop_size);
    s.algo.max_gens = kv.get_int_or("max_gens", def.algo.max_gens);
    s.algo.sbx_eta = kv.get_double_or("sbx_eta", def.algo.sbx_eta);
    s.algo.mut_eta = kv.get_double_or("mut_eta", def.algo.mut_eta);
    s.algo.crossover_prob = kv.get_double_or("crossover_prob", def.algo.crossover_prob);
    if (kv.has("mutation_prob")) s.algo.mutation_prob = kv.get_double("mutation_prob");
    s.algo.inertia_eps = kv.get_double_or("inertia_eps", def.algo.inertia_eps);
    s.algo.learn_c1 = kv.get_double_or("learn_c1", def.algo.learn_c1);
    s.algo.learn_c2 = kv.get_double_or("learn_c2", def.algo.learn_c2);
    s.algo.rng_seed = kv.get_u64_or("rng_seed", def.algo.rng_seed);
    s.algo.trials = kv.get_int_or("trials", def.algo.trials);

    auto leftovers = kv.unconsumed();
    if (!leftovers.empty())
        throw ConfigError(kv.origin() + ": unknown key '" + leftovers.front() + "'");

    validate(s);
    return s;
}

} // namespace

Scenario load_scenario(const std::string& path) {
    KvFile kv = KvFile::parse_file(path);
    return scenario_from_kv(kv);
}

Scenario scenario_from_string(const std::string& text) {
    KvFile kv = KvFile::parse_string(text);
    return scenario_from_kv(kv);
}

Scenario with_m_and_k(const Scenario& base, int m_uavs, int k_gus) {
    Scenario s = base;
    s.geom.m_uavs = m_uavs;
    if (k_gus > base.geom.k_gus())
        throw ValidationError("scenario: requested " + std::to_string(k_gus) + " ground users but only " +
                              std::to_string(base.geom.k_gus()) + " are configured");
    s.geom.gu_positions.assign(base.geom.gu_positions.begin(), base.geom.gu_positions.begin() + k_gus);
    validate(s);
    return s;
}

} // namespace uavris
