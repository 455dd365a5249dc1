#include "uavris/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavris/errors.hpp"

namespace uavris {

namespace {

// stream tags, one per randomness consumer
constexpr std::uint64_t kTagPositions = 0xA1;
constexpr std::uint64_t kTagRandomPhase = 0xA2;
constexpr std::uint64_t kTagPhaseDonor = 0xA3;
constexpr std::uint64_t kTagBeamforming = 0xA4;

} // namespace

OperatorConfig operator_config(const AlgoParams& a, int m_uavs) {
    OperatorConfig cfg;
    cfg.sbx_eta = a.sbx_eta;
    cfg.mut_eta = a.mut_eta;
    cfg.crossover_prob = a.crossover_prob;
    cfg.mutation_prob = a.mutation_prob_for(m_uavs);
    cfg.inertia_eps = a.inertia_eps;
    cfg.learn_c1 = a.learn_c1;
    cfg.learn_c2 = a.learn_c2;
    return cfg;
}

std::pair<double, double> sbx_values(double p1, double p2, double eta, double u, bool do_swap) {
    double beta_q = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                             : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    double c1 = 0.5 * ((1.0 + beta_q) * p1 + (1.0 - beta_q) * p2);
    double c2 = 0.5 * ((1.0 - beta_q) * p1 + (1.0 + beta_q) * p2);
    if (do_swap) std::swap(c1, c2);
    return {c1, c2};
}

double polynomial_bump(double u, double eta) {
    if (u < 0.5) return std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0;
    return 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
}

cplx pso_velocity(cplx ve, cplx w, cplx pbest, cplx gbest, double eps, double c1, double c2,
                  double r1, double r2) {
    return eps * ve + c1 * r1 * (pbest - w) + c2 * r2 * (gbest - w);
}

void rescale_power(CMat& w, double p_max, double r3) {
    double nrm = std::sqrt(squared_norm(w));
    if (nrm == 0.0) return;
    double scale = std::sqrt(p_max) / (nrm * (1.0 + r3));
    for (cplx& v : w.a) v *= scale;
}

double obl_reflect(double x, double lo, double hi) {
    double v = x;
    if (x >= hi)
        v = 2.0 * hi - x;
    else if (x <= lo)
        v = lo - x;
    return std::clamp(v, lo, hi);
}

void obl_repair(std::vector<Vec3>& positions, const Geometry& g) {
    for (Vec3& p : positions) {
        p.x = obl_reflect(p.x, g.l_min, g.l_max);
        p.y = obl_reflect(p.y, g.l_min, g.l_max);
        p.z = obl_reflect(p.z, g.z_min, g.z_max);
    }
}

void clamp_repair(std::vector<Vec3>& positions, const Geometry& g) {
    for (Vec3& p : positions) {
        p.x = std::clamp(p.x, g.l_min, g.l_max);
        p.y = std::clamp(p.y, g.l_min, g.l_max);
        p.z = std::clamp(p.z, g.z_min, g.z_max);
    }
}

void normalize_power(CMat& w, double p_max, RngStream& rng) {
    if (p_max <= 0.0) throw ValidationError("normalize_power: p_max must be > 0");
    if (squared_norm(w) <= p_max) return;
    rescale_power(w, p_max, rng.uniform_open01());
}

int tournament_pick(const RankedPopulation& pop, RngStream& rng) {
    int n = static_cast<int>(pop.members.size());
    int a = rng.uniform_int(n);
    int b = rng.uniform_int(n);
    if (pop.rank[static_cast<std::size_t>(a)] != pop.rank[static_cast<std::size_t>(b)])
        return pop.rank[static_cast<std::size_t>(a)] < pop.rank[static_cast<std::size_t>(b)] ? a : b;
    if (pop.crowding[static_cast<std::size_t>(a)] != pop.crowding[static_cast<std::size_t>(b)])
        return pop.crowding[static_cast<std::size_t>(a)] > pop.crowding[static_cast<std::size_t>(b)] ? a : b;
    return a;
}

namespace {

// Offspring copies carry the donor parent's companion state and drop the
// cached objectives.
Candidate child_of(const Candidate& parent) {
    Candidate c = parent;
    c.invalidate();
    return c;
}

std::vector<double> positions_as_genes(const std::vector<Vec3>& pos) {
    std::vector<double> g;
    g.reserve(pos.size() * 3);
    for (const Vec3& p : pos) {
        g.push_back(p.x);
        g.push_back(p.y);
        g.push_back(p.z);
    }
    return g;
}

std::vector<Vec3> genes_as_positions(const std::vector<double>& g) {
    std::vector<Vec3> pos(g.size() / 3);
    for (std::size_t m = 0; m < pos.size(); ++m) pos[m] = {g[3 * m], g[3 * m + 1], g[3 * m + 2]};
    return pos;
}

} // namespace

std::vector<Candidate> vary_positions(const Scenario& s, const RankedPopulation& parents,
                                      const OperatorConfig& cfg, std::uint64_t run_seed, int gen) {
    const int pop = static_cast<int>(parents.members.size());
    const Geometry& g = s.geom;
    const double ranges[3] = {g.l_max - g.l_min, g.l_max - g.l_min, g.z_max - g.z_min};

    std::vector<Candidate> offspring;
    offspring.reserve(static_cast<std::size_t>(pop));
    for (int pair = 0; pair < pop / 2; ++pair) {
        RngStream rng(mix_seed(run_seed, {kTagPositions, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(pair)}));
        const Candidate& a = parents.members[static_cast<std::size_t>(tournament_pick(parents, rng))];
        const Candidate& b = parents.members[static_cast<std::size_t>(tournament_pick(parents, rng))];

        std::vector<double> g1 = positions_as_genes(a.positions);
        std::vector<double> g2 = positions_as_genes(b.positions);
        if (rng.uniform01() <= cfg.crossover_prob) {
            for (std::size_t i = 0; i < g1.size(); ++i) {
                if (rng.uniform01() > 0.5) continue;
                if (std::abs(g1[i] - g2[i]) <= 1e-14) continue;
                auto [c1, c2] = sbx_values(g1[i], g2[i], cfg.sbx_eta, rng.uniform01(), rng.coin());
                g1[i] = c1;
                g2[i] = c2;
            }
        }
        for (std::vector<double>* genes : {&g1, &g2})
            for (std::size_t i = 0; i < genes->size(); ++i)
                if (rng.uniform01() <= cfg.mutation_prob)
                    (*genes)[i] += polynomial_bump(rng.uniform01(), cfg.mut_eta) * ranges[i % 3];

        for (const std::vector<double>& genes : {g1, g2}) {
            Candidate c = child_of(a); // non-position groups from the first parent
            c.positions = genes_as_positions(genes);
            obl_repair(c.positions, g);
            offspring.push_back(std::move(c));
        }
    }
    return offspring;
}

std::vector<Candidate> random_phase_offspring([[maybe_unused]] const Scenario& s,
                                              const std::vector<Candidate>& parents,
                                              std::uint64_t run_seed, int gen) {
    std::vector<Candidate> offspring;
    offspring.reserve(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) {
        RngStream rng(mix_seed(run_seed, {kTagRandomPhase, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
        Candidate c = child_of(parents[i]);
        for (int& index : c.phases.idx) index = rng.uniform_int(c.phases.levels);
        offspring.push_back(std::move(c));
    }
    return offspring;
}

int select_phase_donor(const RankedPopulation& ranked, RngStream& rng) {
    auto front = ranked.front_indices(0);
    if (front.empty()) throw ValidationError("phase learning: empty first front");
    double best = -std::numeric_limits<double>::infinity();
    for (int i : front) best = std::max(best, ranked.crowding[static_cast<std::size_t>(i)]);
    std::vector<int> ties;
    for (int i : front)
        if (ranked.crowding[static_cast<std::size_t>(i)] == best) ties.push_back(i);
    if (ties.size() == 1) return ties.front();
    return ties[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(ties.size())))];
}

std::vector<Candidate> phase_learning_offspring([[maybe_unused]] const Scenario& s,
                                                const std::vector<Candidate>& parents,
                                                const RankedPopulation& ranked, std::uint64_t run_seed,
                                                int gen) {
    RngStream donor_rng(mix_seed(run_seed, {kTagPhaseDonor, static_cast<std::uint64_t>(gen)}));
    const Candidate& donor =
        ranked.members[static_cast<std::size_t>(select_phase_donor(ranked, donor_rng))];

    std::vector<Candidate> offspring;
    offspring.reserve(parents.size());
    for (const Candidate& parent : parents) {
        Candidate c = child_of(parent);
        c.phases = donor.phases;
        offspring.push_back(std::move(c));
    }
    return offspring;
}

std::vector<Candidate> beamforming_offspring(const Scenario& s, const std::vector<Candidate>& parents,
                                             const RankedPopulation& ranked, const OperatorConfig& cfg,
                                             std::uint64_t run_seed, int gen) {
    auto front = ranked.front_indices(0);
    if (front.empty()) throw ValidationError("beamforming update: empty first front");
    std::vector<double> front_crowding;
    front_crowding.reserve(front.size());
    for (int i : front) front_crowding.push_back(ranked.crowding[static_cast<std::size_t>(i)]);

    std::vector<Candidate> offspring;
    offspring.reserve(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) {
        RngStream rng(mix_seed(run_seed, {kTagBeamforming, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
        const Candidate& leader =
            ranked.members[static_cast<std::size_t>(front[static_cast<std::size_t>(
                roulette_from_front(front_crowding, rng))])];

        Candidate c = child_of(parents[i]);
        for (std::size_t e = 0; e < c.w.a.size(); ++e) {
            double r1 = rng.uniform_open01();
            double r2 = rng.uniform_open01();
            c.velocity.a[e] = pso_velocity(c.velocity.a[e], c.w.a[e], c.pbest_w.a[e], leader.w.a[e],
                                           cfg.inertia_eps, cfg.learn_c1, cfg.learn_c2, r1, r2);
            c.w.a[e] += c.velocity.a[e];
        }
        normalize_power(c.w, s.radio.p_max_w, rng);
        offspring.push_back(std::move(c));
    }
    return offspring;
}

void update_pbest(Candidate& c, RngStream& rng) {
    if (!c.objectives) throw ValidationError("update_pbest: candidate not evaluated");
    if (!c.pbest_obj) {
        c.pbest_w = c.w;
        c.pbest_obj = c.objectives;
        return;
    }
    if (dominates(*c.objectives, *c.pbest_obj)) {
        c.pbest_w = c.w;
        c.pbest_obj = c.objectives;
    } else if (!dominates(*c.pbest_obj, *c.objectives)) {
        if (rng.coin()) {
            c.pbest_w = c.w;
            c.pbest_obj = c.objectives;
        }
    }
}

} // namespace uavris
