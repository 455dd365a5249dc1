#include "uavris/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "uavris/errors.hpp"

namespace uavris {

namespace {

constexpr std::uint64_t kTagInit = 0xA0;
constexpr std::uint64_t kTagPbest = 0xA5;
constexpr std::uint64_t kTagBackbone = 0xA6;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void evaluate_all(const Scenario& s, std::vector<Candidate>& pop, long long& evals) {
    for (Candidate& c : pop) evaluate(s, c, evals);
}

std::vector<Candidate> extract_front(const RankedPopulation& ranked) {
    std::vector<Candidate> front;
    for (int i : ranked.front_indices(0)) front.push_back(ranked.members[static_cast<std::size_t>(i)]);
    return front;
}

void record_front(RunResult& r, const RankedPopulation& ranked) {
    r.history.push_back(ranked.front_objectives(0));
}

} // namespace

std::optional<Algo> algo_from_name(const std::string& name) {
    for (Algo a : all_algorithms())
        if (algo_name(a) == name) return a;
    return std::nullopt;
}

std::string algo_name(Algo a) {
    switch (a) {
        case Algo::Insga2Cdc: return "insga2cdc";
        case Algo::Insga2C1: return "insga2-c1";
        case Algo::Insga2D: return "insga2-d";
        case Algo::Insga2C2: return "insga2-c2";
        case Algo::Nsga2: return "nsga2";
        case Algo::Nsga3: return "nsga3";
        case Algo::Mopso: return "mopso";
        case Algo::Moead: return "moead";
        case Algo::Rd: return "rd";
        case Algo::Ud: return "ud";
        case Algo::Dft: return "dft";
        case Algo::Cdps: return "cdps";
    }
    return "?";
}

const std::vector<Algo>& all_algorithms() {
    static const std::vector<Algo> all = {
        Algo::Insga2Cdc, Algo::Insga2C1, Algo::Insga2D, Algo::Insga2C2, Algo::Nsga2, Algo::Nsga3,
        Algo::Mopso,     Algo::Moead,    Algo::Rd,      Algo::Ud,       Algo::Dft,   Algo::Cdps,
    };
    return all;
}

bool is_strategy(Algo a) {
    return a == Algo::Rd || a == Algo::Ud || a == Algo::Dft || a == Algo::Cdps;
}

std::vector<Candidate> init_population(const Scenario& s, std::uint64_t run_seed) {
    std::vector<Candidate> pop;
    pop.reserve(static_cast<std::size_t>(s.algo.pop_size));
    for (int i = 0; i < s.algo.pop_size; ++i) {
        RngStream rng(mix_seed(run_seed, {kTagInit, static_cast<std::uint64_t>(i)}));
        pop.push_back(random_candidate(s, rng));
    }
    return pop;
}

namespace {

void update_pbest_all(std::vector<Candidate>& pop, std::uint64_t run_seed, int gen) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
        RngStream rng(mix_seed(run_seed, {kTagPbest, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
        update_pbest(pop[i], rng);
    }
}

} // namespace

RunResult run_insga2cdc(const Scenario& s, std::uint64_t seed) {
    Stopwatch clock;
    const int pop_size = s.algo.pop_size;
    const OperatorConfig cfg = operator_config(s.algo, s.geom.m_uavs);

    RunResult result;
    std::vector<Candidate> pop = init_population(s, seed);
    evaluate_all(s, pop, result.eval_count);
    RankedPopulation ranked = elitist_filter(std::move(pop), pop_size);

    for (int gen = 1; gen <= s.algo.max_gens; ++gen) {
        auto s1 = vary_positions(s, ranked, cfg, seed, gen);
        auto s2_random = random_phase_offspring(s, ranked.members, seed, gen);
        auto s2_learned = phase_learning_offspring(s, ranked.members, ranked, seed, gen);
        auto s3 = beamforming_offspring(s, ranked.members, ranked, cfg, seed, gen);

        std::vector<Candidate> offspring;
        offspring.reserve(s1.size() + s2_random.size() + s2_learned.size() + s3.size());
        auto absorb = [&offspring](std::vector<Candidate>& group) {
            for (Candidate& c : group) offspring.push_back(std::move(c));
        };
        absorb(s1);
        absorb(s2_random);
        absorb(s2_learned);
        absorb(s3);
        if (static_cast<int>(offspring.size()) != 4 * pop_size)
            throw ValidationError("insga2cdc: offspring count is not 4*pop");
        evaluate_all(s, offspring, result.eval_count);
        update_pbest_all(offspring, seed, gen);

        std::vector<Candidate> pool = std::move(ranked.members);
        pool.reserve(pool.size() + offspring.size());
        for (Candidate& c : offspring) pool.push_back(std::move(c));
        if (static_cast<int>(pool.size()) != 5 * pop_size)
            throw ValidationError("insga2cdc: selection pool is not 5*pop");

        result.offspring_per_gen.push_back(4 * pop_size);
        result.pool_per_gen.push_back(static_cast<int>(pool.size()));
        ranked = elitist_filter(std::move(pool), pop_size);
        record_front(result, ranked);
    }

    result.final_front = extract_front(ranked);
    result.wall_time_s = clock.seconds();
    return result;
}

namespace {

// Continuous chromosome for the conventional backbone: 3M position genes
// followed by the interleaved re/im beamforming genes.
struct BackboneGenes {
    std::vector<double> values;
};

BackboneGenes to_genes(const Candidate& c) {
    BackboneGenes g;
    g.values.reserve(c.positions.size() * 3 + c.w.a.size() * 2);
    for (const Vec3& p : c.positions) {
        g.values.push_back(p.x);
        g.values.push_back(p.y);
        g.values.push_back(p.z);
    }
    for (const cplx& v : c.w.a) {
        g.values.push_back(v.real());
        g.values.push_back(v.imag());
    }
    return g;
}

void from_genes(const BackboneGenes& g, Candidate& c) {
    std::size_t pos_genes = c.positions.size() * 3;
    for (std::size_t m = 0; m < c.positions.size(); ++m)
        c.positions[m] = {g.values[3 * m], g.values[3 * m + 1], g.values[3 * m + 2]};
    for (std::size_t e = 0; e < c.w.a.size(); ++e)
        c.w.a[e] = {g.values[pos_genes + 2 * e], g.values[pos_genes + 2 * e + 1]};
}

double gene_range(const Scenario& s, std::size_t gene_index, std::size_t pos_genes) {
    if (gene_index < pos_genes) {
        switch (gene_index % 3) {
            case 2: return s.geom.z_max - s.geom.z_min;
            default: return s.geom.l_max - s.geom.l_min;
        }
    }
    // beamforming reals live within +-sqrt(p_max); the power repair is the
    // actual constraint, this only scales the mutation step
    return 2.0 * std::sqrt(s.radio.p_max_w);
}

} // namespace

RunResult run_nsga2_family(const Scenario& s, std::uint64_t seed, Nsga2Variant variant) {
    Stopwatch clock;
    const int pop_size = s.algo.pop_size;
    const OperatorConfig cfg = operator_config(s.algo, s.geom.m_uavs);
    const std::size_t pos_genes = static_cast<std::size_t>(s.geom.m_uavs) * 3;

    RunResult result;
    std::vector<Candidate> pop = init_population(s, seed);
    evaluate_all(s, pop, result.eval_count);
    RankedPopulation ranked = elitist_filter(std::move(pop), pop_size);

    for (int gen = 1; gen <= s.algo.max_gens; ++gen) {
        std::vector<Candidate> offspring;
        offspring.reserve(static_cast<std::size_t>(pop_size));

        std::optional<int> donor_index;
        if (variant == Nsga2Variant::PhaseLearning) {
            RngStream donor_rng(mix_seed(seed, {0xA3, static_cast<std::uint64_t>(gen)}));
            donor_index = select_phase_donor(ranked, donor_rng);
        }

        auto front = ranked.front_indices(0);
        std::vector<double> front_crowding;
        for (int i : front) front_crowding.push_back(ranked.crowding[static_cast<std::size_t>(i)]);

        for (int pair = 0; pair < pop_size / 2; ++pair) {
            RngStream rng(mix_seed(seed, {kTagBackbone, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(pair)}));
            const Candidate& a = ranked.members[static_cast<std::size_t>(tournament_pick(ranked, rng))];
            const Candidate& b = ranked.members[static_cast<std::size_t>(tournament_pick(ranked, rng))];

            BackboneGenes g1 = to_genes(a);
            BackboneGenes g2 = to_genes(b);
            std::size_t gene_count =
                variant == Nsga2Variant::ParticleBeamforming ? pos_genes : g1.values.size();
            if (rng.uniform01() <= cfg.crossover_prob) {
                for (std::size_t i = 0; i < gene_count; ++i) {
                    if (rng.uniform01() > 0.5) continue;
                    if (std::abs(g1.values[i] - g2.values[i]) <= 1e-14) continue;
                    auto [c1, c2] =
                        sbx_values(g1.values[i], g2.values[i], cfg.sbx_eta, rng.uniform01(), rng.coin());
                    g1.values[i] = c1;
                    g2.values[i] = c2;
                }
            }
            for (BackboneGenes* genes : {&g1, &g2})
                for (std::size_t i = 0; i < gene_count; ++i)
                    if (rng.uniform01() <= cfg.mutation_prob)
                        genes->values[i] +=
                            polynomial_bump(rng.uniform01(), cfg.mut_eta) * gene_range(s, i, pos_genes);

            int emitted = 0;
            for (const BackboneGenes* genes : {&g1, &g2}) {
                Candidate c = a; // companion state and phases from the first parent
                c.invalidate();
                from_genes(*genes, c);
                if (variant == Nsga2Variant::ReflectRepair)
                    obl_repair(c.positions, s.geom);
                else
                    clamp_repair(c.positions, s.geom);

                int child_index = pair * 2 + emitted;
                if (variant == Nsga2Variant::ParticleBeamforming) {
                    const Candidate& leader = ranked.members[static_cast<std::size_t>(
                        front[static_cast<std::size_t>(roulette_from_front(front_crowding, rng))])];
                    for (std::size_t e = 0; e < c.w.a.size(); ++e) {
                        double r1 = rng.uniform_open01();
                        double r2 = rng.uniform_open01();
                        c.velocity.a[e] =
                            pso_velocity(c.velocity.a[e], c.w.a[e], c.pbest_w.a[e], leader.w.a[e],
                                         cfg.inertia_eps, cfg.learn_c1, cfg.learn_c2, r1, r2);
                        c.w.a[e] += c.velocity.a[e];
                    }
                }
                normalize_power(c.w, s.radio.p_max_w, rng);

                if (variant == Nsga2Variant::PhaseLearning && child_index >= pop_size / 2) {
                    c.phases = ranked.members[static_cast<std::size_t>(*donor_index)].phases;
                } else {
                    for (int& index : c.phases.idx) index = rng.uniform_int(c.phases.levels);
                }
                offspring.push_back(std::move(c));
                ++emitted;
            }
        }

        evaluate_all(s, offspring, result.eval_count);
        if (variant == Nsga2Variant::ParticleBeamforming) update_pbest_all(offspring, seed, gen);

        std::vector<Candidate> pool = std::move(ranked.members);
        for (Candidate& c : offspring) pool.push_back(std::move(c));
        result.offspring_per_gen.push_back(pop_size);
        result.pool_per_gen.push_back(static_cast<int>(pool.size()));
        ranked = elitist_filter(std::move(pool), pop_size);
        record_front(result, ranked);
    }

    result.final_front = extract_front(ranked);
    result.wall_time_s = clock.seconds();
    return result;
}

RunResult run_algorithm(Algo a, const Scenario& s, std::uint64_t seed) {
    switch (a) {
        case Algo::Insga2Cdc: return run_insga2cdc(s, seed);
        case Algo::Insga2C1: return run_nsga2_family(s, seed, Nsga2Variant::ReflectRepair);
        case Algo::Insga2D: return run_nsga2_family(s, seed, Nsga2Variant::PhaseLearning);
        case Algo::Insga2C2: return run_nsga2_family(s, seed, Nsga2Variant::ParticleBeamforming);
        case Algo::Nsga2: return run_nsga2_family(s, seed, Nsga2Variant::Plain);
        case Algo::Nsga3: return run_nsga3(s, seed);
        case Algo::Moead: return run_moead(s, seed);
        case Algo::Mopso: return run_mopso(s, seed);
        default: break;
    }
    Stopwatch clock;
    RunResult result;
    Candidate c = run_strategy(a, s, seed, result.eval_count);
    result.final_front.push_back(std::move(c));
    result.wall_time_s = clock.seconds();
    return result;
}

bool front_monotonicity_audit(const RunResult& r) {
    std::vector<ObjectiveVector> final_objs;
    for (const Candidate& c : r.final_front) final_objs.push_back(*c.objectives);
    // an earlier front dominates the final one only if it weakly covers every
    // final member while differing somewhere
    for (const auto& earlier : r.history) {
        bool covers_all = true;
        for (const auto& f : final_objs) {
            bool covered = false;
            for (const auto& e : earlier)
                if (weakly_dominates(e, f)) {
                    covered = true;
                    break;
                }
            if (!covered) {
                covers_all = false;
                break;
            }
        }
        if (covers_all && earlier != final_objs) return false;
    }
    return true;
}

std::vector<std::array<double, 3>> das_dennis_weights(int divisions) {
    std::vector<std::array<double, 3>> out;
    for (int i = 0; i <= divisions; ++i)
        for (int j = 0; j <= divisions - i; ++j) {
            int k = divisions - i - j;
            out.push_back({static_cast<double>(i) / divisions, static_cast<double>(j) / divisions,
                           static_cast<double>(k) / divisions});
        }
    return out;
}

int das_dennis_divisions_within(int budget) {
    int p = 1;
    while ((p + 2) * (p + 1) / 2 <= budget) ++p;
    return std::max(1, p - 1);
}

} // namespace uavris
