#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavris/algorithms.hpp"
#include "uavris/errors.hpp"

// NSGA-III, MOEA/D, and MOPSO baselines. All of them fly the continuous genes
// (positions + beamforming reals) with their canonical machinery, redraw the
// phase genes randomly, clamp positions to the box, and repair beamforming
// power after every change.

namespace uavris {

namespace {

constexpr std::uint64_t kTagNsga3 = 0xB0;
constexpr std::uint64_t kTagMoead = 0xB1;
constexpr std::uint64_t kTagMopso = 0xB2;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void evaluate_all(const Scenario& s, std::vector<Candidate>& pop, long long& evals) {
    for (Candidate& c : pop) evaluate(s, c, evals);
}

std::vector<double> continuous_genes(const Candidate& c) {
    std::vector<double> g;
    g.reserve(c.positions.size() * 3 + c.w.a.size() * 2);
    for (const Vec3& p : c.positions) {
        g.push_back(p.x);
        g.push_back(p.y);
        g.push_back(p.z);
    }
    for (const cplx& v : c.w.a) {
        g.push_back(v.real());
        g.push_back(v.imag());
    }
    return g;
}

void apply_continuous_genes(const std::vector<double>& g, Candidate& c) {
    for (std::size_t m = 0; m < c.positions.size(); ++m)
        c.positions[m] = {g[3 * m], g[3 * m + 1], g[3 * m + 2]};
    std::size_t pos_genes = c.positions.size() * 3;
    for (std::size_t e = 0; e < c.w.a.size(); ++e)
        c.w.a[e] = {g[pos_genes + 2 * e], g[pos_genes + 2 * e + 1]};
}

double gene_range(const Scenario& s, std::size_t gene_index, std::size_t pos_genes) {
    if (gene_index < pos_genes)
        return gene_index % 3 == 2 ? s.geom.z_max - s.geom.z_min : s.geom.l_max - s.geom.l_min;
    return 2.0 * std::sqrt(s.radio.p_max_w);
}

// One SBX + polynomial-mutation child from two parents (first child kept).
Candidate variation_child(const Scenario& s, const OperatorConfig& cfg, const Candidate& a,
                          const Candidate& b, RngStream& rng) {
    std::size_t pos_genes = static_cast<std::size_t>(s.geom.m_uavs) * 3;
    std::vector<double> g1 = continuous_genes(a);
    std::vector<double> g2 = continuous_genes(b);
    if (rng.uniform01() <= cfg.crossover_prob) {
        for (std::size_t i = 0; i < g1.size(); ++i) {
            if (rng.uniform01() > 0.5) continue;
            if (std::abs(g1[i] - g2[i]) <= 1e-14) continue;
            auto [c1, c2] = sbx_values(g1[i], g2[i], cfg.sbx_eta, rng.uniform01(), rng.coin());
            g1[i] = c1;
            g2[i] = c2;
        }
    }
    for (std::size_t i = 0; i < g1.size(); ++i)
        if (rng.uniform01() <= cfg.mutation_prob)
            g1[i] += polynomial_bump(rng.uniform01(), cfg.mut_eta) * gene_range(s, i, pos_genes);

    Candidate c = a;
    c.invalidate();
    apply_continuous_genes(g1, c);
    clamp_repair(c.positions, s.geom);
    normalize_power(c.w, s.radio.p_max_w, rng);
    for (int& index : c.phases.idx) index = rng.uniform_int(c.phases.levels);
    return c;
}

std::vector<ObjectiveVector> objectives_of(const std::vector<Candidate>& pop) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (const Candidate& c : pop) objs.push_back(*c.objectives);
    return objs;
}

std::vector<Candidate> nondominated_subset(const std::vector<Candidate>& pop) {
    auto fronts = non_dominated_sort(objectives_of(pop));
    std::vector<Candidate> out;
    for (int i : fronts.front()) out.push_back(pop[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace

// ---------------------------------------------------------------- NSGA-III

namespace {

struct Nsga3Selection {
    std::vector<Candidate> members;
    std::vector<int> rank;
};

double asf(const ObjectiveVector& f, const ObjectiveVector& ideal, int axis) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        double w = i == axis ? 1.0 : 1e-6;
        worst = std::max(worst, (f[static_cast<std::size_t>(i)] - ideal[static_cast<std::size_t>(i)]) / w);
    }
    return worst;
}

// Deb-Jain normalization: ideal point, ASF extreme points, hyperplane
// intercepts with a nadir fallback.
std::vector<ObjectiveVector> normalize_objectives(const std::vector<ObjectiveVector>& objs) {
    ObjectiveVector ideal = objs.front();
    ObjectiveVector nadir = objs.front();
    for (const auto& f : objs)
        for (std::size_t i = 0; i < 3; ++i) {
            ideal[i] = std::min(ideal[i], f[i]);
            nadir[i] = std::max(nadir[i], f[i]);
        }

    std::array<ObjectiveVector, 3> extremes{};
    for (int axis = 0; axis < 3; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : objs) {
            double v = asf(f, ideal, axis);
            if (v < best) {
                best = v;
                extremes[static_cast<std::size_t>(axis)] = f;
            }
        }
    }

    // solve for intercepts a_i of the plane through the shifted extremes
    std::array<double, 3> intercept{};
    bool ok = true;
    {
        double m[3][4];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c)
                m[r][c] = extremes[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -
                          ideal[static_cast<std::size_t>(c)];
            m[r][3] = 1.0;
        }
        for (int col = 0; col < 3 && ok; ++col) {
            int pivot = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
            if (std::abs(m[pivot][col]) < 1e-12) {
                ok = false;
                break;
            }
            std::swap(m[col], m[pivot]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                double factor = m[r][col] / m[col][col];
                for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
            }
        }
        if (ok)
            for (int i = 0; i < 3; ++i) {
                double beta = m[i][3] / m[i][i]; // plane sum beta_i * x_i = 1
                if (beta <= 1e-12) {
                    ok = false;
                    break;
                }
                intercept[static_cast<std::size_t>(i)] = 1.0 / beta;
            }
    }
    for (int i = 0; i < 3; ++i) {
        double span = nadir[static_cast<std::size_t>(i)] - ideal[static_cast<std::size_t>(i)];
        if (!ok || intercept[static_cast<std::size_t>(i)] <= 1e-12)
            intercept[static_cast<std::size_t>(i)] = span > 0.0 ? span : 1.0;
    }

    std::vector<ObjectiveVector> out;
    out.reserve(objs.size());
    for (const auto& f : objs) {
        ObjectiveVector n;
        for (std::size_t i = 0; i < 3; ++i) n[i] = (f[i] - ideal[i]) / intercept[i];
        out.push_back(n);
    }
    return out;
}

double point_line_distance(const ObjectiveVector& p, const std::array<double, 3>& dir) {
    double dd = dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2];
    double t = (p[0] * dir[0] + p[1] * dir[1] + p[2] * dir[2]) / dd;
    double dx = p[0] - t * dir[0];
    double dy = p[1] - t * dir[1];
    double dz = p[2] - t * dir[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Nsga3Selection nsga3_select(std::vector<Candidate> pool, int pop_size,
                            const std::vector<std::array<double, 3>>& refs, RngStream& rng) {
    auto fronts = non_dominated_sort(objectives_of(pool));
    std::vector<int> chosen;
    std::vector<int> rank_of(pool.size(), -1);
    std::size_t f = 0;
    for (; f < fronts.size(); ++f) {
        for (int i : fronts[f]) rank_of[static_cast<std::size_t>(i)] = static_cast<int>(f);
        if (static_cast<int>(chosen.size() + fronts[f].size()) <= pop_size) {
            chosen.insert(chosen.end(), fronts[f].begin(), fronts[f].end());
            if (static_cast<int>(chosen.size()) == pop_size) break;
        } else {
            break;
        }
    }

    if (static_cast<int>(chosen.size()) < pop_size && f < fronts.size()) {
        const std::vector<int>& last = fronts[f];
        std::vector<int> considered = chosen;
        considered.insert(considered.end(), last.begin(), last.end());
        std::vector<ObjectiveVector> objs;
        objs.reserve(considered.size());
        for (int i : considered) objs.push_back(*pool[static_cast<std::size_t>(i)].objectives);
        auto normalized = normalize_objectives(objs);

        std::vector<int> assoc(considered.size());
        std::vector<double> dist(considered.size());
        for (std::size_t i = 0; i < considered.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_ref = 0;
            for (std::size_t r = 0; r < refs.size(); ++r) {
                double d = point_line_distance(normalized[i], refs[r]);
                if (d < best) {
                    best = d;
                    best_ref = static_cast<int>(r);
                }
            }
            assoc[i] = best_ref;
            dist[i] = best;
        }

        std::vector<int> niche(refs.size(), 0);
        for (std::size_t i = 0; i < chosen.size(); ++i) ++niche[static_cast<std::size_t>(assoc[i])];

        // candidates from the split front, indexed into `considered`
        std::vector<int> pending;
        for (std::size_t i = chosen.size(); i < considered.size(); ++i)
            pending.push_back(static_cast<int>(i));
        std::vector<bool> ref_alive(refs.size(), true);

        while (static_cast<int>(chosen.size()) < pop_size) {
            int best_ref = -1;
            int best_count = std::numeric_limits<int>::max();
            int alive = 0;
            for (std::size_t r = 0; r < refs.size(); ++r)
                if (ref_alive[r]) {
                    ++alive;
                    if (niche[r] < best_count) best_count = niche[r];
                }
            if (alive == 0) {
                // every niche exhausted; fall back to the densest remaining
                for (std::size_t r = 0; r < refs.size(); ++r) ref_alive[r] = true;
                continue;
            }
            std::vector<int> min_refs;
            for (std::size_t r = 0; r < refs.size(); ++r)
                if (ref_alive[r] && niche[r] == best_count) min_refs.push_back(static_cast<int>(r));
            best_ref = min_refs[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(min_refs.size())))];

            std::vector<int> members;
            for (int p : pending)
                if (assoc[static_cast<std::size_t>(p)] == best_ref) members.push_back(p);
            if (members.empty()) {
                ref_alive[static_cast<std::size_t>(best_ref)] = false;
                continue;
            }
            int pick;
            if (niche[static_cast<std::size_t>(best_ref)] == 0) {
                pick = members.front();
                for (int m : members)
                    if (dist[static_cast<std::size_t>(m)] < dist[static_cast<std::size_t>(pick)]) pick = m;
            } else {
                pick = members[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(members.size())))];
            }
            chosen.push_back(considered[static_cast<std::size_t>(pick)]);
            pending.erase(std::find(pending.begin(), pending.end(), pick));
            ++niche[static_cast<std::size_t>(best_ref)];
        }
    }

    std::sort(chosen.begin(), chosen.end());
    Nsga3Selection out;
    for (int i : chosen) {
        out.members.push_back(std::move(pool[static_cast<std::size_t>(i)]));
        out.rank.push_back(rank_of[static_cast<std::size_t>(i)]);
    }
    return out;
}

} // namespace

RunResult run_nsga3(const Scenario& s, std::uint64_t seed) {
    Stopwatch clock;
    const int pop_size = s.algo.pop_size;
    const OperatorConfig cfg = operator_config(s.algo, s.geom.m_uavs);
    const auto refs = das_dennis_weights(das_dennis_divisions_within(pop_size));

    RunResult result;
    std::vector<Candidate> pop = init_population(s, seed);
    evaluate_all(s, pop, result.eval_count);

    for (int gen = 1; gen <= s.algo.max_gens; ++gen) {
        RngStream gen_rng(mix_seed(seed, {kTagNsga3, static_cast<std::uint64_t>(gen)}));
        std::vector<Candidate> offspring;
        offspring.reserve(static_cast<std::size_t>(pop_size));
        for (int i = 0; i < pop_size; ++i) {
            RngStream rng(mix_seed(seed, {kTagNsga3, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
            // canonical NSGA-III mates random parents
            const Candidate& a = pop[static_cast<std::size_t>(rng.uniform_int(pop_size))];
            const Candidate& b = pop[static_cast<std::size_t>(rng.uniform_int(pop_size))];
            offspring.push_back(variation_child(s, cfg, a, b, rng));
        }
        evaluate_all(s, offspring, result.eval_count);

        std::vector<Candidate> pool = std::move(pop);
        for (Candidate& c : offspring) pool.push_back(std::move(c));
        result.offspring_per_gen.push_back(pop_size);
        result.pool_per_gen.push_back(static_cast<int>(pool.size()));

        Nsga3Selection sel = nsga3_select(std::move(pool), pop_size, refs, gen_rng);
        pop = std::move(sel.members);

        std::vector<ObjectiveVector> front;
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (sel.rank[i] == 0) front.push_back(*pop[i].objectives);
        result.history.push_back(std::move(front));
    }

    result.final_front = nondominated_subset(pop);
    result.wall_time_s = clock.seconds();
    return result;
}

// ----------------------------------------------------------------- MOEA/D

namespace {

double tchebycheff(const ObjectiveVector& f, const std::array<double, 3>& weight,
                   const ObjectiveVector& ideal) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 3; ++i) {
        double w = std::max(weight[i], 1e-6);
        worst = std::max(worst, w * std::abs(f[i] - ideal[i]));
    }
    return worst;
}

} // namespace

RunResult run_moead(const Scenario& s, std::uint64_t seed) {
    Stopwatch clock;
    const OperatorConfig cfg = operator_config(s.algo, s.geom.m_uavs);
    const auto weights = das_dennis_weights(das_dennis_divisions_within(s.algo.pop_size));
    const int n = static_cast<int>(weights.size());
    const int neighborhood = std::min(10, n);
    const int max_replacements = 2;

    // T nearest weight vectors per subproblem
    std::vector<std::vector<int>> neighbors(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> by_dist;
        for (int j = 0; j < n; ++j) {
            double d = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                double diff = weights[static_cast<std::size_t>(i)][k] - weights[static_cast<std::size_t>(j)][k];
                d += diff * diff;
            }
            by_dist.push_back({d, j});
        }
        std::stable_sort(by_dist.begin(), by_dist.end());
        for (int t = 0; t < neighborhood; ++t)
            neighbors[static_cast<std::size_t>(i)].push_back(by_dist[static_cast<std::size_t>(t)].second);
    }

    RunResult result;
    Scenario sized = s;
    sized.algo.pop_size = n % 2 == 0 ? n : n + 1; // init helper wants even; extra is dropped
    std::vector<Candidate> pop = init_population(sized, seed);
    pop.resize(static_cast<std::size_t>(n));
    evaluate_all(s, pop, result.eval_count);

    ObjectiveVector ideal = *pop.front().objectives;
    for (const Candidate& c : pop)
        for (std::size_t i = 0; i < 3; ++i) ideal[i] = std::min(ideal[i], (*c.objectives)[i]);

    for (int gen = 1; gen <= s.algo.max_gens; ++gen) {
        for (int i = 0; i < n; ++i) {
            RngStream rng(mix_seed(seed, {kTagMoead, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
            const auto& hood = neighbors[static_cast<std::size_t>(i)];
            int a = hood[static_cast<std::size_t>(rng.uniform_int(neighborhood))];
            int b = hood[static_cast<std::size_t>(rng.uniform_int(neighborhood))];
            Candidate child = variation_child(s, cfg, pop[static_cast<std::size_t>(a)],
                                              pop[static_cast<std::size_t>(b)], rng);
            evaluate(s, child, result.eval_count);
            for (std::size_t k = 0; k < 3; ++k) ideal[k] = std::min(ideal[k], (*child.objectives)[k]);

            // bounded neighborhood replacement, visiting in random order
            std::vector<int> order(hood.begin(), hood.end());
            for (int t = static_cast<int>(order.size()) - 1; t > 0; --t)
                std::swap(order[static_cast<std::size_t>(t)],
                          order[static_cast<std::size_t>(rng.uniform_int(t + 1))]);
            int replaced = 0;
            for (int j : order) {
                if (replaced >= max_replacements) break;
                double child_score = tchebycheff(*child.objectives, weights[static_cast<std::size_t>(j)], ideal);
                double incumbent_score = tchebycheff(*pop[static_cast<std::size_t>(j)].objectives,
                                                     weights[static_cast<std::size_t>(j)], ideal);
                if (child_score <= incumbent_score) {
                    pop[static_cast<std::size_t>(j)] = child;
                    ++replaced;
                }
            }
        }
        result.offspring_per_gen.push_back(n);
        result.pool_per_gen.push_back(n);
        auto front = nondominated_subset(pop);
        result.history.push_back(objectives_of(front));
    }

    result.final_front = nondominated_subset(pop);
    result.wall_time_s = clock.seconds();
    return result;
}

// ------------------------------------------------------------------ MOPSO

namespace {

// archive capped by crowding: keep the most spread-out members
std::vector<Candidate> cap_archive(std::vector<Candidate> archive, int cap) {
    if (static_cast<int>(archive.size()) <= cap) return archive;
    auto crowd = crowding_distance(objectives_of(archive));
    std::vector<int> order(archive.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return crowd[static_cast<std::size_t>(a)] > crowd[static_cast<std::size_t>(b)]; });
    order.resize(static_cast<std::size_t>(cap));
    std::sort(order.begin(), order.end());
    std::vector<Candidate> out;
    out.reserve(order.size());
    for (int i : order) out.push_back(std::move(archive[static_cast<std::size_t>(i)]));
    return out;
}

std::vector<Candidate> merge_archive(std::vector<Candidate> archive, const std::vector<Candidate>& fresh,
                                     int cap) {
    for (const Candidate& c : fresh) archive.push_back(c);
    archive = nondominated_subset(archive);
    // drop exact duplicates to keep the archive a set
    std::vector<Candidate> unique;
    for (Candidate& c : archive) {
        bool seen = false;
        for (const Candidate& u : unique)
            if (u.objectives == c.objectives && u.w == c.w && u.positions == c.positions) {
                seen = true;
                break;
            }
        if (!seen) unique.push_back(std::move(c));
    }
    return cap_archive(std::move(unique), cap);
}

} // namespace

RunResult run_mopso(const Scenario& s, std::uint64_t seed) {
    Stopwatch clock;
    const int pop_size = s.algo.pop_size;
    const OperatorConfig cfg = operator_config(s.algo, s.geom.m_uavs);
    const std::size_t pos_genes = static_cast<std::size_t>(s.geom.m_uavs) * 3;

    RunResult result;
    std::vector<Candidate> swarm = init_population(s, seed);
    evaluate_all(s, swarm, result.eval_count);
    std::vector<Candidate> pbest = swarm;

    // continuous-gene velocities, zero at launch
    std::vector<std::vector<double>> velocity(static_cast<std::size_t>(pop_size));
    for (auto& v : velocity) v.assign(pos_genes + swarm.front().w.a.size() * 2, 0.0);

    std::vector<Candidate> archive = merge_archive({}, swarm, pop_size);

    for (int gen = 1; gen <= s.algo.max_gens; ++gen) {
        auto archive_crowd = crowding_distance(objectives_of(archive));
        for (int i = 0; i < pop_size; ++i) {
            RngStream rng(mix_seed(seed, {kTagMopso, static_cast<std::uint64_t>(gen),
                                          static_cast<std::uint64_t>(i)}));
            const Candidate& leader =
                archive[static_cast<std::size_t>(roulette_from_front(archive_crowd, rng))];

            Candidate& particle = swarm[static_cast<std::size_t>(i)];
            std::vector<double> x = continuous_genes(particle);
            std::vector<double> best = continuous_genes(pbest[static_cast<std::size_t>(i)]);
            std::vector<double> lead = continuous_genes(leader);
            auto& v = velocity[static_cast<std::size_t>(i)];
            for (std::size_t d = 0; d < x.size(); ++d) {
                double r1 = rng.uniform_open01();
                double r2 = rng.uniform_open01();
                v[d] = cfg.inertia_eps * v[d] + cfg.learn_c1 * r1 * (best[d] - x[d]) +
                       cfg.learn_c2 * r2 * (lead[d] - x[d]);
                x[d] += v[d];
            }
            particle.invalidate();
            apply_continuous_genes(x, particle);
            clamp_repair(particle.positions, s.geom);
            normalize_power(particle.w, s.radio.p_max_w, rng);
            for (int& index : particle.phases.idx) index = rng.uniform_int(particle.phases.levels);

            evaluate(s, particle, result.eval_count);
            Candidate& personal = pbest[static_cast<std::size_t>(i)];
            if (dominates(*particle.objectives, *personal.objectives)) {
                personal = particle;
            } else if (!dominates(*personal.objectives, *particle.objectives) && rng.coin()) {
                personal = particle;
            }
        }
        archive = merge_archive(std::move(archive), swarm, pop_size);
        result.offspring_per_gen.push_back(pop_size);
        result.pool_per_gen.push_back(static_cast<int>(archive.size()));
        result.history.push_back(objectives_of(archive));
    }

    result.final_front = std::move(archive);
    result.wall_time_s = clock.seconds();
    return result;
}

} // namespace uavris
