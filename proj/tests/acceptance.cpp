// Acceptance suite: one labelled pass/fail line per criterion, nonzero exit
// if anything fails. Tolerances and thresholds are pinned in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "uavris/algorithms.hpp"
#include "uavris/harness.hpp"

using namespace uavris;
namespace fs = std::filesystem;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct Timer {
    double begin = now_seconds();
    double elapsed() const { return now_seconds() - begin; }
};

Scenario acceptance_toy() {
    Scenario s = testing_support::toy_scenario(); // M=2 K=3 N_RIS=4 N_BS=4 Pop=20
    s.algo.max_gens = 100;
    return s;
}

constexpr int kSeeds = 10;

// shared toy runs, computed once and reused across criteria
struct SharedRuns {
    std::vector<RunResult> cdc;
    std::map<std::string, std::vector<RunResult>> family; // nsga2 + ablations
};

SharedRuns& shared_runs() {
    static SharedRuns runs = [] {
        SharedRuns r;
        Scenario s = acceptance_toy();
        for (int seed = 1; seed <= kSeeds; ++seed) r.cdc.push_back(run_insga2cdc(s, seed));
        for (auto [name, variant] :
             std::initializer_list<std::pair<const char*, Nsga2Variant>>{
                 {"nsga2", Nsga2Variant::Plain},
                 {"insga2-c1", Nsga2Variant::ReflectRepair},
                 {"insga2-d", Nsga2Variant::PhaseLearning},
                 {"insga2-c2", Nsga2Variant::ParticleBeamforming}}) {
            for (int seed = 1; seed <= kSeeds; ++seed)
                r.family[name].push_back(run_nsga2_family(s, seed, variant));
        }
        return r;
    }();
    return runs;
}

std::vector<ObjectiveVector> objs_of(const RunResult& r) {
    std::vector<ObjectiveVector> out;
    for (const Candidate& c : r.final_front) out.push_back(*c.objectives);
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// --- criterion 1 -----------------------------------------------------------

bool criterion_sorting_oracle(std::string& detail) {
    Timer t;
    RngStream rng(2024);
    for (int instance = 0; instance < 200; ++instance) {
        int n = 1 + rng.uniform_int(50);
        std::vector<ObjectiveVector> objs;
        for (int i = 0; i < n; ++i) {
            auto draw = [&] {
                double v = rng.uniform(0.0, 1.0);
                return instance % 2 ? std::floor(v * 5.0) : v; // ties in half the instances
            };
            objs.push_back({draw(), draw(), draw()});
        }
        auto got = non_dominated_sort(objs);
        auto expected = oracles::naive_fronts(objs);
        if (got.size() != expected.size()) {
            detail = "front count mismatch";
            return false;
        }
        for (std::size_t f = 0; f < got.size(); ++f) {
            auto a = got[f];
            auto b = expected[f];
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) {
                detail = "front membership mismatch";
                return false;
            }
        }
    }
    RngStream crng(4048);
    for (int instance = 0; instance < 200; ++instance) {
        int n = 1 + crng.uniform_int(5);
        std::vector<ObjectiveVector> front;
        for (int i = 0; i < n; ++i)
            front.push_back({crng.uniform(0.0, 1.0), crng.uniform(0.0, 1.0), crng.uniform(0.0, 1.0)});
        auto got = crowding_distance(front);
        auto expected = oracles::naive_crowding(front);
        for (std::size_t i = 0; i < got.size(); ++i) {
            bool both_inf = std::isinf(got[i]) && std::isinf(expected[i]);
            if (!both_inf && std::abs(got[i] - expected[i]) > 1e-12) {
                detail = "crowding mismatch";
                return false;
            }
        }
    }
    detail = "200 sorting instances exact, crowding to 1e-12, " + format_double(t.elapsed()) + " s";
    return t.elapsed() < 5.0;
}

// --- criterion 2 -----------------------------------------------------------

bool criterion_channel_oracle(std::string& detail) {
    Timer t;
    RngStream rng(77);
    for (int instance = 0; instance < 100; ++instance) {
        int m = 1 + rng.uniform_int(2);
        int k = 1 + rng.uniform_int(3);
        int n_r = 1 + rng.uniform_int(2);
        int n_c = 1 + rng.uniform_int(4); // N_RIS <= 8
        int n_bs = 1 + rng.uniform_int(4);
        Scenario s = testing_support::sized_scenario(m, k, n_r, n_c, n_bs);

        std::vector<Vec3> pos;
        for (int i = 0; i < m; ++i)
            pos.push_back({rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0), rng.uniform(50.0, 200.0)});
        PhaseMatrix phases(m, s.radio.n_ris(), 8);
        for (int& idx : phases.idx) idx = rng.uniform_int(8);
        CMat w(n_bs, k);
        for (cplx& v : w.a) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

        ChannelState state = effective_channels(s, pos, phases);
        for (int user = 0; user < k; ++user) {
            cvec expected = oracles::naive_effective_row(s, pos, phases, user);
            for (int j = 0; j < n_bs; ++j) {
                cplx got = state.effective[static_cast<std::size_t>(user)][static_cast<std::size_t>(j)];
                double scale = std::max(1e-30, std::abs(expected[static_cast<std::size_t>(j)]));
                if (std::abs(got - expected[static_cast<std::size_t>(j)]) > 1e-9 * scale) {
                    detail = "effective channel mismatch";
                    return false;
                }
            }
        }
        auto [sinr, rates] = sinr_and_rates(s, state, w);
        auto expected_sinr = oracles::naive_sinr(s, state.effective, w);
        auto expected_rates = oracles::naive_rates(s, expected_sinr);
        for (int user = 0; user < k; ++user) {
            if (std::abs(sinr[static_cast<std::size_t>(user)] - expected_sinr[static_cast<std::size_t>(user)]) >
                1e-9 * std::max(1e-30, expected_sinr[static_cast<std::size_t>(user)])) {
                detail = "SINR mismatch";
                return false;
            }
            if (std::abs(rates[static_cast<std::size_t>(user)] - expected_rates[static_cast<std::size_t>(user)]) >
                1e-9 * std::max(1e-30, expected_rates[static_cast<std::size_t>(user)])) {
                detail = "rate mismatch";
                return false;
            }
        }
    }
    detail = "100 random instances to 1e-9 relative, " + format_double(t.elapsed()) + " s";
    return t.elapsed() < 5.0;
}

// --- criterion 3 -----------------------------------------------------------

bool criterion_energy_oracle(std::string& detail) {
    UavParams u;
    if (propulsion_power(u, 0.0) != u.blade_power_w + u.induced_power_w) {
        detail = "hover power is not exactly P_B + P_I";
        return false;
    }
    RngStream rng(88);
    for (int instance = 0; instance < 50; ++instance) {
        Scenario s = testing_support::sized_scenario(1 + rng.uniform_int(3), 1 + rng.uniform_int(3), 2, 2, 3);
        std::vector<Vec3> pos;
        for (int m = 0; m < s.geom.m_uavs; ++m)
            pos.push_back({rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0), rng.uniform(50.0, 200.0)});
        CMat w(s.radio.n_bs, s.geom.k_gus());
        for (cplx& v : w.a) v = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        std::vector<double> rates;
        for (int k = 0; k < s.geom.k_gus(); ++k) rates.push_back(rng.uniform(1e5, 5e6));

        double deploy = deployment_energy(s, pos);
        double deploy_oracle = oracles::naive_deploy_energy(s, pos);
        if (std::abs(deploy - deploy_oracle) > 1e-9 * std::abs(deploy_oracle)) {
            detail = "deployment energy mismatch";
            return false;
        }
        double comm = comm_power(s, w);
        double comm_oracle = oracles::naive_comm_power(s, w);
        if (std::abs(comm - comm_oracle) > 1e-9 * comm_oracle) {
            detail = "communication power mismatch";
            return false;
        }
        double hover = hover_energy(s, rates, w).e_hover;
        double hover_oracle = oracles::naive_hover_energy(s, rates, w);
        if (std::abs(hover - hover_oracle) > 1e-9 * hover_oracle) {
            detail = "hover energy mismatch";
            return false;
        }
    }
    detail = "closed forms exact, 50 random term-sum checks to 1e-9";
    return true;
}

// --- criterion 4 -----------------------------------------------------------

bool criterion_constraint_totality(std::string& detail) {
    Scenario s = acceptance_toy();
    s.algo.max_gens = 60;
    long long candidates = 0;
    // evaluation itself throws on any box/phase/power violation, so a clean
    // pass over every algorithm is the zero-violation certificate
    try {
        for (Algo a : all_algorithms()) {
            RunResult r = run_algorithm(a, s, 5);
            candidates += r.eval_count;
            for (const Candidate& c : r.final_front) {
                check_constraints(s, c);
                for (int m = 0; m < c.phases.m_count(); ++m)
                    for (int n = 0; n < c.phases.n_ris; ++n) {
                        double steps = c.phases.theta(m, n) / (kTwoPi / 8.0);
                        if (std::abs(steps - std::round(steps)) > 1e-12) {
                            detail = "phase off the quantized grid";
                            return false;
                        }
                    }
            }
        }
    } catch (const ValidationError& e) {
        detail = std::string("violation: ") + e.what();
        return false;
    }
    detail = format_double(static_cast<double>(candidates)) + " candidates across 12 algorithms, zero violations";
    return candidates >= 10000;
}

// --- criterion 5 -----------------------------------------------------------

bool criterion_offspring_accounting(std::string& detail) {
    const Scenario s = acceptance_toy();
    for (const RunResult& r : shared_runs().cdc) {
        if (static_cast<int>(r.offspring_per_gen.size()) != s.algo.max_gens) {
            detail = "missing per-generation accounting";
            return false;
        }
        for (int n : r.offspring_per_gen)
            if (n != 4 * s.algo.pop_size) {
                detail = "offspring count != 4*Pop";
                return false;
            }
        for (int n : r.pool_per_gen)
            if (n != 5 * s.algo.pop_size) {
                detail = "selection pool != 5*Pop";
                return false;
            }
    }
    detail = "4*Pop offspring and 5*Pop pool held for 100 generations x 10 seeds";
    return true;
}

// --- criterion 6 -----------------------------------------------------------

bool criterion_convergence_audit(std::string& detail) {
    Timer t;
    int passing_seeds = 0;
    for (const RunResult& r : shared_runs().cdc) {
        const auto& early = r.history[24];  // generation 25
        const auto& late = r.history[99];   // generation 100
        if (weak_coverage(early, late) >= 0.9) ++passing_seeds;
    }
    detail = std::to_string(passing_seeds) + "/10 seeds with >=90% coverage of the gen-25 front, " +
             format_double(t.elapsed()) + " s";
    return passing_seeds >= 9 && t.elapsed() < 120.0;
}

// --- criterion 7 -----------------------------------------------------------

bool criterion_algorithm_ordering(std::string& detail) {
    Timer t;
    SharedRuns& runs = shared_runs();

    // shared reference: pooled nadir pushed 10% past the pooled ideal
    ObjectiveVector ideal{1e300, 1e300, 1e300};
    ObjectiveVector nadir{-1e300, -1e300, -1e300};
    auto absorb = [&](const std::vector<RunResult>& rs) {
        for (const RunResult& r : rs)
            for (const auto& o : objs_of(r))
                for (std::size_t i = 0; i < 3; ++i) {
                    ideal[i] = std::min(ideal[i], o[i]);
                    nadir[i] = std::max(nadir[i], o[i]);
                }
    };
    absorb(runs.cdc);
    for (const auto& [name, rs] : runs.family) absorb(rs);
    ObjectiveVector ref;
    for (std::size_t i = 0; i < 3; ++i) {
        double span = std::max(nadir[i] - ideal[i], 1e-9);
        ref[i] = nadir[i] + 0.1 * span;
    }

    auto median_hv = [&](const std::vector<RunResult>& rs) {
        std::vector<double> hv;
        for (const RunResult& r : rs) hv.push_back(hypervolume(objs_of(r), ref));
        return median(hv);
    };
    double cdc = median_hv(runs.cdc);
    double nsga2 = median_hv(runs.family["nsga2"]);
    double c1 = median_hv(runs.family["insga2-c1"]);
    double d = median_hv(runs.family["insga2-d"]);
    double c2 = median_hv(runs.family["insga2-c2"]);

    std::ostringstream oss;
    oss << "median HV: cdc=" << format_double(cdc) << " nsga2=" << format_double(nsga2)
        << " c1=" << format_double(c1) << " d=" << format_double(d) << " c2=" << format_double(c2)
        << ", " << format_double(t.elapsed()) << " s";
    detail = oss.str();
    return cdc > nsga2 && c1 >= nsga2 && d >= nsga2 && c2 >= nsga2 && t.elapsed() < 600.0;
}

// --- criterion 8 -----------------------------------------------------------

bool criterion_trend(std::string& detail) {
    Scenario base = testing_support::sweep_scenario();
    std::map<int, std::vector<double>> best_f3;
    std::map<int, std::vector<double>> best_f2;
    for (int m : {1, 2, 4}) {
        for (int trial = 0; trial < kSeeds; ++trial) {
            TrialReport r = run_trial(base, "insga2cdc", m, 3, trial, 11, 50);
            best_f3[m].push_back(r.best_f3);
            best_f2[m].push_back(r.best_f2);
        }
    }
    double f3_1 = median(best_f3[1]), f3_2 = median(best_f3[2]), f3_4 = median(best_f3[4]);
    double f2_1 = median(best_f2[1]), f2_2 = median(best_f2[2]);
    std::ostringstream oss;
    oss << "median best-f3: " << format_double(f3_1) << " < " << format_double(f3_2) << " < "
        << format_double(f3_4) << "; median best-f2 m2/m1: " << format_double(f2_2) << " / "
        << format_double(f2_1);
    detail = oss.str();
    return f3_1 < f3_2 && f3_2 < f3_4 && f2_2 > f2_1;
}

// --- criterion 9 -----------------------------------------------------------

bool criterion_tradeoff(std::string& detail) {
    int seeds_with_conflict = 0;
    for (const RunResult& r : shared_runs().cdc) {
        bool found = false;
        auto objs = objs_of(r);
        for (const auto& a : objs) {
            for (const auto& b : objs) {
                double f2_a = -a[1], f2_b = -b[1];
                double f3_a = a[2], f3_b = b[2];
                if (f2_a > f2_b && f3_a > f3_b) found = true;
            }
        }
        if (found) ++seeds_with_conflict;
    }
    detail = std::to_string(seeds_with_conflict) + "/10 fronts realize the rate-energy conflict";
    return seeds_with_conflict >= 9;
}

// --- criterion 10 ----------------------------------------------------------

bool criterion_determinism(std::string& detail) {
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    fs::path root = fs::temp_directory_path() / "uavris_acceptance";
    fs::remove_all(root);
    CampaignSpec spec;
    spec.scenario = acceptance_toy();
    spec.algorithms = {"insga2cdc", "nsga2", "rd"};
    spec.m_sweep = {2};
    spec.k_values = {3};
    spec.trials = 3;
    spec.base_seed = 314;
    spec.max_gens_override = 10;

    spec.output_dir = (root / "a").string();
    spec.workers = 4;
    run_campaign(spec);
    spec.output_dir = (root / "b").string();
    spec.workers = 1;
    run_campaign(spec);

    std::vector<fs::path> rel;
    for (const auto& e : fs::recursive_directory_iterator(root / "a"))
        if (e.is_regular_file() && e.path().filename() != "timings.csv")
            rel.push_back(fs::relative(e.path(), root / "a"));
    if (rel.empty()) {
        detail = "no outputs produced";
        return false;
    }
    for (const fs::path& p : rel) {
        if (slurp(root / "a" / p) != slurp(root / "b" / p)) {
            detail = "mismatch in " + p.string();
            return false;
        }
    }
    detail = std::to_string(rel.size()) + " exported files byte-identical across two runs";
    return true;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* label;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Entry> criteria = {
        {1, "non-dominated sorting and crowding match brute-force oracles", criterion_sorting_oracle},
        {2, "channel, SINR, and rates match naive-loop oracles", criterion_channel_oracle},
        {3, "energy closed forms match term-sum oracles", criterion_energy_oracle},
        {4, "no constraint violation across a full toy run of every algorithm", criterion_constraint_totality},
        {5, "4*Pop offspring and 5*Pop pool every generation", criterion_offspring_accounting},
        {6, "late fronts cover early fronts (convergence audit)", criterion_convergence_audit},
        {7, "median hypervolume ordering across algorithm variants", criterion_algorithm_ordering},
        {8, "energy and capacity trends across the UAV-count sweep", criterion_trend},
        {9, "rate-energy trade-off realized on final fronts", criterion_tradeoff},
        {10, "byte-identical exports under a fixed seed", criterion_determinism},
    };

    int failures = 0;
    for (const Entry& entry : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = entry.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", entry.id, entry.label,
                    detail.empty() ? "" : " — ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
