#include "uavris/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "uavris/config.hpp"
#include "uavris/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace uavris {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw ValidationError("format_double: conversion failed");
    return std::string(buf, ptr);
}

void atomic_write(const std::string& path, const std::string& contents) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write file: " + tmp.string());
        out << contents;
        if (!out) throw IoError("short write: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + target.string());
}

CampaignSpec load_campaign(const std::string& path) {
    KvFile kv = KvFile::parse_file(path);
    CampaignSpec spec;

    std::string scenario_path = kv.get_string("scenario");
    fs::path resolved(scenario_path);
    if (resolved.is_relative()) resolved = fs::path(path).parent_path() / resolved;
    spec.scenario = load_scenario(resolved.string());

    spec.algorithms = kv.get_string_list("algorithms");
    for (const std::string& name : spec.algorithms)
        if (!algo_from_name(name)) throw ValidationError("campaign: unknown algorithm '" + name + "'");

    auto to_ints = [](const std::vector<double>& v, const char* what) {
        std::vector<int> out;
        for (double d : v) {
            int i = static_cast<int>(d);
            if (static_cast<double>(i) != d || i <= 0)
                throw ValidationError(std::string("campaign: ") + what + " entries must be positive integers");
            out.push_back(i);
        }
        return out;
    };
    spec.m_sweep = to_ints(kv.get_double_list_or("m_sweep", {static_cast<double>(spec.scenario.geom.m_uavs)}),
                           "m_sweep");
    spec.k_values = to_ints(kv.get_double_list_or("k_values", {static_cast<double>(spec.scenario.geom.k_gus())}),
                            "k_values");
    spec.trials = kv.get_int_or("trials", spec.scenario.algo.trials);
    spec.base_seed = kv.get_u64_or("base_seed", spec.scenario.algo.rng_seed);
    spec.output_dir = kv.get_string_or("output_dir", "out");
    if (kv.has("max_gens")) spec.max_gens_override = kv.get_int("max_gens");
    spec.workers = kv.get_int_or("workers", 1);

    auto leftovers = kv.unconsumed();
    if (!leftovers.empty())
        throw ConfigError(kv.origin() + ": unknown key '" + leftovers.front() + "'");
    if (spec.trials < 1) throw ValidationError("campaign: trials must be >= 1");
    if (spec.workers < 1) throw ValidationError("campaign: workers must be >= 1");
    if (spec.algorithms.empty()) throw ValidationError("campaign: no algorithms listed");
    return spec;
}

std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& algorithm, int m, int k, int trial) {
    return mix_seed(base_seed, {fnv1a64(algorithm), static_cast<std::uint64_t>(m),
                                static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(trial)});
}

namespace {

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

} // namespace

void recompute_summaries(TrialReport& r) {
    std::vector<double> f1, f2, f3;
    for (const ObjectiveVector& o : r.front) {
        f1.push_back(-o[0]);
        f2.push_back(-o[1]);
        f3.push_back(o[2]);
    }
    if (f1.empty()) {
        r.best_f1 = r.best_f2 = r.best_f3 = r.med_f1 = r.med_f2 = r.med_f3 = 0.0;
        return;
    }
    r.best_f1 = *std::max_element(f1.begin(), f1.end());
    r.best_f2 = *std::max_element(f2.begin(), f2.end());
    r.best_f3 = *std::min_element(f3.begin(), f3.end());
    r.med_f1 = median_of(f1);
    r.med_f2 = median_of(f2);
    r.med_f3 = median_of(f3);
}

TrialReport run_trial(const Scenario& base, const std::string& algorithm, int m, int k, int trial,
                      std::uint64_t base_seed, std::optional<int> max_gens_override) {
    auto algo = algo_from_name(algorithm);
    if (!algo) throw ValidationError("run_trial: unknown algorithm '" + algorithm + "'");
    Scenario s = with_m_and_k(base, m, k);
    if (max_gens_override) s.algo.max_gens = *max_gens_override;

    TrialReport r;
    r.algorithm = algorithm;
    r.m = m;
    r.k = k;
    r.trial = trial;
    r.seed = trial_seed(base_seed, algorithm, m, k, trial);

    RunResult run = run_algorithm(*algo, s, r.seed);
    r.eval_count = run.eval_count;
    r.wall_time_s = run.wall_time_s;
    for (const Candidate& c : run.final_front) {
        r.front.push_back(*c.objectives);
        r.front_candidates.push_back(candidate_to_json(c));
    }
    recompute_summaries(r);
    return r;
}

std::string trial_report_to_json(const TrialReport& r) {
    json j;
    j["algorithm"] = r.algorithm;
    j["seed"] = r.seed;
    j["m"] = r.m;
    j["k"] = r.k;
    j["trial"] = r.trial;
    j["eval_count"] = r.eval_count;
    json front = json::array();
    for (const ObjectiveVector& o : r.front) front.push_back(o);
    j["front_objectives"] = std::move(front);
    json cands = json::array();
    for (const std::string& c : r.front_candidates) cands.push_back(json::parse(c));
    j["front_candidates"] = std::move(cands);
    j["summary"] = {
        {"best_f1", r.best_f1}, {"best_f2", r.best_f2}, {"best_f3", r.best_f3},
        {"med_f1", r.med_f1},   {"med_f2", r.med_f2},   {"med_f3", r.med_f3},
    };
    return j.dump(2) + "\n";
}

TrialReport trial_report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("trial report: ") + e.what());
    }
    TrialReport r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.m = j.at("m").get<int>();
    r.k = j.at("k").get<int>();
    r.trial = j.at("trial").get<int>();
    r.eval_count = j.at("eval_count").get<long long>();
    for (const auto& o : j.at("front_objectives"))
        r.front.push_back({o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>()});
    if (j.contains("front_candidates"))
        for (const auto& c : j["front_candidates"]) r.front_candidates.push_back(c.dump());
    recompute_summaries(r);
    return r;
}

namespace {

std::string trial_filename(const TrialReport& r) {
    return r.algorithm + "_m" + std::to_string(r.m) + "_k" + std::to_string(r.k) + "_t" +
           std::to_string(r.trial) + ".json";
}

struct CellKey {
    std::string algorithm;
    int m;
    int k;
    auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
    std::vector<double> best[3];
    std::vector<double> median[3];
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::map<CellKey, CellStats> collect_cells(const std::vector<TrialReport>& reports) {
    std::map<CellKey, CellStats> cells;
    for (const TrialReport& r : reports) {
        CellStats& c = cells[{r.algorithm, r.m, r.k}];
        c.best[0].push_back(r.best_f1);
        c.best[1].push_back(r.best_f2);
        c.best[2].push_back(r.best_f3);
        c.median[0].push_back(r.med_f1);
        c.median[1].push_back(r.med_f2);
        c.median[2].push_back(r.med_f3);
    }
    return cells;
}

} // namespace

void write_aggregates(const std::vector<TrialReport>& reports, const std::string& out_dir) {
    auto cells = collect_cells(reports);

    // improvement of the best algorithm over the runner-up, per (m, k,
    // objective, mode) group, on the mean column
    struct GroupKey {
        int m;
        int k;
        int objective;
        int mode;
        auto operator<=>(const GroupKey&) const = default;
    };
    std::map<GroupKey, std::vector<std::pair<std::string, double>>> groups;
    for (const auto& [key, stats] : cells)
        for (int obj = 0; obj < 3; ++obj)
            for (int mode = 0; mode < 2; ++mode) {
                const auto& vals = mode == 0 ? stats.best[obj] : stats.median[obj];
                groups[{key.m, key.k, obj, mode}].push_back({key.algorithm, mean_of(vals)});
            }
    std::map<std::tuple<std::string, int, int, int, int>, double> improvement;
    for (const auto& [gk, entries] : groups) {
        if (entries.size() < 2) continue;
        auto sorted = entries;
        bool maximize = gk.objective != 2; // f3 is minimized
        std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
            return maximize ? a.second > b.second : a.second < b.second;
        });
        double best = sorted[0].second;
        double second = sorted[1].second;
        double ratio;
        if (maximize)
            ratio = second != 0.0 ? (best - second) / std::abs(second) : 0.0;
        else
            ratio = second != 0.0 ? (second - best) / std::abs(second) : 0.0;
        improvement[{sorted[0].first, gk.m, gk.k, gk.objective, gk.mode}] = ratio;
    }

    std::ostringstream csv;
    csv << "algorithm,m,k,objective,mode,mean,std,max,min,improvement_vs_runner_up\n";
    const char* obj_names[3] = {"f1", "f2", "f3"};
    const char* mode_names[2] = {"best", "median"};
    for (const auto& [key, stats] : cells) {
        for (int obj = 0; obj < 3; ++obj) {
            for (int mode = 0; mode < 2; ++mode) {
                const auto& vals = mode == 0 ? stats.best[obj] : stats.median[obj];
                csv << key.algorithm << ',' << key.m << ',' << key.k << ',' << obj_names[obj] << ','
                    << mode_names[mode] << ',' << format_double(mean_of(vals)) << ','
                    << format_double(sample_std(vals)) << ','
                    << format_double(*std::max_element(vals.begin(), vals.end())) << ','
                    << format_double(*std::min_element(vals.begin(), vals.end())) << ',';
                auto it = improvement.find({key.algorithm, key.m, key.k, obj, mode});
                if (it != improvement.end()) csv << format_double(it->second);
                csv << '\n';
            }
        }
    }
    atomic_write((fs::path(out_dir) / "aggregate.csv").string(), csv.str());
    write_cdf_files(reports, out_dir);
}

// CDF samples: per cell, each column independently sorted ascending
void write_cdf_files(const std::vector<TrialReport>& reports, const std::string& out_dir) {
    auto cells = collect_cells(reports);
    for (const auto& [key, stats] : cells) {
        std::ostringstream cdf;
        cdf << "index,f1_best,f2_best,f3_best,f1_median,f2_median,f3_median\n";
        std::vector<double> cols[6];
        for (int obj = 0; obj < 3; ++obj) {
            cols[obj] = stats.best[obj];
            cols[obj + 3] = stats.median[obj];
            std::sort(cols[obj].begin(), cols[obj].end());
            std::sort(cols[obj + 3].begin(), cols[obj + 3].end());
        }
        for (std::size_t i = 0; i < cols[0].size(); ++i) {
            cdf << i;
            for (const auto& col : cols) cdf << ',' << format_double(col[i]);
            cdf << '\n';
        }
        std::string name = "cdf_" + key.algorithm + "_m" + std::to_string(key.m) + "_k" +
                           std::to_string(key.k) + ".csv";
        atomic_write((fs::path(out_dir) / name).string(), cdf.str());
    }
}

std::vector<TrialReport> load_reports(const std::string& trials_dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(trials_dir)) throw IoError("not a directory: " + trials_dir);
    for (const auto& entry : fs::directory_iterator(trials_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<TrialReport> reports;
    for (const fs::path& f : files) {
        std::ifstream in(f);
        if (!in) throw IoError("cannot read report: " + f.string());
        std::stringstream buf;
        buf << in.rdbuf();
        reports.push_back(trial_report_from_json(buf.str()));
    }
    return reports;
}

void write_front_files(const std::vector<TrialReport>& reports, const std::string& out_dir) {
    for (const TrialReport& r : reports) {
        std::ostringstream csv;
        csv << "f1,f2,f3\n";
        for (const ObjectiveVector& o : r.front)
            csv << format_double(-o[0]) << ',' << format_double(-o[1]) << ',' << format_double(o[2])
                << '\n';
        std::string name = "front_" + r.algorithm + "_m" + std::to_string(r.m) + "_k" +
                           std::to_string(r.k) + "_t" + std::to_string(r.trial) + ".csv";
        atomic_write((fs::path(out_dir) / name).string(), csv.str());
    }
    write_cdf_files(reports, out_dir);
}

void run_campaign(const CampaignSpec& spec) {
    struct Cell {
        std::string algorithm;
        int m;
        int k;
        int trial;
    };
    std::vector<Cell> cells;
    for (const std::string& algorithm : spec.algorithms)
        for (int m : spec.m_sweep)
            for (int k : spec.k_values)
                for (int t = 0; t < spec.trials; ++t) cells.push_back({algorithm, m, k, t});

    std::vector<TrialReport> reports(cells.size());
    std::mutex next_mutex;
    std::size_t next = 0;
    auto worker = [&]() {
        while (true) {
            std::size_t index;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= cells.size()) return;
                index = next++;
            }
            const Cell& c = cells[index];
            reports[index] = run_trial(spec.scenario, c.algorithm, c.m, c.k, c.trial, spec.base_seed,
                                       spec.max_gens_override);
        }
    };
    int thread_count = std::min<int>(spec.workers, static_cast<int>(cells.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    fs::path out(spec.output_dir);
    fs::path trials_dir = out / "trials";
    for (const TrialReport& r : reports)
        atomic_write((trials_dir / trial_filename(r)).string(), trial_report_to_json(r));

    write_aggregates(reports, out.string());

    // wall clocks are inherently non-reproducible; they live in their own file
    std::ostringstream timings;
    timings << "algorithm,m,k,trial,wall_time_s\n";
    for (const TrialReport& r : reports)
        timings << r.algorithm << ',' << r.m << ',' << r.k << ',' << r.trial << ','
                << format_double(r.wall_time_s) << '\n';
    atomic_write((out / "timings.csv").string(), timings.str());
}

} // namespace uavris
