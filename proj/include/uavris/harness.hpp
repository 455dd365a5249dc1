#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavris/algorithms.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

struct CampaignSpec {
    Scenario scenario;
    std::vector<std::string> algorithms;
    std::vector<int> m_sweep;
    std::vector<int> k_values;
    int trials = 30;
    std::uint64_t base_seed = 1;
    std::string output_dir = "out";
    std::optional<int> max_gens_override;
    int workers = 1;
};

CampaignSpec load_campaign(const std::string& path);

// Per-trial record. Summaries are stored in the maximization orientation the
// tables use (f1/f2 rates, f3 joules) and always recomputable from the front.
struct TrialReport {
    std::string algorithm;
    std::uint64_t seed = 0;
    int m = 0;
    int k = 0;
    int trial = 0;
    std::vector<ObjectiveVector> front;        // minimization orientation
    std::vector<std::string> front_candidates; // candidate JSON blobs
    long long eval_count = 0;
    double wall_time_s = 0.0;

    double best_f1 = 0.0, best_f2 = 0.0, best_f3 = 0.0; // max, max, min over the front
    double med_f1 = 0.0, med_f2 = 0.0, med_f3 = 0.0;    // per-objective medians
};

// Seeds depend only on (base, algorithm, m, k, trial): adding an algorithm to
// a campaign never perturbs existing trials.
std::uint64_t trial_seed(std::uint64_t base_seed, const std::string& algorithm, int m, int k, int trial);

TrialReport run_trial(const Scenario& base, const std::string& algorithm, int m, int k, int trial,
                      std::uint64_t base_seed, std::optional<int> max_gens_override);

void recompute_summaries(TrialReport& r);

std::string trial_report_to_json(const TrialReport& r);
TrialReport trial_report_from_json(const std::string& text);

// Runs every (algorithm, M, K, trial) cell, writes trial JSONs, aggregate
// tables, and CDF samples under the output directory. Everything except
// timings.csv is a pure function of (campaign file, base seed).
void run_campaign(const CampaignSpec& spec);

// Rebuild aggregate.csv and the CDF files from stored trial reports.
void write_aggregates(const std::vector<TrialReport>& reports, const std::string& out_dir);
void write_cdf_files(const std::vector<TrialReport>& reports, const std::string& out_dir);
std::vector<TrialReport> load_reports(const std::string& trials_dir);

// Plot-ready per-trial front CSVs (positive orientation) plus CDF files.
void write_front_files(const std::vector<TrialReport>& reports, const std::string& out_dir);

// Shortest round-trip decimal; the one float format used in every export.
std::string format_double(double v);

void atomic_write(const std::string& path, const std::string& contents);

} // namespace uavris
