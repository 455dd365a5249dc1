#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uavris/errors.hpp"
#include "uavris/harness.hpp"

// Exit codes: 0 success, 1 validation or usage error, 2 I/O error.

namespace {

constexpr const char* kVersion = "1.0.0";

int do_run(const std::string& scenario_path, const std::string& algo, std::uint64_t seed, int m, int k,
           int gens, const std::string& out_dir) {
    uavris::Scenario base = uavris::load_scenario(scenario_path);
    if (m <= 0) m = base.geom.m_uavs;
    if (k <= 0) k = base.geom.k_gus();
    std::optional<int> gens_override;
    if (gens >= 0) gens_override = gens;
    if (!uavris::algo_from_name(algo))
        throw uavris::ValidationError("unknown algorithm '" + algo + "'");

    uavris::TrialReport report = uavris::run_trial(base, algo, m, k, 0, seed, gens_override);
    std::filesystem::path out(out_dir);
    std::string name = algo + "_m" + std::to_string(m) + "_k" + std::to_string(k) + "_t0";
    uavris::atomic_write((out / (name + ".json")).string(), uavris::trial_report_to_json(report));
    uavris::write_front_files({report}, out.string());
    std::cout << "wrote " << (out / (name + ".json")).string() << " (front size "
              << report.front.size() << ", " << report.eval_count << " evaluations)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative UAV-mounted RIS downlink simulator and multi-objective optimizer"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one algorithm on one scenario");
    std::string scenario_path;
    std::string algo = "insga2cdc";
    std::uint64_t seed = 1;
    int m = 0, k = 0, gens = -1;
    std::string out_dir = "out";
    run->add_option("--scenario", scenario_path, "scenario config file")->required();
    run->add_option("--algo", algo, "algorithm id (see README)");
    run->add_option("--seed", seed, "base seed");
    run->add_option("--m", m, "number of UAVs (default: scenario value)");
    run->add_option("--k", k, "number of ground users (prefix of the configured list)");
    run->add_option("--gens", gens, "generation override");
    run->add_option("--out", out_dir, "output directory");

    // campaign
    auto* campaign = app.add_subcommand("campaign", "run a multi-trial campaign");
    std::string campaign_path;
    int workers = 0;
    campaign->add_option("file", campaign_path, "campaign config file")->required();
    campaign->add_option("--workers", workers, "parallel trial workers (overrides the config)");

    // stats
    auto* stats = app.add_subcommand("stats", "recompute aggregates from stored trial reports");
    std::string reports_dir;
    std::string stats_out;
    stats->add_option("--reports", reports_dir, "directory of trial JSON files")->required();
    stats->add_option("--out", stats_out, "output directory (default: parent of --reports)");

    // fronts
    auto* fronts = app.add_subcommand("fronts", "emit plot-ready front and CDF CSVs");
    std::string fronts_reports;
    std::string fronts_out = "plots";
    fronts->add_option("--reports", fronts_reports, "directory of trial JSON files")->required();
    fronts->add_option("--out", fronts_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return do_run(scenario_path, algo, seed, m, k, gens, out_dir);
        if (campaign->parsed()) {
            uavris::CampaignSpec spec = uavris::load_campaign(campaign_path);
            if (workers > 0) spec.workers = workers;
            uavris::run_campaign(spec);
            std::cout << "campaign written to " << spec.output_dir << "\n";
            return 0;
        }
        if (stats->parsed()) {
            auto reports = uavris::load_reports(reports_dir);
            std::string out =
                stats_out.empty() ? std::filesystem::path(reports_dir).parent_path().string() : stats_out;
            if (out.empty()) out = ".";
            uavris::write_aggregates(reports, out);
            std::cout << "aggregates written to " << out << "\n";
            return 0;
        }
        if (fronts->parsed()) {
            auto reports = uavris::load_reports(fronts_reports);
            uavris::write_front_files(reports, fronts_out);
            std::cout << "front data written to " << fronts_out << "\n";
            return 0;
        }
    } catch (const uavris::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
