#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "uavris/harness.hpp"

using namespace uavris;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "uavris_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CampaignSpec tiny_campaign(const fs::path& out) {
    CampaignSpec spec;
    spec.scenario = testing_support::toy_scenario();
    spec.algorithms = {"insga2cdc", "nsga2"};
    spec.m_sweep = {1, 2};
    spec.k_values = {3};
    spec.trials = 2;
    spec.base_seed = 99;
    spec.output_dir = out.string();
    spec.max_gens_override = 5;
    spec.workers = 2;
    return spec;
}

} // namespace

TEST_CASE("float formatting round-trips exactly") {
    for (double v : {0.1, 1.0 / 3.0, 3.981071705534969e-14, 1e12, -2.5, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("trial seeds are stable against campaign growth") {
    std::uint64_t s1 = trial_seed(42, "nsga2", 2, 3, 0);
    CHECK(trial_seed(42, "nsga2", 2, 3, 0) == s1);
    CHECK(trial_seed(42, "nsga2", 2, 3, 1) != s1);
    CHECK(trial_seed(42, "insga2cdc", 2, 3, 0) != s1);
    CHECK(trial_seed(42, "nsga2", 4, 3, 0) != s1);
    CHECK(trial_seed(43, "nsga2", 2, 3, 0) != s1);
}

TEST_CASE("trial report summaries are recomputable from the stored front") {
    Scenario s = testing_support::toy_scenario();
    TrialReport r = run_trial(s, "insga2cdc", 2, 3, 0, 5, 5);
    CHECK(!r.front.empty());
    TrialReport copy = r;
    copy.best_f1 = copy.best_f2 = copy.best_f3 = -1.0;
    recompute_summaries(copy);
    CHECK(copy.best_f1 == r.best_f1);
    CHECK(copy.best_f2 == r.best_f2);
    CHECK(copy.best_f3 == r.best_f3);
    CHECK(copy.med_f1 == r.med_f1);

    // medians and bests agree with a direct pass over the front
    double max_f1 = 0.0;
    for (const ObjectiveVector& o : r.front) max_f1 = std::max(max_f1, -o[0]);
    CHECK(r.best_f1 == max_f1);
}

TEST_CASE("trial report JSON round trip") {
    Scenario s = testing_support::toy_scenario();
    TrialReport r = run_trial(s, "nsga2", 2, 3, 1, 7, 4);
    std::string text = trial_report_to_json(r);
    TrialReport back = trial_report_from_json(text);
    CHECK(back.algorithm == r.algorithm);
    CHECK(back.seed == r.seed);
    CHECK(back.front == r.front);
    CHECK(back.best_f2 == r.best_f2);
    CHECK(trial_report_to_json(back) == text);
}

TEST_CASE("campaign outputs") {
    fs::path out = fresh_dir("campaign");
    CampaignSpec spec = tiny_campaign(out);
    run_campaign(spec);

    SUBCASE("one report per cell") {
        int count = 0;
        for (const auto& e : fs::directory_iterator(out / "trials")) {
            ++count;
            CHECK(e.path().extension() == ".json");
        }
        CHECK(count == 2 * 2 * 1 * 2); // algorithms x m values x k values x trials
    }
    SUBCASE("aggregate columns match a recomputation from raw trials") {
        auto reports = load_reports((out / "trials").string());
        fs::path again = fresh_dir("campaign_recheck");
        write_aggregates(reports, again.string());
        CHECK(slurp(again / "aggregate.csv") == slurp(out / "aggregate.csv"));
    }
    SUBCASE("CDF files are sorted with one row per trial") {
        std::string cdf = slurp(out / "cdf_insga2cdc_m2_k3.csv");
        std::istringstream lines(cdf);
        std::string header;
        std::getline(lines, header);
        CHECK(header == "index,f1_best,f2_best,f3_best,f1_median,f2_median,f3_median");
        std::vector<double> first_col;
        std::string line;
        int rows = 0;
        while (std::getline(lines, line)) {
            ++rows;
            auto c1 = line.find(',');
            auto c2 = line.find(',', c1 + 1);
            first_col.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
        }
        CHECK(rows == 2); // trials per cell
        for (std::size_t i = 1; i < first_col.size(); ++i) CHECK(first_col[i - 1] <= first_col[i]);
    }
    SUBCASE("timings live apart from the deterministic outputs") {
        CHECK(fs::exists(out / "timings.csv"));
        CHECK(slurp(out / "aggregate.csv").find("wall") == std::string::npos);
    }
    SUBCASE("single-trial aggregates equal that trial") {
        fs::path solo_out = fresh_dir("solo");
        CampaignSpec solo = tiny_campaign(solo_out);
        solo.algorithms = {"rd"};
        solo.m_sweep = {2};
        solo.trials = 1;
        run_campaign(solo);
        auto reports = load_reports((solo_out / "trials").string());
        REQUIRE(reports.size() == 1);
        std::string agg = slurp(solo_out / "aggregate.csv");
        // mean == max == min == the single trial's statistic, std == 0
        std::istringstream lines(agg);
        std::string header, row;
        std::getline(lines, header);
        bool saw_f1_best = false;
        while (std::getline(lines, row)) {
            if (row.find("rd,2,3,f1,best,") == 0) {
                saw_f1_best = true;
                std::vector<std::string> cells;
                std::string cell;
                std::istringstream rs(row);
                while (std::getline(rs, cell, ',')) cells.push_back(cell);
                CHECK(std::stod(cells[5]) == reports[0].best_f1);
                CHECK(std::stod(cells[6]) == 0.0);
                CHECK(std::stod(cells[7]) == reports[0].best_f1);
                CHECK(std::stod(cells[8]) == reports[0].best_f1);
            }
        }
        CHECK(saw_f1_best);
    }
}

TEST_CASE("campaigns are byte-identical under the same seed") {
    fs::path out1 = fresh_dir("det1");
    fs::path out2 = fresh_dir("det2");
    CampaignSpec a = tiny_campaign(out1);
    a.workers = 3;
    CampaignSpec b = tiny_campaign(out2);
    b.workers = 1; // worker count must not matter
    run_campaign(a);
    run_campaign(b);
    CHECK(slurp(out1 / "aggregate.csv") == slurp(out2 / "aggregate.csv"));
    for (const auto& e : fs::directory_iterator(out1 / "trials")) {
        fs::path other = out2 / "trials" / e.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(e.path()) == slurp(other));
    }
}

TEST_CASE("front files carry the positive-orientation objectives") {
    fs::path out = fresh_dir("fronts");
    Scenario s = testing_support::toy_scenario();
    TrialReport r = run_trial(s, "rd", 2, 3, 0, 3, std::nullopt);
    write_front_files({r}, out.string());
    std::string csv = slurp(out / "front_rd_m2_k3_t0.csv");
    CHECK(csv.rfind("f1,f2,f3\n", 0) == 0);
    // one data row per front member (strategies give exactly one)
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(r.front.size()));
}

TEST_CASE("empty front exports a header-only CSV") {
    fs::path out = fresh_dir("empty_front");
    TrialReport r;
    r.algorithm = "rd";
    r.m = 1;
    r.k = 1;
    r.trial = 0;
    recompute_summaries(r);
    write_front_files({r}, out.string());
    CHECK(slurp(out / "front_rd_m1_k1_t0.csv") == "f1,f2,f3\n");
}

TEST_CASE("campaign config loading") {
    fs::path dir = fresh_dir("cfg");
    {
        std::ofstream scenario(dir / "scen.cfg");
        scenario << "m_uavs = 2\nn_bs = 4\nn_r = 2\nn_c = 2\npop_size = 20\n";
        scenario << "gu_positions_m = 20 180 0; 180 20 0; 100 100 0\n";
    }
    {
        std::ofstream campaign(dir / "camp.cfg");
        campaign << "scenario = scen.cfg\nalgorithms = rd, nsga2\nm_sweep = 1 2\n";
        campaign << "k_values = 3\ntrials = 4\nbase_seed = 5\noutput_dir = camp_out\nmax_gens = 3\n";
    }
    CampaignSpec spec = load_campaign((dir / "camp.cfg").string());
    CHECK(spec.algorithms == std::vector<std::string>{"rd", "nsga2"});
    CHECK(spec.m_sweep == std::vector<int>{1, 2});
    CHECK(spec.trials == 4);
    CHECK(spec.base_seed == 5);
    CHECK(spec.max_gens_override == 3);
    CHECK(spec.scenario.geom.k_gus() == 3);

    {
        std::ofstream bad(dir / "bad.cfg");
        bad << "scenario = scen.cfg\nalgorithms = warp_drive\n";
    }
    CHECK_THROWS_AS(load_campaign((dir / "bad.cfg").string()), ValidationError);
    CHECK_THROWS_AS(load_campaign((dir / "missing.cfg").string()), IoError);
}

TEST_CASE("atomic_write replaces files whole") {
    fs::path dir = fresh_dir("atomic");
    fs::path target = dir / "a.txt";
    atomic_write(target.string(), "one");
    atomic_write(target.string(), "two");
    CHECK(slurp(target) == "two");
    CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
}
