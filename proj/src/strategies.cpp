#include <algorithm>
#include <cmath>

#include "uavris/algorithms.hpp"
#include "uavris/errors.hpp"

// One-shot deployment strategies: no iteration loop, a single candidate built
// by a fixed design rule (RD, UD, DFT) or a coordinate sweep (CDPS).

namespace uavris {

namespace {

constexpr std::uint64_t kTagStrategy = 0xC0;

int nearest_level(double theta, int levels) {
    double step = kTwoPi / levels;
    long idx = std::lround(theta / step);
    idx %= levels;
    if (idx < 0) idx += levels;
    return static_cast<int>(idx);
}

Candidate uniform_deployment(const Scenario& s, RngStream& rng) {
    Candidate c = random_candidate(s, rng); // beamforming stays random
    const Geometry& g = s.geom;
    int m = g.m_uavs;
    int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(m)))));
    int cols = (m + rows - 1) / rows;
    double width = g.l_max - g.l_min;
    double mid_height = (g.z_max + g.z_min) / 2.0;
    for (int i = 0; i < m; ++i) {
        int r = i / cols;
        int col = i % cols;
        c.positions[static_cast<std::size_t>(i)] = {
            g.l_min + (col + 0.5) * width / cols,
            g.l_min + (r + 0.5) * width / rows,
            mid_height,
        };
    }
    int pi_level = nearest_level(kPi, c.phases.levels);
    for (int& index : c.phases.idx) index = pi_level;
    return c;
}

Candidate dft_deployment(const Scenario& s, RngStream& rng) {
    Candidate c = random_candidate(s, rng);
    int n = s.radio.n_ris();
    for (int m = 0; m < s.geom.m_uavs; ++m) {
        int column = m % n;
        for (int row = 0; row < n; ++row) {
            double theta = std::fmod(kTwoPi * row * column / n, kTwoPi);
            c.phases.at(m, row) = nearest_level(theta, c.phases.levels);
        }
    }
    return c;
}

double score_of(const Scenario& s, const Candidate& c, CdpsScore score) {
    auto rows = effective_rows(s, c.positions, c.phases);
    auto [sinr, rates] = sinr_and_rates_rows(s, rows, c.w);
    if (score == CdpsScore::MinRate) return *std::min_element(rates.begin(), rates.end());
    double sum = 0.0;
    for (double r : rates) sum += r;
    return sum;
}

// Dimension-by-dimension sweep: try every level of every phase gene, keep
// strict improvements, stop after a clean pass or 10 passes.
Candidate cdps_deployment(const Scenario& s, RngStream& rng, CdpsScore score, long long& eval_count) {
    Candidate c = random_candidate(s, rng);
    double best = score_of(s, c, score);
    ++eval_count;
    const int max_passes = 10;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        for (int m = 0; m < c.phases.m_count(); ++m) {
            for (int n = 0; n < c.phases.n_ris; ++n) {
                int incumbent = c.phases.at(m, n);
                int best_level = incumbent;
                for (int level = 0; level < c.phases.levels; ++level) {
                    if (level == incumbent) continue;
                    c.phases.at(m, n) = level;
                    double v = score_of(s, c, score);
                    ++eval_count;
                    if (v > best) {
                        best = v;
                        best_level = level;
                    }
                }
                c.phases.at(m, n) = best_level;
                if (best_level != incumbent) changed = true;
            }
        }
        if (!changed) break;
    }
    return c;
}

} // namespace

Candidate run_strategy(Algo strategy, const Scenario& s, std::uint64_t seed, long long& eval_count,
                       CdpsScore score) {
    RngStream rng(mix_seed(seed, {kTagStrategy}));
    Candidate c;
    switch (strategy) {
        case Algo::Rd: c = random_candidate(s, rng); break;
        case Algo::Ud: c = uniform_deployment(s, rng); break;
        case Algo::Dft: c = dft_deployment(s, rng); break;
        case Algo::Cdps: c = cdps_deployment(s, rng, score, eval_count); break;
        default: throw ValidationError("run_strategy: not a one-shot strategy");
    }
    evaluate(s, c, eval_count);
    return c;
}

} // namespace uavris
