#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavris/evaluation.hpp"
#include "uavris/moo.hpp"
#include "uavris/operators.hpp"

namespace uavris {

enum class Algo {
    Insga2Cdc,
    Insga2C1, // reflective boundary repair only
    Insga2D,  // phase operators only
    Insga2C2, // particle-style beamforming update only
    Nsga2,
    Nsga3,
    Mopso,
    Moead,
    Rd,
    Ud,
    Dft,
    Cdps,
};

std::optional<Algo> algo_from_name(const std::string& name);
std::string algo_name(Algo a);
const std::vector<Algo>& all_algorithms();
bool is_strategy(Algo a);

struct RunResult {
    std::vector<Candidate> final_front;
    std::vector<std::vector<ObjectiveVector>> history; // first-front objectives per generation
    long long eval_count = 0;
    double wall_time_s = 0.0;
    std::vector<int> offspring_per_gen;
    std::vector<int> pool_per_gen;
};

// Shared initial population: random in-box positions, random phase indices,
// random beamforming pushed inside the power budget.
std::vector<Candidate> init_population(const Scenario& s, std::uint64_t run_seed);

RunResult run_insga2cdc(const Scenario& s, std::uint64_t seed);

enum class Nsga2Variant { Plain, ReflectRepair, PhaseLearning, ParticleBeamforming };
RunResult run_nsga2_family(const Scenario& s, std::uint64_t seed, Nsga2Variant variant);

RunResult run_nsga3(const Scenario& s, std::uint64_t seed);
RunResult run_moead(const Scenario& s, std::uint64_t seed);
RunResult run_mopso(const Scenario& s, std::uint64_t seed);

enum class CdpsScore { SumRate, MinRate };
Candidate run_strategy(Algo strategy, const Scenario& s, std::uint64_t seed, long long& eval_count,
                       CdpsScore score = CdpsScore::SumRate);

// Dispatch on the id; strategies come back as a one-candidate front.
RunResult run_algorithm(Algo a, const Scenario& s, std::uint64_t seed);

// No recorded earlier front front-dominates the final front (front X
// dominates front Y when every member of Y is weakly covered by some member
// of X and the fronts differ).
bool front_monotonicity_audit(const RunResult& r);

// Das-Dennis simplex lattice for 3 objectives, H divisions per axis.
std::vector<std::array<double, 3>> das_dennis_weights(int divisions);
// Largest division count whose lattice fits within `budget` points.
int das_dennis_divisions_within(int budget);

} // namespace uavris
