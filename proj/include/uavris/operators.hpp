#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uavris/evaluation.hpp"
#include "uavris/moo.hpp"
#include "uavris/rng.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

struct OperatorConfig {
    double sbx_eta = 20.0;
    double mut_eta = 20.0;
    double crossover_prob = 0.9;
    double mutation_prob = 0.0;
    double inertia_eps = 0.4;
    double learn_c1 = 2.0;
    double learn_c2 = 2.0;
};

OperatorConfig operator_config(const AlgoParams& a, int m_uavs);

// ---- deterministic formula cores (random draws passed in explicitly) ----

// Simulated binary crossover of one gene; u in [0,1), do_swap exchanges the
// two children.
std::pair<double, double> sbx_values(double p1, double p2, double eta, double u, bool do_swap);

// Polynomial-mutation perturbation in (-1, 1); caller scales by the range.
double polynomial_bump(double u, double eta);

cplx pso_velocity(cplx ve, cplx w, cplx pbest, cplx gbest, double eps, double c1, double c2,
                  double r1, double r2);

// Unconditional power rescale: w <- sqrt(p_max) * w / (||w|| * (1 + r3)).
void rescale_power(CMat& w, double p_max, double r3);

// ---- repair operators ----

// Reflect a coordinate back inside [lo, hi] (upper: 2*hi - x, lower: lo - x),
// clamping when the reflection overshoots the band.
double obl_reflect(double x, double lo, double hi);
void obl_repair(std::vector<Vec3>& positions, const Geometry& g);
void clamp_repair(std::vector<Vec3>& positions, const Geometry& g);

// No-op when already feasible, otherwise rescale with a fresh r3 in (0,1);
// the result is then strictly inside the power budget.
void normalize_power(CMat& w, double p_max, RngStream& rng);

// ---- variation operators (each touches exactly one variable group) ----

// Binary tournament on (rank, crowding); ties keep the first pick.
int tournament_pick(const RankedPopulation& pop, RngStream& rng);

// Pop offspring; SBX + polynomial mutation on the 3M position genes, phases
// and beamforming copied from the first parent of each pair, then reflected
// back into the box.
std::vector<Candidate> vary_positions(const Scenario& s, const RankedPopulation& parents,
                                      const OperatorConfig& cfg, std::uint64_t run_seed, int gen);

// Pop offspring, one per same-index parent, every phase index redrawn.
std::vector<Candidate> random_phase_offspring(const Scenario& s, const std::vector<Candidate>& parents,
                                              std::uint64_t run_seed, int gen);

// Pop offspring copying one max-crowding first-front donor's phase matrix.
std::vector<Candidate> phase_learning_offspring(const Scenario& s, const std::vector<Candidate>& parents,
                                                const RankedPopulation& ranked, std::uint64_t run_seed,
                                                int gen);

// Pop offspring; particle-style beamforming update against pbest and a
// roulette-picked first-front leader, then power repair.
std::vector<Candidate> beamforming_offspring(const Scenario& s, const std::vector<Candidate>& parents,
                                             const RankedPopulation& ranked, const OperatorConfig& cfg,
                                             std::uint64_t run_seed, int gen);

// Replace pbest when the current objectives dominate it; coin-flip on mutual
// non-dominance.
void update_pbest(Candidate& c, RngStream& rng);

// Max-crowding donor index within the first front (uniform among ties).
int select_phase_donor(const RankedPopulation& ranked, RngStream& rng);

} // namespace uavris
