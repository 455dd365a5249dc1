#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uavris/channel.hpp"
#include "uavris/energy.hpp"
#include "uavris/rng.hpp"
#include "uavris/scenario.hpp"

namespace uavris {

// Minimization orientation: <-min_rate, -sum_rate, total_energy>.
using ObjectiveVector = std::array<double, 3>;

// One mixed-encoding solution: UAV positions (continuous), phase indices
// (discrete), beamforming (complex), plus the particle-style companion state
// that rides along through selection and copying.
struct Candidate {
    std::vector<Vec3> positions;            // M
    PhaseMatrix phases;                     // M x N_RIS
    CMat w;                                 // N_BS x K
    std::optional<ObjectiveVector> objectives;

    CMat velocity;                          // same shape as w
    CMat pbest_w;
    std::optional<ObjectiveVector> pbest_obj;

    bool operator==(const Candidate&) const = default;

    void invalidate() { objectives.reset(); }
};

ObjectiveVector make_objectives(const std::vector<double>& rates, double total_energy);

// Pure: same candidate, same vector, bit for bit. Throws ValidationError if
// the candidate violates the box or power constraint (repair comes first).
ObjectiveVector compute_objectives(const Scenario& s, const Candidate& c);

// Caches on the candidate and counts actual evaluations.
const ObjectiveVector& evaluate(const Scenario& s, Candidate& c, long long& eval_count);

void check_constraints(const Scenario& s, const Candidate& c);
bool satisfies_constraints(const Scenario& s, const Candidate& c);

Candidate random_candidate(const Scenario& s, RngStream& rng);

std::string candidate_to_json(const Candidate& c);
Candidate candidate_from_json(const Scenario& s, const std::string& text);

} // namespace uavris
