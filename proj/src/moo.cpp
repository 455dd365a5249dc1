#include "uavris/moo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uavris/errors.hpp"

namespace uavris {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) better = true;
    }
    return better;
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

std::vector<std::vector<int>> non_dominated_sort(const std::vector<ObjectiveVector>& objs) {
    const int n = static_cast<int>(objs.size());
    if (n == 0) throw ValidationError("non_dominated_sort: empty input");

    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    std::vector<int> dom_count(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& a = objs[static_cast<std::size_t>(i)];
            const auto& b = objs[static_cast<std::size_t>(j)];
            if (dominates(a, b)) {
                dominated[static_cast<std::size_t>(i)].push_back(j);
                ++dom_count[static_cast<std::size_t>(j)];
            } else if (dominates(b, a)) {
                dominated[static_cast<std::size_t>(j)].push_back(i);
                ++dom_count[static_cast<std::size_t>(i)];
            }
        }
    }

    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (dom_count[static_cast<std::size_t>(i)] == 0) current.push_back(i);
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int i : current)
            for (int j : dominated[static_cast<std::size_t>(i)])
                if (--dom_count[static_cast<std::size_t>(j)] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& front_objs) {
    const int n = static_cast<int>(front_objs.size());
    if (n == 0) throw ValidationError("crowding_distance: empty front");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < std::tuple_size_v<ObjectiveVector>; ++m) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return front_objs[static_cast<std::size_t>(a)][m] < front_objs[static_cast<std::size_t>(b)][m];
        });
        double span = front_objs[static_cast<std::size_t>(order.back())][m] -
                      front_objs[static_cast<std::size_t>(order.front())][m];
        if (span <= 0.0) continue;
        dist[static_cast<std::size_t>(order.front())] = inf;
        dist[static_cast<std::size_t>(order.back())] = inf;
        for (int i = 1; i + 1 < n; ++i) {
            double gap = front_objs[static_cast<std::size_t>(order[static_cast<std::size_t>(i + 1)])][m] -
                         front_objs[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])][m];
            dist[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] += gap / span;
        }
    }
    return dist;
}

std::vector<int> RankedPopulation::front_indices(int r) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(members.size()); ++i)
        if (rank[static_cast<std::size_t>(i)] == r) out.push_back(i);
    return out;
}

std::vector<ObjectiveVector> RankedPopulation::front_objectives(int r) const {
    std::vector<ObjectiveVector> out;
    for (int i : front_indices(r)) out.push_back(*members[static_cast<std::size_t>(i)].objectives);
    return out;
}

RankedPopulation elitist_filter(std::vector<Candidate> pool, int pop_size) {
    const int n = static_cast<int>(pool.size());
    if (n < pop_size) throw ValidationError("elitist_filter: pool smaller than the population size");
    std::vector<ObjectiveVector> objs;
    objs.reserve(pool.size());
    for (const Candidate& c : pool) {
        if (!c.objectives) throw ValidationError("elitist_filter: unevaluated candidate in pool");
        objs.push_back(*c.objectives);
    }

    auto fronts = non_dominated_sort(objs);

    std::vector<int> selected;
    std::vector<int> rank_of(static_cast<std::size_t>(n), -1);
    std::vector<double> crowd_of(static_cast<std::size_t>(n), 0.0);
    selected.reserve(static_cast<std::size_t>(pop_size));
    for (std::size_t f = 0; f < fronts.size() && static_cast<int>(selected.size()) < pop_size; ++f) {
        std::vector<ObjectiveVector> front_objs;
        front_objs.reserve(fronts[f].size());
        for (int i : fronts[f]) front_objs.push_back(objs[static_cast<std::size_t>(i)]);
        auto crowd = crowding_distance(front_objs);
        for (std::size_t j = 0; j < fronts[f].size(); ++j) {
            rank_of[static_cast<std::size_t>(fronts[f][j])] = static_cast<int>(f);
            crowd_of[static_cast<std::size_t>(fronts[f][j])] = crowd[j];
        }
        int remaining = pop_size - static_cast<int>(selected.size());
        if (static_cast<int>(fronts[f].size()) <= remaining) {
            selected.insert(selected.end(), fronts[f].begin(), fronts[f].end());
        } else {
            std::vector<int> order(fronts[f].size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return crowd[static_cast<std::size_t>(a)] > crowd[static_cast<std::size_t>(b)]; });
            std::vector<int> keep;
            for (int j = 0; j < remaining; ++j)
                keep.push_back(fronts[f][static_cast<std::size_t>(order[static_cast<std::size_t>(j)])]);
            std::sort(keep.begin(), keep.end());
            selected.insert(selected.end(), keep.begin(), keep.end());
        }
    }
    std::sort(selected.begin(), selected.end());

    RankedPopulation out;
    out.members.reserve(selected.size());
    for (int i : selected) {
        out.members.push_back(std::move(pool[static_cast<std::size_t>(i)]));
        out.rank.push_back(rank_of[static_cast<std::size_t>(i)]);
        out.crowding.push_back(crowd_of[static_cast<std::size_t>(i)]);
    }
    return out;
}

int roulette_from_front(const std::vector<double>& front_crowding, RngStream& rng) {
    const int n = static_cast<int>(front_crowding.size());
    if (n == 0) throw ValidationError("roulette_from_front: empty front");
    double largest_finite = 0.0;
    bool any_finite = false;
    for (double d : front_crowding) {
        if (std::isfinite(d)) {
            any_finite = true;
            largest_finite = std::max(largest_finite, d);
        }
    }
    std::vector<double> weights(static_cast<std::size_t>(n));
    double total = 0.0;
    if (any_finite && largest_finite > 0.0) {
        for (int i = 0; i < n; ++i) {
            double d = front_crowding[static_cast<std::size_t>(i)];
            weights[static_cast<std::size_t>(i)] = std::isfinite(d) ? d : 2.0 * largest_finite;
            total += weights[static_cast<std::size_t>(i)];
        }
    }
    if (total <= 0.0) return rng.uniform_int(n);
    double u = rng.uniform01() * total;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += weights[static_cast<std::size_t>(i)];
        if (u < acc) return i;
    }
    return n - 1;
}

double hypervolume(const std::vector<ObjectiveVector>& front_objs, const ObjectiveVector& reference) {
    if (front_objs.empty()) return 0.0;
    for (const auto& p : front_objs)
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > reference[i])
                throw ValidationError("hypervolume: point beyond the reference point");

    // keep the minimal (mutually non-dominated) set, without duplicates
    std::vector<ObjectiveVector> pts;
    for (const auto& p : front_objs) {
        bool drop = false;
        for (const auto& q : front_objs)
            if (&q != &p && dominates(q, p)) {
                drop = true;
                break;
            }
        if (!drop && std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }

    // sweep the third objective; each slab contributes a 2D staircase area
    std::vector<double> levels;
    for (const auto& p : pts) levels.push_back(p[2]);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    double volume = 0.0;
    for (std::size_t s = 0; s < levels.size(); ++s) {
        double z_lo = levels[s];
        double z_hi = s + 1 < levels.size() ? levels[s + 1] : reference[2];
        if (z_hi <= z_lo) continue;

        std::vector<std::pair<double, double>> active; // (x, y) of points with z <= z_lo
        for (const auto& p : pts)
            if (p[2] <= z_lo) active.push_back({p[0], p[1]});
        std::sort(active.begin(), active.end());
        // 2D-minimal staircase: ascending x, strictly descending y; anything
        // not strictly lowering y is 2D-dominated by an earlier point
        std::vector<std::pair<double, double>> stair;
        double min_y = std::numeric_limits<double>::infinity();
        for (const auto& [x, y] : active) {
            if (y < min_y) {
                stair.push_back({x, y});
                min_y = y;
            }
        }
        double area = 0.0;
        for (std::size_t j = 0; j < stair.size(); ++j) {
            double x_next = j + 1 < stair.size() ? stair[j + 1].first : reference[0];
            area += (x_next - stair[j].first) * (reference[1] - stair[j].second);
        }
        volume += area * (z_hi - z_lo);
    }
    return volume;
}

double weak_coverage(const std::vector<ObjectiveVector>& early, const std::vector<ObjectiveVector>& late) {
    if (early.empty()) return 1.0;
    int covered = 0;
    for (const auto& e : early)
        for (const auto& l : late)
            if (weakly_dominates(l, e)) {
                ++covered;
                break;
            }
    return static_cast<double>(covered) / static_cast<double>(early.size());
}

} // namespace uavris
