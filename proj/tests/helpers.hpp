#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "covrp/model.hpp"

// Shared fixtures and brute-force helpers for the unit suites. Everything
// here is test-local: independent of the library's search code so it can act
// as an oracle for it.

namespace testutil {

using covrp::Cost;
using covrp::Instance;

// Deterministic across platforms: raw engine output with modulo reduction.
inline std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// The 1-customer boundary instance: singleton duration 5+2+5+1 = 13 = T.
inline Instance tiny1() {
    Instance inst;
    inst.name = "tiny1";
    inst.n_customers = 1;
    inst.capacity = 10;
    inst.time_limit = 13;
    inst.fleet_size = 1;
    inst.unload_time = 1;
    inst.demand = {0, 3};
    inst.service_time = {0, 2};
    inst.travel_time = {{0, 5}, {5, 0}};
    inst.distance = {{0, 5}, {5, 0}};
    covrp::validate_instance(inst);
    return inst;
}

// Two customers where merging saves travel (6 vs 8) but costs compactness
// (d12 = 9 vs 0): anchors (6, 9) and (8, 0), threshold epsilon at 9.
inline Instance threshold2() {
    Instance inst;
    inst.name = "threshold2";
    inst.n_customers = 2;
    inst.capacity = 10;
    inst.time_limit = 20;
    inst.fleet_size = 2;
    inst.unload_time = 1;
    inst.demand = {0, 1, 1};
    inst.service_time = {0, 1, 1};
    inst.travel_time = {{0, 2, 2}, {2, 0, 2}, {2, 2, 0}};
    inst.distance = {{0, 3, 3}, {3, 0, 9}, {3, 9, 0}};
    covrp::validate_instance(inst);
    return inst;
}

// Exhaustive best depot-to-depot order over one customer set; permutations
// tried in lexicographic order, strict improvement kept, so the witness is
// the lexicographically smallest argmin. Third implementation of this
// search, on purpose.
inline std::pair<Cost, std::vector<int>> brute_best_order(const Instance& inst,
                                                          std::vector<int> members) {
    std::sort(members.begin(), members.end());
    Cost best = std::numeric_limits<Cost>::max();
    std::vector<int> best_order;
    std::vector<int> perm = members;
    do {
        Cost travel = inst.travel_time[0][perm.front()];
        for (std::size_t i = 0; i + 1 < perm.size(); ++i)
            travel += inst.travel_time[perm[i]][perm[i + 1]];
        travel += inst.travel_time[perm.back()][0];
        if (travel < best) {
            best = travel;
            best_order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, best_order};
}

inline Cost brute_load(const Instance& inst, const std::vector<int>& members) {
    Cost load = 0;
    for (int c : members) load += inst.demand[c];
    return load;
}

inline Cost brute_service(const Instance& inst, const std::vector<int>& members) {
    Cost svc = 0;
    for (int c : members) svc += inst.service_time[c];
    return svc;
}

inline Cost brute_compactness(const Instance& inst, const std::vector<int>& members) {
    Cost total = 0;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            total += inst.distance[members[a]][members[b]];
    return total;
}

inline bool brute_route_feasible(const Instance& inst, const std::vector<int>& members) {
    if (brute_load(inst, members) > inst.capacity) return false;
    const Cost travel = brute_best_order(inst, members).first;
    return travel + brute_service(inst, members) + inst.unload_time <= inst.time_limit;
}

inline std::vector<int> members_of_mask(std::uint32_t mask) {
    std::vector<int> out;
    for (int c = 1; mask; ++c, mask >>= 1)
        if (mask & 1) out.push_back(c);
    return out;
}

inline std::vector<std::vector<int>> seqs_of(const covrp::Solution& sol) {
    return covrp::route_sequences(sol);
}

}  // namespace testutil
