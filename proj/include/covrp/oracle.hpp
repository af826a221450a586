#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "covrp/model.hpp"
#include "covrp/solver.hpp"  // SubproblemSpec / SolveOutcome types only

// Brute-force reference implementation. Everything here is recomputed from
// first principles — set partitions via restricted growth strings, route
// orders via exhaustive permutation — deliberately sharing no algorithmic
// code with the enumeration/DP solver so the two can check each other.

namespace covrp::oracle {

struct OracleFront {
    ParetoFront front;
    std::uint64_t partitions_enumerated = 0;  // all partitions with <= fleet_size blocks
    std::uint64_t partitions_feasible = 0;    // those whose every block is a feasible route
};

namespace detail {

// Best depot-to-depot order over one customer set, by trying every
// permutation in lexicographic order and keeping strict improvements, so the
// recorded argmin is the lexicographically smallest optimal order.
struct BlockInfo {
    bool feasible = false;
    Cost travel = 0;
    Cost load = 0;
    Cost service = 0;
    Cost compactness = 0;
    std::vector<int> order;
};

inline BlockInfo scan_block(const Instance& inst, const std::vector<int>& members) {
    BlockInfo info;
    for (int c : members) {
        info.load += inst.demand[c];
        info.service += inst.service_time[c];
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            info.compactness += inst.distance[members[i]][members[j]];

    std::vector<int> perm = members;  // members ascending = first permutation
    Cost best = std::numeric_limits<Cost>::max();
    do {
        Cost travel = inst.travel_time[0][perm.front()];
        for (std::size_t i = 0; i + 1 < perm.size(); ++i)
            travel += inst.travel_time[perm[i]][perm[i + 1]];
        travel += inst.travel_time[perm.back()][0];
        if (travel < best) {
            best = travel;
            info.order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    info.travel = best;
    info.feasible = info.load <= inst.capacity &&
                    best + info.service + inst.unload_time <= inst.time_limit;
    return info;
}

// Cache of scan_block results keyed by the block's customer bitmask
// (bit c-1 = customer c).
struct BlockCache {
    const Instance& inst;
    std::vector<std::optional<BlockInfo>> slots;
    explicit BlockCache(const Instance& i)
        : inst(i), slots(std::size_t{1} << i.n_customers) {}

    const BlockInfo& get(const std::vector<int>& members) {
        std::uint32_t key = 0;
        for (int c : members) key |= std::uint32_t{1} << (c - 1);
        auto& slot = slots[key];
        if (!slot) slot = scan_block(inst, members);
        return *slot;
    }
};

inline Solution assemble(const Instance& inst, const std::vector<std::vector<int>>& blocks,
                         BlockCache& cache) {
    Solution sol;
    for (const auto& members : blocks) {
        const BlockInfo& info = cache.get(members);
        Route r;
        r.sequence = info.order;
        r.travel_time = info.travel;
        r.load = info.load;
        r.compactness = info.compactness;
        r.duration = info.travel + info.service + inst.unload_time;
        Cost load_so_far = 0;
        Cost clock = 0;
        int prev = 0;
        for (int c : info.order) {
            load_so_far += inst.demand[c];
            clock += inst.travel_time[prev][c] + inst.service_time[c];
            r.schedule.push_back(ScheduleEntry{load_so_far, clock});
            prev = c;
        }
        sol.routes.push_back(std::move(r));
        sol.f1 += info.travel;
        sol.f2 += info.compactness;
    }
    return sol;
}

// Enumerates every partition of {1..n} into at most max_blocks blocks as a
// restricted growth string; blocks are emitted ordered by least member.
template <typename Visit>
inline void for_each_partition(int n, int max_blocks, Visit&& visit) {
    std::vector<int> assign(n, 0);
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            blocks.assign(used, {});
            for (int c = 0; c < n; ++c) blocks[assign[c]].push_back(c + 1);
            visit(blocks);
            return;
        }
        const int limit = std::min(used, max_blocks - 1);
        for (int v = 0; v <= limit; ++v) {
            assign[i] = v;
            self(self, i + 1, std::max(used, v + 1));
        }
    };
    rec(rec, 0, 0);
}

inline void guard_size(const Instance& inst, int guard) {
    if (inst.n_customers > guard)
        throw ValidationError("oracle limited to " + std::to_string(guard) +
                              " customers; instance has " + std::to_string(inst.n_customers));
}

inline std::vector<std::vector<int>> sequences_of(const Solution& sol) {
    std::vector<std::vector<int>> out;
    for (const auto& r : sol.routes) out.push_back(r.sequence);
    return out;
}

}  // namespace detail

/// Exhaustive Pareto front plus enumeration counters. The front is sorted by
/// f1 ascending; coincident points collapse to the lexicographically smallest
/// route list.
inline OracleFront oracle_front_detail(const Instance& inst, int guard = 9) {
    detail::guard_size(inst, guard);
    detail::BlockCache cache(inst);
    OracleFront result;

    std::vector<Solution> feasible;
    detail::for_each_partition(
        inst.n_customers, std::min(inst.fleet_size, inst.n_customers),
        [&](const std::vector<std::vector<int>>& blocks) {
            ++result.partitions_enumerated;
            for (const auto& b : blocks)
                if (!cache.get(b).feasible) return;
            ++result.partitions_feasible;
            feasible.push_back(detail::assemble(inst, blocks, cache));
        });

    // Naive dominance filter, independent of the sweep layer's.
    struct Entry {
        const Solution* sol;
        std::vector<std::vector<int>> seqs;
    };
    std::vector<Entry> entries;
    for (const auto& s : feasible) entries.push_back({&s, detail::sequences_of(s)});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.sol->f1 != b.sol->f1) return a.sol->f1 < b.sol->f1;
        if (a.sol->f2 != b.sol->f2) return a.sol->f2 < b.sol->f2;
        return a.seqs < b.seqs;
    });
    Cost best_f2 = std::numeric_limits<Cost>::max();
    for (const auto& e : entries) {
        if (e.sol->f2 >= best_f2) continue;
        best_f2 = e.sol->f2;
        result.front.points.push_back(FrontPoint{e.sol->f1, e.sol->f2, *e.sol});
    }
    return result;
}

inline ParetoFront oracle_front(const Instance& inst, int guard = 9) {
    return oracle_front_detail(inst, guard).front;
}

/// Brute-force optimum of one scalarized subproblem, with tie-breaking
/// contracts identical to the solver's: weighted compares the exact rational
/// score, then f1, then f2, then the route list; epsilon compares (f1, f2),
/// then the route list.
inline solver::SolveOutcome oracle_scalarized(const Instance& inst,
                                              const solver::SubproblemSpec& spec,
                                              int guard = 9) {
    detail::guard_size(inst, guard);
    solver::detail::validate_spec(spec);
    detail::BlockCache cache(inst);

    const auto* wtd = std::get_if<solver::WeightedSpec>(&spec.mode);
    const auto* eps = std::get_if<solver::EpsilonSpec>(&spec.mode);

    bool found = false;
    Solution best;
    std::vector<std::vector<int>> best_seqs;
    __int128 best_score = 0;

    detail::for_each_partition(
        inst.n_customers, std::min(spec.fleet_cap, inst.n_customers),
        [&](const std::vector<std::vector<int>>& blocks) {
            Cost f1 = 0, f2 = 0;
            for (const auto& b : blocks) {
                const auto& info = cache.get(b);
                if (!info.feasible) return;
                f1 += info.travel;
                f2 += info.compactness;
            }
            if (eps && f2 > eps->epsilon) return;
            __int128 score = 0;
            if (wtd)
                score = static_cast<__int128>(wtd->w1_num) * f1 * wtd->r2 +
                        static_cast<__int128>(wtd->w2_num) * f2 * wtd->r1;
            int cmp = 0;  // -1: candidate wins
            if (found) {
                if (wtd && score != best_score) cmp = score < best_score ? -1 : 1;
                if (cmp == 0 && f1 != best.f1) cmp = f1 < best.f1 ? -1 : 1;
                if (cmp == 0 && f2 != best.f2) cmp = f2 < best.f2 ? -1 : 1;
                if (cmp == 0) {
                    std::vector<std::vector<int>> seqs;
                    for (const auto& b : blocks) seqs.push_back(cache.get(b).order);
                    if (seqs < best_seqs) cmp = -1;
                }
                if (cmp >= 0) return;
            }
            found = true;
            best = detail::assemble(inst, blocks, cache);
            best_seqs = detail::sequences_of(best);
            best_score = score;
        });

    solver::SolveOutcome out;
    if (found) {
        out.status = solver::SolveStatus::optimal;
        out.solution = std::move(best);
    }
    return out;
}

}  // namespace covrp::oracle
