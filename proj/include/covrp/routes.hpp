#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "covrp/model.hpp"

// Exact route building blocks. A route is identified by its customer subset
// (bitmask, bit i-1 = customer i). held_karp finds the cheapest depot-to-depot
// visiting order of a subset; enumerate_feasible_routes lists every subset
// that fits the vehicle capacity and the working-day duration limit, with its
// optimal order. Since service and unload times are order-independent, the
// duration-minimizing order is the travel-time-minimizing order.

namespace covrp::routes {

using Mask = std::uint32_t;

inline constexpr int kMaxEnumCustomers = 16;

struct FeasibleRoute {
    Mask members = 0;
    Cost best_travel_time = 0;
    std::vector<int> best_order;  // lexicographically smallest optimal order
    Cost load = 0;
    Cost compactness = 0;
    Cost min_duration = 0;  // best_travel_time + sum of service times + unload
};

inline std::vector<int> customers_of(Mask mask) {
    std::vector<int> out;
    for (int i = 0; mask != 0; ++i, mask >>= 1)
        if (mask & 1u) out.push_back(i + 1);
    return out;
}

inline Mask mask_of(const std::vector<int>& customers) {
    Mask m = 0;
    for (int c : customers) m |= Mask{1} << (c - 1);
    return m;
}

namespace detail {

inline constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// Suffix-cost table over one subset: g[mask][j] = cheapest cost of standing
// at member j, visiting the rest of mask, and returning to the depot.
// Reconstruction walks forward from the depot picking the smallest next
// customer consistent with the optimal value, which yields the
// lexicographically smallest optimal order.
class SubsetPathTable {
public:
    SubsetPathTable(const Instance& inst, const std::vector<int>& members)
        : inst_(inst), members_(members), k_(static_cast<int>(members.size())),
          g_(std::size_t{1} << k_, std::vector<Cost>(k_, kInf)) {
        for (int j = 0; j < k_; ++j)
            g_[std::size_t{1} << j][j] = inst.travel_time[members_[j]][0];
        const std::size_t full = (std::size_t{1} << k_) - 1;
        for (std::size_t m = 1; m <= full; ++m) {
            if ((m & (m - 1)) == 0) continue;  // singletons already seeded
            for (int j = 0; j < k_; ++j) {
                if (!(m >> j & 1u)) continue;
                const std::size_t rest = m ^ (std::size_t{1} << j);
                Cost best = kInf;
                for (int t = 0; t < k_; ++t) {
                    if (!(rest >> t & 1u)) continue;
                    const Cost c = inst.travel_time[members_[j]][members_[t]] + g_[rest][t];
                    if (c < best) best = c;
                }
                g_[m][j] = best;
            }
        }
    }

    Cost tour_cost() const {
        const std::size_t full = (std::size_t{1} << k_) - 1;
        Cost best = kInf;
        for (int j = 0; j < k_; ++j)
            best = std::min(best, inst_.travel_time[0][members_[j]] + g_[full][j]);
        return best;
    }

    std::vector<int> best_order() const {
        std::vector<int> order;
        order.reserve(k_);
        std::size_t remaining = (std::size_t{1} << k_) - 1;
        int prev = 0;
        Cost target = tour_cost();
        while (remaining != 0) {
            for (int j = 0; j < k_; ++j) {
                if (!(remaining >> j & 1u)) continue;
                if (inst_.travel_time[prev][members_[j]] + g_[remaining][j] == target) {
                    order.push_back(members_[j]);
                    target = g_[remaining][j];
                    remaining ^= std::size_t{1} << j;
                    prev = members_[j];
                    break;
                }
            }
        }
        return order;
    }

private:
    const Instance& inst_;
    std::vector<int> members_;
    int k_;
    std::vector<std::vector<Cost>> g_;
};

}  // namespace detail

/// Minimum depot-to-depot travel time over all orderings of the given
/// customers, with the lexicographically smallest order achieving it.
inline std::pair<Cost, std::vector<int>> held_karp(const Instance& inst,
                                                   const std::vector<int>& members) {
    if (members.empty()) throw ValidationError("held_karp requires a non-empty subset");
    detail::SubsetPathTable table(inst, members);
    return {table.tour_cost(), table.best_order()};
}

inline std::pair<Cost, std::vector<int>> held_karp(const Instance& inst, Mask members) {
    return held_karp(inst, customers_of(members));
}

/// Every customer subset whose load fits the capacity and whose best-order
/// duration fits the time limit, sorted by member bitmask. Capacity-infeasible
/// subsets (and subsets whose cheapest-incoming-arc duration bound already
/// exceeds the limit) are pruned without running the order DP; the bound is a
/// lower bound on any order's duration and grows with the subset, so pruning
/// never drops a feasible subset.
inline std::vector<FeasibleRoute> enumerate_feasible_routes(const Instance& inst) {
    const int n = inst.n_customers;
    if (n > kMaxEnumCustomers)
        throw ValidationError("exact route enumeration supports at most " +
                              std::to_string(kMaxEnumCustomers) + " customers (instance has " +
                              std::to_string(n) + ")");
    const std::size_t count = std::size_t{1} << n;

    // Cheapest way to arrive at each customer from anywhere (depot included).
    std::vector<Cost> min_in(n + 1, detail::kInf);
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            if (i != j) min_in[j] = std::min(min_in[j], inst.travel_time[i][j]);

    std::vector<Cost> load(count, 0), svc(count, 0), lb_in(count, 0), comp(count, 0);
    std::vector<char> admissible(count, 0);
    std::vector<Cost> g(count * n, detail::kInf);

    std::vector<FeasibleRoute> out;
    for (std::size_t mask = 1; mask < count; ++mask) {
        const int low = std::countr_zero(mask);  // customer low+1
        const std::size_t rest = mask & (mask - 1);
        load[mask] = load[rest] + inst.demand[low + 1];
        svc[mask] = svc[rest] + inst.service_time[low + 1];
        lb_in[mask] = lb_in[rest] + min_in[low + 1];
        Cost cross = 0;
        for (std::size_t r = rest; r != 0; r &= r - 1)
            cross += inst.distance[low + 1][std::countr_zero(r) + 1];
        comp[mask] = comp[rest] + cross;

        if (load[mask] > inst.capacity) continue;
        if (lb_in[mask] + svc[mask] + inst.unload_time > inst.time_limit) continue;
        admissible[mask] = 1;

        // Suffix DP restricted to admissible masks; submasks of an admissible
        // mask are admissible, so all referenced states exist.
        Cost best_tour = detail::kInf;
        for (int j = 0; j < n; ++j) {
            if (!(mask >> j & 1u)) continue;
            const std::size_t sub = mask ^ (std::size_t{1} << j);
            Cost best = detail::kInf;
            if (sub == 0) {
                best = inst.travel_time[j + 1][0];
            } else {
                for (int t = 0; t < n; ++t) {
                    if (!(sub >> t & 1u)) continue;
                    const Cost c = inst.travel_time[j + 1][t + 1] + g[sub * n + t];
                    if (c < best) best = c;
                }
            }
            g[mask * n + j] = best;
            best_tour = std::min(best_tour, inst.travel_time[0][j + 1] + best);
        }

        const Cost duration = best_tour + svc[mask] + inst.unload_time;
        if (duration > inst.time_limit) continue;

        FeasibleRoute fr;
        fr.members = static_cast<Mask>(mask);
        fr.best_travel_time = best_tour;
        fr.load = load[mask];
        fr.compactness = comp[mask];
        fr.min_duration = duration;

        // Forward reconstruction of the lexicographically smallest optimum.
        std::size_t remaining = mask;
        int prev = 0;
        Cost target = best_tour;
        while (remaining != 0) {
            for (int j = 0; j < n; ++j) {
                if (!(remaining >> j & 1u)) continue;
                if (inst.travel_time[prev][j + 1] + g[remaining * n + j] == target) {
                    fr.best_order.push_back(j + 1);
                    target = g[remaining * n + j];
                    remaining ^= std::size_t{1} << j;
                    prev = j + 1;
                    break;
                }
            }
        }
        out.push_back(std::move(fr));
    }
    return out;
}

}  // namespace covrp::routes
