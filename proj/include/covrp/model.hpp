#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types for the compact-route VRP: a depot (node 0), customers
// 1..n, integer travel-time and distance matrices, per-route capacity and
// working-day duration limits, and the two objectives
//   f1 = total depot-to-depot travel time over all routes,
//   f2 = sum over routes of pairwise distances between customers that share
//        a route (the compactness measure; order-independent).
//
// All quantities are integers; dominance and objective comparisons are exact.

namespace covrp {

using Cost = std::int64_t;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Instance {
    std::string name;
    int n_customers = 0;         // customers are ids 1..n_customers, depot is 0
    Cost capacity = 0;           // vehicle volume limit per route
    Cost time_limit = 0;         // duration limit per route (working day)
    int fleet_size = 0;          // max number of non-empty routes
    Cost unload_time = 0;        // charged once per route on return to depot
    std::vector<Cost> demand;        // index 0..n, [0] == 0
    std::vector<Cost> service_time;  // index 0..n, [0] == 0
    std::vector<std::vector<Cost>> travel_time;  // (n+1)x(n+1), may be asymmetric
    std::vector<std::vector<Cost>> distance;     // (n+1)x(n+1), symmetric

    int n() const { return n_customers; }
};

/// Cumulative (load, time) after completing service at each visit.
struct ScheduleEntry {
    Cost load = 0;
    Cost time = 0;
};

struct Route {
    std::vector<int> sequence;   // distinct customer ids, never contains 0
    Cost travel_time = 0;        // depot -> ... -> depot arc sum
    Cost duration = 0;           // travel + sum of service times + unload
    Cost load = 0;
    Cost compactness = 0;        // sum of distance over unordered in-route pairs
    std::vector<ScheduleEntry> schedule;
};

struct Solution {
    std::vector<Route> routes;
    Cost f1 = 0;
    Cost f2 = 0;
};

struct FrontPoint {
    Cost f1 = 0;
    Cost f2 = 0;
    Solution witness;
};

/// Mutually non-dominated points, sorted by f1 ascending (f2 strictly descending).
struct ParetoFront {
    std::vector<FrontPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

}  // namespace detail

/// Checks every Instance invariant; throws ValidationError naming the first
/// violated one.
inline void validate_instance(const Instance& inst) {
    using detail::require;
    const int n = inst.n_customers;
    require(n >= 1, "instance must have at least one customer");
    require(inst.fleet_size >= 1, "fleet_size must be at least 1");
    require(inst.capacity >= 1, "capacity must be positive");
    require(inst.unload_time >= 0, "unload_time must be nonnegative");
    require(static_cast<int>(inst.demand.size()) == n + 1,
            "demand must list one entry per customer");
    require(static_cast<int>(inst.service_time.size()) == n + 1,
            "service_time must list one entry per customer");

    auto check_matrix = [&](const std::vector<std::vector<Cost>>& m, const std::string& what) {
        require(static_cast<int>(m.size()) == n + 1,
                what + " matrix must have " + std::to_string(n + 1) + " rows");
        for (int i = 0; i <= n; ++i) {
            require(static_cast<int>(m[i].size()) == n + 1,
                    what + " matrix row " + std::to_string(i) + " must have " +
                        std::to_string(n + 1) + " columns");
            for (int j = 0; j <= n; ++j) {
                require(m[i][j] >= 0, what + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "] must be nonnegative");
            }
            require(m[i][i] == 0, what + " diagonal must be zero (row " +
                                      std::to_string(i) + ")");
        }
    };
    check_matrix(inst.travel_time, "travel_time");
    check_matrix(inst.distance, "distance");

    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            require(inst.distance[i][j] == inst.distance[j][i],
                    "distance matrix not symmetric (distance[" + std::to_string(i) + "][" +
                        std::to_string(j) + "] != distance[" + std::to_string(j) + "][" +
                        std::to_string(i) + "])");

    require(inst.demand[0] == 0, "depot demand must be zero");
    require(inst.service_time[0] == 0, "depot service time must be zero");
    for (int i = 1; i <= n; ++i) {
        require(inst.demand[i] >= 1,
                "demand of customer " + std::to_string(i) + " must be positive");
        require(inst.demand[i] <= inst.capacity,
                "demand of customer " + std::to_string(i) + " exceeds capacity");
        require(inst.service_time[i] >= 0,
                "service_time of customer " + std::to_string(i) + " must be nonnegative");
        const Cost singleton = inst.travel_time[0][i] + inst.service_time[i] +
                               inst.travel_time[i][0] + inst.unload_time;
        require(singleton <= inst.time_limit,
                "singleton route infeasible for customer " + std::to_string(i) + " (" +
                    std::to_string(singleton) + " > time_limit " +
                    std::to_string(inst.time_limit) + ")");
    }
}

/// Compactness of a customer set: sum of distance over unordered pairs.
inline Cost pairwise_compactness(const Instance& inst, const std::vector<int>& customers) {
    Cost total = 0;
    for (std::size_t a = 0; a < customers.size(); ++a)
        for (std::size_t b = a + 1; b < customers.size(); ++b)
            total += inst.distance[customers[a]][customers[b]];
    return total;
}

/// Builds the full Route record (schedule, travel time, duration, load,
/// compactness) for one visit sequence. Does not check capacity or duration
/// limits; sequence ids must be valid customers.
inline Route build_route(const Instance& inst, std::vector<int> sequence) {
    for (int id : sequence)
        detail::require(id >= 1 && id <= inst.n_customers,
                        "invalid customer id " + std::to_string(id));
    Route r;
    r.sequence = std::move(sequence);
    r.schedule.reserve(r.sequence.size());
    Cost load = 0, time = 0;
    int prev = 0;
    for (int c : r.sequence) {
        r.travel_time += inst.travel_time[prev][c];
        time += inst.travel_time[prev][c] + inst.service_time[c];
        load += inst.demand[c];
        r.schedule.push_back({load, time});
        prev = c;
    }
    r.travel_time += inst.travel_time[prev][0];
    r.load = load;
    r.duration = time + inst.travel_time[prev][0] + inst.unload_time;
    r.compactness = pairwise_compactness(inst, r.sequence);
    return r;
}

/// Evaluates a candidate routing plan: builds per-route schedules and the
/// objective vector (f1, f2). Rejects plans that cover a customer zero or
/// two-plus times; deliberately does not reject capacity/duration violations
/// (that is the solution checker's job). Empty sequences are dropped.
inline Solution evaluate(const Instance& inst, const std::vector<std::vector<int>>& sequences) {
    std::vector<int> covered(inst.n_customers + 1, 0);
    Solution sol;
    for (const auto& seq : sequences) {
        if (seq.empty()) continue;
        Route r = build_route(inst, seq);
        for (int c : r.sequence) ++covered[c];
        sol.f1 += r.travel_time;
        sol.f2 += r.compactness;
        sol.routes.push_back(std::move(r));
    }
    for (int c = 1; c <= inst.n_customers; ++c)
        detail::require(covered[c] == 1, "customer " + std::to_string(c) + " covered " +
                                             std::to_string(covered[c]) + " times");
    return sol;
}

/// Route list sorted by lowest customer id; the canonical form used for
/// deterministic tie-breaking (a partition's routes have distinct minima).
inline std::vector<std::vector<int>> canonical_route_list(std::vector<std::vector<int>> routes) {
    auto min_of = [](const std::vector<int>& r) {
        int m = r.empty() ? 0 : r[0];
        for (int c : r) m = std::min(m, c);
        return m;
    };
    std::sort(routes.begin(), routes.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return min_of(a) < min_of(b);
              });
    return routes;
}

inline std::vector<std::vector<int>> route_sequences(const Solution& sol) {
    std::vector<std::vector<int>> out;
    out.reserve(sol.routes.size());
    for (const auto& r : sol.routes) out.push_back(r.sequence);
    return out;
}

/// Lexicographic order on canonical route lists; total order on partitions.
inline bool route_list_less(const std::vector<std::vector<int>>& a,
                            const std::vector<std::vector<int>>& b) {
    return a < b;
}

}  // namespace covrp
