#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "covrp/model.hpp"

// Deterministic random instance generator. All sampling goes through
// mt19937_64 with explicit modulo reduction rather than the distribution
// adaptors, whose output is implementation-defined; the same (profile, n,
// seed, knobs) tuple yields byte-identical instances on every platform.

namespace covrp::gen {

enum class Profile { uniform, clustered, ring };

inline const char* profile_name(Profile p) {
    switch (p) {
        case Profile::uniform: return "uniform";
        case Profile::clustered: return "clustered";
        case Profile::ring: return "ring";
    }
    return "?";
}

inline Profile parse_profile(const std::string& s) {
    if (s == "uniform") return Profile::uniform;
    if (s == "clustered") return Profile::clustered;
    if (s == "ring") return Profile::ring;
    throw ValidationError("unknown profile '" + s + "' (expected uniform, clustered or ring)");
}

struct GenConfig {
    int n = 8;
    std::uint64_t seed = 1;
    Profile profile = Profile::clustered;
    int cap_pct = 45;    // capacity as a percentage of total demand
    int time_pct = 300;  // time limit as a percentage of the longest singleton route
    int fleet = 0;       // 0 = derive from total demand
};

namespace detail {

inline std::int64_t rand_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

struct XY {
    std::int64_t x = 0, y = 0;
};

// Integer Euclidean distance; the squared length is exact in double and
// sqrt is correctly rounded, so the result is platform-independent.
inline Cost euclid(const XY& a, const XY& b) {
    const std::int64_t dx = a.x - b.x, dy = a.y - b.y;
    return std::llround(std::sqrt(static_cast<double>(dx * dx + dy * dy)));
}

inline std::vector<XY> sample_points(std::mt19937_64& rng, int n, Profile profile) {
    std::vector<XY> pts(n + 1);
    pts[0] = {100, 100};  // depot at the center
    switch (profile) {
        case Profile::uniform:
            for (int c = 1; c <= n; ++c)
                pts[c] = {rand_range(rng, 0, 200), rand_range(rng, 0, 200)};
            break;
        case Profile::clustered: {
            const int k = static_cast<int>(rand_range(rng, 2, 3));
            std::vector<XY> centers(k);
            for (auto& ctr : centers)
                ctr = {rand_range(rng, 40, 160), rand_range(rng, 40, 160)};
            for (int c = 1; c <= n; ++c) {
                const auto& ctr = centers[rand_range(rng, 0, k - 1)];
                pts[c] = {ctr.x + rand_range(rng, -25, 25), ctr.y + rand_range(rng, -25, 25)};
            }
            break;
        }
        case Profile::ring:
            // Rejection-sample the annulus 60 <= |p - depot| <= 90 on the
            // integer grid; no trigonometry, so no libm variance.
            for (int c = 1; c <= n; ++c) {
                for (;;) {
                    const std::int64_t dx = rand_range(rng, -95, 95);
                    const std::int64_t dy = rand_range(rng, -95, 95);
                    const std::int64_t r2 = dx * dx + dy * dy;
                    if (r2 >= 60 * 60 && r2 <= 90 * 90) {
                        pts[c] = {100 + dx, 100 + dy};
                        break;
                    }
                }
            }
            break;
    }
    return pts;
}

}  // namespace detail

/// Builds a random instance that always passes validation: every demand fits
/// the vehicle and every singleton route fits the time limit by construction.
inline Instance generate(const GenConfig& cfg) {
    if (cfg.n < 1 || cfg.n > 64) throw ValidationError("generator supports 1..64 customers");
    if (cfg.cap_pct < 1) throw ValidationError("capacity percentage must be positive");
    if (cfg.time_pct < 100)
        throw ValidationError(
            "time percentage below 100 would make some singleton route infeasible");
    if (cfg.fleet < 0) throw ValidationError("fleet size must be positive (or 0 to derive)");

    std::mt19937_64 rng(cfg.seed);
    const int n = cfg.n;
    const auto pts = detail::sample_points(rng, n, cfg.profile);

    Instance inst;
    inst.n_customers = n;
    inst.demand.assign(n + 1, 0);
    inst.service_time.assign(n + 1, 0);
    for (int c = 1; c <= n; ++c) inst.demand[c] = detail::rand_range(rng, 1, 9);
    for (int c = 1; c <= n; ++c) inst.service_time[c] = detail::rand_range(rng, 1, 5);
    inst.unload_time = detail::rand_range(rng, 2, 8);

    inst.distance.assign(n + 1, std::vector<Cost>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            inst.distance[i][j] = inst.distance[j][i] = detail::euclid(pts[i], pts[j]);

    // Travel times perturb the metric per ordered pair (making the matrix
    // asymmetric), which decorrelates travel time from plain distance.
    inst.travel_time.assign(n + 1, std::vector<Cost>(n + 1, 0));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            const Cost f = detail::rand_range(rng, 70, 130);
            inst.travel_time[i][j] = std::max<Cost>(1, inst.distance[i][j] * f / 100);
        }

    Cost total = 0, max_demand = 0;
    for (int c = 1; c <= n; ++c) {
        total += inst.demand[c];
        max_demand = std::max(max_demand, inst.demand[c]);
    }
    inst.capacity = std::max(max_demand, total * cfg.cap_pct / 100);

    Cost singleton_max = 0;
    for (int c = 1; c <= n; ++c)
        singleton_max = std::max(singleton_max, inst.travel_time[0][c] + inst.service_time[c] +
                                                    inst.travel_time[c][0] + inst.unload_time);
    inst.time_limit = singleton_max * cfg.time_pct / 100;

    inst.fleet_size = cfg.fleet > 0
                          ? cfg.fleet
                          : static_cast<int>(std::min<Cost>(
                                n, (total + inst.capacity - 1) / inst.capacity + 2));

    inst.name = std::string("gen-") + profile_name(cfg.profile) + "-n" + std::to_string(n) +
                "-s" + std::to_string(cfg.seed);
    validate_instance(inst);
    return inst;
}

}  // namespace covrp::gen
