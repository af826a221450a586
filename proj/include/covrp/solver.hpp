#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "covrp/model.hpp"
#include "covrp/routes.hpp"

// Exact single-objective engine over the set-partitioning structure, plus an
// independent checker of the full constraint system.
//
// solve() runs a label-correcting dynamic program over the served-customer
// bitmask. Each state's labels are (routes_used, f1, f2) triples that are
// minimal under weak dominance; a transition appends a feasible route that
// contains the lowest-indexed unserved customer, so every partition is
// generated through exactly one expansion chain and witnesses come out in
// canonical (ascending lowest-member) route order.

namespace covrp::solver {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeightedSpec {
    // w1 = w1_num/weight_den, w2 = w2_num/weight_den; w1 + w2 = 1.
    std::int64_t w1_num = 0;
    std::int64_t w2_num = 0;
    std::int64_t weight_den = 1;
    Cost r1 = 1;  // normalization range for f1, >= 1
    Cost r2 = 1;  // normalization range for f2, >= 1
};

struct EpsilonSpec {
    Cost epsilon = 0;    // upper bound on f2
    double delta = 0.0;  // reporting only; the optimum is the delta -> 0 limit
};

struct SubproblemSpec {
    std::variant<WeightedSpec, EpsilonSpec> mode;
    int fleet_cap = 1;

    static SubproblemSpec weighted(std::int64_t w1_num, std::int64_t w2_num,
                                   std::int64_t weight_den, Cost r1, Cost r2, int fleet_cap) {
        return {WeightedSpec{w1_num, w2_num, weight_den, r1, r2}, fleet_cap};
    }
    static SubproblemSpec epsilon_bound(Cost epsilon, int fleet_cap) {
        return {EpsilonSpec{epsilon}, fleet_cap};
    }
    bool is_weighted() const { return std::holds_alternative<WeightedSpec>(mode); }
};

struct SolveStats {
    std::uint64_t labels_stored = 0;
    double elapsed_seconds = 0.0;
};

enum class SolveStatus { optimal, infeasible };

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    Solution solution;  // populated when status == optimal
    SolveStats stats;
};

namespace detail {

inline void validate_spec(const SubproblemSpec& spec) {
    if (spec.fleet_cap < 1) throw ValidationError("fleet_cap must be at least 1");
    if (const auto* w = std::get_if<WeightedSpec>(&spec.mode)) {
        if (w->w1_num < 0 || w->w2_num < 0 || w->weight_den < 1)
            throw ValidationError("weighted spec requires nonnegative weights");
        if (w->w1_num + w->w2_num != w->weight_den)
            throw ValidationError("weighted spec requires w1 + w2 = 1");
        if (w->r1 < 1 || w->r2 < 1)
            throw ValidationError("weighted spec requires ranges >= 1");
    } else {
        if (std::get<EpsilonSpec>(spec.mode).epsilon < 0)
            throw ValidationError("epsilon bound must be nonnegative");
    }
}

struct Label {
    int k = 0;  // routes used
    Cost f1 = 0;
    Cost f2 = 0;
    std::int32_t route_idx = -1;    // route appended to reach this label
    std::int32_t parent_label = -1; // index within the parent mask's label list
};

// Weighted score numerator over the common denominator weight_den*r1*r2.
inline __int128 weighted_score(const WeightedSpec& w, Cost f1, Cost f2) {
    return static_cast<__int128>(w.w1_num) * f1 * w.r2 +
           static_cast<__int128>(w.w2_num) * f2 * w.r1;
}

}  // namespace detail

/// Exact optimum of one scalarized subproblem over the given feasible routes.
///
/// weighted mode: minimizes w1*f1/r1 + w2*f2/r2 in exact rational arithmetic;
/// ties broken by smaller f1, then smaller f2, then lexicographically
/// smallest canonical route list.
/// epsilon mode: lexicographic (min f1, then min f2) among partitions with
/// f2 <= epsilon — the augmented epsilon-constraint optimum in the small-delta
/// limit — with the same structural tie-break.
inline SolveOutcome solve(const Instance& inst, const std::vector<routes::FeasibleRoute>& route_set,
                          const SubproblemSpec& spec,
                          std::optional<double> budget_seconds = std::nullopt) {
    using detail::Label;
    detail::validate_spec(spec);

    const auto start = std::chrono::steady_clock::now();
    const auto deadline = budget_seconds
                              ? std::optional(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                          std::chrono::duration<double>(*budget_seconds)))
                              : std::nullopt;

    const int n = inst.n_customers;
    const std::uint32_t full = (n == 32) ? ~0u : ((std::uint32_t{1} << n) - 1);
    const auto* eps = std::get_if<EpsilonSpec>(&spec.mode);
    const auto* wtd = std::get_if<WeightedSpec>(&spec.mode);

    // Routes grouped by their lowest member; the canonical expansion always
    // appends a route containing the lowest unserved customer, whose members
    // are all unserved, so its lowest member equals that customer.
    std::vector<std::vector<std::int32_t>> by_lowest(n + 1);
    for (std::size_t i = 0; i < route_set.size(); ++i) {
        const int low = std::countr_zero(route_set[i].members) + 1;
        by_lowest[low].push_back(static_cast<std::int32_t>(i));
    }

    std::vector<std::vector<Label>> labels(std::size_t{1} << n);
    labels[0].push_back(Label{});
    SolveStats stats;
    stats.labels_stored = 1;

    // Canonical route list of the partial partition behind a label.
    auto chain_of = [&](std::uint32_t mask, std::int32_t label_idx) {
        std::vector<std::vector<int>> chain;
        while (label_idx >= 0) {
            const Label& l = labels[mask][label_idx];
            if (l.route_idx < 0) break;
            chain.push_back(route_set[l.route_idx].best_order);
            mask ^= route_set[l.route_idx].members;
            label_idx = l.parent_label;
        }
        std::reverse(chain.begin(), chain.end());
        return chain;
    };

    std::uint64_t ticks = 0;
    auto check_budget = [&] {
        if (deadline && (++ticks & 0x3ffu) == 0 &&
            std::chrono::steady_clock::now() > *deadline)
            throw BudgetError("solve exceeded its time budget");
    };

    auto insert_label = [&](std::uint32_t mask, Label cand) {
        auto& set = labels[mask];
        for (std::size_t i = 0; i < set.size(); ++i) {
            Label& l = set[i];
            if (l.k == cand.k && l.f1 == cand.f1 && l.f2 == cand.f2) {
                // Equal triple: keep the lexicographically smaller witness.
                auto have = chain_of(mask, static_cast<std::int32_t>(i));
                std::uint32_t pmask = mask ^ route_set[cand.route_idx].members;
                auto cand_chain = chain_of(pmask, cand.parent_label);
                cand_chain.push_back(route_set[cand.route_idx].best_order);
                if (cand_chain < have) {
                    l.route_idx = cand.route_idx;
                    l.parent_label = cand.parent_label;
                }
                return;
            }
            // Weak dominance, strict in at least one objective. Labels equal
            // in (f1, f2) but differing in k are kept: the larger-k one can
            // still complete to an equally good, lexicographically smaller
            // witness.
            if (l.k <= cand.k && l.f1 <= cand.f1 && l.f2 <= cand.f2 &&
                (l.f1 < cand.f1 || l.f2 < cand.f2))
                return;
        }
        std::erase_if(set, [&](const Label& l) {
            return cand.k <= l.k && cand.f1 <= l.f1 && cand.f2 <= l.f2 &&
                   (cand.f1 < l.f1 || cand.f2 < l.f2);
        });
        set.push_back(cand);
        ++stats.labels_stored;
    };

    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (labels[mask].empty()) continue;
        const int lowest = std::countr_zero(~mask) + 1;
        for (std::int32_t ri : by_lowest[lowest]) {
            const auto& r = route_set[ri];
            if ((r.members & mask) != 0) continue;
            const std::uint32_t next = mask | r.members;
            const std::size_t label_count = labels[mask].size();
            for (std::size_t li = 0; li < label_count; ++li) {
                check_budget();
                const Label& l = labels[mask][li];
                if (l.k + 1 > spec.fleet_cap) continue;
                Label cand;
                cand.k = l.k + 1;
                cand.f1 = l.f1 + r.best_travel_time;
                cand.f2 = l.f2 + r.compactness;
                if (eps && cand.f2 > eps->epsilon) continue;  // f2 only grows
                cand.route_idx = ri;
                cand.parent_label = static_cast<std::int32_t>(li);
                insert_label(next, cand);
            }
        }
    }

    SolveOutcome out;
    const auto& terminal = labels[full];
    if (terminal.empty()) {
        out.status = SolveStatus::infeasible;
        out.stats = stats;
        out.stats.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return out;
    }

    std::int32_t best = -1;
    std::optional<std::vector<std::vector<int>>> best_chain;
    for (std::size_t i = 0; i < terminal.size(); ++i) {
        const Label& l = terminal[i];
        if (best < 0) {
            best = static_cast<std::int32_t>(i);
            continue;
        }
        const Label& b = terminal[best];
        int cmp = 0;  // -1: candidate better, +1: incumbent better
        if (wtd) {
            const auto sc = detail::weighted_score(*wtd, l.f1, l.f2);
            const auto sb = detail::weighted_score(*wtd, b.f1, b.f2);
            if (sc != sb) cmp = sc < sb ? -1 : 1;
        }
        if (cmp == 0 && l.f1 != b.f1) cmp = l.f1 < b.f1 ? -1 : 1;
        if (cmp == 0 && l.f2 != b.f2) cmp = l.f2 < b.f2 ? -1 : 1;
        if (cmp == 0) {
            if (!best_chain) best_chain = chain_of(full, best);
            auto cand_chain = chain_of(full, static_cast<std::int32_t>(i));
            if (cand_chain < *best_chain) {
                best = static_cast<std::int32_t>(i);
                best_chain = std::move(cand_chain);
            }
            continue;
        }
        if (cmp < 0) {
            best = static_cast<std::int32_t>(i);
            best_chain.reset();
        }
    }

    auto sequences = best_chain ? *best_chain : chain_of(full, best);
    out.solution = evaluate(inst, sequences);
    if (out.solution.f1 != terminal[best].f1 || out.solution.f2 != terminal[best].f2)
        throw std::logic_error("solver label sums disagree with route evaluation");
    out.status = SolveStatus::optimal;
    out.stats = stats;
    out.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

/// Number of distinct partitions of all customers into feasible routes using
/// at most fleet_cap of them, counted through the same canonical
/// lowest-unserved-customer expansion solve() uses (no dominance pruning).
inline std::uint64_t count_feasible_partitions(const Instance& inst,
                                               const std::vector<routes::FeasibleRoute>& route_set,
                                               int fleet_cap) {
    const int n = inst.n_customers;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::vector<std::int32_t>> by_lowest(n + 1);
    for (std::size_t i = 0; i < route_set.size(); ++i)
        by_lowest[std::countr_zero(route_set[i].members) + 1].push_back(
            static_cast<std::int32_t>(i));

    // counts[mask][k] = number of canonical chains reaching mask with k routes
    std::vector<std::vector<std::uint64_t>> counts(std::size_t{1} << n,
                                                   std::vector<std::uint64_t>(fleet_cap + 1, 0));
    counts[0][0] = 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        const int lowest = std::countr_zero(~mask) + 1;
        for (std::int32_t ri : by_lowest[lowest]) {
            const auto& r = route_set[ri];
            if ((r.members & mask) != 0) continue;
            const std::uint32_t next = mask | r.members;
            for (int k = 0; k < fleet_cap; ++k)
                counts[next][k + 1] += counts[mask][k];
        }
    }
    std::uint64_t total = 0;
    for (int k = 0; k <= fleet_cap; ++k) total += counts[full][k];
    return total;
}

// ---------------------------------------------------------------------------
// Independent constraint checker.

enum class ConstraintFamily {
    visit_once,     // Eq3-4: each customer served exactly once
    fleet,          // Eq5: at most fleet_size depot departures
    flow,           // Eq6: each route is a depot-to-depot path over customers
    capacity,       // Eq7: cumulative-load witness exists (load <= C)
    duration,       // Eq8-9: cumulative-time witness exists (duration <= T)
    comembership,   // Eq10: f2 equals the recomputed same-route pair distances
    objective,      // Eq1: stated f1 equals the recomputed travel time
};

inline const char* family_label(ConstraintFamily f) {
    switch (f) {
        case ConstraintFamily::visit_once: return "Eq3-4";
        case ConstraintFamily::fleet: return "Eq5";
        case ConstraintFamily::flow: return "Eq6";
        case ConstraintFamily::capacity: return "Eq7";
        case ConstraintFamily::duration: return "Eq8-9";
        case ConstraintFamily::comembership: return "Eq10";
        case ConstraintFamily::objective: return "Eq1";
    }
    return "?";
}

struct Violation {
    ConstraintFamily family;
    std::string message;  // includes the family label and the offending route/customer
};

/// Verifies an arbitrary candidate plan against the whole constraint system,
/// one family at a time, recomputing everything from the raw sequences.
/// Violations are data, not errors; an empty list means the plan passes.
inline std::vector<Violation> check_solution(const Instance& inst,
                                             const std::vector<std::vector<int>>& sequences,
                                             Cost stated_f1, Cost stated_f2) {
    const int n = inst.n_customers;
    std::vector<Violation> out;
    auto add = [&](ConstraintFamily fam, const std::string& what) {
        out.push_back({fam, std::string(family_label(fam)) + ": " + what});
    };

    int nonempty = 0;
    for (const auto& s : sequences)
        if (!s.empty()) ++nonempty;
    if (nonempty > inst.fleet_size)
        add(ConstraintFamily::fleet, std::to_string(nonempty) +
                                         " routes depart the depot but fleet_size is " +
                                         std::to_string(inst.fleet_size));

    std::vector<int> covered(n + 1, 0);
    bool all_structural = true;
    std::vector<char> structural(sequences.size(), 1);
    for (std::size_t ri = 0; ri < sequences.size(); ++ri) {
        const auto& seq = sequences[ri];
        if (seq.empty()) {
            add(ConstraintFamily::flow, "route " + std::to_string(ri) + " has no customers");
            structural[ri] = 0;
            all_structural = false;
            continue;
        }
        for (int id : seq) {
            if (id == 0) {
                add(ConstraintFamily::flow,
                    "route " + std::to_string(ri) + " passes through the depot mid-route");
                structural[ri] = 0;
            } else if (id < 1 || id > n) {
                add(ConstraintFamily::flow, "route " + std::to_string(ri) +
                                                " contains invalid node id " + std::to_string(id));
                structural[ri] = 0;
            } else {
                ++covered[id];
            }
        }
        if (!structural[ri]) all_structural = false;
    }

    for (int c = 1; c <= n; ++c)
        if (covered[c] != 1)
            add(ConstraintFamily::visit_once, "customer " + std::to_string(c) + " visited " +
                                                  std::to_string(covered[c]) + " times");

    Cost f1 = 0, f2 = 0;
    for (std::size_t ri = 0; ri < sequences.size(); ++ri) {
        if (!structural[ri] || sequences[ri].empty()) continue;
        Route r = build_route(inst, sequences[ri]);
        if (r.load > inst.capacity)
            add(ConstraintFamily::capacity,
                "route " + std::to_string(ri) + " load " + std::to_string(r.load) +
                    " exceeds capacity " + std::to_string(inst.capacity));
        if (r.duration > inst.time_limit)
            add(ConstraintFamily::duration,
                "route " + std::to_string(ri) + " duration " + std::to_string(r.duration) +
                    " exceeds time_limit " + std::to_string(inst.time_limit));
        f1 += r.travel_time;
        f2 += r.compactness;
    }

    if (all_structural) {
        if (stated_f1 != f1)
            add(ConstraintFamily::objective, "stated f1 " + std::to_string(stated_f1) +
                                                 " differs from recomputed travel time " +
                                                 std::to_string(f1));
        if (stated_f2 != f2)
            add(ConstraintFamily::comembership,
                "stated f2 " + std::to_string(stated_f2) +
                    " differs from recomputed same-route pair distances " + std::to_string(f2));
    }
    return out;
}

inline std::vector<Violation> check_solution(const Instance& inst, const Solution& sol) {
    return check_solution(inst, route_sequences(sol), sol.f1, sol.f2);
}

}  // namespace covrp::solver
