#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "covrp/model.hpp"
#include "covrp/routes.hpp"
#include "covrp/solver.hpp"

// Bi-objective layer: payoff table, the two scalarization sweeps, and the
// dominance filter that turns collected optima into a Pareto front.

namespace covrp::moo {

struct PayoffTable {
    Solution f1_anchor;  // lexicographic (min f1, then min f2) optimum
    Solution f2_anchor;  // lexicographic (min f2, then min f1) optimum
    Cost r1 = 0;         // f1 range across the front
    Cost r2 = 0;         // f2 range across the front
};

/// Computes both anchors with single-objective weighted solves (unit ranges),
/// whose tie-breaking makes them exact lexicographic optima. Throws
/// InfeasibleError when no partition fits inside the fleet limit.
inline PayoffTable payoff_table(const Instance& inst,
                                const std::vector<routes::FeasibleRoute>& route_set,
                                int fleet_cap,
                                std::optional<double> budget_seconds = std::nullopt) {
    // w2 = 0 makes the score f1 alone and the tie-break minimizes f2 next.
    auto a1 = solver::solve(inst, route_set,
                            solver::SubproblemSpec::weighted(1, 0, 1, 1, 1, fleet_cap),
                            budget_seconds);
    if (a1.status != solver::SolveStatus::optimal)
        throw solver::InfeasibleError("no feasible plan within the fleet limit");
    // w1 = 0 scores by f2; the tie-break then minimizes f1 among f2 optima.
    auto a2 = solver::solve(inst, route_set,
                            solver::SubproblemSpec::weighted(0, 1, 1, 1, 1, fleet_cap),
                            budget_seconds);
    if (a2.status != solver::SolveStatus::optimal)
        throw solver::InfeasibleError("no feasible plan within the fleet limit");

    PayoffTable t;
    t.f1_anchor = a1.solution;
    t.f2_anchor = a2.solution;
    t.r1 = t.f2_anchor.f1 - t.f1_anchor.f1;
    t.r2 = t.f1_anchor.f2 - t.f2_anchor.f2;
    return t;
}

/// Strictly non-dominated subset under (min f1, min f2). Points equal in both
/// objectives collapse to the lexicographically smallest route list; the
/// result is sorted by f1 ascending (hence f2 descending).
inline ParetoFront filter_nondominated(const std::vector<Solution>& sols) {
    struct Entry {
        const Solution* sol;
        std::vector<std::vector<int>> seqs;
    };
    std::vector<Entry> entries;
    entries.reserve(sols.size());
    for (const auto& s : sols) entries.push_back({&s, route_sequences(s)});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.sol->f1 != b.sol->f1) return a.sol->f1 < b.sol->f1;
        if (a.sol->f2 != b.sol->f2) return a.sol->f2 < b.sol->f2;
        return route_list_less(a.seqs, b.seqs);
    });

    ParetoFront front;
    Cost best_f2 = std::numeric_limits<Cost>::max();
    for (const auto& e : entries) {
        if (e.sol->f2 >= best_f2) continue;  // dominated, or a duplicate point
        best_f2 = e.sol->f2;
        front.points.push_back(FrontPoint{e.sol->f1, e.sol->f2, *e.sol});
    }
    return front;
}

struct SweepReport {
    ParetoFront front;
    std::string method;              // "wsum" or "econ"
    int grid_points_requested = 0;
    int solver_invocations = 0;      // subproblems actually solved
    int bypassed = 0;                // grid points skipped by the by-pass rule
    int duplicates_discarded = 0;    // solved points dropped by the filter
    std::vector<double> point_seconds;  // per solved subproblem
    bool aborted = false;            // budget ran out mid-sweep
};

/// Weighted-sum sweep over q evenly spaced weight vectors, λ ascending from 0
/// to 1 with w1 = λ and w2 = 1-λ. Ranges from the payoff table normalize both
/// objectives. A degenerate front (zero range) collapses the sweep to a single
/// solve.
inline SweepReport weighted_sum_sweep(const Instance& inst,
                                      const std::vector<routes::FeasibleRoute>& route_set,
                                      int q, int fleet_cap, const PayoffTable& payoff,
                                      std::optional<double> budget_seconds = std::nullopt) {
    if (q < 1) throw ValidationError("grid size must be at least 1");
    SweepReport rep;
    rep.method = "wsum";
    rep.grid_points_requested = q;

    if (payoff.r1 == 0) {
        // r1 and r2 vanish together: the front is a single point and the
        // sweep degenerates to one solve (λ = 1 with unit stand-in ranges).
        try {
            auto out = solver::solve(inst, route_set,
                                     solver::SubproblemSpec::weighted(1, 0, 1, 1, 1, fleet_cap),
                                     budget_seconds);
            ++rep.solver_invocations;
            rep.point_seconds.push_back(out.stats.elapsed_seconds);
            rep.front = filter_nondominated({out.solution});
        } catch (const solver::BudgetError&) {
            rep.aborted = true;
        }
        return rep;
    }

    std::vector<Solution> collected;
    for (int i = 0; i < q; ++i) {
        // λ_i = i/(q-1) ascending, w1 = λ; a vanishing range would never be
        // consulted (both vanish together), its divisor defaults to 1.
        const std::int64_t den = q == 1 ? 1 : q - 1;
        const std::int64_t w1 = q == 1 ? 1 : i;
        auto spec = solver::SubproblemSpec::weighted(w1, den - w1, den,
                                                     std::max<Cost>(payoff.r1, 1),
                                                     std::max<Cost>(payoff.r2, 1), fleet_cap);
        try {
            auto out = solver::solve(inst, route_set, spec, budget_seconds);
            ++rep.solver_invocations;
            rep.point_seconds.push_back(out.stats.elapsed_seconds);
            collected.push_back(out.solution);
        } catch (const solver::BudgetError&) {
            rep.aborted = true;
            break;
        }
    }
    rep.front = filter_nondominated(collected);
    rep.duplicates_discarded = static_cast<int>(collected.size() - rep.front.size());
    return rep;
}

/// The f2 bounds of a q-point epsilon grid: b_i = f2_max - ceil(i*r2/q).
/// Integer objectives make ceil the tight choice — every real bound in
/// [b_i, b_i + 1) admits exactly the plans b_i admits.
inline std::vector<Cost> epsilon_grid(Cost f2_max, Cost r2, int q) {
    std::vector<Cost> grid;
    grid.reserve(q);
    for (int i = 0; i < q; ++i)
        grid.push_back(f2_max - (static_cast<Cost>(i) * r2 + q - 1) / q);
    return grid;
}

/// Epsilon-constraint sweep: q bounds on f2 stepping down from the f1
/// anchor's f2 toward the f2 anchor's, each solved lexicographically
/// (min f1, then min f2). The by-pass rule skips any later bound that the
/// previous optimum already satisfies — re-solving would return the identical
/// plan. Every bound admits the f2 anchor, so no subproblem is infeasible.
inline SweepReport epsilon_sweep(const Instance& inst,
                                 const std::vector<routes::FeasibleRoute>& route_set,
                                 int q, int fleet_cap, const PayoffTable& payoff,
                                 bool bypass = true,
                                 std::optional<double> budget_seconds = std::nullopt) {
    if (q < 1) throw ValidationError("grid size must be at least 1");
    SweepReport rep;
    rep.method = "econ";
    rep.grid_points_requested = q;

    // A vanishing r2 needs no special case: the grid collapses to q copies of
    // f2_max, the first solve returns the single front point and the by-pass
    // rule absorbs the rest, keeping solved + bypassed = q.
    const Cost f2_max = payoff.f1_anchor.f2;
    const auto grid = epsilon_grid(f2_max, payoff.r2, q);
    std::vector<Solution> collected;
    std::optional<Cost> last_f2;
    for (int i = 0; i < q; ++i) {
        if (bypass && last_f2 && grid[i] >= *last_f2) {
            ++rep.bypassed;  // the previous optimum stays optimal here
            continue;
        }
        auto spec = solver::SubproblemSpec::epsilon_bound(grid[i], fleet_cap);
        try {
            auto out = solver::solve(inst, route_set, spec, budget_seconds);
            if (out.status != solver::SolveStatus::optimal) break;  // unreachable: grid is anchored
            ++rep.solver_invocations;
            rep.point_seconds.push_back(out.stats.elapsed_seconds);
            collected.push_back(out.solution);
            last_f2 = out.solution.f2;
        } catch (const solver::BudgetError&) {
            rep.aborted = true;
            break;
        }
    }
    rep.front = filter_nondominated(collected);
    rep.duplicates_discarded = static_cast<int>(collected.size() - rep.front.size());
    return rep;
}

}  // namespace covrp::moo
