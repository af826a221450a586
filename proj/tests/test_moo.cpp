#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "covrp/gen.hpp"
#include "covrp/moo.hpp"
#include "covrp/oracle.hpp"
#include "helpers.hpp"

using covrp::Cost;
using covrp::Instance;
using covrp::ParetoFront;
using covrp::Solution;
namespace moo = covrp::moo;
namespace oracle = covrp::oracle;
using testutil::rand_range;
using testutil::seqs_of;

namespace {

std::vector<covrp::routes::FeasibleRoute> routes_of(const Instance& inst) {
    return covrp::routes::enumerate_feasible_routes(inst);
}

std::vector<std::pair<Cost, Cost>> vectors_of(const ParetoFront& front) {
    std::vector<std::pair<Cost, Cost>> out;
    for (const auto& p : front.points) out.emplace_back(p.f1, p.f2);
    return out;
}

// Quadratic reference filter: keep points no other point weakly dominates,
// collapsing ties to the lexicographically smallest route list.
std::vector<std::pair<Cost, Cost>> naive_filter(const std::vector<Solution>& sols) {
    std::set<std::pair<Cost, Cost>> kept;
    for (const auto& a : sols) {
        bool dominated = false;
        for (const auto& b : sols)
            if (b.f1 <= a.f1 && b.f2 <= a.f2 && (b.f1 < a.f1 || b.f2 < a.f2)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.insert({a.f1, a.f2});
    }
    return {kept.begin(), kept.end()};
}

Solution fake_solution(Cost f1, Cost f2, std::vector<std::vector<int>> seqs) {
    Solution s;
    s.f1 = f1;
    s.f2 = f2;
    for (auto& q : seqs) {
        covrp::Route r;
        r.sequence = std::move(q);
        s.routes.push_back(std::move(r));
    }
    return s;
}

}  // namespace

TEST(Payoff, DegenerateSinglePoint) {
    const auto inst = testutil::tiny1();
    const auto table = moo::payoff_table(inst, routes_of(inst), inst.fleet_size);
    EXPECT_EQ(table.f1_anchor.f1, 10);
    EXPECT_EQ(table.f1_anchor.f2, 0);
    EXPECT_EQ(table.f2_anchor.f1, 10);
    EXPECT_EQ(table.f2_anchor.f2, 0);
    EXPECT_EQ(table.r1, 0);
    EXPECT_EQ(table.r2, 0);
}

TEST(Payoff, ThresholdAnchors) {
    const auto inst = testutil::threshold2();
    const auto table = moo::payoff_table(inst, routes_of(inst), inst.fleet_size);
    EXPECT_EQ(table.f1_anchor.f1, 6);
    EXPECT_EQ(table.f1_anchor.f2, 9);
    EXPECT_EQ(table.f2_anchor.f1, 8);
    EXPECT_EQ(table.f2_anchor.f2, 0);
    EXPECT_EQ(table.r1, 2);
    EXPECT_EQ(table.r2, 9);
}

TEST(Payoff, AnchorsAreOracleFrontExtremes) {
    std::mt19937_64 rng(211);
    for (int trial = 0; trial < 20; ++trial) {
        covrp::gen::GenConfig cfg;
        cfg.n = static_cast<int>(rand_range(rng, 2, 8));
        cfg.seed = rng();
        cfg.profile = static_cast<covrp::gen::Profile>(trial % 3);
        const auto inst = covrp::gen::generate(cfg);
        const auto table = moo::payoff_table(inst, routes_of(inst), inst.fleet_size);
        const auto front = oracle::oracle_front(inst);
        EXPECT_EQ(table.f1_anchor.f1, front.points.front().f1);
        EXPECT_EQ(table.f1_anchor.f2, front.points.front().f2);
        EXPECT_EQ(seqs_of(table.f1_anchor), seqs_of(front.points.front().witness));
        EXPECT_EQ(table.f2_anchor.f1, front.points.back().f1);
        EXPECT_EQ(table.f2_anchor.f2, front.points.back().f2);
        EXPECT_EQ(seqs_of(table.f2_anchor), seqs_of(front.points.back().witness));
        EXPECT_EQ(table.r1, front.points.back().f1 - front.points.front().f1);
        EXPECT_EQ(table.r2, front.points.front().f2 - front.points.back().f2);
    }
}

TEST(Payoff, InfeasiblePropagates) {
    auto inst = testutil::threshold2();
    inst.demand = {0, 6, 6};
    inst.fleet_size = 1;  // two routes needed, one allowed
    covrp::validate_instance(inst);
    EXPECT_THROW(moo::payoff_table(inst, routes_of(inst), inst.fleet_size),
                 covrp::solver::InfeasibleError);
}

TEST(Filter, SpecExamples) {
    // [(10,5),(9,6),(10,4)] -> [(9,6),(10,4)]
    std::vector<Solution> pts;
    pts.push_back(fake_solution(10, 5, {{1}}));
    pts.push_back(fake_solution(9, 6, {{2}}));
    pts.push_back(fake_solution(10, 4, {{3}}));
    auto front = moo::filter_nondominated(pts);
    EXPECT_EQ(vectors_of(front), (std::vector<std::pair<Cost, Cost>>{{9, 6}, {10, 4}}));

    // duplicates collapse to one witness, the lexicographically smallest
    pts.clear();
    pts.push_back(fake_solution(7, 7, {{2, 1}}));
    pts.push_back(fake_solution(7, 7, {{1, 2}}));
    front = moo::filter_nondominated(pts);
    ASSERT_EQ(front.size(), 1u);
    EXPECT_EQ(front.points[0].f1, 7);
    EXPECT_EQ(seqs_of(front.points[0].witness), (std::vector<std::vector<int>>{{1, 2}}));
}

TEST(Filter, MatchesQuadraticReference) {
    std::mt19937_64 rng(223);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Solution> pts;
        const int count = static_cast<int>(rand_range(rng, 0, 40));
        for (int i = 0; i < count; ++i)
            pts.push_back(fake_solution(rand_range(rng, 0, 12), rand_range(rng, 0, 12),
                                        {{static_cast<int>(rand_range(rng, 1, 5))}}));
        const auto front = moo::filter_nondominated(pts);
        EXPECT_EQ(vectors_of(front), naive_filter(pts));
        // sorted ascending in f1, strictly descending in f2
        for (std::size_t i = 1; i < front.points.size(); ++i) {
            EXPECT_LT(front.points[i - 1].f1, front.points[i].f1);
            EXPECT_GT(front.points[i - 1].f2, front.points[i].f2);
        }
    }
}

TEST(EpsilonGrid, MatchesRealArithmetic) {
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 100; ++trial) {
        const Cost f2_max = rand_range(rng, 0, 1000);
        const Cost r2 = rand_range(rng, 1, 400);
        const int q = static_cast<int>(rand_range(rng, 1, 12));
        const auto grid = moo::epsilon_grid(f2_max, r2, q);
        ASSERT_EQ(grid.size(), static_cast<std::size_t>(q));
        for (int i = 0; i < q; ++i) {
            // b_i = floor(f2_max - i*r2/q), computed here in floating point
            const double exact = static_cast<double>(f2_max) -
                                 static_cast<double>(i) * static_cast<double>(r2) / q;
            EXPECT_EQ(grid[i], static_cast<Cost>(std::floor(exact + 1e-9)));
        }
    }
    EXPECT_EQ(moo::epsilon_grid(100, 37, 10),
              (std::vector<Cost>{100, 96, 92, 88, 85, 81, 77, 74, 70, 66}));
}

TEST(Sweeps, DegenerateInstanceCollapsesToOneSolve) {
    const auto inst = testutil::tiny1();
    const auto rs = routes_of(inst);
    const auto table = moo::payoff_table(inst, rs, inst.fleet_size);

    const auto wsum = moo::weighted_sum_sweep(inst, rs, 10, inst.fleet_size, table);
    ASSERT_EQ(wsum.front.size(), 1u);
    EXPECT_EQ(wsum.front.points[0].f1, 10);
    EXPECT_EQ(wsum.front.points[0].f2, 0);
    EXPECT_EQ(wsum.solver_invocations, 1);
    EXPECT_EQ(wsum.duplicates_discarded, 0);

    const auto econ = moo::epsilon_sweep(inst, rs, 10, inst.fleet_size, table);
    ASSERT_EQ(econ.front.size(), 1u);
    EXPECT_EQ(econ.front.points[0].f1, 10);
    EXPECT_EQ(econ.front.points[0].f2, 0);
    EXPECT_EQ(econ.solver_invocations, 1);
    EXPECT_EQ(econ.bypassed, 9);
}

TEST(Sweeps, WeightedQ2ReturnsBothAnchors) {
    const auto inst = testutil::threshold2();
    const auto rs = routes_of(inst);
    const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
    const auto rep = moo::weighted_sum_sweep(inst, rs, 2, inst.fleet_size, table);
    EXPECT_EQ(rep.solver_invocations, 2);
    EXPECT_EQ(vectors_of(rep.front), (std::vector<std::pair<Cost, Cost>>{{6, 9}, {8, 0}}));
}

TEST(Sweeps, EpsilonRecoversThresholdFront) {
    const auto inst = testutil::threshold2();
    const auto rs = routes_of(inst);
    const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
    const auto rep = moo::epsilon_sweep(inst, rs, 2, inst.fleet_size, table);
    EXPECT_EQ(vectors_of(rep.front), (std::vector<std::pair<Cost, Cost>>{{6, 9}, {8, 0}}));
    EXPECT_EQ(rep.solver_invocations + rep.bypassed, 2);
}

TEST(Sweeps, PropertiesOnRandomInstances) {
    std::mt19937_64 rng(239);
    for (int trial = 0; trial < 15; ++trial) {
        covrp::gen::GenConfig cfg;
        cfg.n = static_cast<int>(rand_range(rng, 2, 8));
        cfg.seed = rng();
        cfg.profile = static_cast<covrp::gen::Profile>(trial % 3);
        const auto inst = covrp::gen::generate(cfg);
        const auto rs = routes_of(inst);
        const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
        const auto orc = vectors_of(oracle::oracle_front(inst));
        const int q = static_cast<int>(rand_range(rng, 1, 12));

        const auto eps_on = moo::epsilon_sweep(inst, rs, q, inst.fleet_size, table, true);
        const auto eps_off = moo::epsilon_sweep(inst, rs, q, inst.fleet_size, table, false);
        const auto wsum = moo::weighted_sum_sweep(inst, rs, q, inst.fleet_size, table);

        // Bypass never changes the front and never adds work.
        EXPECT_EQ(vectors_of(eps_on.front), vectors_of(eps_off.front));
        EXPECT_LE(eps_on.solver_invocations, eps_off.solver_invocations);
        EXPECT_EQ(eps_on.solver_invocations + eps_on.bypassed, q);
        EXPECT_EQ(eps_off.bypassed, 0);
        EXPECT_EQ(eps_off.solver_invocations, q);

        // Every point either sweep returns is a true front member.
        auto is_front_member = [&](const std::pair<Cost, Cost>& v) {
            for (const auto& o : orc)
                if (o == v) return true;
            return false;
        };
        for (const auto& v : vectors_of(eps_on.front)) EXPECT_TRUE(is_front_member(v));
        for (const auto& v : vectors_of(wsum.front)) EXPECT_TRUE(is_front_member(v));

        // The i = 0 grid point solves at f2_max, so the f1 anchor is always
        // recovered; later bounds stay >= f2*, so no swept f2 can undershoot.
        EXPECT_EQ(eps_on.front.points.front().f1, table.f1_anchor.f1);
        EXPECT_GE(eps_on.front.points.back().f2, table.f2_anchor.f2);

        // Bookkeeping: solves minus front size = discarded points.
        EXPECT_EQ(eps_on.duplicates_discarded,
                  eps_on.solver_invocations - static_cast<int>(eps_on.front.size()));
        EXPECT_EQ(wsum.duplicates_discarded,
                  wsum.solver_invocations - static_cast<int>(wsum.front.size()));
        EXPECT_FALSE(eps_on.aborted);
        EXPECT_FALSE(wsum.aborted);
    }
}

TEST(Sweeps, GridMonotonicity) {
    // Tighter epsilon can only raise the optimal f1: collected f1 values are
    // non-decreasing in grid order (bypass off, so every point is solved).
    std::mt19937_64 rng(241);
    for (int trial = 0; trial < 10; ++trial) {
        covrp::gen::GenConfig cfg;
        cfg.n = 7;
        cfg.seed = rng();
        const auto inst = covrp::gen::generate(cfg);
        const auto rs = routes_of(inst);
        const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
        if (table.r2 == 0) continue;
        const auto grid = moo::epsilon_grid(table.f1_anchor.f2, table.r2, 10);
        Cost prev_f1 = -1;
        for (const Cost b : grid) {
            const auto out = covrp::solver::solve(
                inst, rs, covrp::solver::SubproblemSpec::epsilon_bound(b, inst.fleet_size));
            ASSERT_EQ(out.status, covrp::solver::SolveStatus::optimal);
            EXPECT_GE(out.solution.f1, prev_f1);
            prev_f1 = out.solution.f1;
        }
    }
}

TEST(Sweeps, BudgetAbortIsReported) {
    covrp::gen::GenConfig cfg;
    cfg.n = 9;
    cfg.seed = 31;
    cfg.cap_pct = 100;
    cfg.time_pct = 1000;
    const auto inst = covrp::gen::generate(cfg);
    const auto rs = routes_of(inst);
    const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
    const auto rep = moo::epsilon_sweep(inst, rs, 10, inst.fleet_size, table, true, 1e-9);
    EXPECT_TRUE(rep.aborted);
    EXPECT_EQ(rep.solver_invocations, 0);
    EXPECT_TRUE(rep.front.empty());
}

TEST(Sweeps, RejectsBadGridSizes) {
    const auto inst = testutil::threshold2();
    const auto rs = routes_of(inst);
    const auto table = moo::payoff_table(inst, rs, inst.fleet_size);
    EXPECT_THROW(moo::weighted_sum_sweep(inst, rs, 0, inst.fleet_size, table),
                 covrp::ValidationError);
    EXPECT_THROW(moo::epsilon_sweep(inst, rs, 0, inst.fleet_size, table),
                 covrp::ValidationError);
}
