#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covrp/gen.hpp"
#include "covrp/io.hpp"
#include "covrp/model.hpp"
#include "covrp/moo.hpp"
#include "covrp/oracle.hpp"
#include "covrp/routes.hpp"
#include "covrp/solver.hpp"
#include "covrp/svg.hpp"

// Command line front end. Everything written to stdout is deterministic for
// a given invocation; wall-clock timing goes to stderr only.

namespace {

covrp::Instance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw covrp::ParseError("cannot open instance file: " + path);
    return covrp::io::load_instance(in);
}

covrp::io::FrontDocument load_front_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw covrp::ParseError("cannot open front file: " + path);
    return covrp::io::read_front(in);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw covrp::ParseError("cannot open output file for writing: " + path);
    out << bytes;
    out.flush();
    if (!out) throw covrp::ParseError("failed while writing: " + path);
}

std::string stem_of(const std::string& path) {
    std::filesystem::path p(path);
    if (p.extension() == ".json") p.replace_extension();
    return p.string();
}

std::string routes_compact(const std::vector<std::vector<int>>& routes) {
    std::string s = "[";
    for (std::size_t r = 0; r < routes.size(); ++r) {
        if (r) s += ',';
        s += '[';
        for (std::size_t i = 0; i < routes[r].size(); ++i) {
            if (i) s += ',';
            s += std::to_string(routes[r][i]);
        }
        s += ']';
    }
    return s + "]";
}

void print_instance_line(const covrp::Instance& inst) {
    std::cout << "instance " << inst.name << " (n=" << inst.n_customers
              << ", capacity=" << inst.capacity << ", time_limit=" << inst.time_limit
              << ", fleet=" << inst.fleet_size << ")\n";
}

void print_front(const covrp::io::FrontDocument& doc) {
    std::cout << "front: " << doc.points.size()
              << (doc.points.size() == 1 ? " point\n" : " points\n");
    for (const auto& p : doc.points)
        std::cout << "  f1=" << p.f1 << " f2=" << p.f2
                  << " routes=" << routes_compact(p.routes) << "\n";
}

void emit_front_files(const covrp::io::FrontDocument& doc, const std::string& prefix,
                      const std::string& format) {
    if (format == "both" || format == "json") {
        const std::string path = prefix + ".front.json";
        write_file(path, covrp::io::write_front_json(doc));
        std::cout << "wrote " << path << "\n";
    }
    if (format == "both" || format == "csv") {
        const std::string path = prefix + ".front.csv";
        write_file(path, covrp::io::write_front_csv(doc));
        std::cout << "wrote " << path << "\n";
    }
}

void report_timing(const std::string& what, double total, const std::vector<double>& per_point) {
    std::cerr << std::fixed << std::setprecision(3) << "timing: " << what << " took " << total
              << "s";
    if (!per_point.empty()) {
        std::cerr << "; per subproblem (s):";
        for (double t : per_point) std::cerr << ' ' << t;
    }
    std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bi-objective solver for capacitated routing with a duration limit"};
    app.require_subcommand(1);
    int rc = 0;

    struct {
        std::string instance, out;
        std::string method = "econ", format = "both";
        int points = 10;
        double budget = 1200.0;
        bool no_bypass = false;
    } s;
    auto* solve_cmd =
        app.add_subcommand("solve", "compute a Pareto front by a scalarization sweep");
    solve_cmd->add_option("instance", s.instance, "instance JSON file")->required();
    solve_cmd->add_option("--method", s.method, "scalarization: econ or wsum")
        ->check(CLI::IsMember({"econ", "wsum"}));
    solve_cmd->add_option("--points", s.points, "grid points to request (default 10)")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--budget", s.budget,
                          "per-subproblem wall budget in seconds, 0 disables (default 1200)");
    solve_cmd->add_flag("--no-bypass", s.no_bypass, "solve every epsilon grid point");
    solve_cmd->add_option("-o,--out", s.out, "output prefix (default: instance path sans .json)");
    solve_cmd->add_option("--format", s.format, "front files to write: both, json or csv")
        ->check(CLI::IsMember({"both", "json", "csv"}));
    solve_cmd->callback([&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = load_instance_file(s.instance);
        const auto route_set = covrp::routes::enumerate_feasible_routes(inst);
        std::optional<double> budget;
        if (s.budget > 0) budget = s.budget;
        const auto payoff = covrp::moo::payoff_table(inst, route_set, inst.fleet_size, budget);
        const auto rep =
            s.method == "wsum"
                ? covrp::moo::weighted_sum_sweep(inst, route_set, s.points, inst.fleet_size,
                                                 payoff, budget)
                : covrp::moo::epsilon_sweep(inst, route_set, s.points, inst.fleet_size, payoff,
                                            !s.no_bypass, budget);

        print_instance_line(inst);
        std::cout << "feasible routes: " << route_set.size() << "\n";
        std::cout << "method " << rep.method << ", grid " << rep.grid_points_requested << "\n";
        std::cout << "payoff: f1 [" << payoff.f1_anchor.f1 << ".." << payoff.f2_anchor.f1
                  << "] f2 [" << payoff.f2_anchor.f2 << ".." << payoff.f1_anchor.f2 << "]\n";
        auto doc = covrp::io::to_document(rep.front, inst.name, rep.method);
        doc.aborted = rep.aborted;
        print_front(doc);
        std::cout << "invocations: " << rep.solver_invocations << "  bypassed: " << rep.bypassed
                  << "  duplicates: " << rep.duplicates_discarded << "\n";
        if (rep.aborted)
            std::cout << "aborted: budget exhausted mid-sweep; the front is partial\n";
        emit_front_files(doc, s.out.empty() ? stem_of(s.instance) : s.out, s.format);
        const double total =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report_timing("solve", total, rep.point_seconds);
        if (rep.aborted) rc = 4;
    });

    struct {
        std::string instance, solution;
    } c;
    auto* check_cmd =
        app.add_subcommand("check", "verify a front file against the constraint system");
    check_cmd->add_option("instance", c.instance, "instance JSON file")->required();
    check_cmd->add_option("solution", c.solution, "front JSON file to verify")->required();
    check_cmd->callback([&] {
        const auto inst = load_instance_file(c.instance);
        const auto doc = load_front_file(c.solution);
        print_instance_line(inst);
        std::cout << "checking " << doc.points.size() << " points from " << c.solution << "\n";
        int bad_points = 0, violations = 0;
        for (std::size_t i = 0; i < doc.points.size(); ++i) {
            const auto& p = doc.points[i];
            const auto vios = covrp::solver::check_solution(inst, p.routes, p.f1, p.f2);
            if (vios.empty()) {
                std::cout << "point " << i << ": ok\n";
                continue;
            }
            ++bad_points;
            violations += static_cast<int>(vios.size());
            for (const auto& v : vios) std::cout << "point " << i << ": " << v.message << "\n";
        }
        if (bad_points == 0) {
            std::cout << "summary: all " << doc.points.size()
                      << " points satisfy the constraint system\n";
        } else {
            std::cout << "summary: " << violations << " violations across " << bad_points
                      << " of " << doc.points.size() << " points\n";
            rc = 2;
        }
    });

    struct {
        std::string instance, out;
        std::string format = "both";
        int guard = 9;
    } o;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "exhaustive reference front by full enumeration");
    oracle_cmd->add_option("instance", o.instance, "instance JSON file")->required();
    oracle_cmd->add_option("--guard", o.guard, "refuse instances above this size (default 9)")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("-o,--out", o.out, "output prefix (default: instance path sans .json)");
    oracle_cmd->add_option("--format", o.format, "front files to write: both, json or csv")
        ->check(CLI::IsMember({"both", "json", "csv"}));
    oracle_cmd->callback([&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto inst = load_instance_file(o.instance);
        const auto result = covrp::oracle::oracle_front_detail(inst, o.guard);
        print_instance_line(inst);
        std::cout << "method oracle (exhaustive partition enumeration)\n";
        std::cout << "partitions: " << result.partitions_enumerated << " enumerated, "
                  << result.partitions_feasible << " feasible\n";
        const auto doc = covrp::io::to_document(result.front, inst.name, "oracle");
        print_front(doc);
        emit_front_files(doc, o.out.empty() ? stem_of(o.instance) + ".oracle" : o.out, o.format);
        const double total =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report_timing("oracle", total, {});
    });

    struct {
        std::string front, overlay, out;
    } p;
    auto* plot_cmd = app.add_subcommand("plot", "render a front file as an SVG scatter");
    plot_cmd->add_option("front", p.front, "front JSON file")->required();
    plot_cmd->add_option("--overlay", p.overlay, "second front JSON file to draw for comparison");
    plot_cmd->add_option("-o,--out", p.out, "output SVG path (default: front path with .svg)");
    plot_cmd->callback([&] {
        const auto doc = load_front_file(p.front);
        if (doc.points.empty()) {
            std::cerr << "warning: front has no points; nothing to plot\n";
            return;
        }
        covrp::svg::Series primary;
        primary.label = doc.method;
        for (const auto& pt : doc.points) primary.points.emplace_back(pt.f1, pt.f2);
        covrp::svg::Series overlay;
        if (!p.overlay.empty()) {
            const auto odoc = load_front_file(p.overlay);
            overlay.label = odoc.method;
            for (const auto& pt : odoc.points) overlay.points.emplace_back(pt.f1, pt.f2);
        }
        const std::string svg = covrp::svg::render(
            doc.instance, primary, p.overlay.empty() ? nullptr : &overlay);
        const std::string path = p.out.empty() ? stem_of(p.front) + ".svg" : p.out;
        write_file(path, svg);
        std::cout << "wrote " << path << "\n";
    });

    struct {
        int n = 8;
        std::uint64_t seed = 1;
        std::string profile = "clustered", out;
        int cap_pct = 45, time_pct = 300, fleet = 0;
    } g;
    auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
    gen_cmd->add_option("--n", g.n, "number of customers (default 8)")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", g.seed, "RNG seed (default 1)");
    gen_cmd->add_option("--profile", g.profile, "layout: clustered, uniform or ring")
        ->check(CLI::IsMember({"clustered", "uniform", "ring"}));
    gen_cmd->add_option("--cap-pct", g.cap_pct,
                        "vehicle capacity as % of total demand (default 45)");
    gen_cmd->add_option("--time-pct", g.time_pct,
                        "time limit as % of the longest singleton route, >= 100 (default 300)");
    gen_cmd->add_option("--fleet", g.fleet, "fleet size (default: derived from demand)");
    gen_cmd->add_option("-o,--out", g.out, "output path (default: <name>.json)");
    gen_cmd->callback([&] {
        covrp::gen::GenConfig cfg;
        cfg.n = g.n;
        cfg.seed = g.seed;
        cfg.profile = covrp::gen::parse_profile(g.profile);
        cfg.cap_pct = g.cap_pct;
        cfg.time_pct = g.time_pct;
        cfg.fleet = g.fleet;
        const auto inst = covrp::gen::generate(cfg);
        const std::string path = g.out.empty() ? inst.name + ".json" : g.out;
        write_file(path, covrp::io::write_instance(inst));
        std::cout << "wrote " << path << " (n=" << inst.n_customers << ", capacity="
                  << inst.capacity << ", time_limit=" << inst.time_limit
                  << ", fleet=" << inst.fleet_size << ")\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const covrp::solver::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const covrp::solver::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const covrp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const covrp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
