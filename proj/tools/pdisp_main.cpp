#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdisp/io.hpp"
#include "pdisp/solver.hpp"

namespace {

using namespace pdisp;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<Point2> parse_ring_arg(const std::string& arg) {
    // "x,y;x,y;..." or with spaces
    std::vector<Point2> ring;
    std::string token;
    std::istringstream ss(arg);
    while (std::getline(ss, token, ';')) {
        std::istringstream pt(token);
        std::string xs, ys;
        if (!std::getline(pt, xs, ',') || !std::getline(pt, ys))
            throw std::runtime_error("bad ring token: " + token);
        ring.push_back({std::stod(xs), std::stod(ys)});
    }
    return ring;
}

int run(int argc, char** argv) {
    CLI::App app{"Continuous p-dispersion solver (circle packing and point "
                 "arrangement in polygons with holes)"};
    app.require_subcommand(1);

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "Run the solver on an instance");
    std::string instance_path, out_path = "solution.json", variant_str = "circle",
                algo_str = "tsgo";
    int p = 1, restarts = 0;
    double time_limit = 60.0, rho = -1.0;
    std::uint64_t seed = 1;
    double alpha = -1.0, gamma = -1.0, lambda = -1.0;
    bool override_params = false;
    int beta_max = -1, theta_max = -1, q_size = -1;
    solve_cmd->add_option("instance", instance_path, "instance JSON")->required();
    solve_cmd->add_option("--variant", variant_str, "circle|point");
    solve_cmd->add_option("--p", p, "number of points")->required();
    solve_cmd->add_option("--time", time_limit, "time limit in seconds");
    solve_cmd->add_option("--seed", seed, "random seed");
    solve_cmd->add_option("--algo", algo_str, "tsgo|tsgo-nombh|bh|mbh");
    solve_cmd->add_option("--out", out_path, "output solution JSON");
    solve_cmd->add_option("--rho", rho, "initial packing density");
    solve_cmd->add_option("--restarts", restarts, "restart budget (0 = time only)");
    solve_cmd->add_option("--beta-max", beta_max, "tabu search depth");
    solve_cmd->add_option("--theta-max", theta_max, "MBH search depth");
    solve_cmd->add_option("--q", q_size, "candidate set size");
    solve_cmd->add_flag("--override-params", override_params,
                        "allow custom alpha/gamma/lambda");
    solve_cmd->add_option("--alpha", alpha, "penalty factor (needs --override-params)");
    solve_cmd->add_option("--gamma", gamma, "penalty factor (needs --override-params)");
    solve_cmd->add_option("--lambda", lambda, "clearance coefficient (needs --override-params)");

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "Verify a solution against an instance");
    std::string check_instance, check_solution_path;
    double tol = 1e-9;
    check_cmd->add_option("instance", check_instance)->required();
    check_cmd->add_option("solution", check_solution_path)->required();
    check_cmd->add_option("--tol", tol, "slack tolerance");

    // ---- render ----
    auto* render_cmd = app.add_subcommand("render", "Draw a solution as SVG");
    std::string render_instance, render_solution, render_out = "out.svg",
                mode_str = "circles";
    render_cmd->add_option("instance", render_instance)->required();
    render_cmd->add_option("solution", render_solution)->required();
    render_cmd->add_option("--mode", mode_str, "circles|points");
    render_cmd->add_option("-o,--out", render_out, "output SVG path");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    std::string suite_path, bench_out = "results.csv", table_out;
    int repeats = 10;
    bench_cmd->add_option("suite", suite_path, "suite JSON")->required();
    bench_cmd->add_option("--repeats", repeats, "seeds per (instance, algo)");
    bench_cmd->add_option("--out", bench_out, "per-run CSV output");
    bench_cmd->add_option("--table", table_out, "aggregated table output");

    // ---- rtd ----
    auto* rtd_cmd = app.add_subcommand("rtd", "Empirical run-time distribution");
    std::vector<std::string> log_paths;
    double target_r = 0.0, rtd_tol = 1e-9;
    std::string rtd_out = "rtd.csv";
    rtd_cmd->add_option("logs", log_paths, "solution JSONs with history")->required();
    rtd_cmd->add_option("--target", target_r, "target objective (R for circle, D for point)")
        ->required();
    rtd_cmd->add_option("--tol", rtd_tol, "target tolerance");
    rtd_cmd->add_option("--out", rtd_out, "output CSV");

    // ---- gen ----
    auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
    std::string kind, gen_out = "instance.json", gen_name;
    int edges = 6;
    double side = 1.0;
    std::vector<std::string> hole_args;
    std::string container_arg;
    gen_cmd->add_option("kind", kind, "regular-polygon|square-with-holes|lshape|custom")
        ->required();
    gen_cmd->add_option("--edges", edges, "edge count (regular-polygon)");
    gen_cmd->add_option("--side", side, "side length");
    gen_cmd->add_option("--hole", hole_args,
                        "square-with-holes: cx,cy,side; custom: x,y;x,y;...");
    gen_cmd->add_option("--container", container_arg, "custom: x,y;x,y;...");
    gen_cmd->add_option("--name", gen_name, "instance name");
    gen_cmd->add_option("-o,--out", gen_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    if (solve_cmd->parsed()) {
        const Instance inst = load_instance(instance_path);
        const Variant variant = variant_from_name(variant_str);
        RunConfig cfg = RunConfig::defaults_for(variant);
        cfg.p = p;
        cfg.time_limit = time_limit;
        cfg.seed = seed;
        cfg.algo = algo_from_name(algo_str);
        cfg.max_restarts = restarts;
        if (rho > 0) cfg.rho = rho;
        if (beta_max >= 0) cfg.tabu.beta_max = beta_max;
        if (theta_max >= 0) cfg.mbh.theta_max = theta_max;
        if (q_size > 0) cfg.tabu.q = q_size;
        if (alpha > 0 || gamma > 0 || lambda > 0) {
            if (!override_params)
                throw CLI::ValidationError(
                    "--alpha/--gamma/--lambda require --override-params");
            cfg.params = ModelParams::custom(
                variant, alpha > 0 ? alpha : cfg.params.alpha,
                gamma > 0 ? gamma : cfg.params.gamma,
                lambda > 0 ? lambda : cfg.params.lambda);
        }
        const RunResult result = solve(inst, cfg);
        const SolutionRecord sol = make_solution(inst, cfg, result);
        save_solution(sol, out_path);
        std::cout.precision(10);
        std::cout << std::fixed << "instance " << inst.name() << " p=" << p
                  << " algo=" << algo_str << "\nR = " << sol.radius
                  << "\nD = " << sol.min_dist << "\ntime to best = " << sol.elapsed
                  << " s over " << result.restarts << " restarts\n";
        return 0;
    }

    if (check_cmd->parsed()) {
        const Instance inst = load_instance(check_instance);
        const SolutionRecord sol = load_solution(check_solution_path);
        const CheckOutcome outcome = check_solution(inst, sol, tol);
        std::cout << outcome.summary;
        return outcome.pass ? 0 : 1;
    }

    if (render_cmd->parsed()) {
        const Instance inst = load_instance(render_instance);
        const SolutionRecord sol = load_solution(render_solution);
        const RenderMode mode =
            mode_str == "points" ? RenderMode::Points : RenderMode::Circles;
        write_text(render_out, render_svg(inst, sol, mode));
        std::cout << "wrote " << render_out << "\n";
        return 0;
    }

    if (bench_cmd->parsed()) {
        const std::vector<BenchTask> tasks = load_suite(suite_path);
        const BenchOutput out = bench(tasks, repeats);
        write_text(bench_out, bench_csv(out));
        const std::string table = bench_table(out);
        if (!table_out.empty()) write_text(table_out, table);
        std::cout << table;
        return 0;
    }

    if (rtd_cmd->parsed()) {
        std::vector<std::vector<Improvement>> histories;
        double target_dist = target_r;
        for (const std::string& path : log_paths) {
            const SolutionRecord sol = load_solution(path);
            histories.push_back(sol.history);
            if (variant_from_name(sol.variant) == Variant::WithBoundary)
                target_dist = target_r / 0.5;  // R -> D
        }
        const auto curve = rtd(histories, target_dist, rtd_tol);
        write_text(rtd_out, rtd_csv(curve));
        std::cout << "wrote " << rtd_out << " (" << curve.size() << " of "
                  << histories.size() << " runs reach the target)\n";
        return 0;
    }

    if (gen_cmd->parsed()) {
        Instance inst = [&]() -> Instance {
            if (kind == "regular-polygon") return gen_regular_polygon(edges, side, gen_name);
            if (kind == "square-with-holes") {
                std::vector<SquareHoleSpec> holes;
                for (const std::string& h : hole_args) {
                    std::istringstream ss(h);
                    std::string a, b, c;
                    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
                        !std::getline(ss, c))
                        throw std::runtime_error("bad --hole spec: " + h);
                    holes.push_back({std::stod(a), std::stod(b), std::stod(c)});
                }
                return gen_square_with_holes(side, holes, gen_name);
            }
            if (kind == "lshape") return gen_lshape(gen_name);
            if (kind == "custom") {
                if (container_arg.empty())
                    throw std::runtime_error("custom needs --container");
                std::vector<std::vector<Point2>> holes;
                for (const std::string& h : hole_args) holes.push_back(parse_ring_arg(h));
                return gen_custom(gen_name.empty() ? "custom" : gen_name,
                                  parse_ring_arg(container_arg), std::move(holes));
            }
            throw std::runtime_error("unknown kind: " + kind);
        }();
        save_instance(inst, gen_out);
        std::cout << "wrote " << gen_out << " (area " << inst.area() << ")\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
