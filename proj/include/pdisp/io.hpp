#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pdisp/checker.hpp"
#include "pdisp/geometry.hpp"
#include "pdisp/solver.hpp"

namespace pdisp {

std::string variant_name(Variant v);            // "circle" | "point"
Variant variant_from_name(const std::string&);

// ---- instance and solution files -------------------------------------------

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
Instance parse_instance_json(const std::string& text);
std::string instance_json(const Instance& inst);

struct SolutionRecord {
    std::string instance_name;
    std::string variant;  // "circle" | "point"
    int p = 0;
    double min_dist = 0.0;
    double radius = 0.0;
    std::vector<Point2> points;
    std::uint64_t seed = 0;
    double elapsed = 0.0;
    std::string algorithm;
    std::vector<Improvement> history;  // optional improvement log
};

SolutionRecord make_solution(const Instance& inst, const RunConfig& cfg,
                             const RunResult& result);
SolutionRecord load_solution(const std::string& path);
void save_solution(const SolutionRecord& sol, const std::string& path);
SolutionRecord parse_solution_json(const std::string& text);
std::string solution_json(const SolutionRecord& sol);

// ---- feasibility check ------------------------------------------------------

struct CheckOutcome {
    CheckReport report;
    bool pass = false;
    std::string summary;  // one line per constraint family
};
CheckOutcome check_solution(const Instance& inst, const SolutionRecord& sol,
                            double tol = 1e-9);

// ---- rendering --------------------------------------------------------------

enum class RenderMode { Circles, Points };

// Circles mode draws radius-R disks colored by contact count (center distance
// within min_dist + 1e-9); Points mode joins minimum-distance pairs with
// dotted lines.
std::string render_svg(const Instance& inst, const SolutionRecord& sol,
                       RenderMode mode);

// ---- benchmark harness ------------------------------------------------------

struct BenchTask {
    std::string instance_path;
    RunConfig config;  // seed is replaced by the repeat index
};

struct RunRecord {
    std::string instance_name;
    std::string algorithm;
    std::uint64_t seed = 0;
    double radius = 0.0;
    double min_dist = 0.0;
    double elapsed_to_best = 0.0;
    std::vector<Improvement> history;
};

struct StatsRow {
    std::string instance_name;
    std::string algorithm;
    double r_best = 0.0;
    double r_avg = 0.0;
    double r_worst = 0.0;
    double success_rate = 0.0;  // fraction of runs within 1e-9 of r_best
    double sigma = 0.0;         // population standard deviation
    double mean_time_to_best = 0.0;
};

struct BenchOutput {
    std::vector<RunRecord> runs;
    std::vector<StatsRow> rows;
};

// repeats seeded runs per task (seeds 1..repeats); runs execute in parallel,
// aggregation is deterministic.
BenchOutput bench(const std::vector<BenchTask>& tasks, int repeats);

StatsRow aggregate_stats(const std::string& instance_name, const std::string& algo,
                         const std::vector<RunRecord>& runs);
std::string bench_csv(const BenchOutput& out);
// Per-instance grouped table with the best R_best/R_avg per instance in bold
// and a #Best tally per algorithm; ties bold every holder.
std::string bench_table(const BenchOutput& out);

std::vector<BenchTask> load_suite(const std::string& path);

// ---- statistics -------------------------------------------------------------

struct WilcoxonResult {
    bool all_pairs_equal = false;
    double p_value = 1.0;
};

// Two-sided Wilcoxon signed-rank test: zero differences dropped, ties
// mid-ranked, exact distribution for n <= 25 and a continuity-corrected
// normal approximation beyond.
WilcoxonResult wilcoxon(const std::vector<double>& a, const std::vector<double>& b);

// Empirical run-time distribution: step function of the fraction of runs
// whose history reaches the target distance by time t. Runs that never reach
// it contribute nothing (rt = infinity).
std::vector<std::pair<double, double>> rtd(
    const std::vector<std::vector<Improvement>>& histories, double target_min_dist,
    double tol = 1e-9);
std::string rtd_csv(const std::vector<std::pair<double, double>>& curve);

// ---- instance generators ----------------------------------------------------

// Unit-side-style regular polygon: n edges of the given side length, centered
// at the origin with a vertex on the positive x axis.
Instance gen_regular_polygon(int edges, double side, const std::string& name = "");
struct SquareHoleSpec {
    double cx = 0.0, cy = 0.0, side = 0.0;
};
Instance gen_square_with_holes(double side, const std::vector<SquareHoleSpec>& holes,
                               const std::string& name = "");
Instance gen_lshape(const std::string& name = "");
Instance gen_custom(const std::string& name, std::vector<Point2> container,
                    std::vector<std::vector<Point2>> holes);

}  // namespace pdisp
