#include "pdisp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pdisp {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<Point2> ring_from_json(const json& j) {
    std::vector<Point2> ring;
    for (const auto& v : j) ring.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return ring;
}

json ring_to_json(const std::vector<Point2>& ring) {
    json j = json::array();
    for (const Point2& v : ring) j.push_back({v.x, v.y});
    return j;
}

}  // namespace

std::string variant_name(Variant v) {
    return v == Variant::WithBoundary ? "circle" : "point";
}

Variant variant_from_name(const std::string& name) {
    if (name == "circle") return Variant::WithBoundary;
    if (name == "point") return Variant::WithoutBoundary;
    throw std::invalid_argument("unknown variant: " + name);
}

Instance parse_instance_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<Polygon> holes;
    if (j.contains("holes"))
        for (const auto& h : j.at("holes")) holes.emplace_back(ring_from_json(h));
    return Instance(j.at("name").get<std::string>(), Polygon(ring_from_json(j.at("container"))),
                    std::move(holes));
}

std::string instance_json(const Instance& inst) {
    json j;
    j["name"] = inst.name();
    j["container"] = ring_to_json(inst.container().vertices());
    j["holes"] = json::array();
    for (const Polygon& h : inst.holes()) j["holes"].push_back(ring_to_json(h.vertices()));
    return j.dump(2);
}

Instance load_instance(const std::string& path) {
    return parse_instance_json(read_file(path));
}

void save_instance(const Instance& inst, const std::string& path) {
    write_file(path, instance_json(inst));
}

SolutionRecord make_solution(const Instance& inst, const RunConfig& cfg,
                             const RunResult& result) {
    SolutionRecord sol;
    sol.instance_name = inst.name();
    sol.variant = variant_name(cfg.params.variant);
    sol.p = cfg.p;
    sol.min_dist = result.best_dist;
    sol.radius = result.best_radius;
    sol.points = result.best_layout.points;
    sol.seed = result.seed;
    sol.elapsed = result.elapsed_to_best;
    sol.algorithm = algo_name(cfg.algo);
    sol.history = result.history;
    return sol;
}

std::string solution_json(const SolutionRecord& sol) {
    json j;
    j["instance_name"] = sol.instance_name;
    j["variant"] = sol.variant;
    j["p"] = sol.p;
    j["D"] = sol.min_dist;
    j["R"] = sol.radius;
    json pts = json::array();
    for (const Point2& pt : sol.points) pts.push_back({pt.x, pt.y});
    j["points"] = pts;
    j["seed"] = sol.seed;
    j["elapsed"] = sol.elapsed;
    j["algorithm"] = sol.algorithm;
    json hist = json::array();
    for (const Improvement& im : sol.history) hist.push_back({im.elapsed, im.min_dist});
    j["history"] = hist;
    return j.dump(2);
}

SolutionRecord parse_solution_json(const std::string& text) {
    const json j = json::parse(text);
    SolutionRecord sol;
    sol.instance_name = j.at("instance_name").get<std::string>();
    sol.variant = j.at("variant").get<std::string>();
    sol.p = j.at("p").get<int>();
    sol.min_dist = j.at("D").get<double>();
    sol.radius = j.at("R").get<double>();
    for (const auto& v : j.at("points"))
        sol.points.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    sol.seed = j.at("seed").get<std::uint64_t>();
    sol.elapsed = j.at("elapsed").get<double>();
    sol.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("history"))
        for (const auto& h : j.at("history"))
            sol.history.push_back({h.at(0).get<double>(), h.at(1).get<double>()});
    return sol;
}

SolutionRecord load_solution(const std::string& path) {
    return parse_solution_json(read_file(path));
}

void save_solution(const SolutionRecord& sol, const std::string& path) {
    write_file(path, solution_json(sol));
}

CheckOutcome check_solution(const Instance& inst, const SolutionRecord& sol,
                            double tol) {
    CheckOutcome out;
    const double lambda = variant_from_name(sol.variant) == Variant::WithBoundary
                              ? 0.5
                              : 1e-3;
    out.report = check_layout(inst, sol.points, sol.min_dist, lambda);
    out.pass = out.report.pass(tol);
    std::ostringstream ss;
    ss.precision(3);
    ss << "pairwise slack    " << out.report.pairwise_slack << " (points "
       << out.report.worst_pair_i << "," << out.report.worst_pair_j << ")\n"
       << "boundary slack    " << out.report.boundary_slack << " (point "
       << out.report.worst_boundary_point << ")\n"
       << "containment slack " << out.report.containment_slack << " (point "
       << out.report.worst_containment_point << ")\n"
       << (out.pass ? "PASS" : "FAIL") << " at tol " << tol << "\n";
    out.summary = ss.str();
    return out;
}

// ---- rendering --------------------------------------------------------------

namespace {

const std::array<const char*, 7> kContactPalette = {
    "#e41a1c", "#ff7f00", "#ffd92f", "#4daf4a", "#80b1d3", "#377eb8", "#984ea3"};

std::string path_for_region(const Instance& inst) {
    std::ostringstream d;
    auto emit_ring = [&](const Polygon& poly) {
        const auto& vs = poly.vertices();
        d << "M " << vs[0].x << " " << vs[0].y << " ";
        for (std::size_t i = 1; i < vs.size(); ++i) d << "L " << vs[i].x << " " << vs[i].y << " ";
        d << "Z ";
    };
    emit_ring(inst.container());
    for (const Polygon& h : inst.holes()) emit_ring(h);
    return d.str();
}

}  // namespace

std::string render_svg(const Instance& inst, const SolutionRecord& sol,
                       RenderMode mode) {
    const BoundingBox& box = inst.bbox();
    const double margin = std::max(sol.radius, 0.05 * box.diagonal());
    const double x0 = box.min_x - margin, y0 = box.min_y - margin;
    const double w = box.width() + 2 * margin, h = box.height() + 2 * margin;
    const double stroke = 0.002 * std::max(w, h);

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\""
        << static_cast<int>(800.0 * h / w) << "\" viewBox=\"" << x0 << " " << y0
        << " " << w << " " << h << "\">\n"
        // Flip to the usual y-up orientation.
        << "<g transform=\"translate(0," << (y0 + (y0 + h)) << ") scale(1,-1)\">\n"
        << "<path d=\"" << path_for_region(inst)
        << "\" fill=\"#f0f0f0\" fill-rule=\"evenodd\" stroke=\"#222222\" stroke-width=\""
        << stroke << "\"/>\n";

    const std::size_t p = sol.points.size();
    const double contact_tol = 1e-9;

    if (mode == RenderMode::Circles) {
        std::vector<int> contacts(p, 0);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                if (dist(sol.points[i], sol.points[j]) <= sol.min_dist + contact_tol) {
                    ++contacts[i];
                    ++contacts[j];
                }
        for (std::size_t i = 0; i < p; ++i) {
            const char* color =
                kContactPalette[std::min<std::size_t>(contacts[i], kContactPalette.size() - 1)];
            svg << "<circle cx=\"" << sol.points[i].x << "\" cy=\"" << sol.points[i].y
                << "\" r=\"" << sol.radius << "\" fill=\"" << color
                << "\" fill-opacity=\"0.85\" stroke=\"#222222\" stroke-width=\""
                << stroke << "\"/>\n";
        }
    } else {
        const double link_tol = sol.min_dist * (1.0 + contact_tol);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j)
                if (dist(sol.points[i], sol.points[j]) <= link_tol)
                    svg << "<line x1=\"" << sol.points[i].x << "\" y1=\""
                        << sol.points[i].y << "\" x2=\"" << sol.points[j].x
                        << "\" y2=\"" << sol.points[j].y
                        << "\" stroke=\"#377eb8\" stroke-width=\"" << stroke
                        << "\" stroke-dasharray=\"" << 4 * stroke << " " << 3 * stroke
                        << "\"/>\n";
        for (const Point2& pt : sol.points)
            svg << "<circle cx=\"" << pt.x << "\" cy=\"" << pt.y << "\" r=\""
                << 3 * stroke << "\" fill=\"#222222\"/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

// ---- benchmark harness ------------------------------------------------------

StatsRow aggregate_stats(const std::string& instance_name, const std::string& algo,
                         const std::vector<RunRecord>& runs) {
    StatsRow row;
    row.instance_name = instance_name;
    row.algorithm = algo;
    if (runs.empty()) return row;
    row.r_best = runs[0].radius;
    row.r_worst = runs[0].radius;
    double sum = 0.0, time_sum = 0.0;
    for (const RunRecord& r : runs) {
        row.r_best = std::max(row.r_best, r.radius);
        row.r_worst = std::min(row.r_worst, r.radius);
        sum += r.radius;
        time_sum += r.elapsed_to_best;
    }
    const double n = static_cast<double>(runs.size());
    row.r_avg = sum / n;
    double var = 0.0;
    int hits = 0;
    for (const RunRecord& r : runs) {
        var += (r.radius - row.r_avg) * (r.radius - row.r_avg);
        if (r.radius >= row.r_best - 1e-9) ++hits;
    }
    row.sigma = std::sqrt(var / n);
    row.success_rate = hits / n;
    row.mean_time_to_best = time_sum / n;
    return row;
}

BenchOutput bench(const std::vector<BenchTask>& tasks, int repeats) {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");

    // Load each instance once; instances are immutable and safe to share.
    std::map<std::string, Instance> instances;
    for (const BenchTask& t : tasks)
        if (!instances.count(t.instance_path))
            instances.emplace(t.instance_path, load_instance(t.instance_path));

    const std::size_t total = tasks.size() * static_cast<std::size_t>(repeats);
    std::vector<RunRecord> runs(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
        const BenchTask& task = tasks[k / repeats];
        const int rep = static_cast<int>(k % repeats);
        const Instance& inst = instances.at(task.instance_path);
        RunConfig cfg = task.config;
        cfg.seed = static_cast<std::uint64_t>(rep + 1);
        const RunResult rr = solve(inst, cfg);
        runs[k] = {inst.name(),  algo_name(cfg.algo),     cfg.seed,
                   rr.best_radius, rr.best_dist, rr.elapsed_to_best,
                   rr.history};
    }

    BenchOutput out;
    out.runs = std::move(runs);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        std::vector<RunRecord> group(out.runs.begin() + t * repeats,
                                     out.runs.begin() + (t + 1) * repeats);
        out.rows.push_back(
            aggregate_stats(group[0].instance_name, group[0].algorithm, group));
    }
    return out;
}

std::string bench_csv(const BenchOutput& out) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "instance,algo,seed,R,D,elapsed_to_best\n";
    for (const RunRecord& r : out.runs)
        csv << r.instance_name << "," << r.algorithm << "," << r.seed << "," << r.radius
            << "," << r.min_dist << "," << r.elapsed_to_best << "\n";
    return csv.str();
}

std::string bench_table(const BenchOutput& out) {
    // Group rows by instance, bold the per-instance best R_best / R_avg.
    std::map<std::string, std::vector<const StatsRow*>> by_instance;
    std::vector<std::string> instance_order;
    for (const StatsRow& row : out.rows) {
        if (!by_instance.count(row.instance_name))
            instance_order.push_back(row.instance_name);
        by_instance[row.instance_name].push_back(&row);
    }

    std::map<std::string, int> best_counts;
    std::ostringstream tbl;
    tbl << "| instance | algo | R_best | R_avg | R_worst | SR | sigma | time(s) |\n"
        << "|---|---|---|---|---|---|---|---|\n";
    auto fmt = [](double v, bool bold) {
        std::ostringstream ss;
        ss.precision(10);
        ss << std::fixed << v;
        return bold ? "**" + ss.str() + "**" : ss.str();
    };
    for (const std::string& name : instance_order) {
        const auto& rows = by_instance[name];
        double best_rbest = rows[0]->r_best, best_ravg = rows[0]->r_avg;
        for (const StatsRow* r : rows) {
            best_rbest = std::max(best_rbest, r->r_best);
            best_ravg = std::max(best_ravg, r->r_avg);
        }
        for (const StatsRow* r : rows) {
            const bool is_best = r->r_best >= best_rbest - 1e-9;
            if (is_best) best_counts[r->algorithm] += 1;
            tbl << "| " << name << " | " << r->algorithm << " | "
                << fmt(r->r_best, is_best) << " | "
                << fmt(r->r_avg, r->r_avg >= best_ravg - 1e-9) << " | "
                << fmt(r->r_worst, false) << " | " << r->success_rate << " | "
                << r->sigma << " | " << r->mean_time_to_best << " |\n";
        }
    }
    tbl << "\n#Best (R_best):";
    for (const auto& [algo, count] : best_counts) tbl << " " << algo << "=" << count;
    tbl << "\n";
    return tbl.str();
}

std::vector<BenchTask> load_suite(const std::string& path) {
    const json j = json::parse(read_file(path));
    std::vector<BenchTask> tasks;
    for (const auto& e : j.at("runs")) {
        BenchTask t;
        t.instance_path = e.at("instance").get<std::string>();
        const Variant variant = variant_from_name(e.value("variant", "circle"));
        t.config = RunConfig::defaults_for(variant);
        t.config.p = e.at("p").get<int>();
        t.config.time_limit = e.at("time").get<double>();
        t.config.algo = algo_from_name(e.value("algo", "tsgo"));
        if (e.contains("rho")) t.config.rho = e.at("rho").get<double>();
        if (e.contains("restarts")) t.config.max_restarts = e.at("restarts").get<int>();
        tasks.push_back(std::move(t));
    }
    return tasks;
}

// ---- statistics -------------------------------------------------------------

WilcoxonResult wilcoxon(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 5)
        throw std::invalid_argument("wilcoxon needs paired samples of equal length >= 5");

    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
    if (diffs.empty()) return {true, 1.0};

    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(diffs[x]) < std::abs(diffs[y]);
    });

    // Mid-ranks; doubled so tied ranks stay integral.
    std::vector<int> rank2(n, 0);
    std::vector<std::size_t> tie_sizes;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n &&
               std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]]))
            ++j;
        const int doubled_mid = static_cast<int>(i + 1 + j + 1);  // 2 * average rank
        for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = doubled_mid;
        tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }

    long long w2_pos = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (diffs[k] > 0.0) w2_pos += rank2[k];

    if (n <= 25) {
        // Exact null distribution by DP over doubled-rank subset sums.
        const long long max_sum = 2LL * static_cast<long long>(n) * (n + 1) / 2;
        std::vector<double> count(max_sum + 1, 0.0);
        count[0] = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            const int r = rank2[k];
            for (long long s = max_sum; s >= r; --s) count[s] += count[s - r];
        }
        const double total = std::pow(2.0, static_cast<double>(n));
        double p_le = 0.0, p_ge = 0.0;
        for (long long s = 0; s <= max_sum; ++s) {
            if (s <= w2_pos) p_le += count[s];
            if (s >= w2_pos) p_ge += count[s];
        }
        return {false, std::min(1.0, 2.0 * std::min(p_le, p_ge) / total)};
    }

    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
    for (std::size_t t : tie_sizes) {
        const double td = static_cast<double>(t);
        var -= td * (td - 1.0) * (td + 1.0) / 48.0;
    }
    const double w = 0.5 * static_cast<double>(w2_pos);
    double z = w - mean;
    z += (z > 0) ? -0.5 : (z < 0 ? 0.5 : 0.0);  // continuity correction
    z /= std::sqrt(var);
    const double p = std::erfc(std::abs(z) / std::numbers::sqrt2);
    return {false, std::min(1.0, p)};
}

std::vector<std::pair<double, double>> rtd(
    const std::vector<std::vector<Improvement>>& histories, double target_min_dist,
    double tol) {
    const std::size_t m = histories.size();
    std::vector<double> hit_times;
    for (const auto& hist : histories)
        for (const Improvement& im : hist)
            if (im.min_dist >= target_min_dist - tol) {
                hit_times.push_back(im.elapsed);
                break;
            }
    std::sort(hit_times.begin(), hit_times.end());
    std::vector<std::pair<double, double>> curve;
    for (std::size_t k = 0; k < hit_times.size(); ++k)
        curve.emplace_back(hit_times[k], static_cast<double>(k + 1) / m);
    return curve;
}

std::string rtd_csv(const std::vector<std::pair<double, double>>& curve) {
    std::ostringstream csv;
    csv.precision(17);
    csv << "t,P\n";
    for (const auto& [t, prob] : curve) csv << t << "," << prob << "\n";
    return csv.str();
}

// ---- instance generators ----------------------------------------------------

Instance gen_regular_polygon(int edges, double side, const std::string& name) {
    if (edges < 3) throw std::invalid_argument("need at least 3 edges");
    if (side <= 0.0) throw std::invalid_argument("side must be positive");
    const double circumradius = side / (2.0 * std::sin(std::numbers::pi / edges));
    std::vector<Point2> ring;
    for (int k = 0; k < edges; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / edges;
        ring.push_back({circumradius * std::cos(angle), circumradius * std::sin(angle)});
    }
    const std::string nm = name.empty() ? "E" + std::to_string(edges) + "H0" : name;
    return Instance(nm, Polygon(std::move(ring)), {});
}

Instance gen_square_with_holes(double side, const std::vector<SquareHoleSpec>& holes,
                               const std::string& name) {
    if (side <= 0.0) throw std::invalid_argument("side must be positive");
    std::vector<Point2> ring{{0, 0}, {side, 0}, {side, side}, {0, side}};
    std::vector<Polygon> hole_polys;
    for (const SquareHoleSpec& h : holes) {
        const double r = h.side / 2.0;
        hole_polys.emplace_back(std::vector<Point2>{{h.cx - r, h.cy - r},
                                                    {h.cx + r, h.cy - r},
                                                    {h.cx + r, h.cy + r},
                                                    {h.cx - r, h.cy + r}});
    }
    const std::string nm =
        name.empty() ? "E4H" + std::to_string(holes.size()) : name;
    return Instance(nm, Polygon(std::move(ring)), std::move(hole_polys));
}

Instance gen_lshape(const std::string& name) {
    std::vector<Point2> ring{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    return Instance(name.empty() ? "E6L" : name, Polygon(std::move(ring)), {});
}

Instance gen_custom(const std::string& name, std::vector<Point2> container,
                    std::vector<std::vector<Point2>> holes) {
    std::vector<Polygon> hole_polys;
    for (auto& h : holes) hole_polys.emplace_back(std::move(h));
    return Instance(name, Polygon(std::move(container)), std::move(hole_polys));
}

}  // namespace pdisp
