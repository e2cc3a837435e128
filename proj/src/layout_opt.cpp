#include "pdisp/layout_opt.hpp"

namespace pdisp {

std::vector<double> to_flat(const Layout& layout) {
    std::vector<double> x;
    x.reserve(2 * layout.size());
    for (const Point2& pt : layout.points) {
        x.push_back(pt.x);
        x.push_back(pt.y);
    }
    return x;
}

Layout from_flat(std::span<const double> x) {
    Layout layout;
    layout.points.resize(x.size() / 2);
    for (std::size_t i = 0; i < layout.points.size(); ++i)
        layout.points[i] = {x[2 * i], x[2 * i + 1]};
    return layout;
}

LayoutOptResult minimize_energy(const Instance& inst, const Layout& start,
                                double min_dist, const ModelParams& params,
                                const LocalOptConfig& cfg) {
    Layout scratch = start;
    EnergyReport report;
    Objective objective = [&](std::span<const double> x, std::span<double> grad) {
        for (std::size_t i = 0; i < scratch.points.size(); ++i)
            scratch.points[i] = {x[2 * i], x[2 * i + 1]};
        evaluate_energy(inst, scratch, min_dist, params, report);
        std::copy(report.gradient.begin(), report.gradient.end(), grad.begin());
        return report.value;
    };
    MinimizeResult mr = minimize(objective, to_flat(start), cfg);
    LayoutOptResult out;
    out.layout = from_flat(mr.x);
    out.energy = mr.value;
    out.status = mr.status;
    out.iters = mr.iters;
    return out;
}

ProbeResult minimize_probe(const Instance& inst, const Layout& layout, Point2 start,
                           double min_dist, const ModelParams& params) {
    Objective objective = [&](std::span<const double> x, std::span<double> grad) {
        const VacancyEnergy e =
            vacancy_energy(inst, layout, {x[0], x[1]}, min_dist, params);
        grad[0] = e.grad.x;
        grad[1] = e.grad.y;
        return e.value;
    };
    MinimizeResult mr = minimize(objective, {start.x, start.y}, probe_opt_config());
    return {{mr.x[0], mr.x[1]}, mr.value};
}

double layout_energy(const Instance& inst, const Layout& layout, double min_dist,
                     const ModelParams& params) {
    static thread_local EnergyReport report;
    evaluate_energy(inst, layout, min_dist, params, report);
    return report.value;
}

}  // namespace pdisp
