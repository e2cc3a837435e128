#include "pdisp/sumt.hpp"

#include <algorithm>
#include <limits>

#include "pdisp/checker.hpp"
#include "pdisp/layout_opt.hpp"

namespace pdisp {

namespace {

constexpr double kCertifyTol = 1e-9;

double realized_distance(const Instance& inst, const Layout& layout,
                         const ModelParams& params) {
    const std::size_t p = layout.size();
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            min_pair = std::min(min_pair, dist(layout.points[i], layout.points[j]));
    // The clearance constraint caps the distance in both variants (for the
    // point-arrangement setting lambda is small but positive, and the points
    // sit right against it at a local optimum).
    double min_clear = std::numeric_limits<double>::infinity();
    for (const Point2& pt : layout.points)
        min_clear = std::min(min_clear, inst.boundary_distance(pt));
    return std::min(min_pair, min_clear / params.lambda);
}

}  // namespace

AdjustResult adjust_distance(const Instance& inst, const Layout& layout, double d0,
                             const ModelParams& params, const SumtConfig& cfg) {
    if (layout_energy(inst, layout, d0, params) >= kFeasibleEnergy)
        throw InfeasibleInput("adjust_distance requires a feasible configuration");

    const std::size_t p = layout.size();
    AdjustResult out;
    out.layout = layout;
    out.min_dist = d0;

    // Joint vector (x1, y1, ..., xp, yp, min_dist).
    std::vector<double> x = to_flat(layout);
    x.push_back(d0);

    Layout scratch = layout;
    double mu = cfg.mu0;
    for (int round = 0; round < cfg.iterations; ++round) {
        // The distance coordinate runs through |t|: the objective is only
        // meaningful for positive distances, and the t < 0 halfline would
        // otherwise be a degenerate zero-energy region that -D^2 rewards.
        Objective objective = [&](std::span<const double> v, std::span<double> grad) {
            for (std::size_t i = 0; i < p; ++i) scratch.points[i] = {v[2 * i], v[2 * i + 1]};
            const double t = v[2 * p];
            const SumtValue sv =
                sumt_objective(inst, scratch, std::abs(t), mu, params);
            std::copy(sv.gradient.begin(), sv.gradient.end(), grad.begin());
            if (t < 0.0) grad[2 * p] = -grad[2 * p];
            return sv.value;
        };
        MinimizeResult mr = minimize(objective, x, {});
        x = std::move(mr.x);
        x[2 * p] = std::abs(x[2 * p]);
        for (std::size_t i = 0; i < p; ++i) out.layout.points[i] = {x[2 * i], x[2 * i + 1]};
        out.rounds.push_back({mu, x[2 * p],
                              layout_energy(inst, out.layout, x[2 * p], params),
                              mr.iters, mr.status});
        mu *= cfg.mu_growth;
    }

    // Report the realized distance, not the optimization variable.
    out.min_dist = realized_distance(inst, out.layout, params);

    CheckReport check =
        check_layout(inst, out.layout.points, out.min_dist, params.lambda);
    if (!check.pass(kCertifyTol)) {
        // Finite mu leaves a small violation; one coordinate-only
        // minimization at the achieved distance usually removes it.
        LayoutOptResult rep = minimize_energy(inst, out.layout, out.min_dist, params);
        out.repaired = true;
        if (rep.energy < kFeasibleEnergy) {
            out.layout = std::move(rep.layout);
            out.min_dist = realized_distance(inst, out.layout, params);
            check = check_layout(inst, out.layout.points, out.min_dist, params.lambda);
        }
        // Shrink against the checker as a last resort; the input distance is
        // known feasible, so the bisection is bracketed.
        if (!check.pass(kCertifyTol)) {
            out.bisected = true;
            double lo = 0.0, hi = out.min_dist;
            if (check_layout(inst, out.layout.points, lo, params.lambda).pass(kCertifyTol)) {
                for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (check_layout(inst, out.layout.points, mid, params.lambda)
                            .pass(kCertifyTol))
                        lo = mid;
                    else
                        hi = mid;
                }
                out.min_dist = lo;
            } else {
                // Containment is broken regardless of distance: fall back to
                // the feasible input configuration.
                out.layout = layout;
                out.min_dist = realized_distance(inst, out.layout, params);
            }
        }
    }
    return out;
}

}  // namespace pdisp
