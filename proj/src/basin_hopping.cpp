#include "pdisp/basin_hopping.hpp"

#include <cmath>

#include "pdisp/layout_opt.hpp"

namespace pdisp {

Layout perturb(const Layout& layout, double min_dist, double delta_factor, Rng& rng) {
    const double delta = delta_factor * min_dist;
    Layout out = layout;
    for (Point2& pt : out.points) {
        pt.x += rng.uniform(-delta, delta);
        pt.y += rng.uniform(-delta, delta);
    }
    return out;
}

Layout mbh(const Instance& inst, const Layout& layout, double min_dist,
           const ModelParams& params, const MbhConfig& cfg, Rng& rng,
           const Deadline& deadline) {
    Layout cur = layout;
    double cur_energy = layout_energy(inst, cur, min_dist, params);
    if (cur_energy < kFeasibleEnergy) return cur;

    int fails = 0;
    while (fails < cfg.theta_max && !deadline.expired()) {
        LayoutOptResult cand = minimize_energy(
            inst, perturb(cur, min_dist, cfg.delta_factor, rng), min_dist, params);
        if (cand.energy < cur_energy) {
            cur = std::move(cand.layout);
            cur_energy = cand.energy;
            fails = 0;
            if (cur_energy < kFeasibleEnergy) break;
        } else {
            ++fails;
        }
    }
    return cur;
}

Layout bh(const Instance& inst, const Layout& layout, double min_dist,
          const ModelParams& params, int max_iters, double temperature, Rng& rng,
          const Deadline& deadline) {
    Layout cur = layout;
    double cur_energy = layout_energy(inst, cur, min_dist, params);
    Layout best = cur;
    double best_energy = cur_energy;
    if (best_energy < kFeasibleEnergy) return best;

    for (int it = 0; it < max_iters && !deadline.expired(); ++it) {
        LayoutOptResult cand = minimize_energy(
            inst, perturb(cur, min_dist, 0.4, rng), min_dist, params);
        const double delta_e = cand.energy - cur_energy;
        if (delta_e <= 0.0 || rng.uniform() < std::exp(-delta_e / temperature)) {
            cur = cand.layout;
            cur_energy = cand.energy;
        }
        if (cand.energy < best_energy) {
            best = std::move(cand.layout);
            best_energy = cand.energy;
            if (best_energy < kFeasibleEnergy) break;
        }
    }
    return best;
}

}  // namespace pdisp
