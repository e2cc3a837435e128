#include "pdisp/tabu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdisp/layout_opt.hpp"

namespace pdisp {

std::vector<std::size_t> select_high_energy(const Instance& inst, const Layout& layout,
                                            double min_dist, const ModelParams& params,
                                            std::size_t q) {
    static thread_local EnergyReport report;
    evaluate_energy(inst, layout, min_dist, params, report);
    std::vector<std::size_t> idx(layout.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return report.per_point[a] > report.per_point[b];
    });
    idx.resize(std::min(q, idx.size()));
    return idx;
}

std::vector<Vacancy> detect_vacancies(const Instance& inst, const Layout& layout,
                                      double min_dist, const ModelParams& params,
                                      std::size_t count, std::size_t q, Rng& rng) {
    const BoundingBox& box = inst.bbox();
    std::vector<Point2> starts(count);
    for (Point2& s : starts)
        s = {rng.uniform(box.min_x, box.max_x), rng.uniform(box.min_y, box.max_y)};

    std::vector<Vacancy> probes(count);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(count); ++k) {
        const ProbeResult pr =
            minimize_probe(inst, layout, starts[k], min_dist, params);
        probes[k] = {pr.position, pr.energy};
    }
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Vacancy& a, const Vacancy& b) { return a.energy < b.energy; });

    // Probes frequently fall into the same basin; keep well-separated sites
    // first and pad with the best rejects if the survivors run out.
    const double min_sep = 0.5 * min_dist;
    std::vector<Vacancy> kept, rejected;
    for (const Vacancy& v : probes) {
        const bool clear = std::all_of(kept.begin(), kept.end(), [&](const Vacancy& k) {
            return dist(k.position, v.position) >= min_sep;
        });
        (clear ? kept : rejected).push_back(v);
        if (kept.size() >= q) break;
    }
    for (std::size_t r = 0; kept.size() < q && r < rejected.size(); ++r)
        kept.push_back(rejected[r]);
    if (kept.size() > q) kept.resize(q);
    return kept;
}

Layout insertion_move(const Layout& layout, std::size_t point_index, Point2 target) {
    Layout out = layout;
    out.points[point_index] = target;
    return out;
}

CandidateSets build_candidate_sets(const Instance& inst, const Layout& layout,
                                   double min_dist, const ModelParams& params,
                                   const TabuConfig& cfg, Rng& rng) {
    const std::size_t q = std::min<std::size_t>(cfg.q, layout.size());
    CandidateSets sets;
    sets.high_energy_points = select_high_energy(inst, layout, min_dist, params, q);
    sets.vacancies = detect_vacancies(inst, layout, min_dist, params,
                                      cfg.detections_per_point * layout.size(), q, rng);
    return sets;
}

Layout tabu_search(const Instance& inst, const Layout& x0, double min_dist,
                   const ModelParams& params, const TabuConfig& cfg,
                   const MbhConfig& mbh_cfg, Rng& rng, const Deadline& deadline,
                   TabuLog* log) {
    const std::size_t p = x0.size();
    const std::size_t q = std::min<std::size_t>(cfg.q, p);

    LayoutOptResult init = minimize_energy(inst, x0, min_dist, params);
    Layout cur = std::move(init.layout);
    double cur_energy = init.energy;
    Layout best = cur;
    double best_energy = cur_energy;

    TabuState state(p);
    int no_improve = 0;

    while (no_improve <= cfg.beta_max && best_energy >= kFeasibleEnergy &&
           !deadline.expired()) {
        state.current_iter += 1;
        const double pre_energy = cur_energy;

        const CandidateSets sets =
            build_candidate_sets(inst, cur, min_dist, params, cfg, rng);
        const std::vector<std::size_t>& high = sets.high_energy_points;
        const std::vector<Vacancy>& vac = sets.vacancies;
        if (deadline.expired()) break;
        const std::size_t nv = vac.size();

        // Random seed move initializes the incumbent regardless of tabu
        // status; it is not locally minimized.
        const std::size_t i1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(q) - 1));
        const std::size_t j1 = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(nv) - 1));
        Layout incumbent = insertion_move(cur, high[i1], vac[j1].position);
        double incumbent_energy = layout_energy(inst, incumbent, min_dist, params);
        std::size_t moved = high[i1];
        Point2 moved_target = vac[j1].position;
        bool moved_was_tabu = state.is_tabu(high[i1]);
        auto bypass = moved_was_tabu ? TabuMoveRecord::Bypass::SeedFallback
                                     : TabuMoveRecord::Bypass::None;

        // All q x nv insertion moves, each locally minimized. Independent of
        // each other, so they can run concurrently; selection stays serial in
        // row-major order below.
        std::vector<LayoutOptResult> cand(q * nv);
#pragma omp parallel for collapse(2) schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(q); ++i) {
            for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(nv); ++j) {
                cand[i * nv + j] = minimize_energy(
                    inst, insertion_move(cur, high[i], vac[j].position), min_dist,
                    params);
            }
        }

        for (std::size_t i = 0; i < q; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                LayoutOptResult& c = cand[i * nv + j];
                const bool tabu = state.is_tabu(high[i]);
                const bool feasible = c.energy < kFeasibleEnergy;
                if ((tabu && !feasible) || c.energy >= incumbent_energy) continue;
                incumbent = std::move(c.layout);
                incumbent_energy = c.energy;
                moved = high[i];
                moved_target = vac[j].position;
                moved_was_tabu = tabu;
                bypass = tabu ? TabuMoveRecord::Bypass::Feasible
                              : TabuMoveRecord::Bypass::None;
            }
        }

        cur = std::move(incumbent);
        cur_energy = incumbent_energy;

        const int tenure = static_cast<int>(
            std::ceil(cfg.tenure_base + rng.uniform(0.0, static_cast<double>(cfg.tenure_span))));
        state.expiry[moved] = state.current_iter + tenure;

        int mbh_runs = 0;
        if (mbh_cfg.theta_max > 0 && cur_energy >= kFeasibleEnergy) {
            cur = mbh(inst, cur, min_dist, params, mbh_cfg, rng, deadline);
            cur_energy = layout_energy(inst, cur, min_dist, params);
            mbh_runs = 1;
        }

        if (cur_energy < best_energy) {
            best = cur;
            best_energy = cur_energy;
            no_improve = 0;
        } else {
            ++no_improve;
        }

        if (log) {
            log->moves.push_back({state.current_iter, moved, moved_target, pre_energy,
                                  cur_energy, moved_was_tabu, bypass, tenure,
                                  static_cast<int>(q * nv), mbh_runs});
        }
    }
    return best;
}

}  // namespace pdisp
