#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pdisp/basin_hopping.hpp"
#include "pdisp/deadline.hpp"
#include "pdisp/penalty.hpp"
#include "pdisp/rng.hpp"

namespace pdisp {

struct TabuConfig {
    // The loop runs while consecutive non-improving iterations stay <= this;
    // negative disables the insertion loop entirely (initial minimization
    // only), which reduces the surrounding driver to plain restarts.
    int beta_max = 50;
    int q = 3;                     // candidate set size per side
    int detections_per_point = 5;  // vacancy probes = this * p
    int tenure_base = 5;
    int tenure_span = 5;
};

// Per-point tabu expiries: point i may not be the moved point of an accepted
// insertion while current_iter < expiry[i].
struct TabuState {
    std::vector<int> expiry;
    int current_iter = 0;

    explicit TabuState(std::size_t p) : expiry(p, 0) {}
    bool is_tabu(std::size_t i) const { return current_iter < expiry[i]; }
};

struct Vacancy {
    Point2 position;
    double energy = 0.0;
};

struct CandidateSets {
    std::vector<std::size_t> high_energy_points;  // descending per-point energy
    std::vector<Vacancy> vacancies;               // ascending probe energy
};

// One tabu iteration's move endpoints: the q highest-energy points of the
// layout and the q best vacancy sites from cfg.detections_per_point * p
// random probes.
CandidateSets build_candidate_sets(const Instance& inst, const Layout& layout,
                                   double min_dist, const ModelParams& params,
                                   const TabuConfig& cfg, Rng& rng);

// Indices of the q points with the highest per-point energies; ties broken
// toward the lower index.
std::vector<std::size_t> select_high_energy(const Instance& inst, const Layout& layout,
                                            double min_dist, const ModelParams& params,
                                            std::size_t q);

// Random probes minimized on the single-point energy; the q lowest-energy
// sites after dropping near-duplicates (pairwise distance >= 0.5 * min_dist,
// padded back with the next-best rejects when too few survive).
std::vector<Vacancy> detect_vacancies(const Instance& inst, const Layout& layout,
                                      double min_dist, const ModelParams& params,
                                      std::size_t count, std::size_t q, Rng& rng);

// Relocate one point; everything else is untouched.
Layout insertion_move(const Layout& layout, std::size_t point_index, Point2 target);

// One record per tabu-search iteration, for the invariant tests and the
// run-time-distribution analyzer.
struct TabuMoveRecord {
    int iter = 0;
    std::size_t moved_point = 0;
    Point2 target{0.0, 0.0};
    double pre_energy = 0.0;   // current solution before the iteration
    double post_energy = 0.0;  // after adoption and the MBH run
    bool moved_point_was_tabu = false;
    enum class Bypass { None, SeedFallback, Feasible } bypass = Bypass::None;
    int tenure = 0;
    int candidates_evaluated = 0;
    int mbh_runs = 0;
};

struct TabuLog {
    std::vector<TabuMoveRecord> moves;
};

// Tabu search over the vacancy-based insertion neighborhood, with a short
// monotonic-basin-hopping run after every adopted move (mbh_cfg.theta_max = 0
// disables it). Returns the best layout encountered.
Layout tabu_search(const Instance& inst, const Layout& x0, double min_dist,
                   const ModelParams& params, const TabuConfig& cfg,
                   const MbhConfig& mbh_cfg, Rng& rng,
                   const Deadline& deadline = Deadline::never(),
                   TabuLog* log = nullptr);

}  // namespace pdisp
