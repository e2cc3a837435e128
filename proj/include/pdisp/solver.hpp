#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdisp/basin_hopping.hpp"
#include "pdisp/penalty.hpp"
#include "pdisp/rng.hpp"
#include "pdisp/sumt.hpp"
#include "pdisp/tabu.hpp"

namespace pdisp {

enum class Algo { Tsgo, TsgoNoMbh, BhStar, MbhStar };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

struct RunConfig {
    Algo algo = Algo::Tsgo;
    int p = 1;
    double rho = 0.85;        // packing density of the initial estimate
    double time_limit = 60.0; // seconds
    std::uint64_t seed = 1;
    // Extra stop for reproducibility studies: 0 means time-limited only.
    int max_restarts = 0;
    TabuConfig tabu;
    MbhConfig mbh;
    SumtConfig sumt;
    ModelParams params = ModelParams::circle_packing();

    // Canonical parameterization per variant: (rho, beta_max, theta_max) =
    // (0.85, 50, 10) with a boundary constraint, (1.4, 5, 15) without.
    static RunConfig defaults_for(Variant variant);
};

struct Improvement {
    double elapsed = 0.0;  // seconds since solve() entry
    double min_dist = 0.0;
};

struct RunResult {
    Layout best_layout;
    double best_dist = 0.0;
    double best_radius = 0.0;  // lambda * best_dist
    double elapsed_to_best = 0.0;
    double elapsed_total = 0.0;
    std::vector<Improvement> history;
    std::uint64_t seed = 0;
    int restarts = 0;
};

// Initial separation estimate from the target packing density:
// 2 * sqrt(rho * area / (p * pi)).
double initial_distance(const Instance& inst, int p, double rho);

// p points drawn uniformly from the bounding box of the container; the
// penalty drives strays into the region afterwards.
Layout random_layout(const Instance& inst, int p, Rng& rng);

// Restart loop: estimate a distance, search for a feasible configuration
// with the selected inner method, stretch it with the distance adjustment,
// and repeat at the best distance found until the budget runs out. Every
// recorded improvement is certified by the independent checker.
RunResult solve(const Instance& inst, const RunConfig& cfg);

}  // namespace pdisp
