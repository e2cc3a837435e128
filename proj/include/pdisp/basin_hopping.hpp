#pragma once

#include "pdisp/deadline.hpp"
#include "pdisp/penalty.hpp"
#include "pdisp/rng.hpp"

namespace pdisp {

struct MbhConfig {
    int theta_max = 10;          // consecutive non-improving cycles before stopping
    double delta_factor = 0.4;   // perturbation half-width as a multiple of min_dist
};

// Shift every coordinate by an independent uniform draw from
// [-delta, +delta], delta = delta_factor * min_dist.
Layout perturb(const Layout& layout, double min_dist, double delta_factor, Rng& rng);

// Monotonic basin hopping: perturb + minimize, accepting strict improvements
// only. Returns immediately when the input is already feasible; theta_max = 0
// disables the search entirely.
Layout mbh(const Instance& inst, const Layout& layout, double min_dist,
           const ModelParams& params, const MbhConfig& cfg, Rng& rng,
           const Deadline& deadline = Deadline::never());

// Plain basin hopping with Metropolis acceptance; returns the best layout
// seen. Used only by the BH* comparison variant.
Layout bh(const Instance& inst, const Layout& layout, double min_dist,
          const ModelParams& params, int max_iters, double temperature, Rng& rng,
          const Deadline& deadline = Deadline::never());

}  // namespace pdisp
