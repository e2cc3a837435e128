#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pdisp {

struct LocalOptConfig {
    int memory = 7;
    int max_iters = 2000;
    double grad_tol = 1e-12;  // infinity norm
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
};

// Cheap budget for the two-variable vacancy probes.
inline LocalOptConfig probe_opt_config() {
    LocalOptConfig cfg;
    cfg.max_iters = 200;
    return cfg;
}

enum class OptStatus { Converged, MaxIters, LineSearchFail };

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    double grad_norm = 0.0;  // infinity norm at x
    int iters = 0;
    OptStatus status = OptStatus::MaxIters;
};

// Objective callback: writes the gradient into grad (same length as x) and
// returns the value.
using Objective = std::function<double(std::span<const double>, std::span<double>)>;

// Limited-memory BFGS with a strong-Wolfe line search (cubic interpolation,
// Hager-Zhang-style approximate Wolfe accepted near the floor of attainable
// precision). Accepted iterates descend monotonically. On a line-search
// failure the best iterate found so far is returned rather than aborting.
MinimizeResult minimize(const Objective& objective, std::vector<double> x0,
                        const LocalOptConfig& cfg = {});

}  // namespace pdisp
