#pragma once

#include <stdexcept>
#include <vector>

#include "pdisp/lbfgs.hpp"
#include "pdisp/penalty.hpp"

namespace pdisp {

struct SumtConfig {
    int iterations = 15;
    double mu0 = 10.0;
    double mu_growth = 5.0;
};

// Raised when the input configuration is not feasible at its distance.
class InfeasibleInput : public std::runtime_error {
public:
    explicit InfeasibleInput(const std::string& what) : std::runtime_error(what) {}
};

struct SumtRound {
    double mu = 0.0;
    double dist_after = 0.0;
    double energy_after = 0.0;
    int iters = 0;
    OptStatus status = OptStatus::MaxIters;
};

struct AdjustResult {
    Layout layout;
    double min_dist = 0.0;
    std::vector<SumtRound> rounds;
    bool repaired = false;   // extra coordinate-only minimization was needed
    bool bisected = false;   // distance had to be shrunk against the checker
};

// Maximize the separation from a feasible start by minimizing
// -min_dist^2 + mu * E over (coordinates, min_dist) with escalating mu, then
// certify: the reported distance is the realized minimum pairwise distance
// (capped by clearance/lambda for the boundary variant), repaired or shrunk
// until the independent checker passes at 1e-9.
AdjustResult adjust_distance(const Instance& inst, const Layout& layout, double d0,
                             const ModelParams& params, const SumtConfig& cfg = {});

}  // namespace pdisp
