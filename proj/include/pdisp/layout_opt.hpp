#pragma once

#include "pdisp/lbfgs.hpp"
#include "pdisp/penalty.hpp"

namespace pdisp {

std::vector<double> to_flat(const Layout& layout);
Layout from_flat(std::span<const double> x);

struct LayoutOptResult {
    Layout layout;
    double energy = 0.0;
    OptStatus status = OptStatus::MaxIters;
    int iters = 0;
};

// Locally minimize the energy over the point coordinates at fixed distance.
LayoutOptResult minimize_energy(const Instance& inst, const Layout& start,
                                double min_dist, const ModelParams& params,
                                const LocalOptConfig& cfg = {});

// Locally minimize the single-probe energy; the cheap budget for vacancy
// detection.
struct ProbeResult {
    Point2 position;
    double energy = 0.0;
};
ProbeResult minimize_probe(const Instance& inst, const Layout& layout, Point2 start,
                           double min_dist, const ModelParams& params);

// Energy value only.
double layout_energy(const Instance& inst, const Layout& layout, double min_dist,
                     const ModelParams& params);

}  // namespace pdisp
