#pragma once

#include <cstddef>
#include <vector>

#include "pdisp/geometry.hpp"

namespace pdisp {

enum class Variant { WithBoundary, WithoutBoundary };

// Penalty-model coefficients. The two named constructors carry the canonical
// settings for the two problem variants; anything else must go through
// custom() so a config file cannot silently mix regimes.
struct ModelParams {
    Variant variant = Variant::WithBoundary;
    double alpha = 1.0;
    double gamma = 2.0;
    double lambda = 0.5;

    static ModelParams circle_packing() { return {Variant::WithBoundary, 1.0, 2.0, 0.5}; }
    static ModelParams point_arrangement() {
        return {Variant::WithoutBoundary, 3000.0, 1.0, 1e-3};
    }
    static ModelParams custom(Variant v, double alpha, double gamma, double lambda) {
        return {v, alpha, gamma, lambda};
    }

    // Required clearance from all boundaries at separation min_dist.
    double clearance(double min_dist) const { return lambda * min_dist; }
};

// Candidate positions for the p dispersion points.
struct Layout {
    std::vector<Point2> points;

    Layout() = default;
    explicit Layout(std::vector<Point2> pts) : points(std::move(pts)) {}
    std::size_t size() const { return points.size(); }
};

// A configuration is feasible when its energy drops below this threshold.
inline constexpr double kFeasibleEnergy = 1e-25;

struct EnergyReport {
    double value = 0.0;
    std::vector<double> gradient;   // 2p, (x0, y0, x1, y1, ...)
    std::vector<double> per_point;  // p
};

// Overlap depth between two equal circles of diameter min_dist centered at
// the two points: max(0, min_dist - |ci - cj|).
double pair_overlap(Point2 ci, Point2 cj, double min_dist);

// One boundary penalty term: value, gradient w.r.t. the point, and the
// partial derivative w.r.t. the clearance (used for the distance variable's
// chain rule in the adjustment objective).
struct BoundaryTerm {
    double value = 0.0;
    Point2 grad{0.0, 0.0};
    double dvalue_dclearance = 0.0;
};

// Penalty between a point and the container boundary: repulsion from nearby
// vertices/feet when inside, attraction to the closest one when outside.
BoundaryTerm container_penalty(const Instance& inst, Point2 ci, double clearance,
                               double gamma);
// Penalty between a point and one hole: attraction out of the hole when
// inside it, repulsion from its boundary when outside.
BoundaryTerm hole_penalty(const Polygon& hole, Point2 ci, double clearance,
                          double gamma);

// Total energy with gradient and the per-point decomposition. Deterministic
// for any thread count: each point's contributions are accumulated into its
// own slot and reduced in index order.
EnergyReport total_energy(const Instance& inst, const Layout& layout, double min_dist,
                          const ModelParams& params);

// As total_energy but also returns d(value)/d(min_dist) and reuses the
// report's buffers; the workhorse behind every objective callback.
void evaluate_energy(const Instance& inst, const Layout& layout, double min_dist,
                     const ModelParams& params, EnergyReport& report,
                     double* dvalue_dmin_dist = nullptr);

// Energy of a probe point v inserted as a (p+1)-th point: pair terms against
// the existing layout plus its own boundary terms. Gradient w.r.t. v only.
struct VacancyEnergy {
    double value = 0.0;
    Point2 grad{0.0, 0.0};
};
VacancyEnergy vacancy_energy(const Instance& inst, const Layout& layout, Point2 v,
                             double min_dist, const ModelParams& params);

// Distance-adjustment objective -min_dist^2 + mu * E(X, min_dist) over the
// joint vector (x1, y1, ..., xp, yp, min_dist).
struct SumtValue {
    double value = 0.0;
    std::vector<double> gradient;  // 2p + 1
};
SumtValue sumt_objective(const Instance& inst, const Layout& layout, double min_dist,
                         double mu, const ModelParams& params);

// True when the configuration lies within eps of a non-smooth locus of the
// energy (pair activation, case switches at ring boundaries, foot-point
// activation, sum-term activation, or an argmin tie in an attraction term).
// Gradient checks use this to skip samples where the fixed-active-set
// gradient legitimately disagrees with finite differences.
bool near_nonsmooth_locus(const Instance& inst, const Layout& layout, double min_dist,
                          const ModelParams& params, double eps);

// Straightforward single-threaded evaluation of the same model, kept as an
// independent reference for tests and the energy benchmark. Assembles the
// objective from the public per-term operations instead of the fused kernel.
EnergyReport reference_total_energy(const Instance& inst, const Layout& layout,
                                    double min_dist, const ModelParams& params);

}  // namespace pdisp
