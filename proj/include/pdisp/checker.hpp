#pragma once

#include <vector>

#include "pdisp/geometry.hpp"

namespace pdisp {

// Independent feasibility certificate. Deliberately knows nothing about the
// penalty model: distances are recomputed directly from the geometry.
struct CheckReport {
    double pairwise_slack = 0.0;     // min pairwise distance - min_dist
    double boundary_slack = 0.0;     // min boundary clearance - lambda * min_dist
    double containment_slack = 0.0;  // negative when a point leaves the region
    std::size_t worst_pair_i = 0, worst_pair_j = 0;
    std::size_t worst_boundary_point = 0;
    std::size_t worst_containment_point = 0;

    bool pass(double tol) const {
        return pairwise_slack >= -tol && boundary_slack >= -tol &&
               containment_slack >= -tol;
    }
    double worst_slack() const;
};

CheckReport check_layout(const Instance& inst, const std::vector<Point2>& points,
                         double min_dist, double lambda);

}  // namespace pdisp
