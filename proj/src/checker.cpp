#include "pdisp/checker.hpp"

#include <algorithm>
#include <limits>

namespace pdisp {

double CheckReport::worst_slack() const {
    return std::min({pairwise_slack, boundary_slack, containment_slack});
}

CheckReport check_layout(const Instance& inst, const std::vector<Point2>& points,
                         double min_dist, double lambda) {
    CheckReport rep;
    const std::size_t p = points.size();
    const double inf = std::numeric_limits<double>::infinity();

    double min_pair = inf;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double d = dist(points[i], points[j]);
            if (d < min_pair) {
                min_pair = d;
                rep.worst_pair_i = i;
                rep.worst_pair_j = j;
            }
        }
    }
    rep.pairwise_slack = (p < 2) ? inf : min_pair - min_dist;

    double min_clear = inf;
    double min_containment = inf;
    for (std::size_t i = 0; i < p; ++i) {
        const double bd = inst.boundary_distance(points[i]);
        if (bd < min_clear) {
            min_clear = bd;
            rep.worst_boundary_point = i;
        }
        const double c = inst.contains_point(points[i]) ? bd : -bd;
        if (c < min_containment) {
            min_containment = c;
            rep.worst_containment_point = i;
        }
    }
    rep.boundary_slack = (p == 0) ? inf : min_clear - lambda * min_dist;
    rep.containment_slack = (p == 0) ? inf : std::max(min_containment, 0.0);
    if (min_containment < 0.0) rep.containment_slack = min_containment;
    return rep;
}

}  // namespace pdisp
