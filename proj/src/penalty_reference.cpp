#include <cmath>
#include <limits>

#include "pdisp/penalty.hpp"

namespace pdisp {

namespace {

// Candidate set for one point against one ring, assembled through the public
// geometry operations (vertices plus active feet).
std::vector<Point2> candidates(const Polygon& ring, Point2 q, bool inside) {
    std::vector<Point2> out = ring.vertices();
    const FootSet feet = active_feet(ring, q, active_edges(ring, q, inside));
    out.insert(out.end(), feet.points.begin(), feet.points.end());
    return out;
}

struct Term {
    double value = 0.0;
    Point2 grad{0.0, 0.0};
};

Term repulsion(const std::vector<Point2>& cands, Point2 q, double clearance) {
    Term t;
    for (const Point2& v : cands) {
        const double d = dist(q, v);
        const double r = std::max(0.0, clearance - d);
        t.value += r * r;
        if (r > 0.0 && d > 0.0) {
            t.grad.x += -2.0 * r * (q.x - v.x) / d;
            t.grad.y += -2.0 * r * (q.y - v.y) / d;
        }
    }
    return t;
}

Term attraction(const std::vector<Point2>& cands, Point2 q, double clearance,
                double gamma) {
    double dmin = std::numeric_limits<double>::infinity();
    Point2 best{0.0, 0.0};
    for (const Point2& v : cands) {
        const double d = dist(q, v);
        if (d < dmin) {
            dmin = d;
            best = v;
        }
    }
    Term t;
    t.value = gamma * (clearance + dmin) * (clearance + dmin);
    if (dmin > 0.0) {
        t.grad.x = 2.0 * gamma * (clearance + dmin) * (q.x - best.x) / dmin;
        t.grad.y = 2.0 * gamma * (clearance + dmin) * (q.y - best.y) / dmin;
    }
    return t;
}

Term boundary(const Instance& inst, Point2 q, double clearance, double gamma) {
    Term acc;
    const bool in_container = contains(inst.container(), q);
    const Term c =
        in_container
            ? repulsion(candidates(inst.container(), q, true), q, clearance)
            : attraction(candidates(inst.container(), q, false), q, clearance, gamma);
    acc.value += c.value;
    acc.grad.x += c.grad.x;
    acc.grad.y += c.grad.y;
    for (const Polygon& hole : inst.holes()) {
        const bool in_hole = contains(hole, q);
        const Term h =
            in_hole
                ? attraction(candidates(hole, q, true), q, clearance, gamma)
                : repulsion(candidates(hole, q, false), q, clearance);
        acc.value += h.value;
        acc.grad.x += h.grad.x;
        acc.grad.y += h.grad.y;
    }
    return acc;
}

}  // namespace

EnergyReport reference_total_energy(const Instance& inst, const Layout& layout,
                                    double min_dist, const ModelParams& params) {
    const std::size_t p = layout.size();
    const std::vector<Point2>& pts = layout.points;
    const double clearance = params.clearance(min_dist);

    EnergyReport rep;
    rep.gradient.assign(2 * p, 0.0);
    rep.per_point.assign(p, 0.0);

    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double l = pair_overlap(pts[i], pts[j], min_dist);
            rep.value += l * l;
            rep.per_point[i] += l * l;
            rep.per_point[j] += l * l;
            const double d = dist(pts[i], pts[j]);
            if (l > 0.0 && d > 0.0) {
                const double g = -2.0 * l / d;
                rep.gradient[2 * i] += g * (pts[i].x - pts[j].x);
                rep.gradient[2 * i + 1] += g * (pts[i].y - pts[j].y);
                rep.gradient[2 * j] += g * (pts[j].x - pts[i].x);
                rep.gradient[2 * j + 1] += g * (pts[j].y - pts[i].y);
            }
        }
    }

    for (std::size_t i = 0; i < p; ++i) {
        const Term b = boundary(inst, pts[i], clearance, params.gamma);
        rep.value += params.alpha * b.value;
        rep.per_point[i] += params.alpha * b.value;
        rep.gradient[2 * i] += params.alpha * b.grad.x;
        rep.gradient[2 * i + 1] += params.alpha * b.grad.y;
    }
    return rep;
}

}  // namespace pdisp
