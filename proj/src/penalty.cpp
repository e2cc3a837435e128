#include "pdisp/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdisp {

namespace {

constexpr double kCrossEps = 1e-14;
// Below this separation a distance gradient direction is undefined; the
// contribution is dropped (measure-zero configuration).
constexpr double kDegenerateDist = 1e-300;

// Minimum point count before the per-point loop is worth a parallel region.
constexpr std::size_t kParallelMinPoints = 64;

// Accumulates one ring's penalty for one point. Candidates are the ring's
// vertices plus the perpendicular feet on active edges that land on their
// segment. min_branch selects the attraction form gamma*(clearance+dmin)^2;
// otherwise every candidate closer than the clearance repels.
BoundaryTerm ring_term(const Polygon& ring, Point2 q, bool inside, bool min_branch,
                       double clearance, double gamma) {
    BoundaryTerm t;
    double dmin = std::numeric_limits<double>::infinity();
    Point2 vmin{0.0, 0.0};

    auto visit = [&](Point2 v) {
        const double d = dist(q, v);
        if (min_branch) {
            if (d < dmin) {
                dmin = d;
                vmin = v;
            }
        } else if (d < clearance) {
            const double r = clearance - d;
            t.value += r * r;
            t.dvalue_dclearance += 2.0 * r;
            if (d > kDegenerateDist) {
                const double g = -2.0 * r / d;
                t.grad.x += g * (q.x - v.x);
                t.grad.y += g * (q.y - v.y);
            }
        }
    };

    for (const Point2& v : ring.vertices()) visit(v);

    const double eps = kCrossEps * std::max(1.0, ring.bbox().diagonal());
    const std::size_t n = ring.edge_count();
    for (std::size_t l = 0; l < n; ++l) {
        const Point2 a = ring.edge_start(l);
        const Point2 b = ring.edge_end(l);
        const Point2 ab = b - a;
        const double c = cross(ab, q - a);
        if (std::abs(c) <= eps) continue;
        const bool left = c > 0.0;
        if (inside ? !left : left) continue;
        const double s = dot(q - a, ab) / dot(ab, ab);
        if (s < 0.0 || s > 1.0) continue;
        visit(a + s * ab);
    }

    if (min_branch) {
        const double w = clearance + dmin;
        t.value = gamma * w * w;
        t.dvalue_dclearance = 2.0 * gamma * w;
        if (dmin > kDegenerateDist) {
            const double g = 2.0 * gamma * w / dmin;
            t.grad.x = g * (q.x - vmin.x);
            t.grad.y = g * (q.y - vmin.y);
        }
    }
    return t;
}

// Boundary penalty of one point against the whole region.
BoundaryTerm boundary_terms(const Instance& inst, Point2 q, double clearance,
                            double gamma) {
    const bool in_container = contains(inst.container(), q);
    BoundaryTerm acc = ring_term(inst.container(), q, in_container,
                                 /*min_branch=*/!in_container, clearance, gamma);
    for (const Polygon& hole : inst.holes()) {
        const bool in_hole = contains(hole, q);
        const BoundaryTerm h =
            ring_term(hole, q, in_hole, /*min_branch=*/in_hole, clearance, gamma);
        acc.value += h.value;
        acc.grad.x += h.grad.x;
        acc.grad.y += h.grad.y;
        acc.dvalue_dclearance += h.dvalue_dclearance;
    }
    return acc;
}

struct Scratch {
    std::vector<double> pair_sq;     // per point: sum of squared overlaps
    std::vector<double> pair_ddist;  // per point: d(pair terms)/d(min_dist)
    std::vector<double> bnd;         // per point: unweighted boundary penalty
    std::vector<double> bnd_dclear;  // per point: d(boundary)/d(clearance)
};

Scratch& scratch() {
    static thread_local Scratch s;
    return s;
}

}  // namespace

double pair_overlap(Point2 ci, Point2 cj, double min_dist) {
    return std::max(0.0, min_dist - dist(ci, cj));
}

BoundaryTerm container_penalty(const Instance& inst, Point2 ci, double clearance,
                               double gamma) {
    const bool inside = contains(inst.container(), ci);
    return ring_term(inst.container(), ci, inside, !inside, clearance, gamma);
}

BoundaryTerm hole_penalty(const Polygon& hole, Point2 ci, double clearance,
                          double gamma) {
    const bool inside = contains(hole, ci);
    return ring_term(hole, ci, inside, inside, clearance, gamma);
}

void evaluate_energy(const Instance& inst, const Layout& layout, double min_dist,
                     const ModelParams& params, EnergyReport& report,
                     double* dvalue_dmin_dist) {
    const std::size_t p = layout.size();
    const std::vector<Point2>& pts = layout.points;
    const double clearance = params.clearance(min_dist);
    const bool want_ddist = dvalue_dmin_dist != nullptr;

    report.gradient.assign(2 * p, 0.0);
    report.per_point.assign(p, 0.0);
    Scratch& s = scratch();
    s.pair_sq.assign(p, 0.0);
    s.bnd.assign(p, 0.0);
    if (want_ddist) {
        s.pair_ddist.assign(p, 0.0);
        s.bnd_dclear.assign(p, 0.0);
    }

    // Each iteration writes only slot i, so scheduling cannot change results;
    // the reduction below runs in index order on one thread.
#pragma omp parallel for schedule(static) if (p >= kParallelMinPoints)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(p); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const Point2 ci = pts[i];
        double pair_sq = 0.0, pair_dd = 0.0;
        double gx = 0.0, gy = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            if (j == i) continue;
            const double d = dist(ci, pts[j]);
            if (d >= min_dist) continue;
            const double l = min_dist - d;
            pair_sq += l * l;
            pair_dd += 2.0 * l;
            if (d > kDegenerateDist) {
                const double g = -2.0 * l / d;
                gx += g * (ci.x - pts[j].x);
                gy += g * (ci.y - pts[j].y);
            }
        }
        const BoundaryTerm bt = boundary_terms(inst, ci, clearance, params.gamma);
        s.pair_sq[i] = pair_sq;
        s.bnd[i] = bt.value;
        if (want_ddist) {
            s.pair_ddist[i] = pair_dd;
            s.bnd_dclear[i] = bt.dvalue_dclearance;
        }
        report.per_point[i] = pair_sq + params.alpha * (bt.value);
        report.gradient[2 * i] = gx + params.alpha * bt.grad.x;
        report.gradient[2 * i + 1] = gy + params.alpha * bt.grad.y;
    }

    // Pair sums were collected once per endpoint, hence the halving.
    double value = 0.0;
    for (std::size_t i = 0; i < p; ++i)
        value += 0.5 * s.pair_sq[i] + params.alpha * s.bnd[i];
    report.value = value;

    if (want_ddist) {
        double dd = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            dd += 0.5 * s.pair_ddist[i] +
                  params.alpha * params.lambda * s.bnd_dclear[i];
        *dvalue_dmin_dist = dd;
    }
}

EnergyReport total_energy(const Instance& inst, const Layout& layout, double min_dist,
                          const ModelParams& params) {
    EnergyReport report;
    evaluate_energy(inst, layout, min_dist, params, report);
    return report;
}

VacancyEnergy vacancy_energy(const Instance& inst, const Layout& layout, Point2 v,
                             double min_dist, const ModelParams& params) {
    VacancyEnergy e;
    double gx = 0.0, gy = 0.0;
    for (const Point2& cj : layout.points) {
        const double d = dist(v, cj);
        if (d >= min_dist) continue;
        const double l = min_dist - d;
        e.value += l * l;
        if (d > kDegenerateDist) {
            const double g = -2.0 * l / d;
            gx += g * (v.x - cj.x);
            gy += g * (v.y - cj.y);
        }
    }
    const BoundaryTerm bt =
        boundary_terms(inst, v, params.clearance(min_dist), params.gamma);
    e.value += params.alpha * bt.value;
    e.grad.x = gx + params.alpha * bt.grad.x;
    e.grad.y = gy + params.alpha * bt.grad.y;
    return e;
}

SumtValue sumt_objective(const Instance& inst, const Layout& layout, double min_dist,
                         double mu, const ModelParams& params) {
    static thread_local EnergyReport report;
    double ddist = 0.0;
    evaluate_energy(inst, layout, min_dist, params, report, &ddist);

    SumtValue out;
    const std::size_t p = layout.size();
    out.value = -min_dist * min_dist + mu * report.value;
    out.gradient.resize(2 * p + 1);
    for (std::size_t k = 0; k < 2 * p; ++k) out.gradient[k] = mu * report.gradient[k];
    out.gradient[2 * p] = -2.0 * min_dist + mu * ddist;
    return out;
}

bool near_nonsmooth_locus(const Instance& inst, const Layout& layout, double min_dist,
                          const ModelParams& params, double eps) {
    const std::size_t p = layout.size();
    const std::vector<Point2>& pts = layout.points;
    const double clearance = params.clearance(min_dist);

    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double d = dist(pts[i], pts[j]);
            if (std::abs(d - min_dist) < eps || d < eps) return true;
        }
    }

    auto ring_near = [&](const Polygon& ring, Point2 q, bool min_branch) {
        if (boundary_distance(ring, q) < eps) return true;  // case switch
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        auto visit = [&](double d) {
            if (!min_branch && std::abs(d - clearance) < eps) return true;
            if (min_branch) {
                if (d < best) {
                    second = best;
                    best = d;
                } else if (d < second) {
                    second = d;
                }
            }
            return false;
        };
        for (const Point2& v : ring.vertices())
            if (visit(dist(q, v))) return true;
        for (std::size_t l = 0; l < ring.edge_count(); ++l) {
            const Point2 a = ring.edge_start(l);
            const Point2 b = ring.edge_end(l);
            const Point2 ab = b - a;
            const double len = norm(ab);
            const double s = dot(q - a, ab) / (len * len);
            const double seg_d = point_segment_distance(q, a, b);
            // A foot sliding across a segment endpoint only matters while the
            // term can contribute.
            if (seg_d < clearance + eps &&
                (std::abs(s) * len < eps || std::abs(s - 1.0) * len < eps))
                return true;
            if (s >= 0.0 && s <= 1.0) {
                if (visit(dist(q, a + s * ab))) return true;
            }
        }
        if (min_branch && second - best < eps) return true;  // argmin tie
        return false;
    };

    for (std::size_t i = 0; i < p; ++i) {
        const Point2 q = pts[i];
        const bool in_container = contains(inst.container(), q);
        if (ring_near(inst.container(), q, !in_container)) return true;
        for (const Polygon& hole : inst.holes()) {
            const bool in_hole = contains(hole, q);
            if (ring_near(hole, q, in_hole)) return true;
        }
    }
    return false;
}

}  // namespace pdisp
