#include "pdisp/geometry.hpp"

#include <algorithm>
#include <limits>

namespace pdisp {

namespace {

// Relative tolerance for treating a cross product as zero.
constexpr double kCrossEps = 1e-14;

BoundingBox ring_bbox(const std::vector<Point2>& ring) {
    BoundingBox b{ring[0].x, ring[0].y, ring[0].x, ring[0].y};
    for (const Point2& v : ring) {
        b.min_x = std::min(b.min_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_x = std::max(b.max_x, v.x);
        b.max_y = std::max(b.max_y, v.y);
    }
    return b;
}

bool on_segment(Point2 q, Point2 a, Point2 b, double eps) {
    return point_segment_distance(q, a, b) <= eps;
}

// Proper or touching intersection of segments [a,b] and [c,d].
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    const double eps = 0.0;
    if (d1 == eps && on_segment(c, a, b, 0.0)) return true;
    if (d2 == eps && on_segment(d, a, b, 0.0)) return true;
    if (d3 == eps && on_segment(a, c, d, 0.0)) return true;
    if (d4 == eps && on_segment(b, c, d, 0.0)) return true;
    return false;
}

bool ring_is_simple(const std::vector<Point2>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex with edge i.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Point2 c = ring[j];
            const Point2 d = ring[(j + 1) % n];
            if (segments_intersect(a, b, c, d)) return false;
        }
    }
    return true;
}

bool rings_intersect(const Polygon& p, const Polygon& q) {
    for (std::size_t i = 0; i < p.edge_count(); ++i)
        for (std::size_t j = 0; j < q.edge_count(); ++j)
            if (segments_intersect(p.edge_start(i), p.edge_end(i), q.edge_start(j),
                                   q.edge_end(j)))
                return true;
    return false;
}

}  // namespace

double signed_area(const std::vector<Point2>& ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ring[i];
        const Point2 b = ring[(i + 1) % n];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3)
        throw InvalidGeometry("polygon needs at least 3 vertices");
    for (const Point2& v : vertices_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw InvalidGeometry("polygon vertex is not finite");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[(i + 1) % n];
        if (a.x == b.x && a.y == b.y)
            throw InvalidGeometry("polygon has coincident consecutive vertices");
    }
    const double sa = signed_area(vertices_);
    if (sa == 0.0) throw InvalidGeometry("polygon has zero area");
    if (sa < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
        input_was_clockwise_ = true;
    }
    area_ = std::abs(sa);
    if (!ring_is_simple(vertices_))
        throw InvalidGeometry("polygon is self-intersecting");
    bbox_ = ring_bbox(vertices_);
}

double polygon_area(const Polygon& poly) { return poly.area(); }

bool contains(const Polygon& poly, Point2 q) {
    const BoundingBox& b = poly.bbox();
    const double eps = kCrossEps * std::max(1.0, b.diagonal());
    const std::size_t n = poly.edge_count();
    // Boundary counts as inside.
    for (std::size_t i = 0; i < n; ++i)
        if (on_segment(q, poly.edge_start(i), poly.edge_end(i), eps)) return true;
    // Crossing number with the half-open edge rule (count an edge iff its
    // endpoints straddle the horizontal through q).
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly.edge_start(i);
        const Point2 c = poly.edge_end(i);
        if ((a.y > q.y) != (c.y > q.y)) {
            const double x_hit = a.x + (q.y - a.y) / (c.y - a.y) * (c.x - a.x);
            if (q.x < x_hit) inside = !inside;
        }
    }
    return inside;
}

bool strictly_inside(const Polygon& poly, Point2 q, double eps) {
    if (!contains(poly, q)) return false;
    const double band = std::max(eps, kCrossEps * std::max(1.0, poly.bbox().diagonal()));
    return boundary_distance(poly, q) > band;
}

double point_segment_distance(Point2 q, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return dist(q, a);
    double t = dot(q - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(q, a + t * ab);
}

double boundary_distance(const Polygon& poly, Point2 q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.edge_count(); ++i)
        best = std::min(best, point_segment_distance(q, poly.edge_start(i), poly.edge_end(i)));
    return best;
}

std::vector<std::size_t> active_edges(const Polygon& poly, Point2 q, bool inside) {
    std::vector<std::size_t> out;
    const double scale = std::max(1.0, poly.bbox().diagonal());
    const double eps = kCrossEps * scale;
    for (std::size_t l = 0; l < poly.edge_count(); ++l) {
        const Point2 a = poly.edge_start(l);
        const Point2 b = poly.edge_end(l);
        const double c = cross(b - a, q - a);
        if (std::abs(c) <= eps) continue;  // on the supporting line: inactive
        const bool left = c > 0.0;
        if (inside ? left : !left) out.push_back(l);
    }
    return out;
}

std::vector<std::size_t> active_edges_container(const Polygon& container, Point2 q,
                                                bool inside) {
    return active_edges(container, q, inside);
}

std::vector<std::size_t> active_edges_hole(const Polygon& hole, Point2 q,
                                           bool inside_hole) {
    return active_edges(hole, q, inside_hole);
}

FootSet active_feet(const Polygon& poly, Point2 q,
                    const std::vector<std::size_t>& active) {
    FootSet fs;
    for (std::size_t l : active) {
        const Point2 a = poly.edge_start(l);
        const Point2 b = poly.edge_end(l);
        const Point2 ab = b - a;
        const double len2 = dot(ab, ab);
        const double t = dot(q - a, ab) / len2;
        if (t < 0.0 || t > 1.0) continue;
        fs.points.push_back(a + t * ab);
        fs.source_edges.push_back(l);
    }
    return fs;
}

Instance::Instance(std::string name, Polygon container, std::vector<Polygon> holes)
    : name_(std::move(name)), container_(std::move(container)), holes_(std::move(holes)) {
    double hole_area = 0.0;
    for (std::size_t k = 0; k < holes_.size(); ++k) {
        const Polygon& h = holes_[k];
        if (rings_intersect(container_, h))
            throw InvalidGeometry("hole " + std::to_string(k) +
                                  " intersects the container boundary");
        for (const Point2& v : h.vertices())
            if (!strictly_inside(container_, v))
                throw InvalidGeometry("hole " + std::to_string(k) +
                                      " is not strictly inside the container");
        for (std::size_t j = 0; j < k; ++j) {
            if (rings_intersect(holes_[j], h) ||
                contains(holes_[j], h.vertices()[0]) ||
                contains(h, holes_[j].vertices()[0]))
                throw InvalidGeometry("holes " + std::to_string(j) + " and " +
                                      std::to_string(k) + " overlap");
        }
        hole_area += h.area();
    }
    area_ = container_.area() - hole_area;
    if (area_ <= 0.0) throw InvalidGeometry("region has non-positive area");
}

bool Instance::contains_point(Point2 q) const {
    if (!contains(container_, q)) return false;
    // Hole boundaries count as violating containment: any positive clearance
    // requirement excludes them anyway, and this keeps the checker strict.
    for (const Polygon& h : holes_)
        if (contains(h, q)) return false;
    return true;
}

double Instance::boundary_distance(Point2 q) const {
    double best = pdisp::boundary_distance(container_, q);
    for (const Polygon& h : holes_)
        best = std::min(best, pdisp::boundary_distance(h, q));
    return best;
}

}  // namespace pdisp
