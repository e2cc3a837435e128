#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdisp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

struct BoundingBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double diagonal() const { return std::hypot(width(), height()); }
};

// Thrown on malformed polygons/instances at load time.
class InvalidGeometry : public std::runtime_error {
public:
    explicit InvalidGeometry(const std::string& what) : std::runtime_error(what) {}
};

// Simple polygon, normalized to counter-clockwise orientation on
// construction. Edge l runs from vertex l to vertex (l+1) mod n.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t edge_count() const { return vertices_.size(); }
    Point2 edge_start(std::size_t l) const { return vertices_[l]; }
    Point2 edge_end(std::size_t l) const {
        return vertices_[(l + 1) % vertices_.size()];
    }

    double area() const { return area_; }
    bool input_was_clockwise() const { return input_was_clockwise_; }
    const BoundingBox& bbox() const { return bbox_; }

private:
    std::vector<Point2> vertices_;
    double area_ = 0.0;
    bool input_was_clockwise_ = false;
    BoundingBox bbox_;
};

double signed_area(const std::vector<Point2>& ring);
double polygon_area(const Polygon& poly);

// Point-in-polygon (crossing number); boundary points count as inside.
bool contains(const Polygon& poly, Point2 q);
// Inside and not within eps of the boundary.
bool strictly_inside(const Polygon& poly, Point2 q, double eps = 0.0);

// Distance from q to the closest point of segment [a, b].
double point_segment_distance(Point2 q, Point2 a, Point2 b);
// Distance from q to the polygon boundary.
double boundary_distance(const Polygon& poly, Point2 q);

// Active edges of a CCW ring with respect to q: an edge is active iff
// (inside && q strictly left of it) || (!inside && q strictly right of it).
// Points on an edge's supporting line make that edge inactive. The same
// predicate serves container and holes; see active_edges_hole below.
std::vector<std::size_t> active_edges(const Polygon& poly, Point2 q, bool inside);

std::vector<std::size_t> active_edges_container(const Polygon& container, Point2 q,
                                                bool inside);
// For holes the geometric rule coincides with the container rule once the
// ring is CCW-normalized: near-facing edges are active for exterior points
// and every locally visible edge for interior ones.
std::vector<std::size_t> active_edges_hole(const Polygon& hole, Point2 q,
                                           bool inside_hole);

// Perpendicular feet of q on the given active edges, kept only when the
// projection lands on the segment (parameter t in [0, 1]).
struct FootSet {
    std::vector<Point2> points;
    std::vector<std::size_t> source_edges;
};

FootSet active_feet(const Polygon& poly, Point2 q,
                    const std::vector<std::size_t>& active);

// Container minus holes. Validated on construction: holes strictly inside
// the container, pairwise disjoint, all rings simple.
class Instance {
public:
    Instance(std::string name, Polygon container, std::vector<Polygon> holes);

    const std::string& name() const { return name_; }
    const Polygon& container() const { return container_; }
    const std::vector<Polygon>& holes() const { return holes_; }
    double area() const { return area_; }
    const BoundingBox& bbox() const { return container_.bbox(); }
    // Characteristic length used for tolerance scaling.
    double scale() const { return container_.bbox().diagonal(); }

    bool contains_point(Point2 q) const;      // in container, not strictly in any hole
    double boundary_distance(Point2 q) const; // min over container and hole edges

private:
    std::string name_;
    Polygon container_;
    std::vector<Polygon> holes_;
    double area_ = 0.0;
};

}  // namespace pdisp
