#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pixrec/rational.hpp"

namespace pixrec {

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point& a, const Point& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

struct Segment {
    Point a;
    Point b;
};

/// Closed y-interval [lo, hi] on a vertical line.
struct YInterval {
    Rational lo;
    Rational hi;
    friend bool operator==(const YInterval&, const YInterval&) = default;
};

/// Sorted, pairwise disjoint closed intervals.
using YIntervalList = std::vector<YInterval>;

/// Orientation of (a, b, c): positive for a left turn.
Rational cross(const Point& a, const Point& b, const Point& c);

/// A closed convex polygon given by its strictly convex vertex cycle in
/// counterclockwise order. One vertex is a point, two a segment.
class ConvexPolygon {
public:
    ConvexPolygon() = default;

    /// Builds from the given vertices. Collinear interior vertices and
    /// duplicates are dropped; throws PreconditionError when the points are
    /// not in convex position or the list is empty.
    explicit ConvexPolygon(std::vector<Point> pts);

    const std::vector<Point>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    bool is_point() const { return v_.size() == 1; }
    bool is_segment() const { return v_.size() == 2; }

    /// Boundary edges in order; a segment yields one edge, a point none.
    std::vector<Segment> edges() const;

    Rational min_x() const;
    Rational max_x() const;
    Rational min_y() const;
    Rational max_y() const;

    bool contains(const Point& p) const;

    /// Vertical section at abscissa x, empty when the line misses.
    std::optional<YInterval> section(const Rational& x) const;

    /// y-range of the polygon restricted to the closed strip xa <= x <= xb.
    std::optional<YInterval> strip_range(const Rational& xa, const Rational& xb) const;

    Rational area() const;
    double perimeter() const;

private:
    std::vector<Point> v_;
};

struct PLScene {
    std::string name;
    std::vector<ConvexPolygon> polygons;

    Rational min_x() const;
    Rational max_x() const;
    Rational min_y() const;
    Rational max_y() const;
};

/// Two half-lines from the origin with slopes lower < upper, restricted to
/// the first `columns` unit columns.
struct AngleSpec {
    Rational lowerSlope;
    Rational upperSlope;
    long columns = 1;
};

bool segments_intersect(const Segment& s, const Segment& t);

/// Closed convex polygons intersect (including touching).
bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b);

/// Polygon corners plus all pairwise edge crossings, sorted and unique.
std::vector<Point> candidate_vertices(const PLScene& scene);

/// True iff all candidate vertices have pairwise distinct abscissas.
bool is_generic(const PLScene& scene);

/// Exact merged vertical section of the scene.
YIntervalList line_section(const PLScene& scene, const Rational& x);

/// Component counter: number of intervals of line_section.
inline long component_count(const PLScene& scene, const Rational& x) {
    return static_cast<long>(line_section(scene, x).size());
}

/// Sorted abscissas where the component counter jumps. Throws
/// PreconditionError for non-generic scenes.
std::vector<Rational> jumping_set(const PLScene& scene);

/// Euler characteristic of the scene computed from vertical sections.
long scene_euler(const PLScene& scene);

/// Number of connected components of the scene.
long scene_components(const PLScene& scene);

/// Merges a list of closed intervals into sorted disjoint ones.
YIntervalList merge_intervals(std::vector<YInterval> iv);

}  // namespace pixrec
