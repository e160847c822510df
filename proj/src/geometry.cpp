#include "pixrec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pixrec/error.hpp"

namespace pixrec {

Rational cross(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (cross(a, b, p).sign() != 0) return false;
    return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y &&
           p.y <= max(a.y, b.y);
}

std::vector<Point> hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p).sign() <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        const auto& p = pts[i];
        while (k >= t && cross(h[k - 2], h[k - 1], p).sign() <= 0) --k;
        h[k++] = p;
    }
    h.resize(k - 1);
    return h;
}

Rational interpolate_y(const Point& a, const Point& b, const Rational& x) {
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> pts) {
    if (pts.empty()) throw PreconditionError("ConvexPolygon: no vertices");
    v_ = hull(pts);
    for (const auto& p : pts) {
        bool onBoundary = false;
        if (v_.size() == 1) {
            onBoundary = p == v_[0];
        } else {
            for (std::size_t i = 0; i < v_.size() && !onBoundary; ++i)
                onBoundary = on_segment(v_[i], v_[(i + 1) % v_.size()], p);
        }
        if (!onBoundary) throw PreconditionError("ConvexPolygon: vertices are not in convex position");
    }
}

std::vector<Segment> ConvexPolygon::edges() const {
    std::vector<Segment> e;
    if (v_.size() == 2) {
        e.push_back({v_[0], v_[1]});
    } else if (v_.size() > 2) {
        for (std::size_t i = 0; i < v_.size(); ++i) e.push_back({v_[i], v_[(i + 1) % v_.size()]});
    }
    return e;
}

Rational ConvexPolygon::min_x() const {
    return std::min_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.x < b.x; })->x;
}
Rational ConvexPolygon::max_x() const {
    return std::max_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.x < b.x; })->x;
}
Rational ConvexPolygon::min_y() const {
    return std::min_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
}
Rational ConvexPolygon::max_y() const {
    return std::max_element(v_.begin(), v_.end(), [](auto& a, auto& b) { return a.y < b.y; })->y;
}

bool ConvexPolygon::contains(const Point& p) const {
    if (v_.size() == 1) return p == v_[0];
    if (v_.size() == 2) return on_segment(v_[0], v_[1], p);
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (cross(v_[i], v_[(i + 1) % v_.size()], p).sign() < 0) return false;
    return true;
}

std::optional<YInterval> ConvexPolygon::section(const Rational& x) const {
    return strip_range(x, x);
}

std::optional<YInterval> ConvexPolygon::strip_range(const Rational& xa, const Rational& xb) const {
    const Rational lo = max(xa, min_x());
    const Rational hi = min(xb, max_x());
    if (hi < lo) return std::nullopt;
    std::optional<Rational> ymin, ymax;
    auto take = [&](const Rational& y) {
        if (!ymin || y < *ymin) ymin = y;
        if (!ymax || *ymax < y) ymax = y;
    };
    for (const auto& v : v_)
        if (lo <= v.x && v.x <= hi) take(v.y);
    for (const auto& e : edges()) {
        if (e.a.x == e.b.x) continue;
        const Rational ex0 = min(e.a.x, e.b.x);
        const Rational ex1 = max(e.a.x, e.b.x);
        for (const Rational* x : {&lo, &hi})
            if (ex0 < *x && *x < ex1) take(interpolate_y(e.a, e.b, *x));
    }
    if (!ymin) return std::nullopt;
    return YInterval{*ymin, *ymax};
}

Rational ConvexPolygon::area() const {
    Rational twice(0);
    if (v_.size() < 3) return twice;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const auto& a = v_[i];
        const auto& b = v_[(i + 1) % v_.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / Rational(2);
}

double ConvexPolygon::perimeter() const {
    double len = 0;
    for (const auto& e : edges())
        len += std::hypot((e.b.x - e.a.x).to_double(), (e.b.y - e.a.y).to_double());
    // a segment's boundary runs along it twice
    return v_.size() == 2 ? 2 * len : len;
}

namespace {

Rational scene_extreme(const PLScene& s, Rational (ConvexPolygon::*f)() const, bool wantMax) {
    if (s.polygons.empty()) throw PreconditionError("PLScene: no polygons");
    Rational r = (s.polygons[0].*f)();
    for (const auto& p : s.polygons) {
        const Rational v = (p.*f)();
        if (wantMax ? r < v : v < r) r = v;
    }
    return r;
}

}  // namespace

Rational PLScene::min_x() const { return scene_extreme(*this, &ConvexPolygon::min_x, false); }
Rational PLScene::max_x() const { return scene_extreme(*this, &ConvexPolygon::max_x, true); }
Rational PLScene::min_y() const { return scene_extreme(*this, &ConvexPolygon::min_y, false); }
Rational PLScene::max_y() const { return scene_extreme(*this, &ConvexPolygon::max_y, true); }

bool segments_intersect(const Segment& s, const Segment& t) {
    const int d1 = cross(t.a, t.b, s.a).sign();
    const int d2 = cross(t.a, t.b, s.b).sign();
    const int d3 = cross(s.a, s.b, t.a).sign();
    const int d4 = cross(s.a, s.b, t.b).sign();
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    return on_segment(t.a, t.b, s.a) || on_segment(t.a, t.b, s.b) || on_segment(s.a, s.b, t.a) ||
           on_segment(s.a, s.b, t.b);
}

bool polygons_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    for (const auto& v : a.vertices())
        if (b.contains(v)) return true;
    for (const auto& v : b.vertices())
        if (a.contains(v)) return true;
    for (const auto& e : a.edges())
        for (const auto& f : b.edges())
            if (segments_intersect(e, f)) return true;
    return false;
}

namespace {

void add_crossings(const Segment& s, const Segment& t, std::vector<Point>& out) {
    if (!segments_intersect(s, t)) return;
    const Rational denom = (s.b.x - s.a.x) * (t.b.y - t.a.y) - (s.b.y - s.a.y) * (t.b.x - t.a.x);
    if (denom.sign() != 0) {
        const Rational num = (t.a.x - s.a.x) * (t.b.y - t.a.y) - (t.a.y - s.a.y) * (t.b.x - t.a.x);
        const Rational u = num / denom;
        out.push_back({s.a.x + u * (s.b.x - s.a.x), s.a.y + u * (s.b.y - s.a.y)});
        return;
    }
    // parallel and touching: collinear overlap, its endpoints are corners
    for (const Point* p : {&s.a, &s.b})
        if (on_segment(t.a, t.b, *p)) out.push_back(*p);
    for (const Point* p : {&t.a, &t.b})
        if (on_segment(s.a, s.b, *p)) out.push_back(*p);
}

}  // namespace

std::vector<Point> candidate_vertices(const PLScene& scene) {
    std::vector<Point> out;
    for (const auto& p : scene.polygons)
        out.insert(out.end(), p.vertices().begin(), p.vertices().end());
    for (std::size_t i = 0; i < scene.polygons.size(); ++i) {
        const auto ei = scene.polygons[i].edges();
        for (std::size_t j = i + 1; j < scene.polygons.size(); ++j) {
            const auto ej = scene.polygons[j].edges();
            for (const auto& s : ei)
                for (const auto& t : ej) add_crossings(s, t, out);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_generic(const PLScene& scene) {
    const auto pts = candidate_vertices(scene);
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x == pts[i - 1].x) return false;
    return true;
}

YIntervalList merge_intervals(std::vector<YInterval> iv) {
    std::sort(iv.begin(), iv.end(), [](const YInterval& a, const YInterval& b) { return a.lo < b.lo; });
    YIntervalList out;
    for (auto& i : iv) {
        if (!out.empty() && i.lo <= out.back().hi) {
            if (out.back().hi < i.hi) out.back().hi = i.hi;
        } else {
            out.push_back(std::move(i));
        }
    }
    return out;
}

YIntervalList line_section(const PLScene& scene, const Rational& x) {
    std::vector<YInterval> iv;
    for (const auto& p : scene.polygons)
        if (auto s = p.section(x)) iv.push_back(std::move(*s));
    return merge_intervals(std::move(iv));
}

namespace {

std::vector<Rational> candidate_abscissas(const PLScene& scene) {
    std::vector<Rational> xs;
    for (const auto& p : candidate_vertices(scene)) xs.push_back(p.x);
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

std::vector<Rational> jumping_set(const PLScene& scene) {
    if (!is_generic(scene)) throw PreconditionError("jumping_set: scene is not generic");
    const auto xs = candidate_abscissas(scene);
    std::vector<long> gap(xs.size() + 1, 0);  // counter on open gaps; ends are empty
    for (std::size_t k = 0; k + 1 < xs.size(); ++k)
        gap[k + 1] = component_count(scene, (xs[k] + xs[k + 1]) / Rational(2));
    std::vector<Rational> out;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const long here = component_count(scene, xs[k]);
        if (here != gap[k] || here != gap[k + 1]) out.push_back(xs[k]);
    }
    return out;
}

long scene_euler(const PLScene& scene) {
    const auto xs = candidate_abscissas(scene);
    long chi = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        chi += component_count(scene, xs[k]);
        if (k + 1 < xs.size()) chi -= component_count(scene, (xs[k] + xs[k + 1]) / Rational(2));
    }
    return chi;
}

long scene_components(const PLScene& scene) {
    const std::size_t n = scene.polygons.size();
    DisjointSets ds(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (polygons_intersect(scene.polygons[i], scene.polygons[j])) ds.unite(i, j);
    long count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (ds.find(i) == i) ++count;
    return count;
}

}  // namespace pixrec
