#include "pixrec/scene_io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pixrec/error.hpp"

namespace pixrec {

namespace {

Rational coordinate(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("scene: ") + e.what());
        }
    }
    throw ParseError("scene: coordinates must be integers or \"p/q\" strings");
}

}  // namespace

PLScene parse_scene(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scene: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("polygons") || !doc["polygons"].is_array())
        throw ParseError("scene: expected an object with a \"polygons\" array");
    PLScene s;
    s.name = doc.value("name", std::string("unnamed"));
    for (const auto& poly : doc["polygons"]) {
        if (!poly.is_array() || poly.empty()) throw ParseError("scene: every polygon needs at least one vertex");
        std::vector<Point> pts;
        for (const auto& v : poly) {
            if (!v.is_array() || v.size() != 2) throw ParseError("scene: a vertex is a pair [x, y]");
            pts.push_back({coordinate(v[0]), coordinate(v[1])});
        }
        try {
            s.polygons.emplace_back(std::move(pts));
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("scene: ") + e.what());
        }
    }
    if (s.polygons.empty()) throw ParseError("scene: no polygons");
    return s;
}

PLScene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("scene: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

std::string scene_to_json(const PLScene& scene) {
    nlohmann::json doc;
    doc["name"] = scene.name;
    doc["polygons"] = nlohmann::json::array();
    for (const auto& p : scene.polygons) {
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& v : p.vertices()) poly.push_back({v.x.str(), v.y.str()});
        doc["polygons"].push_back(poly);
    }
    return doc.dump(1);
}

Point shear(const Point& p) { return {p.x + p.y / Rational(35), p.y + p.x / Rational(37)}; }

namespace {

Rational q(long n, long d) { return Rational(n, d); }

ConvexPolygon sheared_rect(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
    return ConvexPolygon({shear({x0, y0}), shear({x1, y0}), shear({x1, y1}), shear({x0, y1})});
}

ConvexPolygon seg(const Point& a, const Point& b) { return ConvexPolygon({a, b}); }

const std::map<std::string, std::function<PLScene()>>& library() {
    static const std::map<std::string, std::function<PLScene()>> lib = {
        {"sheared-square",
         [] {
             // a sheared square; no side is close to vertical
             const Point p0{q(1, 49), q(8, 25)};
             const Point along{q(26, 49), q(-6, 25)};
             const Point up{q(17, 49), q(9, 25)};
             const Point p1{p0.x + along.x, p0.y + along.y};
             const Point p3{p0.x + up.x, p0.y + up.y};
             const Point p2{p1.x + up.x, p1.y + up.y};
             return PLScene{"sheared-square", {ConvexPolygon({p0, p1, p2, p3})}};
         }},
        {"triangle",
         [] {
             return PLScene{"triangle", {ConvexPolygon({{q(1, 49), q(8, 25)}, {q(47, 49), q(3, 25)}, {q(27, 49), q(18, 25)}})}};
         }},
        {"annulus",
         [] {
             const Rational a0 = q(1, 49), a1 = q(47, 49), b0 = q(4, 25), b1 = q(19, 25);
             const Rational c0 = q(15, 49), c1 = q(34, 49), d0 = q(9, 25), d1 = q(14, 25);
             return PLScene{"annulus",
                            {sheared_rect(a0, a1, b0, d0), sheared_rect(a0, a1, d1, b1), sheared_rect(a0, c0, d0, d1),
                             sheared_rect(c1, a1, d0, d1)}};
         }},
        {"x-shape",
         [] {
             // two thin bars; both left tips lie in (0, 1/512), both right tips in (1 - 1/1000, 1)
             const ConvexPolygon up({{q(1, 1331), q(4, 25)}, {1 - q(1, 1225), q(18, 25)}, {1 - q(1, 2401), q(19, 25)},
                                     {q(1, 625), q(5, 25)}});
             const ConvexPolygon down({{q(1, 2401), q(18, 25)}, {1 - q(1, 1331), q(4, 25)}, {1 - q(1, 3125), q(5, 25)},
                                       {q(1, 3125), q(19, 25)}});
             return PLScene{"x-shape", {up, down}};
         }},
        {"stacked-squares",
         [] {
             const Rational a0 = q(1, 49), a1 = q(47, 49);
             return PLScene{"stacked-squares",
                            {sheared_rect(a0, a1, q(4, 25), q(9, 25)), sheared_rect(a0, a1, q(12, 25), q(19, 25))}};
         }},
        {"v-wedge",
         [] { return PLScene{"v-wedge", {seg({-1, 1}, {0, 0}), seg({0, 0}, {1, 1})}}; }},
        {"angle-1-1/2",
         [] { return PLScene{"angle-1-1/2", {seg({0, 0}, {q(4, 5), q(2, 5)}), seg({0, 0}, {1, 1})}}; }},
        {"angle-1-2/3",
         [] { return PLScene{"angle-1-2/3", {seg({0, 0}, {q(4, 5), q(8, 15)}), seg({0, 0}, {1, 1})}}; }},
    };
    return lib;
}

}  // namespace

std::vector<std::string> builtin_scene_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : library()) out.push_back(k);
    return out;
}

PLScene builtin_scene(const std::string& name) {
    const auto& lib = library();
    auto it = lib.find(name);
    if (it == lib.end()) throw PreconditionError("unknown scene '" + name + "'");
    return it->second();
}

PLScene random_scene(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    constexpr long den = 385;
    auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    while (true) {
        PLScene s;
        s.name = "random-" + std::to_string(seed);
        const long pieces = uni(1, 3);
        while (static_cast<long>(s.polygons.size()) < pieces) {
            const long cx = uni(60, den - 60), cy = uni(60, den - 60);
            const long rx = uni(10, 110), ry = uni(10, 110);
            const long k = uni(1, 10) == 1 ? 2 : uni(3, 5);
            std::vector<Point> pts;
            for (long j = 0; j < k; ++j) {
                const long x = std::clamp(cx + uni(-rx, rx), 5L, den - 5), y = std::clamp(cy + uni(-ry, ry), 5L, den - 5);
                pts.push_back({Rational(x, den), Rational(y, den)});
            }
            try {
                s.polygons.emplace_back(std::move(pts));
            } catch (const PreconditionError&) {
                // not in convex position; draw again
            }
        }
        if (is_generic(s)) return s;
    }
}

}  // namespace pixrec
