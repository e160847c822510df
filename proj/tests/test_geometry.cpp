#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pixrec/error.hpp"
#include "pixrec/geometry.hpp"
#include "pixrec/scene_io.hpp"

using namespace pixrec;

namespace {

Rational q(long n, long d) { return Rational(n, d); }

PLScene scene_of(std::vector<ConvexPolygon> polys) { return PLScene{"t", std::move(polys)}; }

ConvexPolygon box(Rational x0, Rational x1, Rational y0, Rational y1) {
    return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// exact intersection of two closed segments, if a single point
std::optional<Point> crossing(const Segment& s, const Segment& t) {
    const Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y, d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
    const Rational den = d1x * d2y - d1y * d2x;
    if (den.sign() == 0) return std::nullopt;
    const Rational u = ((t.a.x - s.a.x) * d2y - (t.a.y - s.a.y) * d2x) / den;
    const Rational v = ((t.a.x - s.a.x) * d1y - (t.a.y - s.a.y) * d1x) / den;
    if (u.sign() < 0 || u > Rational(1) || v.sign() < 0 || v > Rational(1)) return std::nullopt;
    return Point{s.a.x + u * d1x, s.a.y + u * d1y};
}

}  // namespace

TEST_CASE("rational normal form and parsing") {
    CHECK(Rational(2, -4) == q(-1, 2));
    CHECK(Rational(2, -4).den() == 2);
    CHECK(Rational::parse("3/6") == q(1, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x/2"), std::invalid_argument);
    CHECK(q(7, 2).floor_long() == 3);
    CHECK(q(-7, 2).floor_long() == -4);
    CHECK(q(-7, 2).ceil_long() == -3);
}

TEST_CASE("floor_pow and ceil_pow agree with integer power comparisons") {
    CHECK(floor_pow(512, q(2, 3)) == 64);
    CHECK(floor_pow(32, q(2, 3)) == 10);
    CHECK(floor_pow(64, q(1, 2)) == 8);
    // s = floor(m^(11/20)) iff s^20 <= m^11 < (s+1)^20
    for (long m = 1; m <= 600; ++m) {
        const long s = floor_pow(m, q(11, 20));
        mpz_class mm = m, lo = s, hi = s + 1, m11, l20, h20;
        mpz_pow_ui(m11.get_mpz_t(), mm.get_mpz_t(), 11);
        mpz_pow_ui(l20.get_mpz_t(), lo.get_mpz_t(), 20);
        mpz_pow_ui(h20.get_mpz_t(), hi.get_mpz_t(), 20);
        CHECK(l20 <= m11);
        CHECK(m11 < h20);
    }
    // ceil((1/eps)^(2/3)) for eps = 1/n: s^3 >= n^2 > (s-1)^3
    for (long n = 1; n <= 600; ++n) {
        const long s = ceil_pow(Rational(n), q(2, 3));
        CHECK(s * s * s >= n * n);
        CHECK((s - 1) * (s - 1) * (s - 1) < n * n);
    }
}

TEST_CASE("convex polygon construction") {
    const ConvexPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {q(1, 2), 0}});
    CHECK(sq.size() == 4);
    CHECK(sq.area() == Rational(1));
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, q(1, 2)}, {1, 2}, {0, 2}}), PreconditionError);
    const ConvexPolygon seg({{0, 0}, {3, 4}});
    CHECK(seg.is_segment());
    CHECK(seg.perimeter() == doctest::Approx(10.0));  // a segment counts twice
    CHECK(ConvexPolygon({{1, 1}, {1, 1}}).is_point());
}

TEST_CASE("candidate vertices") {
    SUBCASE("unit square gives its corners") {
        CHECK(candidate_vertices(scene_of({box(0, 1, 0, 1)})).size() == 4);
    }
    SUBCASE("two crossing segments give endpoints plus crossing") {
        const auto c = candidate_vertices(scene_of({ConvexPolygon({{0, 0}, {1, 1}}), ConvexPolygon({{0, 1}, {1, 0}})}));
        CHECK(c.size() == 5);
        CHECK(std::find(c.begin(), c.end(), Point{q(1, 2), q(1, 2)}) != c.end());
    }
    SUBCASE("x-shape: corners plus brute-force edge crossings") {
        const auto scene = builtin_scene("x-shape");
        std::set<Point> expected;
        for (const auto& p : scene.polygons)
            for (const auto& v : p.vertices()) expected.insert(v);
        const auto& A = scene.polygons[0];
        const auto& B = scene.polygons[1];
        for (const auto& e : A.edges())
            for (const auto& f : B.edges())
                if (auto x = crossing(e, f)) expected.insert(*x);
        const auto got = candidate_vertices(scene);
        CHECK(std::set<Point>(got.begin(), got.end()) == expected);
        // thin bars crossing once transversally: each long edge of one bar
        // meets both long edges of the other
        CHECK(expected.size() == 12);
    }
    SUBCASE("stable under permutation of the polygon list") {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 30; ++t) {
            std::vector<ConvexPolygon> ps;
            for (int k = 0; k < 3; ++k) ps.emplace_back(oracle::random_convex(rng, 97, 0, 97));
            auto a = candidate_vertices(scene_of(ps));
            std::reverse(ps.begin(), ps.end());
            auto b = candidate_vertices(scene_of(ps));
            CHECK(a == b);
            CHECK(a == candidate_vertices(scene_of(ps)));
        }
    }
}

TEST_CASE("genericity") {
    CHECK_FALSE(is_generic(scene_of({box(0, 1, 0, 1)})));
    CHECK(is_generic(scene_of({ConvexPolygon({shear({0, 0}), shear({1, 0}), shear({1, 1}), shear({0, 1})})})));
    const ConvexPolygon t1({{0, 0}, {1, 0}, {q(1, 3), 1}});
    const ConvexPolygon t2({{q(1, 3), 5}, {2, 5}, {3, 6}});
    CHECK_FALSE(is_generic(scene_of({t1, t2})));
    for (const auto& n : builtin_scene_names()) CHECK_MESSAGE(is_generic(builtin_scene(n)), n);
}

TEST_CASE("line sections") {
    CHECK(line_section(scene_of({box(0, 1, 0, 1)}), q(1, 2)) == YIntervalList{{0, 1}});
    CHECK(line_section(scene_of({box(0, 1, 0, 1)}), Rational(2)).empty());
    CHECK(line_section(scene_of({box(0, 1, 0, 1), box(0, 1, 2, 3)}), q(1, 2)).size() == 2);
    const auto x = builtin_scene("x-shape");
    CHECK(component_count(x, q(1, 10)) == 2);
    CHECK(component_count(x, q(1, 2)) == 1);
    CHECK(component_count(x, q(9, 10)) == 2);
    // a point contributes a degenerate interval
    CHECK(line_section(scene_of({ConvexPolygon({{1, 2}})}), Rational(1)) == YIntervalList{{2, 2}});

    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<ConvexPolygon> ps;
        for (int k = 0; k < 4; ++k) ps.emplace_back(oracle::random_convex(rng, 53, 0, 53));
        const auto s = scene_of(ps);
        for (long k = 0; k <= 106; ++k) {
            const auto iv = line_section(s, q(k, 106));
            for (std::size_t i = 0; i < iv.size(); ++i) {
                CHECK(iv[i].lo <= iv[i].hi);
                if (i > 0) CHECK(iv[i - 1].hi < iv[i].lo);
            }
        }
    }
}

TEST_CASE("jumping set") {
    SUBCASE("sheared square jumps at its extreme abscissas") {
        const auto s = builtin_scene("sheared-square");
        const auto j = jumping_set(s);
        REQUIRE(j.size() == 2);
        CHECK(j[0] == s.min_x());
        CHECK(j[1] == s.max_x());
    }
    SUBCASE("the bottom of a V is not a jump") {
        const auto j = jumping_set(builtin_scene("v-wedge"));
        CHECK(std::find(j.begin(), j.end(), Rational(0)) == j.end());
        CHECK(j == std::vector<Rational>{Rational(-1), Rational(1)});
    }
    SUBCASE("x-shape: two left tips, entry and exit of the overlap, two right tips") {
        const auto s = builtin_scene("x-shape");
        const auto j = jumping_set(s);
        REQUIRE(j.size() == 6);
        CHECK(j[0] == q(1, 3125));
        CHECK(j[1] == q(1, 1331));
        CHECK(j[4] == 1 - q(1, 2401));
        CHECK(j[5] == 1 - q(1, 3125));
        // dense scan: the counter changes between consecutive samples exactly
        // around the reported points
        const long n = 20000;
        long prev = component_count(s, Rational(0));
        long changes = 0;
        for (long k = 1; k <= n; ++k) {
            const long c = component_count(s, q(2 * k - 1, 2 * n) * Rational(1));
            if (c != prev) ++changes;
            prev = c;
        }
        CHECK(changes == 6);
    }
    SUBCASE("jumping set is contained in the candidate abscissas") {
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            const auto s = random_scene(seed);
            const auto cand = candidate_vertices(s);
            for (const auto& x : jumping_set(s))
                CHECK(std::any_of(cand.begin(), cand.end(), [&](const Point& p) { return p.x == x; }));
        }
    }
    CHECK_THROWS_AS(jumping_set(scene_of({box(0, 1, 0, 1)})), PreconditionError);
}

TEST_CASE("scene Euler characteristic and components") {
    CHECK(scene_euler(builtin_scene("annulus")) == 0);
    CHECK(scene_components(builtin_scene("annulus")) == 1);
    CHECK(scene_euler(builtin_scene("stacked-squares")) == 2);
    CHECK(scene_components(builtin_scene("stacked-squares")) == 2);
    for (const char* n : {"sheared-square", "triangle", "x-shape", "v-wedge", "angle-1-1/2", "angle-1-2/3"}) {
        CHECK_MESSAGE(scene_euler(builtin_scene(n)) == 1, n);
        CHECK_MESSAGE(scene_components(builtin_scene(n)) == 1, n);
    }
}

TEST_CASE("scene JSON") {
    const auto s = builtin_scene("annulus");
    const auto back = parse_scene(scene_to_json(s));
    REQUIRE(back.polygons.size() == s.polygons.size());
    for (std::size_t i = 0; i < s.polygons.size(); ++i) CHECK(back.polygons[i].vertices() == s.polygons[i].vertices());
    const auto p = parse_scene(R"({"name":"sq","polygons":[[[0,0],["1",0],["2/2","1"],[0,"3/3"]]]})");
    CHECK(p.polygons[0].area() == Rational(1));
    CHECK_THROWS_AS(parse_scene("{"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"polygons":[[["1/0",0]]]})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"polygons":[[]]})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"polygons":[]})"), ParseError);
    CHECK_THROWS_AS(parse_scene(R"({"polygons":[[[0,0],[2,0],[1,"1/2"],[1,2],[0,2]]]})"), ParseError);
}
