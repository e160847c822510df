#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pixrec/columns.hpp"
#include "pixrec/scene_io.hpp"

using namespace pixrec;

namespace {

Rational q(long n, long d) { return Rational(n, d); }

PixelMatrix column_matrix(const std::vector<int>& col) {
    PixelMatrix mx;
    mx.m = static_cast<long>(col.size());
    mx.cells.assign(static_cast<std::size_t>(mx.m * mx.m), 0);
    for (long l = 1; l <= mx.m; ++l) mx.set(1, l, col[static_cast<std::size_t>(l - 1)] != 0);
    return mx;
}

// seeded PL function on [0, 1] with vertices at multiples of 1/(n*35)
PLFunction random_pl(std::mt19937_64& rng, long pieces, long maxSlopeNum) {
    std::uniform_int_distribution<long> dy(-maxSlopeNum, maxSlopeNum);
    PLFunction f;
    Rational y = q(1, 2);
    for (long k = 0; k <= pieces; ++k) {
        const Rational x = q(k, pieces);
        f.vertices.push_back({x, y});
        y += q(dy(rng), pieces * 35);
    }
    return f;
}

}  // namespace

TEST_CASE("stacks of a matrix column") {
    const auto s = stacks_of_column(column_matrix({0, 1, 1, 0, 1}), 1);
    CHECK(s.count() == 2);
    CHECK(s.stacks == std::vector<RowRun>{{2, 3}, {5, 5}});
    CHECK(stacks_of_column(column_matrix({0, 0, 0}), 1).count() == 0);
}

TEST_CASE("stack counter") {
    const auto sq = builtin_scene("sheared-square");
    const Rational e = q(1, 64);
    const auto p = pixelate_scene(sq, e);
    CHECK(stack_counter(p, q(1, 2) + q(1, 128)) == 1);
    CHECK(stack_counter(p, Rational(3) + q(1, 128)) == 0);
    CHECK_THROWS_AS(stack_counter(p, q(1, 2)), PreconditionError);

    // stacked squares: gap 3/25, so eps <= 1/25 leaves three free rows at least
    const auto st = builtin_scene("stacked-squares");
    for (long n : {25L, 32L, 60L}) {
        const Rational en = q(1, n);
        const auto pp = pixelate_scene(st, en);
        for (long i = 3; i <= n - 2; ++i) {
            const Rational x = en * Rational(i) - en / Rational(2);
            CHECK(stack_counter(pp, x) == component_count(st, x));
            CHECK(stack_counter(pp, x) == 2);
        }
    }
}

TEST_CASE("column statistics") {
    Pixelation one(q(1, 3));
    one.add(1, 1);
    const auto s = column_stats(one, q(1, 6));
    CHECK(s.top == q(1, 3));
    CHECK(s.bottom == Rational(0));
    CHECK(s.height == Rational(1));
    CHECK_THROWS_AS(column_stats(one, q(7, 6)), EmptyColumnError);
    CHECK_THROWS_AS(column_stats(one, q(1, 3)), PreconditionError);

    SUBCASE("f(x) = x + phase: height 3 on the grid-aligned phase, 2 otherwise") {
        for (long k = 0; k < 7; ++k) {
            const Rational ph = q(k, 7);
            const auto p = pixelate_segment({{0, ph}, {20, 20 + ph}}, Rational(1));
            for (long i = 2; i <= 19; ++i) {
                const auto h = column_stats(p, Rational(i) - q(1, 2)).height;
                CHECK(h == Rational(k == 0 ? 3 : 2));
            }
        }
    }
    SUBCASE("height bound h <= |f'| + 2 on PL graphs") {
        std::mt19937_64 rng(29);
        for (int t = 0; t < 50; ++t) {
            const auto f = random_pl(rng, 7, 70);
            const double M = f.lipschitz().to_double();
            for (long n : {16L, 45L, 128L}) {
                const Rational e = q(1, n);
                const auto p = pixelate_pl_function(f, e);
                for (long i = 1; i <= n; ++i) {
                    // a generic point inside the column, off the breakpoints
                    const Rational x = e * Rational(i) - e * q(1 + t % 5, 7);
                    CHECK(column_stats(p, x).height.to_double() <= M + 2 + 1e-12);
                }
            }
        }
    }
    SUBCASE("derivative lower bound |f'(x)| <= h + N eps + 2 on smooth graphs") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.2, 1);
        for (int t = 0; t < 20; ++t) {
            const double A = 3 * u(rng), w = 2 + 4 * u(rng), ph = u(rng);
            FunctionGraphSpec f{[=](double x) { return A * std::sin(w * x + ph); },
                                [=](double x) { return A * w * std::cos(w * x + ph); }, A * w, A * w * w, 0.0, 1.0};
            for (long n : {32L, 100L}) {
                const Rational e = q(1, n);
                const auto p = pixelate_function(f, e);
                for (long i = 2; i < n; ++i) {
                    const Rational x = e * Rational(i) - e * q(3, 7);
                    const double h = column_stats(p, x).height.to_double();
                    CHECK(std::abs(f.df(x.to_double())) <= h + A * w * w / n + 2);
                    CHECK(h <= A * w + 2 + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("jump points") {
    SUBCASE("a wide band has none") {
        const auto mx = as_matrix(pixelate_scene(builtin_scene("sheared-square"), q(1, 50)));
        CHECK(jump_points(mx).empty());
    }
    SUBCASE("step scene: one stack, then two") {
        const PLScene s{"step",
                        {ConvexPolygon({shear({q(1, 49), q(1, 25)}), shear({q(47, 49), q(1, 25)}),
                                        shear({q(47, 49), q(3, 25)}), shear({q(1, 49), q(3, 25)})}),
                         ConvexPolygon({shear({q(25, 49), q(8, 25)}), shear({q(47, 49), q(8, 25)}),
                                        shear({q(47, 49), q(9, 25)}), shear({q(25, 49), q(9, 25)})})}};
        const auto mx = as_matrix(pixelate_scene(s, q(1, 40)));
        CHECK(jump_points(mx).size() == 1);
    }
    SUBCASE("x-shape: every jump point lies near a jumping abscissa") {
        const auto s = builtin_scene("x-shape");
        const auto J = jumping_set(s);
        for (long n : {64L, 256L}) {
            const Rational e = q(1, n);
            const auto pix = pixelate_scene(s, e);
            const auto mx = as_matrix(pix);
            const auto jp = jump_points(mx);
            CHECK_FALSE(jp.empty());
            for (long i : jp) {
                // boundary between matrix columns i and i+1
                const Rational x = e * Rational(i + mx.colOffset);
                Rational best = abs(x - J[0]);
                for (const auto& j : J) best = min(best, abs(x - j));
                CHECK(best <= e * Rational(n / 8));
            }
        }
    }
}

TEST_CASE("separation") {
    const Rational e = q(1, 64);
    SUBCASE("flat graphs ten pixels apart") {
        PLFunction f{{{0, q(1, 7)}, {1, q(1, 7)}}};
        PLFunction g{{{0, q(1, 7) + 10 * e}, {1, q(1, 7) + 10 * e}}};
        const auto r = separation_check(f, g, e);
        CHECK(r.hypothesis);
        CHECK(r.twoStacks);
        CHECK(r.columnsChecked > 60);
    }
    SUBCASE("zero gap fails the hypothesis") {
        PLFunction f{{{0, q(1, 7)}, {1, q(3, 7)}}};
        CHECK_FALSE(separation_check(f, f, e).hypothesis);
    }
    SUBCASE("random PL pairs exactly at the threshold gap") {
        std::mt19937_64 rng(37);
        for (int t = 0; t < 50; ++t) {
            const auto f = random_pl(rng, 5, 40);
            const Rational gap = (Rational(3) + f.lipschitz()) * e;
            PLFunction g = f;
            for (auto& v : g.vertices) v.y += gap;
            const auto r = separation_check(f, g, e);
            CHECK(r.hypothesis);
            CHECK(r.twoStacks);
        }
    }
    SUBCASE("sampled graphs") {
        FunctionGraphSpec f{[](double x) { return 0.3 + 0.1 * std::sin(3 * x); }, nullptr, 0.3, 0.9, 0.0, 1.0};
        FunctionGraphSpec g{[](double x) { return 0.5 + 0.1 * std::sin(3 * x); }, nullptr, 0.3, 0.9, 0.0, 1.0};
        const auto r = separation_check(f, g, e);
        CHECK(r.hypothesis);
        CHECK(r.twoStacks);
    }
}

TEST_CASE("pixelated intermediate value theorem on PL graphs") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const auto f = random_pl(rng, 1 + t % 9, 120);
        for (long n : {20L, 77L, 300L}) {
            const auto p = pixelate_pl_function(f, q(1, n));
            for (const auto& [i, runs] : p.columns()) CHECK(runs.size() == 1);
            // exact pixelation, cross-checked against the separating-axis oracle
            if (n == 20) {
                std::set<oracle::Cell> want;
                for (std::size_t k = 0; k + 1 < f.vertices.size(); ++k)
                    for (const auto& c : oracle::brute_pixelation({f.vertices[k], f.vertices[k + 1]}, q(1, n)))
                        want.insert(c);
                CHECK(oracle::cells_of(p) == want);
            }
        }
    }
}

TEST_CASE("empirical noise width settles") {
    for (const char* name : {"x-shape", "annulus", "stacked-squares", "triangle"}) {
        const auto s = builtin_scene(name);
        std::vector<long> ws;
        for (long n : {128L, 256L, 512L, 1024L}) {
            const auto nw = empirical_noise_width(s, pixelate_scene(s, q(1, n)));
            CHECK_MESSAGE(nw.jumpsNearby, name);
            ws.push_back(nw.w);
        }
        // the width in pixel units does not grow as eps shrinks
        for (long w : ws) CHECK_MESSAGE(w <= 3, name);
        CHECK_MESSAGE(std::abs(ws[3] - ws[2]) <= 1, name);
        MESSAGE(std::string(name) << ": w = " << ws[0] << ", " << ws[1] << ", " << ws[2] << ", " << ws[3]);
    }
}
