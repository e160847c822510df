#include "pixrec/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pixrec/error.hpp"

namespace pixrec {

namespace {

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0L); }
    long find(long i) {
        while (parent[static_cast<std::size_t>(i)] != i)
            i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        return i;
    }
    void unite(long a, long b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
    long roots() {
        long n = 0;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (find(static_cast<long>(i)) == static_cast<long>(i)) ++n;
        return n;
    }
};

// number of integers covered by a union of inclusive integer ranges
long covered(std::vector<RowRun> r) {
    std::sort(r.begin(), r.end(), [](const RowRun& a, const RowRun& b) { return a.lo < b.lo; });
    long n = 0;
    long curLo = 0, curHi = -1;
    bool open = false;
    for (const auto& x : r) {
        if (open && x.lo <= curHi + 1) {
            curHi = std::max(curHi, x.hi);
        } else {
            if (open) n += curHi - curLo + 1;
            curLo = x.lo;
            curHi = x.hi;
            open = true;
        }
    }
    if (open) n += curHi - curLo + 1;
    return n;
}

}  // namespace

CubicalSummary cubical_homology(const Pixelation& p) {
    CubicalSummary s;
    if (p.empty()) return s;
    const auto& cols = p.columns();

    // run ids for union-find
    std::map<long, long> firstId;
    long nRuns = 0;
    for (const auto& [i, runs] : cols) {
        firstId[i] = nRuns;
        nRuns += static_cast<long>(runs.size());
        for (const auto& r : runs) {
            s.F += r.length();
            s.E += r.length() + 1;  // horizontal edges of this column
        }
    }

    UnionFind uf(static_cast<std::size_t>(nRuns));
    const long c0 = p.min_col(), c1 = p.max_col();
    for (long g = c0 - 1; g <= c1; ++g) {
        // vertical gridline between columns g and g + 1
        const auto& a = p.column(g);
        const auto& b = p.column(g + 1);
        if (a.empty() && b.empty()) continue;
        std::vector<RowRun> rows(a.begin(), a.end());
        rows.insert(rows.end(), b.begin(), b.end());
        s.E += covered(rows);
        std::vector<RowRun> verts;
        for (const auto& r : rows) verts.push_back({r.lo - 1, r.hi});
        s.V += covered(verts);

        if (a.empty() || b.empty()) continue;
        const long ia = firstId.at(g), ib = firstId.at(g + 1);
        std::size_t x = 0, y = 0;
        while (x < a.size() && y < b.size()) {
            if (a[x].lo <= b[y].hi + 1 && b[y].lo <= a[x].hi + 1)
                uf.unite(ia + static_cast<long>(x), ib + static_cast<long>(y));
            if (a[x].hi < b[y].hi) ++x; else ++y;
        }
    }
    s.chi = s.V - s.E + s.F;
    s.beta0 = uf.roots();
    s.beta1 = s.beta0 - s.chi;
    return s;
}

namespace {

struct Line {
    Rational x0, x1, y0, y1;
    Rational at(const Rational& x) const { return y0 + (y1 - y0) * (x - x0) / (x1 - x0); }
};

}  // namespace

SlabDecomposition slab_union(const std::vector<Trapezoid>& traps) {
    SlabDecomposition d;
    std::vector<Line> lines;
    for (const auto& t : traps) {
        if (t.xR < t.xL) throw PreconditionError("slab_union: trapezoid with xR < xL");
        if (t.yTL < t.yBL || t.yTR < t.yBR) throw PreconditionError("slab_union: inverted trapezoid wall");
        d.xs.push_back(t.xL);
        d.xs.push_back(t.xR);
        if (t.xL < t.xR) {
            lines.push_back({t.xL, t.xR, t.yBL, t.yBR});
            lines.push_back({t.xL, t.xR, t.yTL, t.yTR});
        }
    }
    // crossings of boundary lines inside common x-ranges
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.x0 < b.x0; });
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size() && lines[j].x0 < lines[i].x1; ++j) {
            const Rational lo = lines[j].x0;
            const Rational hi = min(lines[i].x1, lines[j].x1);
            if (!(lo < hi)) continue;
            const Rational d0 = lines[i].at(lo) - lines[j].at(lo);
            const Rational d1 = lines[i].at(hi) - lines[j].at(hi);
            if (d0.sign() * d1.sign() < 0) d.xs.push_back(lo + (hi - lo) * d0 / (d0 - d1));
        }
    }
    std::sort(d.xs.begin(), d.xs.end());
    d.xs.erase(std::unique(d.xs.begin(), d.xs.end()), d.xs.end());
    if (d.xs.empty()) return d;

    const std::size_t ns = d.xs.size() - 1;
    d.slabs.resize(ns);
    std::vector<std::vector<YInterval>> walls(d.xs.size());
    for (const auto& t : traps) {
        const auto k0 = static_cast<std::size_t>(std::lower_bound(d.xs.begin(), d.xs.end(), t.xL) - d.xs.begin());
        if (t.xL == t.xR) {
            walls[k0].push_back({min(t.yBL, t.yBR), max(t.yTL, t.yTR)});
            continue;
        }
        const Line bot{t.xL, t.xR, t.yBL, t.yBR};
        const Line top{t.xL, t.xR, t.yTL, t.yTR};
        for (std::size_t k = k0; k < ns && d.xs[k + 1] <= t.xR; ++k)
            d.slabs[k].push_back({bot.at(d.xs[k]), bot.at(d.xs[k + 1]), top.at(d.xs[k]), top.at(d.xs[k + 1])});
    }
    for (auto& pieces : d.slabs) {
        // no boundary line crosses inside a slab, so the order at the midpoint decides
        std::sort(pieces.begin(), pieces.end(),
                  [](const SlabPiece& a, const SlabPiece& b) { return a.yb0 + a.yb1 < b.yb0 + b.yb1; });
        std::vector<SlabPiece> merged;
        for (const auto& p : pieces) {
            if (!merged.empty() && p.yb0 + p.yb1 <= merged.back().yt0 + merged.back().yt1) {
                auto& cur = merged.back();
                if (cur.yt0 + cur.yt1 < p.yt0 + p.yt1) {
                    cur.yt0 = p.yt0;
                    cur.yt1 = p.yt1;
                }
            } else {
                merged.push_back(p);
            }
        }
        pieces = std::move(merged);
    }
    d.walls.resize(d.xs.size());
    for (std::size_t k = 0; k < walls.size(); ++k) d.walls[k] = merge_intervals(std::move(walls[k]));
    return d;
}

Rational area(const SlabDecomposition& d) {
    Rational a(0);
    for (std::size_t k = 0; k < d.slabs.size(); ++k) {
        const Rational w = d.xs[k + 1] - d.xs[k];
        for (const auto& p : d.slabs[k]) a += w * ((p.yt0 - p.yb0) + (p.yt1 - p.yb1)) / Rational(2);
    }
    return a;
}

namespace {

struct DirEdge {
    Point a, b;
};

// closure of A \ B for sorted disjoint closed interval lists; point pieces dropped
std::vector<YInterval> difference(const YIntervalList& A, const YIntervalList& B) {
    std::vector<YInterval> out;
    for (const auto& a : A) {
        Rational start = a.lo;
        for (const auto& b : B) {
            if (b.hi < start || a.hi < b.lo) continue;
            if (start < b.lo) out.push_back({start, b.lo});
            start = max(start, b.hi);
        }
        if (start < a.hi) out.push_back({start, a.hi});
    }
    return out;
}

// position of v in clockwise order starting at ref (inclusive)
bool cw_before(const Point& ref, const Point& u, const Point& v) {
    const Point o{0, 0};
    auto half = [&](const Point& w) {
        const int c = cross(o, ref, w).sign();
        if (c < 0) return 0;
        if (c == 0 && (ref.x * w.x + ref.y * w.y).sign() > 0) return 0;
        return 1;
    };
    auto first = [&](const Point& w) {
        return cross(o, ref, w).sign() == 0 && (ref.x * w.x + ref.y * w.y).sign() > 0;
    };
    if (first(u) != first(v)) return first(u);
    const int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return cross(o, u, v).sign() < 0;
}

}  // namespace

std::vector<Loop> boundary_loops(const SlabDecomposition& d) {
    std::vector<DirEdge> edges;
    std::vector<Loop> loops;
    const std::size_t ns = d.slabs.size();
    for (std::size_t k = 0; k < ns; ++k) {
        const Rational& x0 = d.xs[k];
        const Rational& x1 = d.xs[k + 1];
        for (const auto& p : d.slabs[k]) {
            edges.push_back({{x0, p.yb0}, {x1, p.yb1}});
            edges.push_back({{x1, p.yt1}, {x0, p.yt0}});
        }
    }
    for (std::size_t k = 0; k < d.xs.size(); ++k) {
        const Rational& x = d.xs[k];
        std::vector<YInterval> l, r;
        std::vector<Rational> cuts;
        if (k >= 1)
            for (const auto& p : d.slabs[k - 1]) {
                l.push_back({p.yb1, p.yt1});
                cuts.push_back(p.yb1);
                cuts.push_back(p.yt1);
            }
        if (k < ns)
            for (const auto& p : d.slabs[k]) {
                r.push_back({p.yb0, p.yt0});
                cuts.push_back(p.yb0);
                cuts.push_back(p.yt0);
            }
        const auto L = merge_intervals(l);
        const auto R = merge_intervals(r);
        auto lr = l;
        lr.insert(lr.end(), r.begin(), r.end());
        const auto U = merge_intervals(lr);
        const YIntervalList W = k < d.walls.size() ? d.walls[k] : YIntervalList{};

        const auto down = difference(R, L);
        const auto up = difference(L, R);
        const auto hair = difference(W, U);
        for (const auto* v : {&down, &up, &hair})
            for (const auto& s : *v) {
                cuts.push_back(s.lo);
                cuts.push_back(s.hi);
            }
        for (const auto& w : W) {
            if (!(w.lo == w.hi)) continue;
            bool touched = false;
            for (const auto& u : U) touched = touched || (u.lo <= w.lo && w.lo <= u.hi);
            if (!touched) loops.push_back({{x, w.lo}});
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        auto emit = [&](const YInterval& s, bool upward, bool both) {
            auto it = std::upper_bound(cuts.begin(), cuts.end(), s.lo);
            Rational prev = s.lo;
            std::vector<Rational> ys{prev};
            for (; it != cuts.end() && *it < s.hi; ++it) ys.push_back(*it);
            ys.push_back(s.hi);
            for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
                const Point lo{x, ys[i]}, hi{x, ys[i + 1]};
                if (upward || both) edges.push_back({lo, hi});
                if (!upward || both) edges.push_back({hi, lo});
            }
        };
        for (const auto& s : down) emit(s, false, false);
        for (const auto& s : up) emit(s, true, false);
        for (const auto& s : hair) emit(s, true, true);
    }

    std::map<Point, std::vector<std::size_t>> outAt, inAt;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        outAt[edges[e].a].push_back(e);
        inAt[edges[e].b].push_back(e);
    }
    std::vector<std::size_t> next(edges.size(), edges.size());
    for (auto& [v, ins] : inAt) {
        auto& outs = outAt[v];
        if (outs.size() != ins.size()) throw ComputationError("boundary_loops: unbalanced vertex " + v.x.str() + "," + v.y.str());
        std::vector<bool> used(outs.size(), false);
        for (std::size_t e : ins) {
            const Point back{edges[e].a.x - v.x, edges[e].a.y - v.y};
            std::size_t best = outs.size();
            for (std::size_t j = 0; j < outs.size(); ++j) {
                if (used[j]) continue;
                const auto& o = edges[outs[j]];
                const Point dir{o.b.x - v.x, o.b.y - v.y};
                if (best == outs.size()) {
                    best = j;
                    continue;
                }
                const auto& ob = edges[outs[best]];
                const Point bdir{ob.b.x - v.x, ob.b.y - v.y};
                if (cw_before(back, dir, bdir)) best = j;
            }
            used[best] = true;
            next[e] = outs[best];
        }
    }
    for (const auto& [v, outs] : outAt)
        if (!inAt.count(v)) throw ComputationError("boundary_loops: vertex without incoming edge");

    std::vector<bool> seen(edges.size(), false);
    for (std::size_t s = 0; s < edges.size(); ++s) {
        if (seen[s]) continue;
        Loop loop;
        std::size_t e = s;
        while (!seen[e]) {
            seen[e] = true;
            loop.push_back(edges[e].a);
            e = next[e];
        }
        if (e != s) throw ComputationError("boundary_loops: open boundary chain");
        loops.push_back(std::move(loop));
    }
    return loops;
}

PerimeterCurvature perimeter_and_curvature(const std::vector<Loop>& loops) {
    PerimeterCurvature pc;
    for (const auto& loop : loops) {
        const std::size_t n = loop.size();
        if (n == 1) {
            pc.totalCurvature += 2 * M_PI;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = loop[(i + n - 1) % n];
            const Point& b = loop[i];
            const Point& c = loop[(i + 1) % n];
            const Rational ux = b.x - a.x, uy = b.y - a.y, vx = c.x - b.x, vy = c.y - b.y;
            pc.perimeter += std::hypot(vx.to_double(), vy.to_double());
            pc.totalCurvature += std::abs(std::atan2((ux * vy - uy * vx).to_double(), (ux * vx + uy * vy).to_double()));
        }
    }
    return pc;
}

long euler_reeb(const ReebGraph& g) {
    for (const auto& inc : g.incidences)
        if (inc.edge < 0 || inc.vertex < 0 || inc.edge >= static_cast<long>(g.edges.size()) ||
            inc.vertex >= static_cast<long>(g.vertices.size()))
            throw ComputationError("euler_reeb: dangling incidence");
    return static_cast<long>(g.vertices.size() + g.edges.size()) - static_cast<long>(g.incidences.size());
}

long reeb_components(const ReebGraph& g) {
    const long nv = static_cast<long>(g.vertices.size());
    UnionFind uf(g.vertices.size() + g.edges.size());
    for (const auto& inc : g.incidences) uf.unite(inc.vertex, nv + inc.edge);
    return uf.roots();
}

RasterEuler euler_raster_oracle(const Polytrapezoid& p, long subdivision, long cap) {
    if (subdivision < 4) throw PreconditionError("euler_raster_oracle: subdivision must be >= 4");
    std::optional<long> prev;
    for (long s = subdivision; s <= cap; s *= 2) {
        const Rational h = p.epsilon / Rational(s);
        const Rational shift = h / Rational(2);
        Pixelation fine(h);
        for (const auto& t : p.trapezoids) {
            const Trapezoid u{t.xL - shift, t.xR - shift, t.yBL - shift, t.yTL - shift, t.yBR - shift, t.yTR - shift};
            fine.merge(pixelate_polygon(u.polygon(), h));
        }
        const auto cs = cubical_homology(fine);
        if (prev && *prev == cs.chi) return {cs.chi, cs.beta0, s};
        prev = cs.chi;
    }
    throw ComputationError("euler_raster_oracle: no agreement up to subdivision " + std::to_string(cap));
}

InvariantReport normal_cycle_measures(long chi, const Rational& a, double perimeter, double totalCurvature,
                                      bool convex) {
    InvariantReport r;
    r.chi = chi;
    r.area = a;
    r.perimeter = perimeter;
    r.totalCurvature = totalCurvature;
    r.lambda0 = chi;
    r.lambda1 = perimeter / 2;
    r.ncMass = perimeter + totalCurvature;
    r.ncMassIsEstimate = !convex;
    return r;
}

namespace {

double dist_to_polygon(const std::vector<std::pair<double, double>>& v, double x, double y) {
    const std::size_t n = v.size();
    if (n == 1) return std::hypot(x - v[0].first, y - v[0].second);
    if (n >= 3) {
        bool inside = true;
        for (std::size_t i = 0; i < n && inside; ++i) {
            const auto& a = v[i];
            const auto& b = v[(i + 1) % n];
            if ((b.first - a.first) * (y - a.second) - (b.second - a.second) * (x - a.first) < 0) inside = false;
        }
        if (inside) return 0;
    }
    double best = INFINITY;
    const std::size_t ne = n == 2 ? 1 : n;
    for (std::size_t i = 0; i < ne; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        const double dx = b.first - a.first, dy = b.second - a.second;
        double t = ((x - a.first) * dx + (y - a.second) * dy) / (dx * dx + dy * dy);
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::hypot(x - a.first - t * dx, y - a.second - t * dy));
    }
    return best;
}

}  // namespace

SteinerCheck steiner_tube_check(const ConvexPolygon& poly, double r) {
    if (!(r > 0)) throw PreconditionError("steiner_tube_check: r must be positive");
    SteinerCheck out;
    out.predicted = poly.area().to_double() + poly.perimeter() * r + M_PI * r * r;

    std::vector<std::pair<double, double>> v;
    for (const auto& p : poly.vertices()) v.emplace_back(p.x.to_double(), p.y.to_double());
    const double x0 = poly.min_x().to_double() - r, x1 = poly.max_x().to_double() + r;
    const double y0 = poly.min_y().to_double() - r, y1 = poly.max_y().to_double() + r;

    // cell centers inside the tube, counted row by row; each row meets the
    // convex tube in one interval located by bisection
    auto measure = [&](long n) {
        const double dx = (x1 - x0) / n, dy = (y1 - y0) / n;
        long cells = 0;
        for (long row = 0; row < n; ++row) {
            const double y = y0 + (row + 0.5) * dy;
            double lo = x0, hi = x1;
            for (int it = 0; it < 200; ++it) {
                const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
                if (dist_to_polygon(v, a, y) < dist_to_polygon(v, b, y)) hi = b; else lo = a;
            }
            const double xm = 0.5 * (lo + hi);
            if (dist_to_polygon(v, xm, y) > r) continue;
            auto edge = [&](double inside, double outside) {
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (inside + outside);
                    (dist_to_polygon(v, mid, y) <= r ? inside : outside) = mid;
                }
                return inside;
            };
            const double xl = edge(xm, x0 - dx), xr = edge(xm, x1 + dx);
            // centers x0 + (k + 0.5)dx with xl <= center <= xr
            const long k0 = static_cast<long>(std::ceil((xl - x0) / dx - 0.5));
            const long k1 = static_cast<long>(std::floor((xr - x0) / dx - 0.5));
            if (k1 >= k0) cells += k1 - k0 + 1;
        }
        return std::pair<double, long>(cells * dx * dy, cells);
    };
    double prev = -1;
    for (long n = 128; n <= 16384; n *= 2) {
        const auto [a, cells] = measure(n);
        out.measured = a;
        out.gridCells = n;
        if (prev > 0 && std::abs(a - prev) <= 1e-4 * a) break;
        prev = a;
    }
    return out;
}

std::vector<Trapezoid> polygon_trapezoids(const ConvexPolygon& poly) {
    std::vector<Rational> xs;
    for (const auto& p : poly.vertices()) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Trapezoid> out;
    if (xs.size() == 1) {
        const auto s = poly.section(xs[0]);
        out.push_back({xs[0], xs[0], s->lo, s->hi, s->lo, s->hi});
        return out;
    }
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        // both chains are linear inside the slab: extrapolate from two interior sections
        const Rational w = xs[k + 1] - xs[k];
        const auto s1 = *poly.section(xs[k] + w / Rational(4));
        const auto s3 = *poly.section(xs[k] + w * Rational(3, 4));
        const Rational half(1, 2);
        out.push_back({xs[k], xs[k + 1], s1.lo - (s3.lo - s1.lo) * half, s1.hi - (s3.hi - s1.hi) * half,
                       s3.lo + (s3.lo - s1.lo) * half, s3.hi + (s3.hi - s1.hi) * half});
    }
    return out;
}

std::vector<Trapezoid> scene_trapezoids(const PLScene& scene) {
    std::vector<Trapezoid> out;
    for (const auto& p : scene.polygons) {
        auto t = polygon_trapezoids(p);
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

ShapeMetrics shape_metrics(const std::vector<Trapezoid>& traps) {
    const auto d = slab_union(traps);
    const auto loops = boundary_loops(d);
    const auto pc = perimeter_and_curvature(loops);
    return {area(d), pc.perimeter, pc.totalCurvature, loops.size()};
}

}  // namespace pixrec
