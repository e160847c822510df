#include "pixrec/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace pixrec {

long SpreadRule::sigma(const Rational& eps, long m) const {
    if (r.sign() <= 0) throw PreconditionError("SpreadRule: r must be positive");
    if (kind == Kind::MatrixPower) {
        if (!(Rational(1, 2) < r && r < Rational(1)))
            throw PreconditionError("SpreadRule: matrix-power rule needs 1/2 < r < 1");
        return std::max(1L, floor_pow(std::max(1L, m), r));
    }
    return ceil_pow(Rational(1) / eps, Rational(1) / (Rational(1) + r));
}

namespace {

Profile profile(const Pixelation& p, bool top) {
    if (p.empty()) throw PreconditionError("profile: empty pixelation");
    Profile out;
    out.epsilon = p.epsilon();
    long expect = p.min_col();
    for (const auto& [i, runs] : p.columns()) {
        if (i != expect) throw PreconditionError("profile: gap column " + std::to_string(expect));
        ++expect;
        out.columns.push_back(i);
        out.points.push_back(p.center(i, top ? runs.back().hi : runs.front().lo));
    }
    return out;
}

}  // namespace

Profile top_profile(const Pixelation& p) { return profile(p, true); }
Profile bottom_profile(const Pixelation& p) { return profile(p, false); }

SpreadSample sample_with_spread(const Profile& prof, long sigma) {
    if (sigma < 1) throw PreconditionError("sample_with_spread: sigma must be >= 1");
    if (prof.size() < 2) throw PreconditionError("sample_with_spread: profile needs two columns");
    const long last = static_cast<long>(prof.size()) - 1;
    std::vector<long> idx;
    for (long k = 0; k < last; k += sigma) idx.push_back(k);
    if (idx.size() > 1 && 2 * (last - idx.back()) < sigma) {
        idx.pop_back();
        const long gap = last - idx.back();
        if (gap > sigma) idx.push_back(idx.back() + gap / 2);
    }
    idx.push_back(last);
    SpreadSample s;
    s.sigma = sigma;
    for (long k : idx) {
        s.columns.push_back(prof.columns[static_cast<std::size_t>(k)]);
        s.points.push_back(prof.points[static_cast<std::size_t>(k)]);
    }
    return s;
}

PLFunction pl_interpolation(const SpreadSample& s) {
    if (s.points.size() < 2) throw PreconditionError("pl_interpolation: need two points");
    return PLFunction{s.points};
}

SecantBounds secant_bounds(double M, double N, double a, double b, double eps) {
    const double w = b - a;
    return {7 * (M + 2) * eps + 3 * M * w + N * w * w, w * N + 2 * (M + 2) * eps / w};
}

double w1p_error(const FunctionGraphSpec& f, const PLFunction& g, int p, long nodes) {
    if (p != 1 && p != 2) throw PreconditionError("w1p_error: p must be 1 or 2");
    if (!f.df) throw PreconditionError("w1p_error: derivative required");
    const double lo = std::max(f.a, g.lo().to_double());
    const double hi = std::min(f.b, g.hi().to_double());
    if (!(lo < hi)) throw PreconditionError("w1p_error: domains do not overlap");

    std::vector<double> bx, by;
    for (const auto& v : g.vertices) {
        bx.push_back(v.x.to_double());
        by.push_back(v.y.to_double());
    }
    nodes = std::max(nodes, 8 * static_cast<long>(bx.size()));
    const double h = (hi - lo) / static_cast<double>(nodes);
    std::size_t k = 0;
    double sum = 0;
    for (long n = 0; n < nodes; ++n) {
        double x = lo + (static_cast<double>(n) + 0.5) * h;
        while (k + 2 < bx.size() && bx[k + 1] <= x) ++k;
        // keep clear of breakpoints where g' is undefined
        if (std::abs(x - bx[k]) < 1e-12 * (1 + std::abs(x))) x += 1e-3 * h;
        if (std::abs(x - bx[k + 1]) < 1e-12 * (1 + std::abs(x))) x -= 1e-3 * h;
        const double slope = (by[k + 1] - by[k]) / (bx[k + 1] - bx[k]);
        const double gv = by[k] + slope * (x - bx[k]);
        const double e0 = std::abs(f.f(x) - gv);
        const double e1 = std::abs(f.df(x) - slope);
        sum += (p == 1 ? e0 + e1 : e0 * e0 + e1 * e1) * h;
    }
    return sum;
}

double total_curvature_pl(const std::vector<Point>& pts, bool closed) {
    if (pts.size() < 2) throw PreconditionError("total_curvature_pl: need two vertices");
    std::vector<Point> q;
    for (const auto& p : pts)
        if (q.empty() || !(q.back() == p)) q.push_back(p);
    if (closed && q.size() > 1 && q.front() == q.back()) q.pop_back();
    const std::size_t n = q.size();
    if (n < 2) return closed ? 2 * M_PI : 0.0;
    auto turn = [&](const Point& a, const Point& b, const Point& c) {
        const Rational ux = b.x - a.x, uy = b.y - a.y, vx = c.x - b.x, vy = c.y - b.y;
        const double cr = (ux * vy - uy * vx).to_double();
        const double dt = (ux * vx + uy * vy).to_double();
        return std::abs(std::atan2(cr, dt));
    };
    double k = 0;
    if (closed) {
        for (std::size_t i = 0; i < n; ++i) k += turn(q[(i + n - 1) % n], q[i], q[(i + 1) % n]);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) k += turn(q[i - 1], q[i], q[i + 1]);
    }
    return k;
}

}  // namespace pixrec
