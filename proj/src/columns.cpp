#include "pixrec/columns.hpp"

#include <algorithm>
#include <cmath>

namespace pixrec {

StackList stacks_of_column(const PixelMatrix& mx, long k) {
    if (k < 1 || k > mx.m) throw PreconditionError("stacks_of_column: column out of range");
    StackList out;
    long l = 1;
    while (l <= mx.m) {
        if (!mx.at(k, l)) { ++l; continue; }
        long h = l;
        while (h + 1 <= mx.m && mx.at(k, h + 1)) ++h;
        out.stacks.push_back({l, h});
        l = h + 1;
    }
    return out;
}

long column_of(const Rational& eps, const Rational& x) {
    const Rational t = x / eps;
    if (t.is_integer()) throw PreconditionError("column lookup: x lies on a gridline");
    return t.floor_long() + 1;
}

long stack_counter(const Pixelation& p, const Rational& x) {
    return static_cast<long>(p.column(column_of(p.epsilon(), x)).size());
}

ColumnStats column_stats(const Pixelation& p, const Rational& x) {
    const auto& runs = p.column(column_of(p.epsilon(), x));
    if (runs.empty()) throw EmptyColumnError("column_stats: empty column");
    ColumnStats s;
    s.top = Rational(runs.back().hi) * p.epsilon();
    s.bottom = Rational(runs.front().lo - 1) * p.epsilon();
    s.height = (s.top - s.bottom) / p.epsilon();
    return s;
}

std::vector<long> jump_points(const PixelMatrix& mx) {
    std::vector<long> out;
    if (mx.m < 2) return out;
    long prev = stacks_of_column(mx, 1).count();
    for (long i = 1; i < mx.m; ++i) {
        const long next = stacks_of_column(mx, i + 1).count();
        if (prev != next) out.push_back(i);
        prev = next;
    }
    return out;
}

Rational PLFunction::at(const Rational& x) const {
    if (x < lo() || hi() < x) throw PreconditionError("PLFunction: x outside domain");
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        const auto& a = vertices[k];
        const auto& b = vertices[k + 1];
        if (x <= b.x) return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }
    return vertices.back().y;
}

double PLFunction::at(double x) const {
    std::size_t k = 0;
    while (k + 2 < vertices.size() && vertices[k + 1].x.to_double() <= x) ++k;
    const double x0 = vertices[k].x.to_double(), x1 = vertices[k + 1].x.to_double();
    const double y0 = vertices[k].y.to_double(), y1 = vertices[k + 1].y.to_double();
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

double PLFunction::slope_at(double x) const {
    std::size_t k = 0;
    while (k + 2 < vertices.size() && vertices[k + 1].x.to_double() <= x) ++k;
    return ((vertices[k + 1].y - vertices[k].y) / (vertices[k + 1].x - vertices[k].x)).to_double();
}

Rational PLFunction::lipschitz() const {
    Rational best(0);
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
        best = max(best, abs((vertices[k + 1].y - vertices[k].y) / (vertices[k + 1].x - vertices[k].x)));
    return best;
}

Pixelation pixelate_pl_function(const PLFunction& f, const Rational& eps) {
    Pixelation out(eps);
    for (std::size_t k = 0; k + 1 < f.vertices.size(); ++k)
        out.merge(pixelate_segment({f.vertices[k], f.vertices[k + 1]}, eps));
    return out;
}

namespace {

// Every column whose open strip lies over the shared domain must have two stacks.
void count_two_stacks(const Pixelation& both, const Rational& eps, const Rational& lo, const Rational& hi,
                      SeparationResult& res) {
    res.twoStacks = true;
    const long i0 = (lo / eps).floor_long() + 1;
    const long i1 = (hi / eps).ceil_long();
    for (long i = i0; i <= i1; ++i) {
        ++res.columnsChecked;
        if (both.column(i).size() != 2) res.twoStacks = false;
    }
}

}  // namespace

SeparationResult separation_check(const PLFunction& f, const PLFunction& g, const Rational& eps) {
    const Rational lo = max(f.lo(), g.lo());
    const Rational hi = min(f.hi(), g.hi());
    if (hi < lo) throw PreconditionError("separation_check: domains do not overlap");
    // the gap is PL; its minimum sits at a breakpoint of either function
    std::vector<Rational> xs{lo, hi};
    for (const auto* h : {&f, &g})
        for (const auto& v : h->vertices)
            if (lo <= v.x && v.x <= hi) xs.push_back(v.x);
    std::optional<Rational> gap;
    for (const auto& x : xs) {
        const Rational d = g.at(x) - f.at(x);
        if (d.sign() < 0) throw PreconditionError("separation_check: need f <= g");
        if (!gap || d < *gap) gap = d;
    }
    SeparationResult res;
    res.hypothesis = (Rational(3) + min(f.lipschitz(), g.lipschitz())) * eps <= *gap;
    if (!res.hypothesis) return res;
    const Pixelation both = pixelate_pl_function(f, eps).united(pixelate_pl_function(g, eps));
    count_two_stacks(both, eps, lo, hi, res);
    return res;
}

SeparationResult separation_check(const FunctionGraphSpec& f, const FunctionGraphSpec& g, const Rational& eps) {
    const double lo = std::max(f.a, g.a), hi = std::min(f.b, g.b);
    if (!(lo < hi)) throw PreconditionError("separation_check: domains do not overlap");
    constexpr int kNodes = 20000;
    double gap = INFINITY;
    for (int k = 0; k <= kNodes; ++k) {
        const double x = lo + (hi - lo) * k / kNodes;
        gap = std::min(gap, g.f(x) - f.f(x));
    }
    if (gap < 0) throw PreconditionError("separation_check: need f <= g");
    SeparationResult res;
    const double e = eps.to_double();
    res.hypothesis = (3.0 + std::min(f.derivativeBound, g.derivativeBound)) * e <= gap;
    if (!res.hypothesis) return res;
    FunctionGraphSpec fs = f, gs = g;
    fs.a = gs.a = lo;
    fs.b = gs.b = hi;
    const Pixelation both = pixelate_function(fs, eps).united(pixelate_function(gs, eps));
    // interior columns only: the end columns may be cut by the domain
    const Rational rlo = (Rational((static_cast<long>(std::ceil(lo / e)))) * eps);
    const Rational rhi = (Rational((static_cast<long>(std::floor(hi / e)))) * eps);
    if (rhi < rlo) {
        res.twoStacks = true;
        return res;
    }
    count_two_stacks(both, eps, rlo, rhi, res);
    return res;
}

NoiseWidth empirical_noise_width(const PLScene& scene, const Pixelation& p) {
    const auto jumps = jumping_set(scene);
    const Rational& eps = p.epsilon();
    NoiseWidth out;
    if (p.empty()) return out;
    auto dist_to_jumps = [&](const Rational& x) {
        std::optional<Rational> best;
        for (const auto& j : jumps) {
            const Rational d = abs(x - j);
            if (!best || d < *best) best = d;
        }
        return best;
    };
    const long c0 = p.min_col() - 1, c1 = p.max_col() + 1;
    for (long i = c0; i <= c1; ++i) {
        const Rational x = (Rational(i) - Rational(1, 2)) * eps;
        const long ne = static_cast<long>(p.column(i).size());
        if (ne == component_count(scene, x)) continue;
        const auto d = dist_to_jumps(x);
        if (!d) {
            // mismatch with no jumping point at all cannot be explained by noise
            out.w = std::max(out.w, c1 - c0 + 2);
            continue;
        }
        out.w = std::max(out.w, (*d / eps).floor_long() + 1);
    }
    for (const auto& j : jumps) {
        // a pixel jump between columns i and i+1 is located at the gridline i*eps
        bool found = false;
        const Rational reach = Rational(out.w + 1) * eps;
        for (long i = c0; i <= c1 && !found; ++i) {
            if (p.column(i).size() == p.column(i + 1).size()) continue;
            if (abs(Rational(i) * eps - j) <= reach) found = true;
        }
        out.jumpsNearby = out.jumpsNearby && found;
    }
    return out;
}

}  // namespace pixrec
