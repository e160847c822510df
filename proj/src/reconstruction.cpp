#include "pixrec/reconstruction.hpp"

#include <algorithm>

#include "pixrec/error.hpp"
#include "pixrec/profiles.hpp"

namespace pixrec {

ConvexPolygon Trapezoid::polygon() const {
    return ConvexPolygon({{xL, yBL}, {xR, yBR}, {xR, yTR}, {xL, yTL}});
}

long jump_fn(const std::vector<long>& jumps, long m, long k) {
    auto it = std::lower_bound(jumps.begin(), jumps.end(), k);
    if (it == jumps.end() || *it >= m) return m + 1;
    return *it;
}

long jump_fn(const PixelMatrix& mx, long k) {
    if (k < 1 || k > mx.m) throw PreconditionError("jump_fn: column out of range");
    return jump_fn(jump_points(mx), mx.m, k);
}

IntervalPartition partition_intervals(const PixelMatrix& mx, long sigma) {
    if (sigma < 1) throw PreconditionError("partition_intervals: sigma must be >= 1");
    IntervalPartition part;
    part.sigma = sigma;
    const long m = mx.m;
    if (m == 0) return part;
    const auto jumps = jump_points(mx);

    std::vector<ColumnInterval> raw;
    long j = jump_fn(jumps, m, 1);
    while (j <= m) {
        raw.emplace_back(std::max(j - 2 * sigma, 1L), std::min(m, j + 2 * sigma));
        const long r = raw.back().second;
        j = r >= m ? m + 1 : jump_fn(jumps, m, r);
    }
    for (const auto& iv : raw) {
        if (!part.noise.empty() && iv.first <= part.noise.back().second)
            part.noise.back().second = std::max(part.noise.back().second, iv.second);
        else
            part.noise.push_back(iv);
    }

    if (part.noise.empty()) {
        part.regular.emplace_back(1, m);
        return part;
    }
    if (part.noise.front().first > 1) part.regular.emplace_back(1, part.noise.front().first);
    for (std::size_t k = 0; k + 1 < part.noise.size(); ++k)
        part.regular.emplace_back(part.noise[k].second, part.noise[k + 1].first);
    if (part.noise.back().second < m) part.regular.emplace_back(part.noise.back().second, m);
    return part;
}

std::vector<std::vector<Trapezoid>> reconstruct_regular(const PixelMatrix& mx, ColumnInterval iv, long sigma) {
    const auto [p, q] = iv;
    if (p < 1 || q > mx.m || q < p) throw PreconditionError("reconstruct_regular: bad interval");
    std::vector<StackList> cols;
    for (long k = p; k <= q; ++k) cols.push_back(stacks_of_column(mx, k));
    const long n = cols.front().count();
    for (const auto& c : cols)
        if (c.count() != n) throw ComputationError("reconstruct_regular: stack count varies over a regular interval");

    std::vector<long> samples{p};
    while (true) {
        const long ik = samples.back();
        if (q - ik < 2 * sigma) {
            samples.push_back(q);
            break;
        }
        samples.push_back(ik + sigma);
    }

    std::vector<std::vector<Trapezoid>> chains(static_cast<std::size_t>(n));
    for (long s = 0; s < n; ++s) {
        for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
            const long a = samples[k], b = samples[k + 1];
            const auto& sa = cols[static_cast<std::size_t>(a - p)].stacks[static_cast<std::size_t>(s)];
            const auto& sb = cols[static_cast<std::size_t>(b - p)].stacks[static_cast<std::size_t>(s)];
            chains[static_cast<std::size_t>(s)].push_back(
                {mx.center_x(a), mx.center_x(b), mx.center_y(sa.lo), mx.center_y(sa.hi), mx.center_y(sb.lo),
                 mx.center_y(sb.hi)});
        }
    }
    return chains;
}

namespace {

StackList or_column(const PixelMatrix& mx, ColumnInterval iv) {
    std::vector<unsigned char> any(static_cast<std::size_t>(mx.m) + 1, 0);
    for (long k = iv.first; k <= iv.second; ++k)
        for (long l = 1; l <= mx.m; ++l)
            if (mx.at(k, l)) any[static_cast<std::size_t>(l)] = 1;
    StackList out;
    for (long l = 1; l <= mx.m; ++l) {
        if (!any[static_cast<std::size_t>(l)]) continue;
        long h = l;
        while (h + 1 <= mx.m && any[static_cast<std::size_t>(h + 1)]) ++h;
        out.stacks.push_back({l, h});
        l = h;
    }
    return out;
}

std::optional<YInterval> overlap(const YInterval& a, const YInterval& b) {
    YInterval r{max(a.lo, b.lo), min(a.hi, b.hi)};
    if (r.hi < r.lo) return std::nullopt;
    return r;
}

}  // namespace

std::vector<Trapezoid> reconstruct_noise(const PixelMatrix& mx, ColumnInterval iv) {
    const auto [p, q] = iv;
    if (p < 1 || q > mx.m || q < p) throw PreconditionError("reconstruct_noise: bad interval");
    std::vector<Trapezoid> out;
    for (const auto& s : or_column(mx, iv).stacks) {
        const Rational yb = mx.center_y(s.lo), yt = mx.center_y(s.hi);
        out.push_back({mx.center_x(p), mx.center_x(q), yb, yt, yb, yt});
    }
    return out;
}

Reconstruction reconstruct(const PixelMatrix& mx, const Rational& r) {
    if (mx.m == 0) throw PreconditionError("reconstruct: empty pixelation");
    SpreadRule rule{SpreadRule::Kind::MatrixPower, r};
    return reconstruct_with_sigma(mx, rule.sigma(mx.epsilon, mx.m));
}

Reconstruction reconstruct_with_sigma(const PixelMatrix& mx, long sigma) {
    if (mx.m == 0 || std::find(mx.cells.begin(), mx.cells.end(), 1) == mx.cells.end())
        throw PreconditionError("reconstruct: empty pixelation");
    Reconstruction out;
    out.m = mx.m;
    out.shape.epsilon = mx.epsilon;
    out.partition = partition_intervals(mx, sigma);
    const auto& part = out.partition;
    auto& g = out.graph;

    // vertices: noise rectangles, remembered per interval for incidence lookup
    std::vector<std::vector<long>> vertexOf(part.noise.size());
    for (std::size_t ni = 0; ni < part.noise.size(); ++ni) {
        const auto rects = reconstruct_noise(mx, part.noise[ni]);
        for (std::size_t c = 0; c < rects.size(); ++c) {
            const long t = static_cast<long>(out.shape.trapezoids.size());
            out.shape.add(rects[c], {TrapezoidTag::Kind::Noise, static_cast<long>(ni), static_cast<long>(c)});
            vertexOf[ni].push_back(static_cast<long>(g.vertices.size()));
            g.vertices.push_back({static_cast<long>(ni), static_cast<long>(c), t});
        }
    }

    auto attach = [&](long edge, long noiseIdx, const Rational& x, const YInterval& wall) {
        bool any = false;
        for (long v : vertexOf[static_cast<std::size_t>(noiseIdx)]) {
            const auto& rect = out.shape.trapezoids[static_cast<std::size_t>(g.vertices[static_cast<std::size_t>(v)].trapezoid)];
            if (auto seg = overlap(wall, {rect.yBL, rect.yTL})) {
                g.incidences.push_back({edge, v, x, *seg});
                any = true;
            }
        }
        if (!any)
            g.warnings.push_back("edge " + std::to_string(edge) + " does not meet noise interval " +
                                 std::to_string(noiseIdx) + " at x = " + x.str());
    };

    for (std::size_t ri = 0; ri < part.regular.size(); ++ri) {
        const auto iv = part.regular[ri];
        const auto chains = reconstruct_regular(mx, iv, sigma);
        long leftNoise = -1, rightNoise = -1;
        for (std::size_t ni = 0; ni < part.noise.size(); ++ni) {
            if (part.noise[ni].second == iv.first) leftNoise = static_cast<long>(ni);
            if (part.noise[ni].first == iv.second) rightNoise = static_cast<long>(ni);
        }
        for (std::size_t s = 0; s < chains.size(); ++s) {
            const long edge = static_cast<long>(g.edges.size());
            ReebEdge e{static_cast<long>(ri), static_cast<long>(s), {}};
            for (const auto& t : chains[s]) {
                e.trapezoids.push_back(static_cast<long>(out.shape.trapezoids.size()));
                out.shape.add(t, {TrapezoidTag::Kind::Regular, static_cast<long>(ri), static_cast<long>(s)});
            }
            g.edges.push_back(std::move(e));
            const auto& first = chains[s].front();
            const auto& last = chains[s].back();
            if (leftNoise >= 0) attach(edge, leftNoise, first.xL, {first.yBL, first.yTL});
            if (rightNoise >= 0) attach(edge, rightNoise, last.xR, {last.yBR, last.yTR});
        }
    }
    return out;
}

}  // namespace pixrec
