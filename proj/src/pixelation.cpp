#include "pixrec/pixelation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "pixrec/error.hpp"

namespace pixrec {

namespace {

const std::vector<RowRun> kNoRuns;

std::vector<RowRun> merge_runs(std::vector<RowRun> runs) {
    std::sort(runs.begin(), runs.end(), [](const RowRun& a, const RowRun& b) { return a.lo < b.lo; });
    std::vector<RowRun> out;
    for (const auto& r : runs) {
        // adjacent runs are one stack
        if (!out.empty() && r.lo <= out.back().hi + 1)
            out.back().hi = std::max(out.back().hi, r.hi);
        else
            out.push_back(r);
    }
    return out;
}

std::vector<RowRun> intersect_runs(const std::vector<RowRun>& a, const std::vector<RowRun>& b) {
    std::vector<RowRun> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const long lo = std::max(a[i].lo, b[j].lo);
        const long hi = std::min(a[i].hi, b[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (a[i].hi < b[j].hi) ++i; else ++j;
    }
    return out;
}

}  // namespace

Pixelation::Pixelation(Rational eps) : eps_(std::move(eps)) {
    if (eps_.sign() <= 0) throw PreconditionError("Pixelation: epsilon must be positive");
}

void Pixelation::add_run(long i, long lo, long hi) {
    if (hi < lo) return;
    auto& runs = cols_[i];
    runs.push_back({lo, hi});
    runs = merge_runs(std::move(runs));
}

bool Pixelation::contains(long i, long j) const {
    auto it = cols_.find(i);
    if (it == cols_.end()) return false;
    for (const auto& r : it->second)
        if (r.lo <= j && j <= r.hi) return true;
    return false;
}

long Pixelation::count() const {
    long n = 0;
    for (const auto& [i, runs] : cols_)
        for (const auto& r : runs) n += r.length();
    return n;
}

const std::vector<RowRun>& Pixelation::column(long i) const {
    auto it = cols_.find(i);
    return it == cols_.end() ? kNoRuns : it->second;
}

long Pixelation::min_col() const {
    if (empty()) throw PreconditionError("Pixelation: empty");
    return cols_.begin()->first;
}
long Pixelation::max_col() const {
    if (empty()) throw PreconditionError("Pixelation: empty");
    return cols_.rbegin()->first;
}
long Pixelation::min_row() const {
    if (empty()) throw PreconditionError("Pixelation: empty");
    long r = cols_.begin()->second.front().lo;
    for (const auto& [i, runs] : cols_) r = std::min(r, runs.front().lo);
    return r;
}
long Pixelation::max_row() const {
    if (empty()) throw PreconditionError("Pixelation: empty");
    long r = cols_.begin()->second.back().hi;
    for (const auto& [i, runs] : cols_) r = std::max(r, runs.back().hi);
    return r;
}

std::vector<std::pair<long, long>> Pixelation::pixels() const {
    std::vector<std::pair<long, long>> out;
    for (const auto& [i, runs] : cols_)
        for (const auto& r : runs)
            for (long j = r.lo; j <= r.hi; ++j) out.emplace_back(i, j);
    return out;
}

void Pixelation::merge(const Pixelation& o) {
    if (!(eps_ == o.eps_)) throw PreconditionError("Pixelation: epsilon mismatch");
    for (const auto& [i, runs] : o.cols_) {
        auto& dst = cols_[i];
        dst.insert(dst.end(), runs.begin(), runs.end());
        dst = merge_runs(std::move(dst));
    }
}

Pixelation Pixelation::united(const Pixelation& o) const {
    Pixelation out = *this;
    out.merge(o);
    return out;
}

Pixelation Pixelation::intersected(const Pixelation& o) const {
    if (!(eps_ == o.eps_)) throw PreconditionError("Pixelation: epsilon mismatch");
    Pixelation out(eps_);
    for (const auto& [i, runs] : cols_) {
        auto it = o.cols_.find(i);
        if (it == o.cols_.end()) continue;
        auto common = intersect_runs(runs, it->second);
        if (!common.empty()) out.cols_[i] = std::move(common);
    }
    return out;
}

Pixelation Pixelation::restricted(long lo, long hi) const {
    Pixelation out(eps_);
    for (auto it = cols_.lower_bound(lo); it != cols_.end() && it->first <= hi; ++it) out.cols_.insert(*it);
    return out;
}

Point Pixelation::center(long i, long j) const {
    const Rational half(1, 2);
    return {(Rational(i) - half) * eps_, (Rational(j) - half) * eps_};
}

Rational PixelMatrix::center_x(long k) const { return (Rational(k + colOffset) - Rational(1, 2)) * epsilon; }
Rational PixelMatrix::center_y(long l) const { return (Rational(l + rowOffset) - Rational(1, 2)) * epsilon; }
Point PixelMatrix::center(long k, long l) const { return {center_x(k), center_y(l)}; }

Pixelation pixelate_polygon(const ConvexPolygon& poly, const Rational& eps) {
    Pixelation out(eps);
    // column i is the strip [(i-1)eps, i eps]; it meets [x0, x1] iff
    // ceil(x0/eps) <= i <= floor(x1/eps) + 1
    const long i0 = (poly.min_x() / eps).ceil_long();
    const long i1 = (poly.max_x() / eps).floor_long() + 1;
    for (long i = i0; i <= i1; ++i) {
        auto range = poly.strip_range(Rational(i - 1) * eps, Rational(i) * eps);
        if (!range) continue;
        const long lo = (range->lo / eps).ceil_long();
        const long hi = (range->hi / eps).floor_long() + 1;
        out.add_run(i, lo, hi);
    }
    return out;
}

Pixelation pixelate_segment(const Segment& seg, const Rational& eps) {
    return pixelate_polygon(ConvexPolygon({seg.a, seg.b}), eps);
}

Pixelation pixelate_scene(const PLScene& scene, const Rational& eps) {
    Pixelation out(eps);
    for (const auto& p : scene.polygons) out.merge(pixelate_polygon(p, eps));
    return out;
}

Pixelation pixelate_angle(const AngleSpec& spec) {
    if (!(spec.lowerSlope < spec.upperSlope)) throw PreconditionError("pixelate_angle: need upper > lower slope");
    if (spec.columns < 1) throw PreconditionError("pixelate_angle: need at least one column");
    const Rational n(spec.columns);
    const Point origin{0, 0};
    Pixelation out(Rational(1));
    for (const auto& slope : {spec.lowerSlope, spec.upperSlope})
        out.merge(pixelate_segment({origin, {n, slope * n}}, Rational(1)));
    return out.restricted(1, spec.columns);
}

Pixelation pixelate_function(const FunctionGraphSpec& spec, const Rational& eps, int safety) {
    if (safety < 1) throw PreconditionError("pixelate_function: safety must be positive");
    if (!spec.f) throw PreconditionError("pixelate_function: missing evaluator");
    const double e = eps.to_double();
    const double delta = e / (safety * (1.0 + spec.derivativeBound));
    if (!(spec.b - spec.a >= delta)) throw PreconditionError("pixelate_function: domain shorter than one sample step");

    constexpr double kSnap = 1e-9;
    auto cells_of = [&](double v, long& first, long& last) {
        const double t = v / e;
        const double r = std::round(t);
        if (std::abs(t - r) < kSnap) {
            // on a gridline: both neighbors
            first = static_cast<long>(r);
            last = first + 1;
        } else {
            first = last = static_cast<long>(std::floor(t)) + 1;
        }
    };

    std::map<long, std::pair<long, long>> extent;
    auto mark = [&](double x) {
        const double y = spec.f(x);
        long c0, c1, r0, r1;
        cells_of(x, c0, c1);
        cells_of(y, r0, r1);
        for (long c = c0; c <= c1; ++c) {
            auto [it, fresh] = extent.try_emplace(c, r0, r1);
            if (!fresh) {
                it->second.first = std::min(it->second.first, r0);
                it->second.second = std::max(it->second.second, r1);
            }
        }
    };

    const long steps = static_cast<long>(std::ceil((spec.b - spec.a) / delta));
    for (long s = 0; s <= steps; ++s) mark(std::min(spec.b, spec.a + s * delta));
    for (long k = static_cast<long>(std::ceil(spec.a / e)); k * e <= spec.b; ++k) mark(k * e);
    mark(spec.b);

    Pixelation out(eps);
    for (const auto& [c, rows] : extent) out.add_run(c, rows.first, rows.second);
    return out;
}

PixelMatrix as_matrix(const Pixelation& p) {
    PixelMatrix mx;
    mx.epsilon = p.epsilon();
    if (p.empty()) return mx;
    const long c0 = p.min_col(), c1 = p.max_col();
    const long r0 = p.min_row(), r1 = p.max_row();
    mx.m = std::max(c1 - c0 + 1, r1 - r0 + 1);
    mx.colOffset = c0 - 1;
    mx.rowOffset = r0 - 1;
    mx.cells.assign(static_cast<std::size_t>(mx.m * mx.m), 0);
    for (const auto& [i, runs] : p.columns())
        for (const auto& r : runs)
            for (long j = r.lo; j <= r.hi; ++j) mx.set(i - mx.colOffset, j - mx.rowOffset, true);
    return mx;
}

Pixelation to_pixelation(const PixelMatrix& mx) {
    Pixelation out(mx.epsilon);
    for (long k = 1; k <= mx.m; ++k) {
        long l = 1;
        while (l <= mx.m) {
            if (!mx.at(k, l)) { ++l; continue; }
            long h = l;
            while (h + 1 <= mx.m && mx.at(k, h + 1)) ++h;
            out.add_run(k + mx.colOffset, l + mx.rowOffset, h + mx.rowOffset);
            l = h + 1;
        }
    }
    return out;
}

void write_pbm(std::ostream& os, const PixelMatrix& mx) {
    os << "P1\n# epsilon " << mx.epsilon.str() << " offset " << mx.colOffset << ' ' << mx.rowOffset << '\n';
    os << mx.m << ' ' << mx.m << '\n';
    for (long l = mx.m; l >= 1; --l) {
        for (long k = 1; k <= mx.m; ++k) {
            if (k > 1) os << ' ';
            os << (mx.at(k, l) ? '1' : '0');
        }
        os << '\n';
    }
}

PixelMatrix read_pbm(std::istream& is) {
    PixelMatrix mx;
    std::string magic;
    if (!(is >> magic) || magic != "P1") throw ParseError("PBM: expected P1 header");
    std::vector<long> dims;
    bool haveEps = false;
    while (dims.size() < 2) {
        is >> std::ws;
        if (is.peek() == '#') {
            std::string line;
            std::getline(is, line);
            std::istringstream cs(line.substr(1));
            std::string key;
            while (cs >> key) {
                if (key == "epsilon") {
                    std::string v;
                    cs >> v;
                    try {
                        mx.epsilon = Rational::parse(v);
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(std::string("PBM: ") + e.what());
                    }
                    haveEps = true;
                } else if (key == "offset") {
                    cs >> mx.colOffset >> mx.rowOffset;
                }
            }
            continue;
        }
        long v;
        if (!(is >> v) || v < 0) throw ParseError("PBM: bad dimensions");
        dims.push_back(v);
    }
    if (dims[0] != dims[1]) throw ParseError("PBM: matrix must be square");
    if (haveEps && mx.epsilon.sign() <= 0) throw ParseError("PBM: epsilon must be positive");
    mx.m = dims[0];
    mx.cells.assign(static_cast<std::size_t>(mx.m * mx.m), 0);
    for (long l = mx.m; l >= 1; --l) {
        for (long k = 1; k <= mx.m; ++k) {
            char c;
            do {
                if (!is.get(c)) throw ParseError("PBM: truncated raster");
                if (c == '#') {
                    std::string skip;
                    std::getline(is, skip);
                    c = ' ';
                }
            } while (std::isspace(static_cast<unsigned char>(c)));
            if (c != '0' && c != '1') throw ParseError("PBM: raster must be 0/1");
            mx.set(k, l, c == '1');
        }
    }
    return mx;
}

bool within_linf(const PLScene& scene, const Point& p, const Rational& r) {
    const ConvexPolygon box({{p.x - r, p.y - r}, {p.x + r, p.y - r}, {p.x + r, p.y + r}, {p.x - r, p.y + r}});
    for (const auto& poly : scene.polygons)
        if (polygons_intersect(box, poly)) return true;
    return false;
}

}  // namespace pixrec
