#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pixrec/geometry.hpp"
#include "pixrec/rational.hpp"

namespace pixrec {

/// Inclusive run of rows [lo, hi] inside one column.
struct RowRun {
    long lo;
    long hi;
    long length() const { return hi - lo + 1; }
    friend bool operator==(const RowRun&, const RowRun&) = default;
};

/// A set of closed eps-pixels. Pixel (i, j) is the square
/// [(i-1)eps, i*eps] x [(j-1)eps, j*eps]. Stored column by column as sorted,
/// disjoint, non-adjacent row runs.
class Pixelation {
public:
    explicit Pixelation(Rational eps = Rational(1));

    const Rational& epsilon() const { return eps_; }

    void add(long i, long j) { add_run(i, j, j); }
    void add_run(long i, long lo, long hi);

    bool contains(long i, long j) const;
    bool empty() const { return cols_.empty(); }
    long count() const;

    /// Column index -> runs, only nonempty columns present.
    const std::map<long, std::vector<RowRun>>& columns() const { return cols_; }
    const std::vector<RowRun>& column(long i) const;

    long min_col() const;
    long max_col() const;
    long min_row() const;
    long max_row() const;

    std::vector<std::pair<long, long>> pixels() const;

    /// In-place union.
    void merge(const Pixelation& o);
    Pixelation united(const Pixelation& o) const;
    Pixelation intersected(const Pixelation& o) const;
    /// Keeps only columns lo..hi.
    Pixelation restricted(long lo, long hi) const;

    /// Center of pixel (i, j).
    Point center(long i, long j) const;

    friend bool operator==(const Pixelation& a, const Pixelation& b) {
        return a.eps_ == b.eps_ && a.cols_ == b.cols_;
    }

private:
    Rational eps_;
    std::map<long, std::vector<RowRun>> cols_;
};

/// Dense m x m view. Matrix column k, row l (both 1-based) correspond to
/// grid pixel (k + colOffset, l + rowOffset).
struct PixelMatrix {
    long m = 0;
    long colOffset = 0;
    long rowOffset = 0;
    Rational epsilon{1};
    std::vector<unsigned char> cells;  // column-major, (k-1)*m + (l-1)

    bool at(long k, long l) const { return cells[static_cast<std::size_t>((k - 1) * m + (l - 1))] != 0; }
    void set(long k, long l, bool v) { cells[static_cast<std::size_t>((k - 1) * m + (l - 1))] = v ? 1 : 0; }

    /// Center of the pixel behind matrix entry (k, l) in scene coordinates.
    Point center(long k, long l) const;
    Rational center_x(long k) const;
    Rational center_y(long l) const;
};

/// A smooth (or Lipschitz) function graph over [a, b], evaluated in floating
/// point.
struct FunctionGraphSpec {
    std::function<double(double)> f;
    std::function<double(double)> df;  // optional derivative, used by error metrics
    double derivativeBound = 0;       // M >= sup |f'|
    std::optional<double> secondDerivativeBound;  // N >= sup |f''|
    double a = 0;
    double b = 1;
};

/// Closed pixels meeting a closed convex polygon (point and segment included).
Pixelation pixelate_polygon(const ConvexPolygon& poly, const Rational& eps);
Pixelation pixelate_segment(const Segment& seg, const Rational& eps);
Pixelation pixelate_scene(const PLScene& scene, const Rational& eps);

/// eps = 1 pixelation of the two rays y = lower*x, y = upper*x (x >= 0),
/// restricted to columns 1..N.
Pixelation pixelate_angle(const AngleSpec& spec);

/// Sampling pixelation of a function graph at step eps/(safety*(1+M)),
/// every column closed between its extreme marked rows. May differ from the
/// exact pixelation by one pixel at each stack end.
Pixelation pixelate_function(const FunctionGraphSpec& spec, const Rational& eps, int safety = 4);

/// Square padding to m = max(width, height); column 1 and row 1 are the first
/// occupied ones. Empty input gives m = 0.
PixelMatrix as_matrix(const Pixelation& p);
Pixelation to_pixelation(const PixelMatrix& mx);

/// ASCII PBM (P1), first raster row is the top matrix row. The comment line
/// "# epsilon p/q offset i j" carries the scale and offset.
void write_pbm(std::ostream& os, const PixelMatrix& mx);
PixelMatrix read_pbm(std::istream& is);

/// Whether the closed l-infinity ball of radius r around p meets the scene.
bool within_linf(const PLScene& scene, const Point& p, const Rational& r);

}  // namespace pixrec
