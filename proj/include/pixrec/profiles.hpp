#pragma once

#include <vector>

#include "pixrec/columns.hpp"
#include "pixrec/pixelation.hpp"

namespace pixrec {

/// One pixel center per column, ordered by column.
struct Profile {
    Rational epsilon{1};
    std::vector<long> columns;
    std::vector<Point> points;
    std::size_t size() const { return points.size(); }
};

struct SpreadSample {
    long sigma = 1;
    std::vector<long> columns;
    std::vector<Point> points;
};

/// sigma(eps) either as floor(m^r) of the matrix size or as
/// ceil(eps^(-1/(1+r))).
struct SpreadRule {
    enum class Kind { MatrixPower, EpsilonPower };
    Kind kind = Kind::MatrixPower;
    Rational r{2, 3};

    long sigma(const Rational& eps, long m) const;
};

/// Centers of the highest (lowest) pixel of every column. Throws
/// PreconditionError when the occupied columns are not contiguous.
Profile top_profile(const Pixelation& p);
Profile bottom_profile(const Pixelation& p);

/// Deterministic left-to-right sample: every sigma-th column, right endpoint
/// always included. A final gap under sigma/2 is merged into the previous
/// step; a merged gap over sigma is split in two.
SpreadSample sample_with_spread(const Profile& prof, long sigma);

PLFunction pl_interpolation(const SpreadSample& s);

struct SecantBounds {
    double sup;
    double deriv;
};

/// Closed-form bounds for the secant through two pixelation points over
/// [a, b]: 7(M+2)eps + 3M(b-a) + N(b-a)^2 and (b-a)N + 2(M+2)eps/(b-a).
SecantBounds secant_bounds(double M, double N, double a, double b, double eps);

/// Integral over the common domain of |f-g|^p + |f'-g'|^p by the composite
/// midpoint rule. Requires f.df.
double w1p_error(const FunctionGraphSpec& f, const PLFunction& g, int p, long nodes = 20000);

/// Sum of absolute turning angles of a polyline; for closed loops the seam
/// vertex counts too.
double total_curvature_pl(const std::vector<Point>& pts, bool closed);
inline double total_curvature_pl(const PLFunction& g, bool closed) { return total_curvature_pl(g.vertices, closed); }

}  // namespace pixrec
