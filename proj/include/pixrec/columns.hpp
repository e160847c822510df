#pragma once

#include <vector>

#include "pixrec/error.hpp"
#include "pixrec/geometry.hpp"
#include "pixrec/pixelation.hpp"

namespace pixrec {

/// Raised by column_stats when the column over x holds no pixel.
struct EmptyColumnError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Stacks of one column, bottom to top, as inclusive row ranges.
struct StackList {
    std::vector<RowRun> stacks;
    long count() const { return static_cast<long>(stacks.size()); }
};

struct ColumnStats {
    Rational top;
    Rational bottom;
    Rational height;  // (top - bottom) / eps
};

/// Maximal runs of occupied entries in matrix column k.
StackList stacks_of_column(const PixelMatrix& mx, long k);

/// Index of the grid column containing x; throws for x on a gridline.
long column_of(const Rational& eps, const Rational& x);

/// Number of stacks of the column containing x.
long stack_counter(const Pixelation& p, const Rational& x);

ColumnStats column_stats(const Pixelation& p, const Rational& x);

/// Matrix columns i in [1, m) whose stack count differs from column i + 1.
std::vector<long> jump_points(const PixelMatrix& mx);

/// A piecewise linear function given by vertices with increasing x.
struct PLFunction {
    std::vector<Point> vertices;

    Rational lo() const { return vertices.front().x; }
    Rational hi() const { return vertices.back().x; }
    Rational at(const Rational& x) const;
    double at(double x) const;
    /// Slope of the piece containing x (right piece at a breakpoint).
    double slope_at(double x) const;
    /// Largest absolute slope.
    Rational lipschitz() const;
};

struct SeparationResult {
    bool hypothesis = false;     // gap >= (3 + min slope bound) eps
    bool twoStacks = false;      // every generic column over the domain has two stacks
    long columnsChecked = 0;
};

/// Exact version for PL graphs f <= g on a shared domain.
SeparationResult separation_check(const PLFunction& f, const PLFunction& g, const Rational& eps);

/// Sampled version for general graphs; the gap is estimated on a dense grid.
SeparationResult separation_check(const FunctionGraphSpec& f, const FunctionGraphSpec& g, const Rational& eps);

/// Exact pixelation of the graph of a PL function.
Pixelation pixelate_pl_function(const PLFunction& f, const Rational& eps);

/// Empirical noise range: the smallest integer w such that the stack counter
/// equals the component counter at every column center whose distance to
/// the jumping set is at least w*eps. Also reports whether each jumping
/// point has a pixel-level jump within w*eps.
struct NoiseWidth {
    long w = 0;
    bool jumpsNearby = true;
};
NoiseWidth empirical_noise_width(const PLScene& scene, const Pixelation& p);

}  // namespace pixrec
