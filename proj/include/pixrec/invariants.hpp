#pragma once

#include <vector>

#include "pixrec/pixelation.hpp"
#include "pixrec/reconstruction.hpp"

namespace pixrec {

/// Cell counts of the closed cubical complex of a pixel set and its Betti
/// numbers (pixels sharing an edge or a corner are connected).
struct CubicalSummary {
    long V = 0, E = 0, F = 0;
    long chi = 0;
    long beta0 = 0, beta1 = 0;
};

CubicalSummary cubical_homology(const Pixelation& p);

/// Part of the union over one slab [x_k, x_{k+1}]: bottom and top lines given
/// by their values at the two slab walls.
struct SlabPiece {
    Rational yb0, yb1;
    Rational yt0, yt1;
};

struct SlabDecomposition {
    std::vector<Rational> xs;                    // breakpoints
    std::vector<std::vector<SlabPiece>> slabs;   // xs.size() - 1 slabs, pieces disjoint and y-sorted
    std::vector<YIntervalList> walls;            // zero-width parts sitting on each breakpoint
};

SlabDecomposition slab_union(const std::vector<Trapezoid>& traps);
inline SlabDecomposition slab_union(const Polytrapezoid& p) { return slab_union(p.trapezoids); }

Rational area(const SlabDecomposition& d);

/// Closed boundary loops, interior on the left. Hairs are traversed in both
/// directions; an isolated point is a loop of one vertex.
using Loop = std::vector<Point>;
std::vector<Loop> boundary_loops(const SlabDecomposition& d);

struct PerimeterCurvature {
    double perimeter = 0;
    double totalCurvature = 0;
};

PerimeterCurvature perimeter_and_curvature(const std::vector<Loop>& loops);

/// V + E - I of the Reeb graph.
long euler_reeb(const ReebGraph& g);

/// Connected components of the Reeb graph.
long reeb_components(const ReebGraph& g);

struct RasterEuler {
    long chi = 0;
    long beta0 = 0;
    long subdivision = 0;
};

/// chi of the polytrapezoid from a fine closed-pixel raster at step
/// eps/s, s doubling from `subdivision` until two consecutive values agree.
/// The fine grid is shifted by half a step so coarse pixel centers are fine
/// pixel centers. Throws ComputationError when no agreement is reached by
/// `cap`.
RasterEuler euler_raster_oracle(const Polytrapezoid& p, long subdivision = 4, long cap = 64);

struct InvariantReport {
    long chi = 0;
    Rational area{0};
    double perimeter = 0;
    double totalCurvature = 0;
    long lambda0 = 0;
    double lambda1 = 0;
    double ncMass = 0;
    bool ncMassIsEstimate = true;  // exact only for a single convex piece
};

InvariantReport normal_cycle_measures(long chi, const Rational& area, double perimeter, double totalCurvature,
                                      bool convex = false);

struct SteinerCheck {
    double predicted = 0;
    double measured = 0;
    long gridCells = 0;
};

/// Area of the closed r-neighbourhood of a convex polygon: Steiner formula
/// versus a raster measurement refined until it settles.
SteinerCheck steiner_tube_check(const ConvexPolygon& poly, double r);

/// Vertical-base trapezoids whose union is the polygon.
std::vector<Trapezoid> polygon_trapezoids(const ConvexPolygon& poly);
std::vector<Trapezoid> scene_trapezoids(const PLScene& scene);

/// Everything measured on one set given as trapezoids.
struct ShapeMetrics {
    Rational area{0};
    double perimeter = 0;
    double totalCurvature = 0;
    std::size_t loops = 0;
};
ShapeMetrics shape_metrics(const std::vector<Trapezoid>& traps);

}  // namespace pixrec
