#pragma once

#include <string>
#include <vector>

#include "pixrec/columns.hpp"
#include "pixrec/pixelation.hpp"

namespace pixrec {

/// Trapezoid with vertical bases at xL <= xR; walls [yBL, yTL] and [yBR, yTR].
struct Trapezoid {
    Rational xL, xR;
    Rational yBL, yTL;
    Rational yBR, yTR;

    friend bool operator==(const Trapezoid&, const Trapezoid&) = default;
    ConvexPolygon polygon() const;
};

struct TrapezoidTag {
    enum class Kind { Regular, Noise };
    Kind kind = Kind::Regular;
    long interval = 0;  // index into the partition's regular or noise list
    long component = 0; // stack index (regular) or OR-stack index (noise)
    friend bool operator==(const TrapezoidTag&, const TrapezoidTag&) = default;
};

struct Polytrapezoid {
    Rational epsilon{1};
    std::vector<Trapezoid> trapezoids;
    std::vector<TrapezoidTag> tags;

    void add(Trapezoid t, TrapezoidTag tag) {
        trapezoids.push_back(std::move(t));
        tags.push_back(tag);
    }
};

/// Inclusive column intervals [first, second] of the matrix.
using ColumnInterval = std::pair<long, long>;

struct IntervalPartition {
    long sigma = 1;
    std::vector<ColumnInterval> noise;
    std::vector<ColumnInterval> regular;
};

struct ReebVertex {
    long interval;   // noise interval index
    long component;  // OR-stack index
    long trapezoid;  // the covering rectangle
};

struct ReebEdge {
    long interval;   // regular interval index
    long component;  // stack index
    std::vector<long> trapezoids;
};

struct ReebIncidence {
    long edge;
    long vertex;
    Rational x;
    YInterval segment;  // closed overlap of the two walls
};

struct ReebGraph {
    std::vector<ReebVertex> vertices;
    std::vector<ReebEdge> edges;
    std::vector<ReebIncidence> incidences;
    std::vector<std::string> warnings;
};

struct Reconstruction {
    Polytrapezoid shape;
    ReebGraph graph;
    IntervalPartition partition;
    long m = 0;
};

/// Smallest jump point in [k, m), or m + 1 when there is none.
long jump_fn(const std::vector<long>& jumps, long m, long k);
long jump_fn(const PixelMatrix& mx, long k);

IntervalPartition partition_intervals(const PixelMatrix& mx, long sigma);

/// Trapezoid chains through bottom/top pixel centers of the sampled columns,
/// one chain per stack. Index i of the result is the chain of stack i.
std::vector<std::vector<Trapezoid>> reconstruct_regular(const PixelMatrix& mx, ColumnInterval iv, long sigma);

/// One rectangle per stack of the OR-column over [p, q].
std::vector<Trapezoid> reconstruct_noise(const PixelMatrix& mx, ColumnInterval iv);

/// Full pipeline with sigma = floor(m^r).
Reconstruction reconstruct(const PixelMatrix& mx, const Rational& r = Rational(2, 3));

/// Same pipeline with an explicit spread.
Reconstruction reconstruct_with_sigma(const PixelMatrix& mx, long sigma);

}  // namespace pixrec
