#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pixrec/pixelation.hpp"

namespace pixrec {

/// Reduced fraction num/den.
struct Fraction {
    long num;
    long den;
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Farey neighbours a/b < c/d with bc - ad = 1.
struct FareyPair {
    long a, b, c, d;

    /// Throws PreconditionError unless the fields form a neighbour pair of
    /// positive integers.
    void validate() const;
    std::string str() const;
};

/// Reduced fractions in [0, 1] with denominator at most n, increasing.
std::vector<Fraction> farey_series(long n);

/// All neighbour pairs a/b < c/d in (0, 1] with b <= bMax, d <= dMax.
std::vector<FareyPair> farey_neighbor_pairs(long bMax, long dMax);

/// Columns [lo, hi] of the angle between slopes a/b (lower) and c/d (upper)
/// at eps = 1: U is the last free row under the upper ray, L the last row
/// of the lower ray, D = U - L.
struct ULTable {
    long lo = 1, hi = 0;
    std::vector<long> U, L, D;

    long u(long i) const { return U[static_cast<std::size_t>(i - lo)]; }
    long l(long i) const { return L[static_cast<std::size_t>(i - lo)]; }
    long d(long i) const { return D[static_cast<std::size_t>(i - lo)]; }
};

ULTable ul_table(const FareyPair& p, long lo, long hi);

/// First column with a one-row gap: bd + bc + b + d.
long k1(const FareyPair& p);

/// Sum over i in [k1, k1 + bd) of (U_i - L_i)(L_{i+1} - L_i).
long hole_count_sum(const FareyPair& p);

/// ad - #X with X the lattice points (p, q), 0 < p <= d, a < q <= min(2a, b),
/// bd + bc + b + d <= 1 + pb + qd < 2bd + bc + b + d.
long hole_count_X(const FareyPair& p);

struct OracleResult {
    long holes = 0;
    long columns = 0;  // truncation at which the count settled
};

/// First Betti number of the eps = 1 pixelation of the truncated angle,
/// truncation grown from k1 + 2bd + 1 in steps of bd until two consecutive
/// growths leave it unchanged; ComputationError past k1 + 10bd.
OracleResult hole_count_oracle(const FareyPair& p);

AngleSpec angle_of(const FareyPair& p, long columns);

}  // namespace pixrec
