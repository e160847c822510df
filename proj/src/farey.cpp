#include "pixrec/farey.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "pixrec/error.hpp"
#include "pixrec/invariants.hpp"

namespace pixrec {

void FareyPair::validate() const {
    if (a < 1 || b < 1 || c < 1 || d < 1) throw PreconditionError("FareyPair: entries must be positive: " + str());
    if (std::gcd(a, b) != 1 || std::gcd(c, d) != 1) throw PreconditionError("FareyPair: fractions must be reduced: " + str());
    if (b * c - a * d != 1) throw PreconditionError("FareyPair: bc - ad != 1 for " + str());
}

std::string FareyPair::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")";
}

std::vector<Fraction> farey_series(long n) {
    if (n < 1) throw PreconditionError("farey_series: n must be >= 1");
    if (n == 1) return {{0, 1}, {1, 1}};
    std::vector<Fraction> out{{0, 1}, {1, n}};
    // next term from the two previous ones
    while (!(out.back() == Fraction{1, 1})) {
        const auto& p = out[out.size() - 2];
        const auto& q = out.back();
        const long k = (n + p.den) / q.den;
        out.push_back({k * q.num - p.num, k * q.den - p.den});
    }
    return out;
}

std::vector<FareyPair> farey_neighbor_pairs(long bMax, long dMax) {
    std::vector<FareyPair> out;
    for (long b = 1; b <= bMax; ++b)
        for (long a = 1; a <= b; ++a) {
            if (std::gcd(a, b) != 1) continue;
            for (long d = 1; d <= dMax; ++d)
                for (long c = 1; c <= d; ++c) {
                    if (std::gcd(c, d) == 1 && b * c - a * d == 1) out.push_back({a, b, c, d});
                }
        }
    std::sort(out.begin(), out.end(), [](const FareyPair& x, const FareyPair& y) {
        return std::tie(x.b, x.d, x.a, x.c) < std::tie(y.b, y.d, y.a, y.c);
    });
    return out;
}

ULTable ul_table(const FareyPair& p, long lo, long hi) {
    p.validate();
    ULTable t;
    t.lo = lo;
    t.hi = hi;
    const Rational m0(p.a, p.b), m1(p.c, p.d);
    for (long i = lo; i <= hi; ++i) {
        const Rational up = m1 * Rational(i - 1);
        const Rational low = m0 * Rational(i);
        const long u = up.is_integer() ? up.floor_long() - 1 : up.floor_long();
        const long l = low.is_integer() ? low.floor_long() + 1 : low.ceil_long();
        t.U.push_back(u);
        t.L.push_back(l);
        t.D.push_back(u - l);
    }
    return t;
}

long k1(const FareyPair& p) {
    p.validate();
    return p.b * p.d + p.b * p.c + p.b + p.d;
}

long hole_count_sum(const FareyPair& p) {
    const long k = k1(p);
    const long bd = p.b * p.d;
    const auto t = ul_table(p, k, k + bd);
    long sum = 0;
    for (long i = k; i < k + bd; ++i) sum += (t.u(i) - t.l(i)) * (t.l(i + 1) - t.l(i));
    return sum;
}

long hole_count_X(const FareyPair& p) {
    p.validate();
    const long bd = p.b * p.d;
    const long lo = bd + p.b * p.c + p.b + p.d;
    const long hi = 2 * bd + p.b * p.c + p.b + p.d;
    long count = 0;
    for (long x = 1; x <= p.d; ++x)
        for (long q = p.a + 1; q <= std::min(2 * p.a, p.b); ++q) {
            const long v = 1 + x * p.b + q * p.d;
            if (lo <= v && v < hi) ++count;
        }
    return p.a * p.d - count;
}

AngleSpec angle_of(const FareyPair& p, long columns) {
    return {Rational(p.a, p.b), Rational(p.c, p.d), columns};
}

OracleResult hole_count_oracle(const FareyPair& p) {
    const long bd = p.b * p.d;
    const long start = k1(p) + 2 * bd + 1;
    const long cap = k1(p) + 10 * bd;
    long n = start;
    long prev = cubical_homology(pixelate_angle(angle_of(p, n))).beta1;
    long unchanged = 0;
    while (unchanged < 2) {
        n += bd;
        if (n > cap) throw ComputationError("hole_count_oracle: no stable count up to " + std::to_string(cap) + " columns for " + p.str());
        const long h = cubical_homology(pixelate_angle(angle_of(p, n))).beta1;
        unchanged = h == prev ? unchanged + 1 : 0;
        prev = h;
    }
    return {prev, n};
}

}  // namespace pixrec
