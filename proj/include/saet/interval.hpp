#pragma once

#include "saet/rational.hpp"

#include <vector>

namespace saet {

// Closed interval with exact rational endpoints. Arithmetic is exact on the
// endpoints; round_out() snaps outward to a dyadic grid to keep sizes bounded.
struct Interval {
    Q lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(const Q& x) : lo(x), hi(x) {} // NOLINT implicit on purpose
    Interval(long x) : lo(x), hi(x) {}     // NOLINT
    Interval(const Q& l, const Q& h);

    Q width() const { return hi - lo; }
    Q mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Q& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool positive() const { return lo > 0; }
    bool negative() const { return hi < 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b); // throws if b straddles 0
Interval sqr(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b); // caller ensures overlap
bool overlaps(const Interval& a, const Interval& b);
Interval imin(const Interval& a, const Interval& b);
Interval iabs(const Interval& a);

// Floor/ceil of x on the grid 2^-bits.
Q floor_dyadic(const Q& x, unsigned bits);
Q ceil_dyadic(const Q& x, unsigned bits);
Interval round_out(const Interval& a, unsigned bits);

// Enclosure of sqrt(x) for x >= 0 with width <= 2^-bits (exact if x is a
// square on the grid).
Interval sqrt_enclose(const Q& x, unsigned bits);
Interval isqrt(const Interval& a, unsigned bits);

// 2^-bits as a rational.
Q pow2_neg(unsigned bits);

using IVec = std::vector<Interval>;

IVec to_ivec(const Vec& v);
IVec ivsub(const IVec& a, const IVec& b);
IVec ivadd(const IVec& a, const IVec& b);
IVec ivscale(const IVec& a, const Interval& s);
Interval idot(const IVec& a, const IVec& b);
IVec iround_out(const IVec& a, unsigned bits);
Q max_width(const IVec& a);
bool contains(const IVec& box, const Vec& x);
IVec ihull(const IVec& a, const IVec& b);
Vec mids(const IVec& a);

} // namespace saet
