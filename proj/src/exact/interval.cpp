#include "saet/interval.hpp"

#include "saet/errors.hpp"

#include <algorithm>

namespace saet {

Interval::Interval(const Q& l, const Q& h) : lo(l), hi(h) {
    if (hi < lo) std::swap(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    if (a.is_point() && b.is_point()) return Interval(a.lo * b.lo);
    Q p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error(ErrorKind::CertificationFailure, "interval division by a range containing 0");
    Interval inv(1 / b.hi, 1 / b.lo);
    return a * inv;
}

Interval sqr(const Interval& a) {
    if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
    if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
    Q m = std::max(a.lo * a.lo, a.hi * a.hi);
    return {Q(0), m};
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

bool overlaps(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

Interval imin(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval iabs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {Q(0), std::max(Q(-a.lo), a.hi)};
}

Q pow2_neg(unsigned bits) {
    mpz_class d = 1;
    d <<= bits;
    return Q(mpz_class(1), d);
}

Q floor_dyadic(const Q& x, unsigned bits) {
    mpz_class n = x.get_num();
    n <<= bits;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class d = 1;
    d <<= bits;
    Q r(f, d);
    r.canonicalize();
    return r;
}

Q ceil_dyadic(const Q& x, unsigned bits) {
    mpz_class n = x.get_num();
    n <<= bits;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class d = 1;
    d <<= bits;
    Q r(c, d);
    r.canonicalize();
    return r;
}

Interval round_out(const Interval& a, unsigned bits) {
    return {floor_dyadic(a.lo, bits), ceil_dyadic(a.hi, bits)};
}

namespace {

// floor(sqrt(x) * 2^bits) and whether it is exact.
mpz_class floor_sqrt_scaled(const Q& x, unsigned bits, bool& exact) {
    mpz_class n = x.get_num();
    n <<= 2 * bits;
    mpz_class fl, rem;
    mpz_fdiv_qr(fl.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), fl.get_mpz_t());
    exact = (rem == 0) && (s * s == fl);
    return s;
}

} // namespace

Interval sqrt_enclose(const Q& x, unsigned bits) {
    if (x < 0) throw Error(ErrorKind::CertificationFailure, "sqrt of negative value");
    if (x == 0) return Interval(Q(0));
    bool exact = false;
    mpz_class s = floor_sqrt_scaled(x, bits, exact);
    mpz_class d = 1;
    d <<= bits;
    Q lo(s, d);
    lo.canonicalize();
    if (exact) return Interval(lo);
    Q hi(s + 1, d);
    hi.canonicalize();
    return {lo, hi};
}

Interval isqrt(const Interval& a, unsigned bits) {
    Q lo = a.lo < 0 ? Q(0) : a.lo;
    if (a.hi < 0) throw Error(ErrorKind::CertificationFailure, "sqrt of negative interval");
    Interval l = sqrt_enclose(lo, bits);
    Interval h = sqrt_enclose(a.hi, bits);
    return {l.lo, h.hi};
}

IVec to_ivec(const Vec& v) {
    IVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

IVec ivsub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVec ivadd(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec ivscale(const IVec& a, const Interval& s) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Interval idot(const IVec& a, const IVec& b) {
    Interval s(Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}

IVec iround_out(const IVec& a, unsigned bits) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = round_out(a[i], bits);
    return r;
}

Q max_width(const IVec& a) {
    Q w = 0;
    for (const auto& x : a) w = std::max(w, x.width());
    return w;
}

bool contains(const IVec& box, const Vec& x) {
    for (std::size_t i = 0; i < box.size(); ++i)
        if (!box[i].contains(x[i])) return false;
    return true;
}

IVec ihull(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

Vec mids(const IVec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].mid();
    return r;
}

} // namespace saet
