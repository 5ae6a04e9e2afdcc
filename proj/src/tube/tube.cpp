#include "saet/tube.hpp"

#include "saet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace saet {

Tube Tube::make(std::vector<Vec> pts, Q eps_sq, int tau) {
    if (eps_sq <= 0) throw Error(ErrorKind::PreconditionViolated, "tube parameter must be positive");
    Tube t;
    t.tau = tau;
    t.pts = std::move(pts);
    t.eps_sq = std::move(eps_sq);
    if (t.dim() > 0) {
        if (t.eps_sq >= 1) throw Error(ErrorKind::PreconditionViolated, "tube needs eps^2 < 1");
        t.ff = face_functionals(t.pts);
    }
    return t;
}

Vec Tube::project(const Vec& x) const { return dim() == 0 ? pts[0] : ff.frame.project(x); }

Tube Tube::rescaled(const Q& factor) const {
    Tube t = *this;
    t.eps_sq *= factor;
    return t;
}

bool Tube::on_tau_boundary(const Vec& x) const {
    if (dim() == 0 || !ff.frame.in_hull(x)) return false;
    bool zero = false;
    for (int i = 0; i <= dim(); ++i) {
        Q v = ff.eval(i, x);
        if (v < 0) return false;
        if (v == 0) zero = true;
    }
    return zero;
}

std::pair<Vec, Vec> Tube::bounding_box() const {
    // |x - pi(x)|^2 <= eps*^2 f_i^2 / |u_i|^2 <= eps*^2 / |u_i|^2 for every i
    Q reach_sq = eps_sq;
    if (dim() > 0) {
        Q umax = 0;
        for (const auto& u : ff.unorm2) umax = std::max(umax, u);
        reach_sq = star_sq() / umax;
    }
    Q pad = frac(1, 1 << 30);
    const double approx = std::sqrt(to_double(reach_sq)) * (1 + 1e-6);
    if (approx > 0) pad = Q(mpz_class(std::ceil(std::ldexp(approx, 40)))) / (mpz_class(1) << 40);
    while (pad * pad < reach_sq) pad *= 2;
    Vec lo = pts[0], hi = pts[0];
    for (const auto& p : pts)
        for (std::size_t j = 0; j < p.size(); ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    for (std::size_t j = 0; j < lo.size(); ++j) {
        lo[j] -= pad;
        hi[j] += pad;
    }
    return {lo, hi};
}

const char* to_string(TubeMembership m) {
    switch (m) {
    case TubeMembership::InsideOpen: return "InsideOpen";
    case TubeMembership::OnBoundary: return "OnBoundary";
    case TubeMembership::Outside: return "Outside";
    }
    return "?";
}

TubeMembership tube_membership(const Tube& t, const Vec& x) {
    Q lhs, rhs;
    if (t.dim() == 0) {
        lhs = norm2(vsub(x, t.pts[0]));
        rhs = t.eps_sq;
    } else {
        lhs = dist2_to_simplex(t.pts, x);
        bool first = true;
        Q db;
        for (std::size_t skip = 0; skip < t.pts.size(); ++skip) {
            std::vector<Vec> facet;
            for (std::size_t j = 0; j < t.pts.size(); ++j)
                if (j != skip) facet.push_back(t.pts[j]);
            Q d = dist2_to_simplex(facet, x);
            if (first || d < db) db = d;
            first = false;
        }
        rhs = t.eps_sq * db;
    }
    if (lhs < rhs) return TubeMembership::InsideOpen;
    if (lhs == rhs) return TubeMembership::OnBoundary;
    return TubeMembership::Outside;
}

bool hat_lift_membership(const Tube& t, const Vec& x) {
    if (t.dim() == 0) return norm2(vsub(x, t.pts[0])) <= t.eps_sq;
    Vec p = t.ff.frame.project(x);
    Q h2 = norm2(vsub(x, p));
    Q es2 = t.star_sq();
    for (int i = 0; i <= t.dim(); ++i) {
        Q f = t.ff.eval(i, p);
        if (f < 0) return false;
        if (h2 * t.ff.unorm2[i] > es2 * f * f) return false;
    }
    return true;
}

HatSimplex hat_simplex(const Tube& t, unsigned bits) {
    HatSimplex h;
    h.base = t.pts;
    if (t.dim() == 0) {
        h.apex_foot = to_ivec(t.pts[0]);
        h.height = sqrt_enclose(t.eps_sq, bits);
        return h;
    }
    auto inc = incenter(t.pts, pow2_neg(bits));
    h.apex_foot = inc.p;
    h.height = round_out(sqrt_enclose(t.star_sq(), bits + 4) * inc.r, bits + 4);
    return h;
}

CrossSection cross_section(const Tube& t, const Vec& p, unsigned bits) {
    Vec n = vsub(p, t.project(p));
    if (norm2(n) == 0) throw Error(ErrorKind::InPlane, "point lies in the affine hull of the tube base");
    HatSimplex h = hat_simplex(t, bits);
    CrossSection cs;
    cs.base = t.pts;
    cs.normal = n;
    Interval scale = h.height / sqrt_enclose(norm2(n), bits + 8);
    cs.apex = iround_out(ivadd(h.apex_foot, ivscale(to_ivec(n), scale)), bits + 4);
    return cs;
}

namespace {

// An endpoint of a parameter interval; `inf` means unbounded on that side.
struct End {
    bool inf = true;
    Interval v;
};

struct Range {
    bool empty = false;
    End lo, hi;
};

End at(const Interval& v) { return {false, v}; }

// Certified comparisons; nullopt when enclosures overlap.
std::optional<bool> less(const Interval& a, const Interval& b) {
    if (a.hi < b.lo) return true;
    if (a.lo >= b.hi) return false;
    return std::nullopt;
}

// max of lower endpoints / min of upper endpoints as enclosures.
End max_lo(const End& a, const End& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    return at(Interval(std::max(a.v.lo, b.v.lo), std::max(a.v.hi, b.v.hi)));
}
End min_hi(const End& a, const End& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    return at(Interval(std::min(a.v.lo, b.v.lo), std::min(a.v.hi, b.v.hi)));
}

struct Undecided {};

Range intersect_range(const Range& a, const Range& b) {
    if (a.empty || b.empty) return {true, {}, {}};
    Range r{false, max_lo(a.lo, b.lo), min_hi(a.hi, b.hi)};
    if (!r.lo.inf && !r.hi.inf) {
        auto c = less(r.hi.v, r.lo.v);
        if (!c) {
            if (r.lo.v.is_point() && r.hi.v.is_point() && r.lo.v.lo == r.hi.v.lo) return r;
            throw Undecided{};
        }
        if (*c) r.empty = true;
    }
    return r;
}

// {s : alpha + beta s >= 0 and A s^2 + B s + C <= 0}
Range cone_slice(const Q& alpha, const Q& beta, const Q& A, const Q& B, const Q& C, unsigned bits) {
    Range half;
    if (beta > 0) half.lo = at(Interval(-alpha / beta));
    else if (beta < 0) half.hi = at(Interval(-alpha / beta));
    else if (alpha < 0) half.empty = true;
    if (half.empty) return half;

    Range quad;
    if (A == 0) {
        if (B > 0) quad.hi = at(Interval(-C / B));
        else if (B < 0) quad.lo = at(Interval(-C / B));
        else if (C > 0) quad.empty = true;
        return intersect_range(half, quad);
    }
    Q disc = B * B - 4 * A * C;
    if (disc < 0 || (disc == 0 && A < 0)) {
        if (A > 0) return {true, {}, {}};
        return half;
    }
    Interval sq = sqrt_enclose(disc, bits);
    Interval r1 = (Interval(-B) - sq) / Interval(2 * A);
    Interval r2 = (Interval(-B) + sq) / Interval(2 * A);
    if (A < 0) std::swap(r1, r2); // r1 <= r2 now
    if (A > 0) {
        quad.lo = at(r1);
        quad.hi = at(r2);
        return intersect_range(half, quad);
    }
    // A < 0: two rays; convexity leaves at most one of them after the cut
    Range left{false, {}, at(r1)}, right{false, at(r2), {}};
    Range a = intersect_range(half, left), b = intersect_range(half, right);
    if (a.empty) return b;
    if (b.empty) return a;
    throw Undecided{};
}

bool segment_in_tau_face(const Tube& t, const Vec& a, const Vec& b) {
    if (!t.on_tau_boundary(a) || !t.on_tau_boundary(b)) return false;
    for (int i = 0; i <= t.dim(); ++i)
        if (t.ff.eval(i, a) == 0 && t.ff.eval(i, b) == 0) return true;
    return false;
}

} // namespace

SegmentHit segment_meets_tube(const Tube& t, const Vec& a, const Vec& b, bool ignore_tau_boundary, unsigned bits) {
    const Vec d = vsub(b, a);
    if (t.dim() == 0) {
        Vec w = vsub(a, t.pts[0]);
        Q s = 0;
        if (norm2(d) != 0) s = std::clamp(Q(-dot(w, d) / norm2(d)), Q(0), Q(1));
        return norm2(vadd(w, vscale(d, s))) <= t.eps_sq ? SegmentHit::Meets : SegmentHit::Avoids;
    }
    if (ignore_tau_boundary && segment_in_tau_face(t, a, b)) return SegmentHit::Avoids;

    const Vec n0 = vsub(a, t.project(a));
    const Vec n1 = vsub(vsub(b, t.project(b)), n0);
    const Q E = t.star_sq();
    for (int attempt = 0; attempt < 4; ++attempt, bits *= 2) {
        try {
            Range r{false, at(Interval(Q(0))), at(Interval(Q(1)))};
            for (int i = 0; i <= t.dim() && !r.empty; ++i) {
                const Q U = t.ff.unorm2[i];
                const Q alpha = t.ff.eval(i, a);
                const Q beta = dot(t.ff.u[i], d);
                Q A = U * norm2(n1) - E * beta * beta;
                Q B = 2 * (U * dot(n0, n1) - E * alpha * beta);
                Q C = U * norm2(n0) - E * alpha * alpha;
                r = intersect_range(r, cone_slice(alpha, beta, A, B, C, bits));
            }
            if (r.empty) return SegmentHit::Avoids;
            if (ignore_tau_boundary && r.lo.v.is_point() && r.hi.v.is_point() && r.lo.v.lo == r.hi.v.lo) {
                Vec x = vadd(a, vscale(d, r.lo.v.lo));
                if (t.on_tau_boundary(x)) return SegmentHit::Avoids;
            }
            return SegmentHit::Meets;
        } catch (const Undecided&) {
        }
    }
    return SegmentHit::Unknown;
}

SliceReport slice_containment_check(const Complex& k, const Tube& t, int sigma, int samples, std::uint64_t seed,
                                    unsigned bits) {
    if (t.tau < 0 || !k.is_face(t.tau, sigma)) throw Error(ErrorKind::NotAFace, "tube base is not a face of sigma");
    SliceReport rep;
    rep.samples = samples;
    if (t.tau == sigma) {
        rep.certified = samples;
        return rep;
    }
    const auto spts = k.points(sigma);
    const auto& fr = k.frame(sigma);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> wdist(1, 64);
    auto in_sigma = [&](const Vec& x) {
        if (!fr.in_hull(x)) return false;
        for (const auto& l : fr.barycentric(x))
            if (l < 0) return false;
        return true;
    };
    for (int s = 0; s < samples; ++s) {
        Vec p = zeros(spts[0].size());
        Q tot = 0;
        std::vector<Q> w;
        for (std::size_t i = 0; i < spts.size(); ++i) {
            w.emplace_back(wdist(rng));
            tot += w.back();
        }
        for (std::size_t i = 0; i < spts.size(); ++i) p = vadd(p, vscale(spts[i], w[i] / tot));

        std::optional<bool> inside;
        IVec apex;
        for (unsigned b = bits; b <= bits * 4 && !inside; b *= 2) {
            apex = cross_section(t, p, b).apex;
            // barycentric coordinates of the enclosure in sigma
            IVec rel = ivsub(apex, to_ivec(fr.origin));
            Interval sum(Q(0));
            bool all_pos = true, some_neg = false;
            for (int r = 0; r < fr.dim(); ++r) {
                Interval mu = idot(to_ivec(fr.pinv[r]), rel);
                sum = sum + mu;
                if (mu.lo < 0) all_pos = false;
                if (mu.hi < 0) some_neg = true;
            }
            Interval l0 = Interval(Q(1)) - sum;
            if (l0.lo < 0) all_pos = false;
            if (l0.hi < 0) some_neg = true;
            if (all_pos) inside = true;
            else if (some_neg) inside = false;
        }
        if (!inside) {
            ++rep.undecided;
            continue;
        }
        if (!*inside) {
            ++rep.counterexamples;
            if (!rep.witness) rep.witness = mids(apex);
            continue;
        }
        // exact check on sampled points of conv(tau, q_mid)
        Vec q = mids(apex);
        bool ok = true;
        for (int j = 0; j < 4 && ok; ++j) {
            Q total = 0;
            std::vector<Q> ws;
            for (std::size_t i = 0; i <= t.pts.size(); ++i) {
                ws.emplace_back(wdist(rng));
                total += ws.back();
            }
            Vec x = vscale(q, ws.back() / total);
            for (std::size_t i = 0; i < t.pts.size(); ++i) x = vadd(x, vscale(t.pts[i], ws[i] / total));
            ok = in_sigma(x);
        }
        if (ok) ++rep.certified;
        else {
            ++rep.counterexamples;
            if (!rep.witness) rep.witness = q;
        }
    }
    return rep;
}

} // namespace saet

namespace saet {

FalsifierReport falsify_tube_certificate(const Complex& k, int tau, const Q& eps_sq, const std::vector<int>& peers,
                                         int samples, std::uint64_t seed) {
    FalsifierReport rep;
    const Tube t = Tube::make(k.points(tau), eps_sq, tau);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> wdist(1, 64);
    std::uniform_int_distribution<int> pick(0, 1 << 20);
    // weights skewed towards a random vertex so samples crowd around tau
    auto sample_in = [&](const std::vector<Vec>& pts) {
        std::vector<Q> w;
        Q tot = 0;
        const std::size_t hot = static_cast<std::size_t>(pick(rng)) % pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            long v = wdist(rng);
            w.emplace_back(i == hot ? v * 64 : v);
            tot += w.back();
        }
        Vec x = zeros(pts[0].size());
        for (std::size_t i = 0; i < pts.size(); ++i) x = vadd(x, vscale(pts[i], w[i] / tot));
        return x;
    };

    std::vector<int> bad_faces;
    for (int s : k.cofaces(tau))
        for (int b : k.faces(s))
            if (!k.is_face(tau, b)) bad_faces.push_back(b);
    for (int top : k.tops())
        if (!k.is_face(tau, top))
            for (int b : k.faces(top)) bad_faces.push_back(b);
    std::sort(bad_faces.begin(), bad_faces.end());
    bad_faces.erase(std::unique(bad_faces.begin(), bad_faces.end()), bad_faces.end());

    struct PeerTube {
        Tube t;
        std::vector<Vec> common;
        std::vector<Vec> box_pts;
    };
    std::vector<PeerTube> pts;
    for (int p : peers) {
        if (p == tau) continue;
        PeerTube pt{Tube::make(k.points(p), eps_sq, p), {}, {}};
        for (int v : k.simplex(tau))
            for (int w : k.simplex(p))
                if (v == w) pt.common.push_back(k.vertex(v));
        for (const auto& x : k.points(tau)) pt.box_pts.push_back(x);
        for (const auto& x : k.points(p)) pt.box_pts.push_back(x);
        pts.push_back(std::move(pt));
    }

    auto in_common = [](const std::vector<Vec>& common, const Vec& x) {
        if (common.empty()) return false;
        AffineFrame f = make_frame(common);
        if (!f.in_hull(x)) return false;
        for (const auto& l : f.barycentric(x))
            if (l < 0) return false;
        return true;
    };

    for (int s = 0; s < samples; ++s) {
        ++rep.samples;
        if (!bad_faces.empty()) {
            int b = bad_faces[static_cast<std::size_t>(pick(rng)) % bad_faces.size()];
            Vec x = sample_in(k.points(b));
            if (hat_lift_membership(t, x) && !t.on_tau_boundary(x)) {
                ++rep.face_hits;
                if (!rep.witness) rep.witness = x;
            }
        }
        for (const auto& pt : pts) {
            // a point near tau or the peer, pushed slightly off their hulls
            Vec x = sample_in(pt.box_pts);
            Vec off = sample_in(k.points(k.tops()[static_cast<std::size_t>(pick(rng)) % k.tops().size()]));
            x = vadd(vscale(x, frac(15, 16)), vscale(off, frac(1, 16)));
            if (hat_lift_membership(t, x) && hat_lift_membership(pt.t, x) && !in_common(pt.common, x)) {
                ++rep.peer_hits;
                if (!rep.witness) rep.witness = x;
            }
        }
    }
    return rep;
}

} // namespace saet
