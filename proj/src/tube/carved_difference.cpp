#include "saet/errors.hpp"
#include "saet/tube.hpp"

#include <cmath>
#include <random>

namespace saet {

SimplexMinusTube::SimplexMinusTube(std::vector<Vec> sigma, Tube t, bool open)
    : sigma_(std::move(sigma)), frame_(make_frame(sigma_)), t_(std::move(t)), open_(open) {}

bool SimplexMinusTube::in_sigma(const Vec& x) const {
    if (!frame_.in_hull(x)) return false;
    for (const auto& l : frame_.barycentric(x))
        if (open_ ? l <= 0 : l < 0) return false;
    return true;
}

bool SimplexMinusTube::member(const Vec& x) const { return in_sigma(x) && !hat_lift_membership(t_, x); }

bool SimplexMinusTube::segment_inside(const Vec& a, const Vec& b) const {
    return in_sigma(a) && in_sigma(b) && segment_meets_tube(t_, a, b, false) == SegmentHit::Avoids;
}

CarvedDifferenceReport carved_difference_eta(const Complex& k, int sigma, const Tube& t, int probes, int samples,
                                             std::uint64_t seed) {
    if (t.tau < 0 || t.tau == sigma || !k.is_face(t.tau, sigma))
        throw Error(ErrorKind::NotAFace, "tube base must be a proper face of sigma");
    const auto spts = k.points(sigma);
    SimplexMinusTube open_set(spts, t, true), closed_set(spts, t, false);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> wdist(1, 64);
    auto random_in = [&](const std::vector<Vec>& pts) {
        Vec x = zeros(pts[0].size());
        Q tot = 0;
        std::vector<Q> w;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            w.emplace_back(wdist(rng));
            tot += w.back();
        }
        for (std::size_t i = 0; i < pts.size(); ++i) x = vadd(x, vscale(pts[i], w[i] / tot));
        return x;
    };
    std::vector<std::vector<Vec>> sigma_facets;
    for (std::size_t skip = 0; skip < spts.size(); ++skip) {
        std::vector<Vec> f;
        for (std::size_t j = 0; j < spts.size(); ++j)
            if (j != skip) f.push_back(spts[j]);
        sigma_facets.push_back(f);
    }
    std::vector<std::vector<Vec>> tau_facets;
    for (std::size_t skip = 0; skip < t.pts.size() && t.dim() > 0; ++skip) {
        std::vector<Vec> f;
        for (std::size_t j = 0; j < t.pts.size(); ++j)
            if (j != skip) f.push_back(t.pts[j]);
        tau_facets.push_back(f);
    }

    CarvedDifferenceReport rep;
    for (int p = 0; p < probes; ++p) {
        Vec in = random_in(t.pts);
        Vec out;
        for (;;) {
            out = random_in(spts);
            if (!hat_lift_membership(t, out)) break;
        }
        for (int step = 0; step < 60; ++step) {
            Vec mid = vscale(vadd(in, out), frac(1, 2));
            if (hat_lift_membership(t, mid)) in = mid;
            else out = mid;
        }
        // `in` is a tube point within 2^-60 of the frontier
        Q room;
        bool first = true;
        for (const auto& f : sigma_facets) {
            Q d = dist2_to_simplex(f, in);
            if (first || d < room) room = d;
            first = false;
        }
        for (const auto& f : tau_facets) room = std::min(room, dist2_to_simplex(f, in));
        Q r(1);
        while (16 * r * r > room) r /= 2;
        ProbeReport a = probe_germ(open_set, in, r, samples, seed + 7919 * static_cast<std::uint64_t>(p));
        ProbeReport b = probe_germ(closed_set, in, r, samples, seed + 7919 * static_cast<std::uint64_t>(p) + 1);
        ++rep.probes;
        if (a.obstruction() || b.obstruction()) ++rep.obstructions;
        if (a.verdict == GermVerdict::Inconclusive || b.verdict == GermVerdict::Inconclusive) ++rep.inconclusive;
        rep.points.push_back(in);
        rep.open_reports.push_back(a);
        rep.closed_reports.push_back(b);
    }
    return rep;
}

} // namespace saet
