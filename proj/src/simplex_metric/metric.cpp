#include "saet/metric.hpp"

#include "saet/errors.hpp"

#include <algorithm>
#include <optional>

namespace saet {

Interval FaceFunctionals::eval(int i, const IVec& x) const {
    return idot(to_ivec(u[i]), x) + Interval(c[i]);
}

int FaceFunctionals::index_of_vertex(int k) const {
    for (int i = 0; i <= dim(); ++i)
        if (vertex[i] == k) return i;
    return -1;
}

FaceFunctionals face_functionals(const std::vector<Vec>& pts) {
    if (!affinely_independent(pts)) throw Error(ErrorKind::DegenerateSimplex, "face functionals of a degenerate simplex");
    FaceFunctionals ff;
    ff.pts = pts;
    ff.frame = make_frame(pts);
    const int d = ff.dim();
    const std::size_t n = pts[0].size();
    Vec u0 = zeros(n);
    Q c0 = 1;
    for (int k = 0; k < d; ++k) {
        const Vec& g = ff.frame.pinv[k];
        Q ck = -dot(g, pts[0]);
        ff.u.push_back(g);
        ff.c.push_back(ck);
        ff.vertex.push_back(k + 1);
        u0 = vsub(u0, g);
        c0 -= ck;
    }
    ff.u.push_back(u0);
    ff.c.push_back(c0);
    ff.vertex.push_back(0);
    for (const auto& g : ff.u) ff.unorm2.push_back(norm2(g));
    return ff;
}

IncenterResult incenter(const std::vector<Vec>& pts, const Q& target_width) {
    FaceFunctionals ff = face_functionals(pts);
    const int d = ff.dim();
    IncenterResult res;
    if (d == 0) {
        res.p = to_ivec(pts[0]);
        res.r = Interval(Q(0));
        return res;
    }
    unsigned bits = 8;
    while (pow2_neg(bits) > target_width) ++bits;
    bits += 8;
    for (int attempt = 0; attempt < 12; ++attempt, bits *= 2) {
        // Equidistance forces f_i(p) = r * |u_i| with r = 1 / sum |u_i|.
        std::vector<Interval> norms;
        Interval total(Q(0));
        for (int i = 0; i <= d; ++i) {
            norms.push_back(sqrt_enclose(ff.unorm2[i], bits));
            total = total + norms.back();
        }
        Interval r = round_out(Interval(Q(1)) / total, bits + 4);
        IVec p = to_ivec(zeros(pts[0].size()));
        for (int i = 0; i <= d; ++i) {
            Interval w = round_out(norms[i] * r, bits + 4);
            p = ivadd(p, ivscale(to_ivec(pts[ff.vertex[i]]), w));
        }
        p = iround_out(p, bits + 4);
        if (r.width() <= target_width && max_width(p) <= target_width) {
            res.p = p;
            res.r = r;
            res.bits = bits;
            return res;
        }
    }
    throw Error(ErrorKind::CertificationFailure, "incenter refinement did not reach the target width");
}

Hyperplane separating_hyperplane(const std::vector<Vec>& tau1, const std::vector<Vec>& tau2) {
    std::vector<Vec> shared, neg, pos;
    for (const auto& p : tau1)
        (std::find(tau2.begin(), tau2.end(), p) != tau2.end() ? shared : neg).push_back(p);
    for (const auto& p : tau2)
        if (std::find(tau1.begin(), tau1.end(), p) == tau1.end()) pos.push_back(p);
    if (neg.empty() || pos.empty())
        throw Error(ErrorKind::NotCommonFace, "one simplex is a face of the other");
    auto h = strict_separator(shared, neg, pos);
    if (!h) throw Error(ErrorKind::NotCommonFace, "simplices do not meet in a common face");
    return *h;
}

Hyperplane separating_hyperplane(const Complex& k, int tau1, int tau2) {
    return separating_hyperplane(k.points(tau1), k.points(tau2));
}

namespace {

struct PeerData {
    int id;
    Hyperplane h;
    Interval wnorm;
    bool has_ball = false;
    IncenterResult inc;
    std::optional<Interval> fixed_es; // eps* of an already carved peer
};

} // namespace

EpsCertificate certify_epsilon(const Complex& k, int tau, const std::vector<int>& peers, unsigned bits) {
    return certify_epsilon(k, tau, peers, {}, bits);
}

EpsCertificate certify_epsilon(const Complex& k, int tau, const std::vector<int>& peers,
                               const std::vector<FixedPeer>& fixed, unsigned bits) {
    const unsigned work = bits + 20;
    const int d = k.dim(tau);
    const auto pts = k.points(tau);
    EpsCertificate cert;
    cert.tau = tau;

    std::vector<int> star;
    for (int c : k.cofaces(tau))
        if (c != tau) star.push_back(c);

    std::vector<PeerData> others;
    auto add_other = [&](int id, bool ball) {
        if (id == tau) return;
        for (const auto& o : others)
            if (o.id == id) {
                return;
            }
        PeerData pd;
        pd.id = id;
        pd.h = separating_hyperplane(k, tau, id);
        pd.wnorm = sqrt_enclose(norm2(pd.h.w), work);
        pd.has_ball = ball && k.dim(id) > 0;
        if (pd.has_ball) pd.inc = incenter(k.points(id), pow2_neg(work));
        others.push_back(pd);
    };
    for (const auto& f : fixed) {
        if (k.is_face(tau, f.id) || k.is_face(f.id, tau)) continue;
        add_other(f.id, true);
        for (auto& o : others)
            if (o.id == f.id) o.fixed_es = sqrt_enclose(eps_star_sq(f.eps_sq), work);
    }
    for (int p : peers) add_other(p, true);
    for (int t : k.tops())
        if (!k.is_face(tau, t)) add_other(t, false);

    IncenterResult inc;
    FaceFunctionals fft;
    if (d > 0) {
        inc = incenter(pts, pow2_neg(work));
        fft = face_functionals(pts);
    }
    // Star data: functional of sigma that vanishes on the facet opposite a
    // vertex of tau.
    struct StarFacet {
        int sigma;
        int vertex;
        FaceFunctionals ff;
        int idx;
    };
    std::vector<StarFacet> facets;
    for (int s : star) {
        auto sp = k.points(s);
        FaceFunctionals ff = face_functionals(sp);
        const auto& sv = k.simplex(s);
        for (int v : k.simplex(tau)) {
            int local = static_cast<int>(std::find(sv.begin(), sv.end(), v) - sv.begin());
            facets.push_back({s, v, ff, ff.index_of_vertex(local)});
        }
    }

    for (int step = 0; step < 40; ++step) {
        Q eps_sq = Q(1) / (mpz_class(4) << (2 * step));
        std::vector<Inequality> checks;
        bool ok = true;
        auto record = [&](Inequality in) {
            ok = ok && in.holds();
            checks.push_back(std::move(in));
        };
        if (d == 0) {
            // Vertex tube: the closed ball of radius eps.
            const Vec& v = pts[0];
            for (const auto& sf : facets) {
                std::vector<Vec> opp;
                for (std::size_t i = 0; i < sf.ff.pts.size(); ++i)
                    if (static_cast<int>(i) != sf.ff.vertex[sf.idx]) opp.push_back(sf.ff.pts[i]);
                Q dist2 = dist2_to_affine_hull(opp, v);
                record({"ball clears opposite facet of star simplex " + std::to_string(sf.sigma), Interval(eps_sq),
                        Interval(dist2)});
            }
            for (const auto& o : others) {
                Q hv = o.h(v);
                record({"ball avoids separator against simplex " + std::to_string(o.id),
                        Interval(eps_sq * norm2(o.h.w)), Interval(hv * hv)});
            }
        } else {
            Interval es = sqrt_enclose(eps_star_sq(eps_sq), work);
            Interval apex = es * inc.r;
            for (const auto& sf : facets) {
                Interval lam = sf.ff.eval(sf.idx, inc.p);
                Interval dist = lam / sqrt_enclose(sf.ff.unorm2[sf.idx], work);
                record({"apex ball clears facet opposite vertex " + std::to_string(sf.vertex) + " in simplex " +
                            std::to_string(sf.sigma),
                        round_out(apex, work), round_out(dist, work)});
            }
            for (const auto& o : others) {
                Interval hp = idot(to_ivec(o.h.w), inc.p) + Interval(o.h.c);
                record({"apex ball avoids separator against simplex " + std::to_string(o.id),
                        round_out(apex * o.wnorm, work), round_out(-hp, work)});
                if (o.has_ball) {
                    Interval hq = idot(to_ivec(o.h.w), o.inc.p) + Interval(o.h.c);
                    record({"peer apex ball of simplex " + std::to_string(o.id) + " avoids separator",
                            round_out((o.fixed_es ? *o.fixed_es : es) * o.inc.r * o.wnorm, work), round_out(hq, work)});
                }
            }
        }
        if (ok) {
            cert.eps_sq = eps_sq;
            cert.halvings = step;
            cert.checks = std::move(checks);
            return cert;
        }
    }
    throw Error(ErrorKind::CertificationFailure, "no certified epsilon for simplex " + std::to_string(tau));
}

} // namespace saet
