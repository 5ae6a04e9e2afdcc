#include "saet/germ_probe.hpp"

#include "saet/errors.hpp"
#include "saet/geometry.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace saet {

const char* to_string(GermVerdict v) {
    switch (v) {
    case GermVerdict::Connected: return "Connected";
    case GermVerdict::Disconnected: return "Disconnected";
    case GermVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

bool in_closed(const std::vector<Vec>& pts, const Vec& x) {
    AffineFrame f = make_frame(pts);
    if (!f.in_hull(x)) return false;
    for (const auto& l : f.barycentric(x))
        if (l < 0) return false;
    return true;
}

struct UnionFind {
    std::vector<int> p;
    int count;
    explicit UnionFind(int n) : p(n), count(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    bool join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        --count;
        return true;
    }
};

Q dyadic_below(double x, unsigned bits = 40) {
    mpz_class num(std::floor(std::ldexp(x, static_cast<int>(bits))));
    return Q(num) / (mpz_class(1) << bits);
}

std::vector<double> to_doubles(const Vec& v) {
    std::vector<double> r;
    for (const auto& c : v) r.push_back(to_double(c));
    return r;
}

double d2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

int local_rank(const std::vector<std::vector<double>>& pts, std::size_t i) {
    const std::size_t k = std::min<std::size_t>(6, pts.size() - 1);
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) near.emplace_back(d2(pts[i], pts[j]), j);
    std::partial_sort(near.begin(), near.begin() + static_cast<long>(k), near.end());
    const std::size_t n = pts[i].size();
    Eigen::MatrixXd m(k + 1, n);
    for (std::size_t c = 0; c < n; ++c) m(0, static_cast<long>(c)) = pts[i][c];
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) m(static_cast<long>(r + 1), static_cast<long>(c)) = pts[near[r].second][c];
    Eigen::RowVectorXd mean = m.colwise().mean();
    m.rowwise() -= mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 1e-300) return 0;
    int rank = 0;
    for (long j = 0; j < s.size(); ++j)
        if (s(j) > 0.15 * s(0)) ++rank;
    return rank;
}

} // namespace

static ProbeReport probe_once(const GermOracle& n, const Vec& q, Q radius, int samples, std::uint64_t seed) {
    if (n.member(q)) throw Error(ErrorKind::PreconditionViolated, "probe point is a member of the set");
    if (radius <= 0 || samples <= 0) throw Error(ErrorKind::PreconditionViolated, "probe needs positive radius and samples");

    // faces through q of the cells through q; other cells cap the radius
    std::vector<std::vector<Vec>> faces;
    std::vector<std::vector<int>> face_cells;
    std::map<std::vector<Vec>, int> face_index;
    bool capped = false;
    Q cap;
    const auto cells = n.closure_cells();
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto& cell = cells[ci];
        if (!in_closed(cell, q)) {
            Q d = dist2_to_simplex(cell, q);
            if (!capped || d < cap) cap = d;
            capped = true;
            continue;
        }
        const unsigned k = static_cast<unsigned>(cell.size());
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            if (__builtin_popcount(mask) < 2) continue;
            std::vector<Vec> f;
            for (unsigned j = 0; j < k; ++j)
                if (mask & (1u << j)) f.push_back(cell[j]);
            if (!in_closed(f, q)) continue;
            std::sort(f.begin(), f.end());
            auto [it, fresh] = face_index.emplace(f, static_cast<int>(faces.size()));
            if (fresh) {
                faces.push_back(f);
                face_cells.emplace_back();
            }
            face_cells[it->second].push_back(static_cast<int>(ci));
        }
    }
    if (faces.empty()) throw Error(ErrorKind::PreconditionViolated, "probe point is not in the closure");
    while (capped && 4 * radius * radius >= cap) radius /= 2;

    ProbeReport rep;
    rep.radius = radius;
    rep.samples = samples;
    const Q r2 = radius * radius;
    const double rd = to_double(radius);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> udist(0, 1024);

    struct Sample {
        Vec x;
        std::vector<double> xd;
        int face;
        bool member;
    };
    std::vector<Sample> pts;
    // isotropic directions: an ambient gaussian projected onto the face's
    // direction space stays exactly in the hull
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        const AffineFrame fr = make_frame(f);
        auto in_face = [&](const Vec& x) {
            for (const auto& l : fr.barycentric(x))
                if (l < 0) return false;
            return true;
        };
        for (int s = 0; s < samples; ++s) {
            for (int attempt = 0; attempt < 200; ++attempt) {
                Vec g(q.size());
                for (auto& c : g) c = dyadic_below(gauss(rng), 20);
                Vec v = vsub(fr.project(vadd(q, g)), q);
                Q l2 = norm2(v);
                if (l2 == 0) continue;
                double target = rd * (0.5 + 0.5 * static_cast<double>(udist(rng)) / 1024.0);
                Q lam = dyadic_below(target / std::sqrt(to_double(l2)));
                if (lam <= 0) continue;
                Vec x = vadd(q, vscale(v, lam));
                Q dx = norm2(vsub(x, q));
                if (4 * dx < r2 || dx > r2 || !in_face(x)) continue;
                pts.push_back({x, to_doubles(x), static_cast<int>(fi), n.member(x)});
                break;
            }
        }
    }

    std::vector<int> mem;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].member) {
            mem.push_back(static_cast<int>(i));
            rep.member_dim = std::max(rep.member_dim, static_cast<int>(faces[pts[i].face].size()) - 1);
        } else {
            ++rep.nonmembers;
        }
    }
    rep.members = static_cast<int>(mem.size());

    if (!mem.empty()) {
        const int k = std::max(1, rep.member_dim);
        double dd = std::min(rd, 4 * rd * std::pow(static_cast<double>(mem.size()), -1.0 / k));
        Q delta = dyadic_below(dd);
        Q delta2 = delta * delta;
        struct Pair {
            double dist;
            int a, b;
        };
        std::vector<Pair> cand;
        const double lim = 4 * dd * dd * (1 + 1e-9);
        for (std::size_t i = 0; i < mem.size(); ++i)
            for (std::size_t j = i + 1; j < mem.size(); ++j) {
                double dj = d2(pts[mem[i]].xd, pts[mem[j]].xd);
                if (dj <= lim) cand.push_back({dj, static_cast<int>(i), static_cast<int>(j)});
            }
        std::sort(cand.begin(), cand.end(), [](const Pair& x, const Pair& y) {
            return std::tie(x.dist, x.a, x.b) < std::tie(y.dist, y.a, y.b);
        });
        UnionFind fine(static_cast<int>(mem.size())), coarse(static_cast<int>(mem.size()));
        for (const auto& p : cand) {
            Q e = norm2(vsub(pts[mem[p.a]].x, pts[mem[p.b]].x));
            if (e > 4 * delta2) continue;
            const bool short_edge = e <= delta2;
            const bool need_fine = short_edge && fine.find(p.a) != fine.find(p.b);
            const bool need_coarse = coarse.find(p.a) != coarse.find(p.b);
            if (!need_fine && !need_coarse) continue;
            if (!n.segment_inside(pts[mem[p.a]].x, pts[mem[p.b]].x)) continue;
            if (short_edge) fine.join(p.a, p.b);
            coarse.join(p.a, p.b);
        }
        rep.components = fine.count;
        rep.components_2x = coarse.count;
    }

    // frontier points: bisect from a nonmember to the nearest member sharing a
    // cell; 24 halvings sit well below the spacing the rank test looks at
    std::vector<std::vector<double>> frontier;
    for (std::size_t i = 0; i < pts.size() && frontier.size() < 200; ++i) {
        if (pts[i].member) continue;
        int best = -1;
        double bd = 0;
        for (int m : mem) {
            bool share = false;
            for (int c : face_cells[pts[i].face])
                for (int c2 : face_cells[pts[m].face])
                    if (c == c2) share = true;
            if (!share) continue;
            double dj = d2(pts[i].xd, pts[m].xd);
            if (best < 0 || dj < bd) {
                best = m;
                bd = dj;
            }
        }
        if (best < 0) continue;
        Vec lo = pts[best].x, hi = pts[i].x;
        for (int step = 0; step < 24; ++step) {
            Vec mid = vscale(vadd(lo, hi), frac(1, 2));
            if (n.member(mid)) lo = mid;
            else hi = mid;
        }
        frontier.push_back(to_doubles(hi));
    }
    rep.boundary_points = static_cast<int>(frontier.size());
    if (frontier.size() < 3) {
        rep.complement_dim = 0;
    } else {
        std::vector<int> ranks;
        for (std::size_t i = 0; i < frontier.size(); ++i) ranks.push_back(local_rank(frontier, i));
        std::sort(ranks.begin(), ranks.end());
        rep.complement_dim = ranks[(ranks.size() - 1) / 2];
    }

    if (rep.members < 8 || rep.components != rep.components_2x) rep.verdict = GermVerdict::Inconclusive;
    else rep.verdict = rep.components == 1 ? GermVerdict::Connected : GermVerdict::Disconnected;
    return rep;
}

ProbeReport probe_germ(const GermOracle& n, const Vec& q, Q radius, int samples, std::uint64_t seed) {
    ProbeReport rep = probe_once(n, q, radius, samples, seed);
    for (int round = 1; round <= 2 && rep.verdict == GermVerdict::Inconclusive; ++round)
        rep = probe_once(n, q, radius, samples << round, seed + static_cast<std::uint64_t>(round));
    return rep;
}

} // namespace saet
