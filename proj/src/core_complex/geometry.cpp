#include "saet/geometry.hpp"

#include "saet/errors.hpp"
#include "saet/linprog.hpp"

namespace saet {

Vec AffineFrame::barycentric(const Vec& x) const {
    Vec mu = matvec(pinv, vsub(x, origin));
    Vec lam(mu.size() + 1);
    Q s = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        lam[i + 1] = mu[i];
        s += mu[i];
    }
    lam[0] = 1 - s;
    return lam;
}

Vec AffineFrame::project(const Vec& x) const {
    Vec mu = matvec(pinv, vsub(x, origin));
    Vec p = origin;
    for (std::size_t i = 0; i < mu.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) p[j] += mu[i] * dirs[i][j];
    return p;
}

bool AffineFrame::in_hull(const Vec& x) const {
    if (dirs.size() == x.size()) return true; // full dimensional
    return project(x) == x;
}

bool affinely_independent(const std::vector<Vec>& pts) {
    if (pts.size() <= 1) return true;
    Mat d;
    for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(vsub(pts[i], pts[0]));
    return rank(d) == static_cast<int>(d.size());
}

AffineFrame make_frame(const std::vector<Vec>& pts) {
    AffineFrame f;
    f.origin = pts.at(0);
    for (std::size_t i = 1; i < pts.size(); ++i) f.dirs.push_back(vsub(pts[i], pts[0]));
    if (f.dirs.empty()) return f;
    Mat gram(f.dirs.size(), Vec(f.dirs.size()));
    for (std::size_t i = 0; i < f.dirs.size(); ++i)
        for (std::size_t j = 0; j < f.dirs.size(); ++j) gram[i][j] = dot(f.dirs[i], f.dirs[j]);
    Mat ginv;
    if (!invert(gram, ginv)) throw Error(ErrorKind::DegenerateSimplex, "affinely dependent vertices");
    f.pinv = matmul(ginv, f.dirs);
    return f;
}

Q dist2_to_affine_hull(const std::vector<Vec>& pts, const Vec& x) {
    AffineFrame f = make_frame(pts);
    return norm2(vsub(x, f.project(x)));
}

Q dist2_to_simplex(const std::vector<Vec>& pts, const Vec& x) {
    const std::size_t k = pts.size();
    bool have = false;
    Q best;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<Vec> face;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) face.push_back(pts[i]);
        AffineFrame f = make_frame(face);
        Vec lam = f.barycentric(x);
        bool inside = true;
        for (const auto& l : lam)
            if (l < 0) { inside = false; break; }
        if (!inside) continue;
        Q d = norm2(vsub(x, f.project(x)));
        if (!have || d < best) {
            best = d;
            have = true;
        }
    }
    return best;
}

std::optional<AffineForm> strict_separator(const std::vector<Vec>& shared, const std::vector<Vec>& neg,
                                           const std::vector<Vec>& pos) {
    std::size_t n = 0;
    for (const auto* group : {&shared, &neg, &pos})
        if (!group->empty()) n = (*group)[0].size();
    // variables: w (n), c, t (n) with |w_j| <= t_j
    LinearProgram lp;
    lp.nvars = 2 * n + 1;
    auto row = [&](const Vec& p, const Q& s) {
        Vec r(lp.nvars, Q(0));
        for (std::size_t j = 0; j < n; ++j) r[j] = s * p[j];
        r[n] = s;
        return r;
    };
    for (const auto& p : shared) {
        lp.eq_a.push_back(row(p, 1));
        lp.eq_b.push_back(0);
    }
    for (const auto& p : neg) {
        lp.le_a.push_back(row(p, 1));
        lp.le_b.push_back(-1);
    }
    for (const auto& p : pos) {
        lp.le_a.push_back(row(p, -1));
        lp.le_b.push_back(-1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        Vec a(lp.nvars, Q(0)), b(lp.nvars, Q(0));
        a[j] = 1;
        a[n + 1 + j] = -1;
        b[j] = -1;
        b[n + 1 + j] = -1;
        lp.le_a.push_back(a);
        lp.le_b.push_back(0);
        lp.le_a.push_back(b);
        lp.le_b.push_back(0);
    }
    lp.objective.assign(lp.nvars, Q(0));
    for (std::size_t j = 0; j < n; ++j) lp.objective[n + 1 + j] = 1;
    LpResult r = solve_lp(lp);
    if (!r.feasible) return std::nullopt;
    AffineForm h;
    h.w.assign(r.x.begin(), r.x.begin() + n);
    h.c = r.x[n];
    return h;
}

} // namespace saet
