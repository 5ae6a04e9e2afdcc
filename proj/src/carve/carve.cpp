#include "saet/carve.hpp"

#include "saet/errors.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace saet {

DeformCoeffs deformation_coeffs(const Interval& s, const Interval& sp) {
    if (!(s.lo > 0) || !(s.hi < sp.lo))
        throw Error(ErrorKind::BadOrder, "deformation needs 0 < s < s'");
    DeformCoeffs c;
    c.s = s;
    c.sp = sp;
    c.a1 = s;
    c.a2 = (sp - s) / sp;
    c.b1 = sp / (sp - s);
    c.b2 = -(s * sp) / (sp - s);
    return c;
}

DeformCoeffs deformation_coeffs_for(const Q& eps_sq, unsigned bits) {
    const unsigned work = bits + 20;
    return deformation_coeffs(sqrt_enclose(eps_star_sq(eps_sq / 4), work), sqrt_enclose(eps_star_sq(eps_sq), work));
}

// ---------------------------------------------------------------- CarvedSet

CarvedSet::CarvedSet(PLSet base) : base_(std::move(base)) {
    closed_base_ = closure(base_);
    const auto& k = *base_.complex();
    for (int id : closed_base_.ids()) {
        bool maximal = true;
        for (int c : k.cofaces(id))
            if (c != id && closed_base_.contains(c)) {
                maximal = false;
                break;
            }
        if (maximal) cells_.push_back(k.points(id));
    }
}

CarvedSet CarvedSet::with(std::vector<CarvedTube> more) const {
    CarvedSet r = *this;
    for (auto& t : more) {
        r.boxes_.push_back(t.half.bounding_box());
        r.tubes_.push_back(std::move(t));
    }
    return r;
}

int CarvedSet::levels() const {
    int l = 0;
    for (const auto& t : tubes_) l = std::max(l, t.level);
    return l;
}

namespace {

bool in_box(const std::pair<Vec, Vec>& b, const Vec& x) {
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < b.first[j] || x[j] > b.second[j]) return false;
    return true;
}

bool segment_misses_box(const std::pair<Vec, Vec>& b, const Vec& x, const Vec& y) {
    for (std::size_t j = 0; j < x.size(); ++j)
        if (std::max(x[j], y[j]) < b.first[j] || std::min(x[j], y[j]) > b.second[j]) return true;
    return false;
}

} // namespace

bool CarvedSet::carved_out(const Vec& x) const {
    for (std::size_t i = 0; i < tubes_.size(); ++i) {
        const Tube& h = tubes_[i].half;
        if (in_box(boxes_[i], x) && hat_lift_membership(h, x) && !h.on_tau_boundary(x)) return true;
    }
    return false;
}

bool CarvedSet::member(const Vec& x) const { return base_.contains_point(x) && !carved_out(x); }

bool CarvedSet::closure_member(const Vec& x) const {
    if (!closed_base_.contains_point(x)) return false;
    for (const auto& t : tubes_)
        if (tube_membership(t.half, x) == TubeMembership::InsideOpen) return false;
    return true;
}

bool CarvedSet::segment_inside(const Vec& a, const Vec& b) const {
    if (!segment_in_plset(base_, a, b)) return false;
    for (std::size_t i = 0; i < tubes_.size(); ++i)
        if (!segment_misses_box(boxes_[i], a, b) && segment_meets_tube(tubes_[i].half, a, b, true) != SegmentHit::Avoids)
            return false;
    return true;
}

std::vector<std::vector<Vec>> CarvedSet::closure_cells() const { return cells_; }

// ---------------------------------------------------------- DeformationMap

DeformationMap::DeformationMap(MapDirection dir, CarvedSet n, unsigned bits)
    : dir_(dir), n_(std::move(n)), bits_(bits) {
    levels_ = n_.levels();
    const auto& tubes = n_.tubes();
    for (std::size_t i = 0; i < tubes.size(); ++i) {
        Prepared p;
        p.tube = static_cast<int>(i);
        const Tube& t = tubes[i].big;
        if (t.dim() > 0) {
            const auto& fr = t.ff.frame;
            p.proj = matmul(transpose(fr.dirs), fr.pinv);
            for (const auto& u2 : t.ff.unorm2) p.unorm.push_back(sqrt_enclose(u2, bits_ + 20));
        }
        prep_.push_back(std::move(p));
    }
}

namespace {

IVec imatvec(const Mat& m, const IVec& x) {
    IVec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Interval s(0);
        for (std::size_t j = 0; j < x.size(); ++j)
            if (m[i][j] != 0) s = s + Interval(m[i][j]) * x[j];
        r[i] = s;
    }
    return r;
}

Interval inorm2(const IVec& v) {
    Interval s(0);
    for (const auto& c : v) s = s + sqr(c);
    return s;
}

// box of radius `rad` around c
IVec ball_box(const IVec& c, const Q& rad) {
    IVec r;
    for (const auto& x : c) r.emplace_back(x.lo - rad, x.hi + rad);
    return r;
}

} // namespace

IVec DeformationMap::tube_map(const Prepared& p, const IVec& x) const {
    const CarvedTube& ct = n_.tubes()[p.tube];
    const Tube& t = ct.big;
    const unsigned work = bits_ + 10;
    const IVec o = to_ivec(t.pts[0]);
    const IVec y = ivsub(x, o);
    const IVec pi = ivadd(o, imatvec(p.proj, y));
    const IVec nrm = ivsub(x, pi);
    const Interval t2 = inorm2(nrm);
    if (t2.hi == 0) return x; // on aff(tau): either on dtau or outside the tube

    bool all_nonneg = true, some_neg = false;
    Interval d;
    for (int i = 0; i <= t.dim(); ++i) {
        Interval fi = idot(to_ivec(t.ff.u[i]), x) + Interval(t.ff.c[i]);
        if (fi.lo < 0) all_nonneg = false;
        if (fi.hi < 0) some_neg = true;
        Interval di = fi / p.unorm[i];
        d = i == 0 ? di : imin(d, di);
    }
    if (some_neg) return x;
    const Interval th = isqrt(t2, work);
    const Interval bound = ct.coeffs.sp * d;
    if (th.lo > bound.hi) return x;
    const bool inside = all_nonneg && th.hi <= bound.lo;

    const DeformCoeffs& c = ct.coeffs;
    const Interval height = dir_ == MapDirection::Push ? c.a1 * d + c.a2 * th : c.b1 * th + c.b2 * d;
    IVec img;
    if (th.lo > 0) {
        img = iround_out(ivadd(pi, ivscale(nrm, height / th)), work);
    } else {
        Q rad = std::max(th.hi, height.hi);
        img = iround_out(ball_box(pi, rad), work);
    }
    return inside ? img : ihull(x, img);
}

IVec DeformationMap::ball_map(const Prepared& p, const IVec& x) const {
    const CarvedTube& ct = n_.tubes()[p.tube];
    const unsigned work = bits_ + 10;
    const Q& r = ct.radius;
    const IVec v = to_ivec(ct.big.pts[0]);
    const IVec rel = ivsub(x, v);
    const Interval rho2 = inorm2(rel);
    if (rho2.lo > r * r) return x;
    if (rho2.is_point() && rho2.lo == r * r) return x; // fixed sphere
    const bool inside = rho2.hi <= r * r;
    IVec img;
    const Interval rho = isqrt(rho2, work);
    if (rho.lo > 0) {
        Interval f = dir_ == MapDirection::Push ? Interval(frac(1, 2)) + Interval(r / 2) / rho
                                                : Interval(2) - Interval(r) / rho;
        img = iround_out(ivadd(v, ivscale(rel, f)), work);
    } else {
        img = ball_box(v, r);
    }
    return inside ? img : ihull(x, img);
}

IVec DeformationMap::apply_level(int level, const IVec& x) const {
    IVec y = x;
    for (const auto& p : prep_) {
        const CarvedTube& ct = n_.tubes()[p.tube];
        if (ct.level != level) continue;
        y = ct.big.dim() == 0 ? ball_map(p, y) : tube_map(p, y);
    }
    return y;
}

IVec DeformationMap::apply(const IVec& x) const {
    IVec y = x;
    if (dir_ == MapDirection::Push)
        for (int l = 1; l <= levels_; ++l) y = apply_level(l, y);
    else
        for (int l = levels_; l >= 1; --l) y = apply_level(l, y);
    return y;
}

IVec DeformationMap::operator()(const Vec& x) const {
    if (dir_ == MapDirection::Push) {
        if (!n_.base().contains_point(x)) throw Error(ErrorKind::OutOfDomain, "push needs a point of the base set");
    } else if (!n_.closure_member(x)) {
        throw Error(ErrorKind::OutOfDomain, "pull needs a point of the closure of the carved set");
    }
    return apply(to_ivec(x));
}

IVec push_point(const DeformationMap& g, const Vec& x) {
    if (g.direction() != MapDirection::Push) throw Error(ErrorKind::PreconditionViolated, "not a push map");
    return g(x);
}

IVec pull_point(const DeformationMap& h, const Vec& x) {
    if (h.direction() != MapDirection::Pull) throw Error(ErrorKind::PreconditionViolated, "not a pull map");
    return h(x);
}

// ----------------------------------------------------------------- carving

namespace {

CarveResult finish(CarvedSet set, unsigned bits) {
    CarveResult r;
    r.push = DeformationMap(MapDirection::Push, set, bits);
    r.pull = DeformationMap(MapDirection::Pull, set, bits);
    r.set = std::move(set);
    return r;
}

bool has_vertex(const Complex& k, int id, int v) {
    const auto& s = k.simplex(id);
    return std::find(s.begin(), s.end(), v) != s.end();
}

} // namespace

CarveResult carve_level(const CarvedSet& n, const std::vector<int>& taus, unsigned bits) {
    if (taus.empty()) return finish(n, bits);
    const Complex& k = *n.base().complex();
    const int d = k.dim(taus[0]);
    for (int t : taus)
        if (k.dim(t) != d || d == 0)
            throw Error(ErrorKind::PreconditionViolated, "carve_level takes simplices of one positive dimension");

    std::vector<FixedPeer> fixed;
    for (const auto& ct : n.tubes())
        if (ct.big.tau >= 0 && ct.big.dim() > 0) fixed.push_back({ct.big.tau, ct.big.eps_sq});

    CarveStep step;
    step.level = n.levels() + 1;
    step.dim = d;
    step.taus = taus;
    step.eps_sq = frac(1, 4);
    for (int t : taus) {
        std::vector<int> peers;
        for (int o : taus)
            if (o != t) peers.push_back(o);
        EpsCertificate c = certify_epsilon(k, t, peers, fixed, bits);
        if (c.eps_sq < step.eps_sq) step.eps_sq = c.eps_sq;
        step.certificates.push_back(std::move(c));
    }
    // the conditions only get easier as eps shrinks, so the common eps is the minimum
    std::vector<CarvedTube> tubes;
    const DeformCoeffs coeffs = deformation_coeffs_for(step.eps_sq, bits);
    for (int t : taus) {
        CarvedTube ct;
        ct.big = Tube::make(k.points(t), step.eps_sq, t);
        ct.half = ct.big.rescaled(frac(1, 4));
        ct.level = step.level;
        ct.coeffs = coeffs;
        tubes.push_back(std::move(ct));
    }
    CarveResult r = finish(n.with(std::move(tubes)), bits);
    r.steps.push_back(std::move(step));
    return r;
}

CarveResult carve_level(const PLSet& s, const std::vector<int>& taus, unsigned bits) {
    return carve_level(CarvedSet(s), taus, bits);
}

CarveResult carve_base_vertices(const CarvedSet& n, const std::vector<int>& vertex_ids, unsigned bits) {
    if (vertex_ids.empty()) return finish(n, bits);
    const Complex& k = *n.base().complex();
    const unsigned work = bits + 20;
    CarveStep step;
    step.level = n.levels() + 1;
    step.dim = 0;
    step.taus = vertex_ids;

    // apex data of earlier positive-dimensional tubes
    struct Prior {
        const CarvedTube* ct;
        Interval reach; // eps* r_tau, bounds the height of the tube
    };
    std::vector<Prior> prior;
    for (const auto& ct : n.tubes())
        if (ct.big.dim() > 0) {
            IncenterResult inc = incenter(ct.big.pts, pow2_neg(work));
            prior.push_back({&ct, sqrt_enclose(ct.big.star_sq(), work) * inc.r});
        }

    std::vector<CarvedTube> tubes;
    for (int vs : vertex_ids) {
        if (k.dim(vs) != 0) throw Error(ErrorKind::PreconditionViolated, "carve_base_vertices takes vertices");
        const int vid = k.simplex(vs)[0];
        const Vec& v = k.vertex(vid);
        EpsCertificate cert = certify_epsilon(k, vs, {}, {}, bits);
        Q r = Q(1) / (mpz_class(2) << cert.halvings);
        std::vector<Inequality> extra;
        for (int step_i = 0;; ++step_i) {
            if (step_i > 60) throw Error(ErrorKind::CertificationFailure, "no collar radius for vertex " + std::to_string(vid));
            extra.clear();
            bool ok = true;
            auto rec = [&](Inequality in) {
                ok = ok && in.holds();
                extra.push_back(std::move(in));
            };
            for (int w : vertex_ids)
                if (w != vs) {
                    Q dw = norm2(vsub(k.vertex(k.simplex(w)[0]), v));
                    rec({"collar stays within half the distance to vertex " + std::to_string(k.simplex(w)[0]),
                         Interval(4 * r * r), Interval(dw)});
                }
            for (const auto& p : prior) {
                const Tube& t = p.ct->big;
                if (has_vertex(k, t.tau, vid)) {
                    // inside the collar the tube must be a cone at v
                    std::vector<Vec> opp;
                    for (const auto& q : t.pts)
                        if (q != v) opp.push_back(q);
                    rec({"collar within half the distance to the opposite face of simplex " + std::to_string(t.tau),
                         Interval(4 * r * r), Interval(dist2_to_affine_hull(opp, v))});
                } else {
                    Interval dist = sqrt_enclose(dist2_to_simplex(t.pts, v), work);
                    rec({"collar misses the tube of simplex " + std::to_string(t.tau), Interval(r),
                         round_out(dist - p.reach, work)});
                }
            }
            if (ok) break;
            r /= 2;
        }
        // the vertex checks are linear in eps^2: restate them at r^2
        const Q scale = (r * r) / cert.eps_sq;
        for (auto& in : cert.checks) in.lhs = Interval(in.lhs.lo * scale, in.lhs.hi * scale);
        cert.eps_sq = r * r;
        for (auto& in : extra) cert.checks.push_back(std::move(in));
        CarvedTube ct;
        ct.big = Tube::make({v}, r * r, vs);
        ct.half = ct.big.rescaled(frac(1, 4));
        ct.level = step.level;
        ct.radius = r;
        tubes.push_back(std::move(ct));
        if (step.certificates.empty() || cert.eps_sq < step.eps_sq) step.eps_sq = cert.eps_sq;
        step.certificates.push_back(std::move(cert));
    }
    CarveResult res = finish(n.with(std::move(tubes)), bits);
    res.steps.push_back(std::move(step));
    return res;
}

CarveResult carve_base_vertices(const PLSet& s, const std::vector<int>& vertex_ids, unsigned bits) {
    return carve_base_vertices(CarvedSet(s), vertex_ids, bits);
}

CarveResult appropriate_embed(const PLSet& s, unsigned bits) {
    const PLSet e = eta(s);
    const Complex& k = *s.complex();
    std::map<int, std::vector<int>, std::greater<>> by_dim;
    for (int id : e.ids()) by_dim[k.dim(id)].push_back(id);

    CarvedSet cur(s);
    std::vector<CarveStep> steps;
    std::vector<int> dims;
    for (const auto& [d, ids] : by_dim) {
        dims.push_back(d);
        if (static_cast<int>(steps.size()) > k.ambient_dim())
            throw Error(ErrorKind::RecursionDepthExceeded, "more carve levels than dimensions");
        CarveResult r = d > 0 ? carve_level(cur, ids, bits) : carve_base_vertices(cur, ids, bits);
        cur = r.set;
        for (auto& st : r.steps) steps.push_back(std::move(st));
    }
    dims.push_back(-1);
    CarveResult out = finish(cur, bits);
    out.steps = std::move(steps);
    out.eta_dims = std::move(dims);
    return out;
}

// ------------------------------------------------------------------ probing

namespace {

Vec random_point(std::mt19937_64& rng, const std::vector<Vec>& pts) {
    std::uniform_int_distribution<long> w(1, 64);
    std::vector<Q> ws;
    Q tot = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ws.emplace_back(w(rng));
        tot += ws.back();
    }
    Vec x = zeros(pts[0].size());
    for (std::size_t i = 0; i < pts.size(); ++i) x = vadd(x, vscale(pts[i], ws[i] / tot));
    return x;
}

bool contains_all(const std::vector<Vec>& cell, const std::vector<Vec>& pts) {
    for (const auto& p : pts)
        if (std::find(cell.begin(), cell.end(), p) == cell.end()) return false;
    return true;
}

} // namespace

std::vector<Vec> frontier_samples(const CarvedSet& n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto cells = n.closure_cells();
    std::vector<Vec> out;
    if (cells.empty()) return out;
    const auto& tubes = n.tubes();
    std::uniform_int_distribution<std::size_t> pick_cell(0, cells.size() - 1);
    for (long attempt = 0; static_cast<int>(out.size()) < count && attempt < 200L * count; ++attempt) {
        Vec in, outp;
        if (!tubes.empty()) {
            const auto& t = tubes[std::uniform_int_distribution<std::size_t>(0, tubes.size() - 1)(rng)].half;
            std::vector<const std::vector<Vec>*> around;
            for (const auto& c : cells)
                if (contains_all(c, t.pts)) around.push_back(&c);
            if (around.empty()) continue;
            const auto& c = *around[std::uniform_int_distribution<std::size_t>(0, around.size() - 1)(rng)];
            in = random_point(rng, t.pts);
            outp = random_point(rng, c);
        } else {
            const auto& c = cells[pick_cell(rng)];
            in = random_point(rng, c);
            outp = random_point(rng, c);
        }
        // `in` must be the non-member end
        if (n.member(in)) std::swap(in, outp);
        if (n.member(in) || !n.member(outp)) continue;
        for (int step = 0; step < 50; ++step) {
            Vec mid = vscale(vadd(in, outp), frac(1, 2));
            if (n.member(mid)) outp = mid;
            else in = mid;
        }
        out.push_back(in);
    }
    return out;
}

Q probe_radius(const CarvedSet& n, const Vec& q) {
    Q best = -1;
    for (const auto& v : n.base().complex()->vertices()) {
        Q d = norm2(vsub(v, q));
        if (best < 0 || d < best) best = d;
    }
    Q r = frac(1, 32);
    for (int i = 0; i < 200 && 16 * r * r > best; ++i) r /= 2;
    return r;
}

} // namespace saet
