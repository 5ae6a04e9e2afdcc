#include "saet/homlab.hpp"

#include "saet/errors.hpp"

#include <algorithm>

namespace saet {

// ---------------------------------------------------------------- PathGerm

PathGerm PathGerm::make(std::vector<Q> breaks, std::vector<Piece> pieces) {
    if (breaks.empty() || breaks.size() != pieces.size())
        throw Error(ErrorKind::PreconditionViolated, "path needs one piece per breakpoint interval");
    const std::size_t n = pieces[0].c.size();
    Q prev = 0;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        if (breaks[i] <= prev) throw Error(ErrorKind::PreconditionViolated, "breakpoints must increase from 0");
        prev = breaks[i];
        if (pieces[i].c.size() != n || pieces[i].v.size() != n)
            throw Error(ErrorKind::PreconditionViolated, "path pieces of mixed dimension");
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const Q& t = breaks[i];
        if (vadd(pieces[i].c, vscale(pieces[i].v, t)) != vadd(pieces[i + 1].c, vscale(pieces[i + 1].v, t)))
            throw Error(ErrorKind::PreconditionViolated, "path is discontinuous at t = " + to_string(t));
    }
    PathGerm p;
    p.breaks_ = std::move(breaks);
    p.pieces_ = std::move(pieces);
    return p;
}

PathGerm PathGerm::line(Vec c, Vec v, Q delta) { return make({delta}, {{std::move(c), std::move(v)}}); }

bool PathGerm::constant() const {
    return std::all_of(germ().v.begin(), germ().v.end(), [](const Q& x) { return x == 0; });
}

Vec PathGerm::at(const Q& t) const {
    if (t <= 0 || t > breaks_.back()) throw Error(ErrorKind::OutOfDomain, "parameter outside (0, delta]");
    std::size_t i = 0;
    while (breaks_[i] < t) ++i;
    return vadd(pieces_[i].c, vscale(pieces_[i].v, t));
}

// --------------------------------------------------------------- GermValue

namespace {

void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Q coef(const UPoly& p, std::size_t i) { return i < p.size() ? p[i] : Q(0); }

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly usub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), Q(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coef(a, i) - coef(b, i);
    trim(r);
    return r;
}

int lead_sign(const UPoly& p) {
    int k = uorder(p);
    return k < 0 ? 0 : sign(p[static_cast<std::size_t>(k)]);
}

// num/den germ at 0+ as (value, slope); PoleAtZero when unbounded.
GermValue germ_from(UPoly num, UPoly den) {
    trim(num);
    trim(den);
    const int kd = uorder(den);
    if (kd < 0) throw Error(ErrorKind::PoleAtZero, "denominator vanishes identically along the germ");
    const int kn = uorder(num);
    if (kn < 0) return germ_constant(0);
    if (kn < kd) throw Error(ErrorKind::PoleAtZero, "function is unbounded along the germ");
    num.erase(num.begin(), num.begin() + kd);
    den.erase(den.begin(), den.begin() + kd);
    GermValue g;
    const Q d0 = den[0];
    g.a = coef(num, 0) / d0;
    g.b = (coef(num, 1) * d0 - coef(num, 0) * coef(den, 1)) / (d0 * d0);
    g.num = std::move(num);
    g.den = std::move(den);
    return g;
}

// Polynomial in variable 0 only, as dense coefficients.
UPoly upoly_in_first(const Poly& p) {
    UPoly r;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 1; i < e.size(); ++i)
            if (e[i] != 0) throw Error(ErrorKind::PreconditionViolated, "polynomial depends on more than one variable");
        const auto k = static_cast<std::size_t>(e.empty() ? 0 : e[0]);
        if (r.size() <= k) r.resize(k + 1, Q(0));
        r[k] += c;
    }
    trim(r);
    return r;
}

} // namespace

GermValue germ_constant(const Q& a) {
    GermValue g;
    g.a = a;
    g.b = 0;
    if (a != 0) g.num = {a};
    g.den = {Q(1)};
    return g;
}

int compare_exact(const GermValue& x, const GermValue& y) {
    if (x.a != y.a) return x.a < y.a ? -1 : 1;
    if (x.b != y.b) return x.b < y.b ? -1 : 1;
    const UPoly diff = usub(umul(x.num, y.den), umul(y.num, x.den));
    return lead_sign(diff) * lead_sign(x.den) * lead_sign(y.den);
}

bool is_zero_germ(const GermValue& x) { return x.a == 0 && x.b == 0 && uorder(x.num) < 0; }

std::string to_string(const GermValue& g) { return "(" + to_string(g.a) + ", " + to_string(g.b) + ")"; }

// ----------------------------------------------------------------- carriers

namespace {

bool lex_inside(const AffineFrame& fr, const std::vector<Vec>& terms) {
    const Vec& p0 = terms[0];
    if (!fr.in_hull(p0)) return false;
    const Vec b0 = fr.barycentric(p0);
    std::vector<Vec> lin;
    for (std::size_t j = 1; j < terms.size(); ++j) {
        const Vec p = vadd(p0, terms[j]);
        if (!fr.in_hull(p)) return false;
        lin.push_back(vsub(fr.barycentric(p), b0));
    }
    for (std::size_t i = 0; i < b0.size(); ++i) {
        int s = sign(b0[i]);
        for (std::size_t j = 0; s == 0 && j < lin.size(); ++j) s = sign(lin[j][i]);
        if (s <= 0) return false;
    }
    return true;
}

} // namespace

std::optional<int> lex_carrier(const Complex& k, const std::vector<Vec>& terms) {
    auto base = k.locate(terms[0]);
    if (!base) return std::nullopt;
    for (int c : k.cofaces(*base))
        if (lex_inside(k.frame(c), terms)) return c;
    return std::nullopt;
}

std::optional<int> germ_carrier(const Complex& k, const PathGerm& a) {
    if (a.dim() != k.ambient_dim()) throw Error(ErrorKind::PreconditionViolated, "path and complex differ in dimension");
    return lex_carrier(k, {a.germ().c, a.germ().v});
}

bool germ_in_open_hull(const std::vector<Vec>& pts, const PathGerm& a) {
    return lex_inside(make_frame(pts), {a.germ().c, a.germ().v});
}

// ---------------------------------------------------------------- evaluate

namespace {

// x_i(t) = c_i + t v_i
std::vector<Poly> path_polys(const PathGerm& a) {
    std::vector<Poly> x;
    for (int i = 0; i < a.dim(); ++i) x.push_back(Poly::affine({a.germ().c[i], a.germ().v[i]}));
    return x;
}

// FaceForm parameters mu(t) along the germ, which must lie in aff(face).
std::vector<Poly> face_params(const Complex& k, int face, const PathGerm& a) {
    const AffineFrame& fr = k.frame(face);
    const Vec m0 = matvec(fr.pinv, vsub(a.germ().c, fr.origin));
    const Vec m1 = matvec(fr.pinv, a.germ().v);
    std::vector<Poly> mu;
    for (std::size_t i = 0; i < m0.size(); ++i) mu.push_back(Poly::affine({m0[i], m1[i]}));
    return mu;
}

GermValue form_along(const FaceForm& form, const std::vector<Poly>& mu) {
    if (mu.empty()) { // vertex face: constant
        Q d = form.den.eval({});
        if (d == 0) throw Error(ErrorKind::PoleAtZero, "face value undefined");
        return germ_constant(form.num.eval({}) / d);
    }
    return germ_from(upoly_in_first(form.num.compose(mu)), upoly_in_first(form.den.compose(mu)));
}

// Pieces usable on carrier beta, own piece first.
std::vector<int> candidates(const PLFFunction& f, int beta) {
    std::vector<int> c;
    if (f.piece_on(beta)) c.push_back(beta);
    for (int s : f.pieces_around(beta))
        if (s != beta) c.push_back(s);
    return c;
}

} // namespace

GermValue evaluate(const PLFFunction& f, const PathGerm& a) {
    const Complex& k = f.complex();
    auto beta = germ_carrier(k, a);
    if (!beta || !f.domain().contains(*beta))
        throw Error(ErrorKind::NotEventuallyInDomain, "germ does not stay in the domain");
    const auto x = path_polys(a);
    bool pole = false;
    for (int s : candidates(f, *beta)) {
        const PLFPiece* p = f.piece_on(s);
        UPoly d = upoly_in_first(p->den.compose(x));
        if (uorder(d) < 0) continue;
        try {
            return germ_from(upoly_in_first(p->num.compose(x)), d);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PoleAtZero) throw;
            pole = true;
        }
    }
    if (!pole) {
        // every piece's denominator vanishes on the carrier: use face limits
        const auto mu = face_params(k, *beta, a);
        for (int s : candidates(f, *beta)) {
            if (s == *beta) continue;
            LimitResult l = face_limit(f, s, *beta);
            if (l.kind == LimitResult::Kind::Value) return form_along(l.value, mu);
        }
    }
    throw Error(ErrorKind::PoleAtZero, "no piece stays bounded along the germ");
}

PathGerm core(const PathGerm& a) { return PathGerm::line(a.germ().c, a.germ().v, a.breaks()[0]); }

bool same_core(const PathGerm& a, const PathGerm& b) {
    return a.germ().c == b.germ().c && a.germ().v == b.germ().v;
}

// --------------------------------------------------------------- adjacency

bool is_in_extension(const PathGerm& a, const PLSet& s) {
    auto beta = germ_carrier(*s.complex(), a);
    return beta && s.contains(*beta);
}

const char* to_string(Adjacency a) {
    switch (a) {
    case Adjacency::Adjacent: return "Adjacent";
    case Adjacency::NotAdjacent: return "NotAdjacent";
    case Adjacency::Unknown: return "Unknown";
    }
    return "?";
}

// A locally closed N = Cl(N) ∩ U containing S with q in S has U around q, so
// it catches every germ of Cl(S) ending at q. Otherwise Cl(S) minus the
// closed arc of the germ is locally closed, contains S and misses the germ.
Adjacency adjacency_test(const PathGerm& a, const PLSet& s) {
    auto beta = germ_carrier(*s.complex(), a);
    if (!beta) return Adjacency::NotAdjacent;
    if (s.contains(*beta)) return Adjacency::Adjacent;
    if (closure(s).contains(*beta) && s.contains_point(a.limit())) return Adjacency::Adjacent;
    return Adjacency::NotAdjacent;
}

int depth(const PathGerm& a, const PLSet& s) {
    if (!closure(s).contains_point(a.limit()))
        throw Error(ErrorKind::LimitOutsideClosure, "limit point outside the closure");
    return a.constant() && s.contains_point(a.limit()) ? 0 : 1;
}

GermValue eval_hom(const PLFFunction& f, const PathGerm& a, const ExtensionReport& ext) {
    const PLSet& m = f.domain();
    if (adjacency_test(a, m) != Adjacency::Adjacent)
        throw Error(ErrorKind::PreconditionViolated, "germ is not adjacent to the domain");
    if (is_in_extension(a, m)) return evaluate(f, a);
    const Complex& k = f.complex();
    const int beta = *germ_carrier(k, a);
    const FaceLimits* fl = ext.limits_at(beta);
    if (!ext.V.contains(beta) || ext.Y.contains(beta) || !fl || !fl->value)
        throw Error(ErrorKind::GermInBadSet, "germ carrier " + std::to_string(beta) + " is outside V \\ Y");
    return form_along(*fl->value, face_params(k, beta, a));
}

// ---------------------------------------------------------------- cone sets

std::vector<Vec> ConeSet::cone_pts() const {
    auto p = tau_pts;
    p.push_back(q);
    return p;
}

bool ConeSet::in_cone(const Vec& x) const {
    const AffineFrame fr = make_frame(cone_pts());
    if (!fr.in_hull(x)) return false;
    for (const Q& c : fr.barycentric(x))
        if (c < 0) return false;
    return true;
}

bool ConeSet::contains(const Vec& x) const { return in_cone(x) && m.contains_point(x); }

namespace {

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorKind::PreconditionViolated, what); }

// Deterministic positive weight patterns for sampling hulls.
std::vector<Vec> weight_samples(std::size_t n, int count) {
    std::vector<Vec> out;
    for (int s = 0; s < count; ++s) {
        Vec w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = 1 + static_cast<long>((s * 7 + static_cast<int>(i) * (s + 3)) % 11);
        out.push_back(w);
    }
    return out;
}

Vec combo(const std::vector<Vec>& pts, const Vec& w) {
    Q total = 0;
    Vec x = zeros(pts[0].size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        x = vadd(x, vscale(pts[i], w[i]));
        total += w[i];
    }
    return vscale(x, 1 / total);
}

// lambda with q = v + lambda (b - v), if q is on that line
std::optional<Q> segment_param(const Vec& v, const Vec& b, const Vec& q) {
    const Vec d = vsub(b, v), r = vsub(q, v);
    const Q lam = dot(r, d) / dot(d, d);
    if (vadd(v, vscale(d, lam)) != q) return std::nullopt;
    return lam;
}

} // namespace

ConeSet cone_restriction(const PLSet& m, int tau, int sigma, const Vec& q) {
    const Complex& k = *m.complex();
    if (tau < 0 || tau >= k.size() || sigma < 0 || sigma >= k.size()) violated("simplex id out of range");
    if (m.contains(tau)) violated("tau meets M");
    if (!k.is_face(tau, sigma)) violated("tau is not a face of sigma");
    if (!m.contains(sigma)) violated("sigma is not in M");
    if (k.dim(sigma) < k.dim(tau) + 2) violated("dim sigma < dim tau + 2");
    if (static_cast<int>(q.size()) != k.ambient_dim()) violated("apex has the wrong dimension");

    ConeSet c;
    c.m = m;
    c.tau = tau;
    c.sigma = sigma;
    c.b = k.barycenter(sigma);
    c.q = q;
    c.tau_pts = k.points(tau);
    const auto& tv = k.simplex(tau);
    const auto& sv = k.simplex(sigma);
    for (int v : sv) {
        if (std::find(tv.begin(), tv.end(), v) != tv.end()) continue;
        auto lam = segment_param(k.vertex(v), c.b, q);
        if (lam && *lam > 0 && *lam < 1) {
            c.v = v;
            break;
        }
    }
    if (c.v < 0) violated("apex is not inside an open segment from a vertex of sigma outside tau to its barycenter");
    VertexList eps;
    int dropped = -1;
    for (int w : sv) {
        bool keep = w == c.v || std::find(tv.begin(), tv.end(), w) != tv.end();
        if (!keep && dropped < 0) dropped = w;
        else eps.push_back(w);
    }
    c.epsilon = k.id_of(eps);

    // tau^0 ⊂ tau(q) \ T(q) ⊂ tau, checked on samples of both parts
    for (const auto& w : weight_samples(c.tau_pts.size(), 24))
        if (c.contains(combo(c.tau_pts, w))) violated("T(q) meets the open face tau");
    const auto cone = c.cone_pts();
    for (const auto& w : weight_samples(cone.size(), 48)) {
        Vec ww = w;
        for (int zero = -1; zero < static_cast<int>(c.tau_pts.size()); ++zero) {
            if (zero >= 0) ww[static_cast<std::size_t>(zero)] = 0; // reach the boundary of tau(q) too
            if (!c.contains(combo(cone, ww))) violated("a point of tau(q) off tau is missing from M");
        }
    }
    return c;
}

// ------------------------------------------------------------ cone homs

namespace {

// Value at the germ a of lim_{s->0+} f(a(t) + s (y - a(t))), s << t.
GermValue ray_limit(const PLFFunction& f, const PathGerm& a, const Vec& y) {
    const Complex& k = f.complex();
    const Vec& c = a.germ().c;
    const Vec& v = a.germ().v;
    const Vec toward = vsub(y, c);
    auto beta = lex_carrier(k, {c, v, toward, vscale(v, Q(-1))});
    if (!beta || !f.domain().contains(*beta))
        throw Error(ErrorKind::NotEventuallyInDomain, "ray toward the apex leaves the domain");
    // x_i(t, s) = c_i + t v_i + s (y_i - c_i) - t s v_i
    std::vector<Poly> x;
    const Poly ts = Poly::variable(2, 0) * Poly::variable(2, 1);
    for (int i = 0; i < a.dim(); ++i) x.push_back(Poly::affine({c[i], v[i], toward[i]}) - ts * v[i]);
    for (int s : candidates(f, *beta)) {
        const PLFPiece* p = f.piece_on(s);
        const Poly num = p->num.compose(x), den = p->den.compose(x);
        if (den.is_zero()) continue;
        const int kd = den.order_in(1);
        const int kn = num.order_in(1);
        if (kn < 0 || kn > kd) return germ_constant(0);
        if (kn < kd) throw Error(ErrorKind::PoleAtZero, "restriction is unbounded near the germ");
        return germ_from(upoly_in_first(num.coeff_in(1, kn)), upoly_in_first(den.coeff_in(1, kd)));
    }
    throw Error(ErrorKind::PoleAtZero, "no piece is defined near the germ");
}

} // namespace

GermValue hom_via_cone(const PLFFunction& f, const ConeSet& c, const PathGerm& a) {
    if (!germ_in_open_hull(c.tau_pts, a)) throw Error(ErrorKind::GermNotInTau, "germ does not lie in the open face tau");
    GermValue g = ray_limit(f, a, c.q);
    // a second ray inside tau(q) must agree, else f|T(q) has no extension there
    Vec mid = c.q;
    for (const auto& p : c.tau_pts) mid = vadd(mid, vscale(p, Q(1) / static_cast<long>(c.tau_pts.size())));
    mid = vscale(mid, Q(1, 2));
    if (compare_exact(g, ray_limit(f, a, mid)) != 0)
        throw Error(ErrorKind::GermInBadSet, "restriction to T(q) does not extend continuously to the germ");
    return g;
}

namespace {

// Stellar subdivision at p in the open simplex rho; p becomes the last vertex.
ComplexPtr stellar(const Complex& k, int rho, const Vec& p) {
    auto verts = k.vertices();
    verts.push_back(p);
    const int nv = static_cast<int>(verts.size()) - 1;
    std::vector<VertexList> tops;
    for (int t : k.tops()) {
        if (!k.is_face(rho, t)) {
            tops.push_back(k.simplex(t));
            continue;
        }
        for (int w : k.simplex(rho)) {
            VertexList s;
            for (int u : k.simplex(t))
                if (u != w) s.push_back(u);
            s.push_back(nv);
            std::sort(s.begin(), s.end());
            tops.push_back(s);
        }
    }
    return Complex::build(verts, tops);
}

} // namespace

HomWitness distinct_homs_witness(const PLSet& m, int tau, int sigma, const Vec& q1, const Vec& q2,
                                 const PathGerm& a) {
    if (q1 == q2) throw Error(ErrorKind::SameApex, "apexes coincide");
    ConeSet c1 = cone_restriction(m, tau, sigma, q1);
    ConeSet c2 = cone_restriction(m, tau, sigma, q2);
    if (c1.v != c2.v) violated("apexes lie on different segments");
    if (!germ_in_open_hull(c1.tau_pts, a)) throw Error(ErrorKind::GermNotInTau, "germ does not lie in the open face tau");

    // Make tau(q1), tau(q2) faces: star sigma at the apex nearer b, then the
    // edge from it to v at the other apex.
    const Complex& k = *m.complex();
    const Vec& vp = k.vertex(c1.v);
    const bool one_far = norm2(vsub(q1, vp)) > norm2(vsub(q2, vp));
    const Vec& far = one_far ? q1 : q2;
    const Vec& near = one_far ? q2 : q1;
    auto k1 = stellar(k, sigma, far);
    const int nfar = static_cast<int>(k1->vertices().size()) - 1;
    auto k2 = stellar(*k1, k1->id_of({c1.v, nfar}), near);
    const int nnear = static_cast<int>(k2->vertices().size()) - 1;
    const int n2 = one_far ? nnear : nfar; // vertex at q2

    VertexList tv = k.simplex(tau);
    const int tau2 = k2->id_of(tv);
    tv.push_back(n2);
    const int cone2 = k2->id_of(tv);

    // one barycentric subdivision: vertex i sits at the barycenter of k2's simplex i
    Subdivision sub = barycentric_subdivide(k2, transport(m, k2));
    const std::size_t nv = sub.complex->vertices().size();
    Vec lab(nv), den(nv), gv(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        const int id = static_cast<int>(i);
        const bool in_tau = k2->is_face(id, tau2);
        lab[i] = k2->is_face(id, cone2) && !in_tau ? 1 : 0;
        den[i] = in_tau ? 0 : 1;
        gv[i] = in_tau && id != tau2 ? 0 : 1;
    }
    // f0 = (hats labelled 1) / (hats off tau): 0 on T(q1), 1 on T(q2).
    // g = hats off the boundary of tau, zero exactly there.
    const PLFFunction fa = pl_from_vertex_values(sub.marked, lab);
    const PLFFunction fd = pl_from_vertex_values(sub.marked, den);
    const PLFFunction fg = pl_from_vertex_values(sub.marked, gv);
    std::vector<PLFPiece> pieces;
    for (std::size_t i = 0; i < fa.pieces().size(); ++i)
        pieces.push_back(ratio_piece(fa.pieces()[i].simplex,
                                     {fa.pieces()[i].num_factors[0], fg.pieces()[i].num_factors[0]},
                                     {fd.pieces()[i].num_factors[0]}));
    PLFFunction f = PLFFunction::make(sub.marked, std::move(pieces));

    GermValue psi1 = hom_via_cone(f, c1, a);
    GermValue psi2 = hom_via_cone(f, c2, a);
    if (!is_zero_germ(psi1) || compare_exact(psi1, psi2) == 0)
        throw Error(ErrorKind::CertificationFailure, "witness does not separate the two homomorphisms");
    return {std::move(f), std::move(c1), std::move(c2), psi1, psi2, core(a), core(a)};
}

} // namespace saet
