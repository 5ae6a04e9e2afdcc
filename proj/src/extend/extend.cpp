#include "saet/extend.hpp"

#include "saet/errors.hpp"

#include <algorithm>

namespace saet {

PLFPiece affine_piece(int simplex, Vec form) {
    PLFPiece p;
    p.simplex = simplex;
    p.num_factors.push_back(std::move(form));
    return p;
}

PLFPiece ratio_piece(int simplex, std::vector<Vec> num_factors, std::vector<Vec> den_factors) {
    PLFPiece p;
    p.simplex = simplex;
    p.num_factors = std::move(num_factors);
    p.den_factors = std::move(den_factors);
    return p;
}

namespace {

Poly product(const std::vector<Vec>& factors, std::size_t n) {
    Poly p = Poly::constant(n, Q(1));
    for (const auto& f : factors) p = p * Poly::affine(f);
    return p;
}

Q affine_at(const Vec& f, const Vec& x) {
    Q s = f[0];
    for (std::size_t i = 0; i < x.size(); ++i) s += f[i + 1] * x[i];
    return s;
}

} // namespace

PLFFunction PLFFunction::make(PLSet domain, std::vector<PLFPiece> pieces) {
    PLFFunction f;
    f.m_ = std::move(domain);
    const Complex& k = *f.m_.complex();
    const std::size_t n = static_cast<std::size_t>(k.ambient_dim());
    for (auto& p : pieces) {
        if (p.simplex < 0 || p.simplex >= k.size() || !f.m_.contains(p.simplex))
            throw Error(ErrorKind::PreconditionViolated, "piece on a simplex outside the domain");
        if (f.by_simplex_.count(p.simplex))
            throw Error(ErrorKind::PreconditionViolated, "two pieces on simplex " + std::to_string(p.simplex));
        for (const auto* list : {&p.num_factors, &p.den_factors})
            for (const auto& fac : *list)
                if (fac.size() != n + 1)
                    throw Error(ErrorKind::PreconditionViolated, "affine factor needs " + std::to_string(n + 1) + " coefficients");
        for (const auto& fac : p.den_factors) {
            bool pos = false, neg = false;
            for (int v : k.simplex(p.simplex)) {
                int sg = sign(affine_at(fac, k.vertex(v)));
                pos = pos || sg > 0;
                neg = neg || sg < 0;
            }
            if (pos == neg)
                throw Error(ErrorKind::PreconditionViolated,
                            "denominator vanishes on the open piece " + std::to_string(p.simplex));
        }
        p.num = product(p.num_factors, n);
        p.den = product(p.den_factors, n);
        f.by_simplex_[p.simplex] = static_cast<int>(f.pieces_.size());
        f.pieces_.push_back(std::move(p));
    }
    for (int id : f.m_.ids()) {
        bool maximal = true;
        for (int c : k.cofaces(id))
            if (c != id && f.m_.contains(c)) maximal = false;
        if (maximal && !f.by_simplex_.count(id))
            throw Error(ErrorKind::PreconditionViolated, "maximal member simplex " + std::to_string(id) + " has no piece");
    }
    return f;
}

const PLFPiece* PLFFunction::piece_on(int simplex) const {
    auto it = by_simplex_.find(simplex);
    return it == by_simplex_.end() ? nullptr : &pieces_[it->second];
}

std::vector<int> PLFFunction::pieces_around(int beta) const {
    std::vector<int> r;
    for (int c : complex().cofaces(beta))
        if (by_simplex_.count(c)) r.push_back(c);
    return r;
}

bool PLFFunction::is_pl() const {
    for (const auto& p : pieces_)
        if (p.num.degree() > 1 || p.den.degree() > 0) return false;
    return true;
}

Q PLFFunction::eval(const Vec& x) const {
    auto loc = complex().locate(x);
    if (!loc || !m_.contains(*loc)) throw Error(ErrorKind::OutOfDomain, "point outside the domain");
    if (const auto* p = piece_on(*loc)) return p->num.eval(x) / p->den.eval(x);
    for (int s : pieces_around(*loc)) {
        const auto* p = piece_on(s);
        Q d = p->den.eval(x);
        if (d != 0) return p->num.eval(x) / d;
    }
    for (int s : pieces_around(*loc)) {
        LimitResult l = face_limit(*this, s, *loc);
        if (l.kind != LimitResult::Kind::Value) continue;
        if (auto v = l.value.at(complex(), x)) return *v;
    }
    throw Error(ErrorKind::OutOfDomain, "no finite piece value at the point");
}

PLFFunction pl_from_vertex_values(const PLSet& m, const Vec& values) {
    const Complex& k = *m.complex();
    if (values.size() != k.vertices().size())
        throw Error(ErrorKind::PreconditionViolated, "one value per vertex expected");
    std::vector<PLFPiece> pieces;
    for (int id : m.ids()) {
        bool maximal = true;
        for (int c : k.cofaces(id))
            if (c != id && m.contains(c)) maximal = false;
        if (!maximal) continue;
        // f = h0 + sum_i (h_i - h0) mu_i(x), mu = pinv (x - p0)
        const auto& vs = k.simplex(id);
        const AffineFrame& fr = k.frame(id);
        const Q& h0 = values[vs[0]];
        Vec w = zeros(static_cast<std::size_t>(k.ambient_dim()));
        for (std::size_t i = 1; i < vs.size(); ++i) w = vadd(w, vscale(fr.pinv[i - 1], values[vs[i]] - h0));
        Vec form{h0 - dot(w, fr.origin)};
        form.insert(form.end(), w.begin(), w.end());
        pieces.push_back(affine_piece(id, form));
    }
    return PLFFunction::make(m, std::move(pieces));
}

// ---------------------------------------------------------------- FaceForm

std::optional<Q> FaceForm::at_params(const Vec& mu) const {
    Q d = den.eval(mu);
    if (d == 0) return std::nullopt;
    return num.eval(mu) / d;
}

std::optional<Q> FaceForm::at(const Complex& k, const Vec& x) const {
    Vec b = k.frame(face).barycentric(x);
    return at_params(Vec(b.begin() + 1, b.end()));
}

std::optional<Vec> FaceForm::vertex_values(const Complex& k) const {
    const int d = k.dim(face);
    const auto nv = static_cast<std::size_t>(d);
    auto vertex = [&](int j) {
        Vec mu = zeros(nv);
        if (j > 0) mu[j - 1] = 1;
        return mu;
    };
    Vec out;
    for (int j = 0; j <= d; ++j) {
        auto v = at_params(vertex(j));
        if (!v) break;
        out.push_back(*v);
    }
    if (static_cast<int>(out.size()) == d + 1) return out;

    // A denominator vanishes at a vertex: recover an affine quotient from
    // points pulled toward the barycenter and confirm num == L * den exactly.
    for (long shrink : {7L, 11L, 13L, 17L}) {
        const Q s = frac(1, shrink);
        Vec c = zeros(nv);
        for (auto& x : c) x = frac(1, d + 1);
        Vec vals;
        for (int j = 0; j <= d; ++j) {
            auto v = at_params(vadd(vscale(vertex(j), 1 - s), vscale(c, s)));
            if (!v) break;
            vals.push_back(*v);
        }
        if (static_cast<int>(vals.size()) != d + 1) continue;
        Q mean = 0;
        for (const auto& v : vals) mean += v;
        mean /= d + 1;
        for (auto& v : vals) v = (v - s * mean) / (1 - s);
        Vec form{vals[0]};
        for (int j = 1; j <= d; ++j) form.push_back(vals[j] - vals[0]);
        if (Poly::affine(form) * den == num) return vals;
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// x_j = p0_j + sum_i var_{first+i} (p_{i+1} - p0)_j as polys in `nv` variables
std::vector<Poly> param_point(const std::vector<Vec>& pts, std::size_t nv, std::size_t first) {
    const std::size_t n = pts[0].size();
    std::vector<Poly> x;
    for (std::size_t j = 0; j < n; ++j) {
        Poly c = Poly::constant(nv, pts[0][j]);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            Q dj = pts[i][j] - pts[0][j];
            if (dj != 0) c = c + Poly::variable(nv, first + i - 1) * dj;
        }
        x.push_back(c);
    }
    return x;
}

FaceForm zero_form(int face, std::size_t d) { return {face, Poly(d), Poly::constant(d, Q(1))}; }

} // namespace

FaceForm restrict_to_face(const Complex& k, int face, const Poly& num, const Poly& den) {
    const auto pts = k.points(face);
    const std::size_t d = pts.size() - 1;
    auto x = param_point(pts, d, 0);
    return {face, num.compose(x), den.compose(x)};
}

bool same_value(const FaceForm& a, const FaceForm& b) {
    return a.face == b.face && (a.num * b.den - b.num * a.den).is_zero();
}

const char* to_string(LimitResult::Kind k) {
    switch (k) {
    case LimitResult::Kind::Value: return "Value";
    case LimitResult::Kind::DirectionDependent: return "DirectionDependent";
    case LimitResult::Kind::Infinite: return "Infinite";
    }
    return "?";
}

LimitResult face_limit(const PLFFunction& f, int sigma, int beta) {
    const Complex& k = f.complex();
    const PLFPiece* piece = f.piece_on(sigma);
    if (!piece) throw Error(ErrorKind::PreconditionViolated, "no piece on simplex " + std::to_string(sigma));
    if (!k.is_face(beta, sigma)) throw Error(ErrorKind::NotAFace, "limit face is not a face of the piece");

    const auto bp = k.points(beta), sp = k.points(sigma);
    const std::size_t d = bp.size() - 1, e = sp.size() - 1;
    const std::size_t nv = d + e + 1, s_var = d + e;
    // x(s) = q(mu) + s (c(kappa) - q(mu)), q on aff(beta), c on aff(sigma)
    auto q = param_point(bp, nv, 0);
    auto c = param_point(sp, nv, d);
    std::vector<Poly> x;
    const Poly s = Poly::variable(nv, s_var);
    for (std::size_t j = 0; j < q.size(); ++j) x.push_back(q[j] + s * (c[j] - q[j]));
    const Poly pc = piece->num.compose(x), qc = piece->den.compose(x);

    LimitResult r;
    if (pc.is_zero()) {
        r.value = zero_form(beta, d);
        return r;
    }
    const int kp = pc.order_in(s_var), kq = qc.order_in(s_var);
    if (kp > kq) {
        r.value = zero_form(beta, d);
        return r;
    }
    if (kp < kq) {
        r.kind = LimitResult::Kind::Infinite;
        return r;
    }
    const Poly pk = pc.coeff_in(s_var, kp), qk = qc.coeff_in(s_var, kq);
    for (std::size_t i = d; i < d + e; ++i)
        if (!(pk.derivative(i) * qk - pk * qk.derivative(i)).is_zero()) {
            r.kind = LimitResult::Kind::DirectionDependent;
            return r;
        }
    // direction-free: fix kappa at some point where the leading denominator survives
    for (long trial = 1; trial < 64; ++trial) {
        std::vector<Poly> sub;
        for (std::size_t i = 0; i < d; ++i) sub.push_back(Poly::variable(d, i));
        for (std::size_t i = 0; i < e; ++i)
            sub.push_back(Poly::constant(d, frac(static_cast<long>(i) + trial, static_cast<long>(e + 1) * trial + 7)));
        sub.push_back(Poly(d));
        Poly num = pk.compose(sub), den = qk.compose(sub);
        if (den.is_zero()) continue;
        r.value = {beta, num, den};
        return r;
    }
    r.kind = LimitResult::Kind::DirectionDependent;
    return r;
}

const char* to_string(FaceLimits::Status s) {
    switch (s) {
    case FaceLimits::Status::Extends: return "Extends";
    case FaceLimits::Status::Conflict: return "Conflict";
    case FaceLimits::Status::Excluded: return "Excluded";
    }
    return "?";
}

const FaceLimits* ExtensionReport::limits_at(int face) const {
    for (const auto& f : faces)
        if (f.face == face) return &f;
    return nullptr;
}

std::optional<Q> ExtensionReport::G(const PLFFunction& f, const Vec& x) const {
    auto loc = f.complex().locate(x);
    if (!loc || !V.contains(*loc) || Y.contains(*loc)) return std::nullopt;
    if (f.domain().contains(*loc)) return f.eval(x);
    const FaceLimits* fl = limits_at(*loc);
    if (!fl || !fl->value) return std::nullopt;
    return fl->value->at(f.complex(), x);
}

std::vector<int> germ_hypothesis_failures(const PLSet& m) {
    std::vector<int> bad;
    for (int id : closure(m).ids())
        if (!germ_connected(m, id)) bad.push_back(id);
    return bad;
}

ExtensionReport weak_extension(const PLFFunction& f) {
    const PLSet& m = f.domain();
    const Complex& k = f.complex();
    const PLSet cl = closure(m);
    const PLSet bd = cl - m;
    ExtensionReport rep;
    rep.Y = PLSet(m.complex());
    PLSet excluded(m.complex());

    for (int beta : bd.ids()) {
        FaceLimits fl;
        fl.face = beta;
        for (int s : f.pieces_around(beta)) fl.by_piece.emplace_back(s, face_limit(f, s, beta));
        bool infinite = false, conflict = fl.by_piece.empty();
        std::optional<FaceForm> common;
        for (const auto& [s, l] : fl.by_piece) {
            if (l.kind == LimitResult::Kind::Infinite) infinite = true;
            else if (l.kind == LimitResult::Kind::DirectionDependent) conflict = true;
            else if (!common) common = l.value;
            else if (!same_value(*common, l.value)) conflict = true;
        }
        if (infinite) {
            fl.status = FaceLimits::Status::Excluded;
            excluded.insert(beta);
        } else if (conflict) {
            fl.status = FaceLimits::Status::Conflict;
            rep.Y.insert(beta);
        } else {
            fl.value = common;
        }
        rep.faces.push_back(std::move(fl));
    }
    rep.V = cl - closure(excluded);
    rep.Y = rep.Y & rep.V;

    // continuity of f itself on M
    for (int beta : m.ids()) {
        std::optional<FaceForm> own;
        if (const auto* p = f.piece_on(beta)) own = restrict_to_face(k, beta, p->num, p->den);
        bool bad = false;
        for (int s : f.pieces_around(beta)) {
            if (s == beta) continue;
            LimitResult l = face_limit(f, s, beta);
            if (l.kind != LimitResult::Kind::Value) {
                bad = true;
                continue;
            }
            if (!own) own = l.value;
            else if (!same_value(*own, l.value)) bad = true;
        }
        if (bad) rep.discontinuities.push_back(beta);
    }

    rep.hypothesis_failures = germ_hypothesis_failures(m);
    rep.hypothesis_holds = rep.hypothesis_failures.empty();
    for (int beta : rep.Y.ids())
        if (local_dim(rep.Y, beta) > local_dim(m, beta) - 2) rep.bound_violations.push_back(beta);
    return rep;
}

ExtensionReport dim2_extension(const PLFFunction& f) {
    if (f.domain().dim() != 2) throw Error(ErrorKind::HypothesisViolated, "domain is not 2-dimensional");
    auto bad = germ_hypothesis_failures(f.domain());
    if (!bad.empty()) {
        std::string ids;
        for (int b : bad) ids += (ids.empty() ? "" : ",") + std::to_string(b);
        throw Error(ErrorKind::HypothesisViolated, "germ not connected at simplices " + ids);
    }
    ExtensionReport r = weak_extension(f);
    if (!r.Y.empty()) throw Error(ErrorKind::ConflictFound, "conflict on a 2-dimensional connected-germ input");
    return r;
}

// ------------------------------------------------------------ graph oracle

namespace {

struct GraphCell {
    int base;
    std::vector<int> verts; // base vertex ids
    Vec heights;
};

std::vector<GraphCell> graph_cells(const PLFFunction& f) {
    if (!f.is_pl()) throw Error(ErrorKind::PreconditionViolated, "graph oracle takes PL pieces");
    const Complex& k = f.complex();
    std::vector<GraphCell> cells;
    for (const auto& p : f.pieces()) {
        Q den = 1;
        for (const auto& fac : p.den_factors) den *= fac[0];
        GraphCell g;
        g.base = p.simplex;
        g.verts = k.simplex(p.simplex);
        for (int v : g.verts) {
            Q h = 1;
            for (const auto& fac : p.num_factors) h *= affine_at(fac, k.vertex(v));
            g.heights.push_back(h / den);
        }
        cells.push_back(std::move(g));
    }
    return cells;
}

} // namespace

GraphClosureReport graph_closure_oracle(const PLFFunction& f) {
    const Complex& k = f.complex();
    const auto cells = graph_cells(f);
    const PLSet cl = closure(f.domain());
    GraphClosureReport rep;
    for (int beta : cl.ids()) {
        std::set<Vec> tuples;
        const auto& bv = k.simplex(beta);
        for (const auto& g : cells) {
            Vec t;
            for (int v : bv) {
                auto it = std::find(g.verts.begin(), g.verts.end(), v);
                if (it == g.verts.end()) break;
                t.push_back(g.heights[it - g.verts.begin()]);
            }
            if (t.size() == bv.size()) tuples.insert(t);
        }
        if (f.domain().contains(beta)) {
            if (tuples.size() > 1) rep.non_singleton_members.push_back(beta);
        } else {
            rep.boundary_fibers[beta] = std::move(tuples);
        }
    }
    return rep;
}

std::vector<Q> graph_fiber(const PLFFunction& f, const Vec& p) {
    const Complex& k = f.complex();
    std::vector<Q> out;
    for (const auto& g : graph_cells(f)) {
        const AffineFrame& fr = k.frame(g.base);
        if (!fr.in_hull(p)) continue;
        Vec b = fr.barycentric(p);
        bool inside = true;
        Q h = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] < 0) inside = false;
            h += b[i] * g.heights[i];
        }
        if (inside) out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<int, std::set<Vec>> limit_tuples(const PLFFunction& f, const ExtensionReport& r) {
    std::map<int, std::set<Vec>> out;
    for (const auto& fl : r.faces) {
        auto& s = out[fl.face];
        for (const auto& [p, l] : fl.by_piece)
            if (l.kind == LimitResult::Kind::Value)
                if (auto t = l.value.vertex_values(f.complex())) s.insert(*t);
    }
    return out;
}

} // namespace saet
