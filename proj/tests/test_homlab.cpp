#include "doctest.h"
#include "gen.hpp"

#include "saet/errors.hpp"
#include "saet/fixtures.hpp"
#include "saet/homlab.hpp"

#include <algorithm>

using namespace saet;

namespace {

std::vector<int> maximal_members(const PLSet& m) {
    const Complex& k = *m.complex();
    std::vector<int> out;
    for (int id : m.ids()) {
        bool maximal = true;
        for (int c : k.cofaces(id))
            if (c != id && m.contains(c)) maximal = false;
        if (maximal) out.push_back(id);
    }
    return out;
}

PLFFunction fix_c_g() {
    PLSet m = fixtures::fix_c();
    std::vector<PLFPiece> pieces;
    const int origin = m.complex()->vertex_simplex(3);
    for (int id : maximal_members(m))
        pieces.push_back(id == origin ? affine_piece(id, {0, 0, 0, 0})
                                      : ratio_piece(id, {{0, 0, 0, 1}, {0, 1, -1, 0}}, {{0, 1, 0, 0}}));
    return PLFFunction::make(m, pieces);
}

// affine form [c0, w] interpolated at the vertices
PLFFunction affine_on(const PLSet& m, const Vec& form) {
    Vec vals;
    for (const auto& p : m.complex()->vertices()) {
        Q x = form[0];
        for (std::size_t i = 0; i < p.size(); ++i) x += form[i + 1] * p[i];
        vals.push_back(x);
    }
    return pl_from_vertex_values(m, vals);
}

PLSet whole(const ComplexPtr& k) {
    return fixtures::by_barycenter(k, [](const Vec&) { return true; });
}

GermValue gv(const Q& a, const Q& b) {
    GermValue g;
    g.a = a;
    g.b = b;
    return g;
}

Vec p3(long x, long y, long z) { return {Q(x), Q(y), Q(z)}; }

// Germ starting on a random simplex of `from` and entering a coface in `into`.
PathGerm random_germ(gen::Rng& rng, const PLSet& from, const PLSet& into) {
    const Complex& k = *from.complex();
    const auto ids = from.ids();
    for (;;) {
        int id = ids[static_cast<std::size_t>(rng.integer(0, static_cast<long>(ids.size()) - 1))];
        std::vector<int> up;
        for (int c : k.cofaces(id))
            if (into.contains(c)) up.push_back(c);
        if (up.empty()) continue;
        int c = up[static_cast<std::size_t>(rng.integer(0, static_cast<long>(up.size()) - 1))];
        Vec x = rng.interior_point(k.points(id), 8);
        Vec y = rng.interior_point(k.points(c), 8);
        return PathGerm::line(x, vsub(y, x));
    }
}

// Germ of num/den composed with the path, straight from the polynomials.
GermValue piece_along(const Poly& num, const Poly& den, const PathGerm& a) {
    std::vector<Poly> x;
    for (int i = 0; i < a.dim(); ++i) x.push_back(Poly::affine({a.germ().c[i], a.germ().v[i]}));
    UPoly n = to_upoly(num.compose(x)), d = to_upoly(den.compose(x));
    n.resize(3, Q(0));
    d.resize(3, Q(0));
    REQUIRE(d[0] != 0);
    return gv(n[0] / d[0], (n[1] * d[0] - n[0] * d[1]) / (d[0] * d[0]));
}

} // namespace

TEST_CASE("path validation") {
    PathGerm p = PathGerm::make({Q(1, 4), Q(1)}, {{{0, 0}, {1, Q(1, 2)}}, {{Q(1, 4), Q(-1, 8)}, {0, 1}}});
    CHECK(p.at(Q(1, 4)) == Vec{Q(1, 4), Q(1, 8)});
    CHECK(p.at(Q(1)) == Vec{Q(1, 4), Q(7, 8)});
    CHECK(!p.constant());
    CHECK_THROWS_AS(PathGerm::make({Q(1, 4), Q(1)}, {{{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}}), Error);
    CHECK_THROWS_AS(PathGerm::make({Q(1), Q(1, 2)}, {{{0}, {1}}, {{0}, {1}}}), Error);
    CHECK_THROWS_AS(p.at(Q(2)), Error);
}

TEST_CASE("evaluate on examples") {
    auto sq = fixtures::square8();
    PLFFunction fx = affine_on(whole(sq), {0, 1, 0});
    CHECK(evaluate(fx, PathGerm::line({0, 0}, {1, Q(1, 2)})) == gv(0, 1));

    PLFFunction g = fix_c_g();
    GermValue e = evaluate(g, PathGerm::line(p3(0, 0, 1), p3(2, 1, 0)));
    CHECK(e == gv(Q(1, 2), 0));
    CHECK(compare_exact(e, germ_constant(Q(1, 2))) == 0);

    Vec m{Q(3, 4), Q(1, 4), Q(1, 2)};
    CHECK(evaluate(g, PathGerm::line(m, zeros(3))) == gv(g.eval(m), 0));
    CHECK(g.eval(m) == Q(1, 2) * Q(1, 2) / Q(3, 4));

    // z-axis is outside the domain
    CHECK_THROWS_WITH_AS(evaluate(g, PathGerm::line({0, 0, Q(1, 2)}, zeros(3))), doctest::Contains("NotEventuallyInDomain"), Error);

    PLSet upper = fixtures::by_barycenter(sq, [](const Vec& b) { return b[1] > 0; });
    std::vector<PLFPiece> pieces;
    for (int id : maximal_members(upper)) pieces.push_back(ratio_piece(id, {{1, 0, 0}}, {{0, 0, 1}}));
    PLFFunction inv_y = PLFFunction::make(upper, pieces);
    CHECK_THROWS_WITH_AS(evaluate(inv_y, PathGerm::line({Q(1, 2), 0}, {0, 1})), doctest::Contains("PoleAtZero"), Error);
    CHECK(evaluate(inv_y, PathGerm::line({Q(1, 2), Q(1, 2)}, {0, 1})) == gv(2, -4));
}

TEST_CASE("evaluate agrees with pointwise values near 0") {
    gen::Rng rng(7);
    PLSet m = fixtures::fix_b();
    const Complex& k = *m.complex();
    PLSet cl = closure(m);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        Vec vals(k.vertices().size());
        for (auto& x : vals) x = rng.rational(-3, 3, 8);
        PLFFunction f = pl_from_vertex_values(m, vals);
        PathGerm a = random_germ(rng, cl, m);
        if (!is_in_extension(a, m)) continue;
        GermValue e = evaluate(f, a);
        // single affine piece along an affine germ: f(a(t)) = a + b t exactly
        for (long d : {64L, 1024L}) {
            Q t(1, d);
            CHECK(f.eval(a.at(t)) == e.a + e.b * t);
        }
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("evaluate is additive, multiplicative to first order, and order preserving") {
    gen::Rng rng(11);
    PLSet m = fixtures::fix_a();
    const Complex& k = *m.complex();
    for (int rep = 0; rep < 100; ++rep) {
        Vec u(k.vertices().size()), w(u.size()), pos(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = rng.rational(-2, 2, 8);
            w[i] = rng.rational(-2, 2, 8);
            pos[i] = rng.rational(1, 3, 8);
        }
        PLFFunction f = pl_from_vertex_values(m, u), g = pl_from_vertex_values(m, w);
        PLFFunction h = pl_from_vertex_values(m, vadd(u, w));
        std::vector<PLFPiece> prod;
        for (std::size_t i = 0; i < f.pieces().size(); ++i)
            prod.push_back(ratio_piece(f.pieces()[i].simplex,
                                       {f.pieces()[i].num_factors[0], g.pieces()[i].num_factors[0]}, {}));
        PLFFunction fg = PLFFunction::make(m, prod);
        PLFFunction pf = pl_from_vertex_values(m, pos);

        PathGerm a = random_germ(rng, closure(m), m);
        if (!is_in_extension(a, m)) continue;
        GermValue ef = evaluate(f, a), eg = evaluate(g, a);
        CHECK(evaluate(h, a) == gv(ef.a + eg.a, ef.b + eg.b));
        CHECK(evaluate(fg, a) == gv(ef.a * eg.a, ef.a * eg.b + ef.b * eg.a));
        CHECK(gv(0, 0) < evaluate(pf, a));
        // order: f < g as germs iff f(a(t)) < g(a(t)) for tiny t
        const Q t(1, 1 << 20);
        int s = sign(f.eval(a.at(t)) - g.eval(a.at(t)));
        CHECK(compare_exact(ef, eg) == s);
    }
}

TEST_CASE("rational germs fall back to exact comparison") {
    // t/(1 - t) and t + t^2 agree to first order
    GermValue x = gv(0, 1), y = gv(0, 1);
    x.num = {0, 1};
    x.den = {1, -1};
    y.num = {0, 1, 1};
    y.den = {1};
    CHECK(x == y);
    CHECK(compare_exact(x, y) == 1); // t + t^2 + t^3 + ... against t + t^2
    y.num = {0, 1, 2};
    CHECK(compare_exact(x, y) == -1);
}

TEST_CASE("cores") {
    PathGerm a = PathGerm::line({0, 0}, {1, Q(1, 2)});
    PathGerm c = core(a);
    CHECK(c.germ().c == Vec{0, 0});
    CHECK(c.germ().v == Vec{1, Q(1, 2)});
    PathGerm b = PathGerm::make({Q(1, 4), Q(1)}, {{{0, 0}, {1, Q(1, 2)}}, {{Q(1, 4), Q(-1, 8)}, {0, 1}}});
    CHECK(same_core(a, b));
    CHECK(!same_core(a, PathGerm::line({0, 0}, {1, 1})));
    // coordinate functions evaluate to the germ itself
    auto sq = fixtures::square8();
    for (int i = 0; i < 2; ++i) {
        Vec form{0, 0, 0};
        form[static_cast<std::size_t>(i + 1)] = 1;
        GermValue e = evaluate(affine_on(whole(sq), form), b);
        CHECK(e == gv(c.germ().c[static_cast<std::size_t>(i)], c.germ().v[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("adjacency on FIX-A and FIX-B") {
    PLSet a = fixtures::fix_a();
    PathGerm up = PathGerm::line({0, 0}, {1, Q(1, 2)});
    CHECK(is_in_extension(up, a));
    CHECK(adjacency_test(up, a) == Adjacency::Adjacent);

    PathGerm axis = PathGerm::line({0, 0}, {1, 0});
    CHECK(!is_in_extension(axis, a));
    // every locally closed superset contains a neighbourhood of the origin in Cl(M)
    CHECK(adjacency_test(axis, a) == Adjacency::Adjacent);
    PathGerm off = PathGerm::line({Q(1, 2), 0}, {1, 0});
    CHECK(adjacency_test(off, a) == Adjacency::NotAdjacent);

    PLSet b = fixtures::fix_b();
    CHECK(adjacency_test(PathGerm::line({0, 0}, {1, Q(1, 2)}), b) == Adjacency::NotAdjacent);
    CHECK(adjacency_test(PathGerm::line({0, 0}, {1, 1}), b) == Adjacency::Adjacent);
    CHECK(adjacency_test(PathGerm::line({Q(1, 2), Q(1, 2)}, {1, 1}), b) == Adjacency::NotAdjacent);
}

TEST_CASE("locally closed sets: adjacency equals membership") {
    gen::Rng rng(3);
    auto sq = fixtures::square8();
    std::vector<PLSet> sets{fixtures::punctured_square(),
                            fixtures::by_barycenter(sq, [](const Vec& b) { return b[1] > 0; }),
                            fixtures::by_barycenter(sq, [](const Vec& b) { return b[0] + b[1] >= 0; })};
    PLSet all = whole(sq);
    for (const auto& s : sets) {
        REQUIRE((closure(closure(s) - s) & s).empty());
        for (int rep = 0; rep < 300; ++rep) {
            PathGerm g = random_germ(rng, all, all);
            CHECK((adjacency_test(g, s) == Adjacency::Adjacent) == is_in_extension(g, s));
        }
    }
}

TEST_CASE("depth") {
    PLSet a = fixtures::fix_a();
    CHECK(depth(PathGerm::line({Q(1, 2), Q(1, 2)}, {0, 0}), a) == 0);
    CHECK(depth(PathGerm::line({Q(1, 2), Q(1, 2)}, {1, 1}), a) == 1);
    CHECK(depth(PathGerm::line({Q(1, 2), 0}, {0, 1}), a) == 1);
    CHECK(depth(PathGerm::line({Q(1, 2), 0}, {0, 0}), a) == 1);
    CHECK_THROWS_WITH_AS(depth(PathGerm::line({Q(1, 2), 0}, {0, 1}), fixtures::fix_b()),
                         doctest::Contains("LimitOutsideClosure"), Error);

    gen::Rng rng(5);
    PLSet cl = closure(a);
    for (int rep = 0; rep < 200; ++rep) {
        PathGerm g = random_germ(rng, cl, cl);
        if (rng.coin()) g = PathGerm::line(g.limit(), zeros(2));
        if (!closure(a).contains_point(g.limit())) continue;
        int d = depth(g, a), dc = depth(g, cl);
        CHECK(dc <= d);
        CHECK((d == 0) == (g.constant() && a.contains_point(g.limit())));
    }
}

TEST_CASE("eval_hom: both cases") {
    PLSet b = fixtures::fix_b();
    PLFFunction fx = affine_on(b, {0, 1, 0});
    ExtensionReport rb = dim2_extension(fx);
    PathGerm wall = PathGerm::line({0, 0}, {1, 1});
    CHECK(!is_in_extension(wall, b));
    CHECK(eval_hom(fx, wall, rb) == gv(0, 1));

    // every adjacent piece gives the same value along the wall germ
    const Complex& k = fx.complex();
    const int beta = *germ_carrier(k, wall);
    CHECK(depth(wall, b) == local_dim(b, beta) - 1);
    int used = 0;
    for (int s : fx.pieces_around(beta)) {
        const PLFPiece* p = fx.piece_on(s);
        CHECK(piece_along(p->num, p->den, wall) == gv(0, 1));
        ++used;
    }
    CHECK(used >= 1);

    PLFFunction g = fix_c_g();
    ExtensionReport rc = weak_extension(g);
    GermValue into_origin = eval_hom(g, PathGerm::line(zeros(3), p3(2, 0, 1)), rc);
    CHECK(into_origin.a == 0);
    CHECK(into_origin == gv(0, 1));
    PathGerm inside = PathGerm::line(p3(0, 0, 1), p3(2, 1, 0));
    CHECK(eval_hom(g, inside, rc) == evaluate(g, inside));
    CHECK_THROWS_WITH_AS(eval_hom(g, PathGerm::line(zeros(3), p3(0, 0, 1)), rc), doctest::Contains("GermInBadSet"), Error);
    CHECK_THROWS_WITH_AS(eval_hom(fx, PathGerm::line({Q(1, 2), Q(1, 2)}, {1, 1}), rb),
                         doctest::Contains("PreconditionViolated"), Error);
}

TEST_CASE("eval_hom of a global affine form is the form along the germ") {
    gen::Rng rng(13);
    for (const PLSet& m : {fixtures::fix_a(), fixtures::fix_b()}) {
        const Vec form{Q(1, 3), 2, -1};
        PLFFunction f = affine_on(m, form);
        ExtensionReport r = weak_extension(f);
        PLSet cl = closure(m);
        int n = 0;
        for (int rep = 0; rep < 200; ++rep) {
            PathGerm a = random_germ(rng, cl, cl);
            if (adjacency_test(a, m) != Adjacency::Adjacent) continue;
            const Vec& c = a.germ().c;
            const Vec& v = a.germ().v;
            CHECK(eval_hom(f, a, r) == gv(form[0] + form[1] * c[0] + form[2] * c[1], form[1] * v[0] + form[2] * v[1]));
            ++n;
        }
        CHECK(n > 20);
    }
}

namespace {

struct FixCCone {
    PLSet m = fixtures::fix_c();
    const Complex& k = *m.complex();
    int tau = k.id_of({0, 3});
    int sigma = k.id_of({0, 3, 4, 5});
    Vec b = k.barycenter(sigma);
    Vec on(int v, const Q& lam) const { return vadd(k.vertex(v), vscale(vsub(b, k.vertex(v)), lam)); }
};

} // namespace

TEST_CASE("cone restriction on FIX-C") {
    FixCCone fc;
    CHECK(fc.b == Vec{Q(1, 2), Q(1, 4), Q(-1, 4)});
    Vec q = fc.on(4, Q(1, 2));
    ConeSet c = cone_restriction(fc.m, fc.tau, fc.sigma, q);
    CHECK(c.v == 4);
    CHECK(fc.k.is_face(fc.tau, c.epsilon));
    CHECK(fc.k.dim(c.epsilon) == 2);
    CHECK(c.in_cone(p3(0, 0, -1)));
    CHECK(!c.contains({0, 0, Q(-1, 2)}));
    CHECK(c.contains(vscale(vadd(q, {0, 0, Q(-1, 2)}), Q(1, 2))));
    CHECK(!c.in_cone(fc.k.vertex(5)));

    auto bad = [&](int tau, int sigma, const Vec& qq) {
        CHECK_THROWS_WITH_AS(cone_restriction(fc.m, tau, sigma, qq), doctest::Contains("PreconditionViolated"), Error);
    };
    bad(fc.tau, fc.sigma, fc.b);                    // endpoint b
    bad(fc.tau, fc.sigma, fc.k.vertex(4));          // endpoint v
    bad(fc.tau, fc.sigma, {Q(1, 2), Q(1, 8), 0});   // off every segment
    bad(fc.tau, fc.sigma, fc.on(0, Q(1, 2)));       // 0 is a vertex of tau
    bad(fc.k.id_of({0, 1}), fc.k.id_of({0, 1, 5}), fc.k.barycenter(fc.k.id_of({0, 1, 5}))); // dim gap 1
    bad(fc.k.id_of({0, 1, 5}), fc.sigma, q);         // tau meets M
    bad(fc.tau, fc.k.id_of({0, 1, 2, 5}), q);       // not a face
}

TEST_CASE("homomorphisms through cones") {
    FixCCone fc;
    PathGerm a = PathGerm::line(p3(0, 0, -1), p3(0, 0, 1));
    const Vec q1 = fc.on(4, Q(1, 2)), q2 = fc.on(4, Q(1, 4)), q3 = fc.on(5, Q(1, 2));
    ConeSet c1 = cone_restriction(fc.m, fc.tau, fc.sigma, q1);
    ConeSet c3 = cone_restriction(fc.m, fc.tau, fc.sigma, q3);

    // a continuous form gives its own value for every apex
    PLFFunction lin = affine_on(fc.m, {1, 1, 1, 1});
    CHECK(hom_via_cone(lin, c1, a) == gv(0, 1));
    CHECK(hom_via_cone(lin, c3, a) == gv(0, 1));

    // g = z (x - y)/x is constant (x - y)/x along each ray off the z-axis
    PLFFunction g = fix_c_g();
    for (const Vec* q : {&q1, &q2, &q3}) {
        ConeSet c = cone_restriction(fc.m, fc.tau, fc.sigma, *q);
        const Q ratio = ((*q)[0] - (*q)[1]) / (*q)[0];
        CHECK(hom_via_cone(g, c, a) == gv(-ratio, ratio));
    }
    CHECK_THROWS_WITH_AS(hom_via_cone(g, c1, PathGerm::line(p3(0, 0, 1), p3(0, 0, -1))),
                         doctest::Contains("GermNotInTau"), Error);
}

TEST_CASE("distinct homomorphisms with one core") {
    FixCCone fc;
    const Vec q1 = fc.on(4, Q(1, 2)), q2 = fc.on(4, Q(1, 4));
    for (const PathGerm& a : {PathGerm::line(p3(0, 0, -1), p3(0, 0, 1)), PathGerm::line({0, 0, Q(-1, 2)}, p3(0, 0, 1)),
                              PathGerm::line({0, 0, Q(-1, 3)}, zeros(3))}) {
        CHECK(local_dim(fc.m, fc.tau) - depth(a, fc.m) >= 2);
        for (bool swap : {false, true}) {
            HomWitness w = distinct_homs_witness(fc.m, fc.tau, fc.sigma, swap ? q2 : q1, swap ? q1 : q2, a);
            CHECK(is_zero_germ(w.psi1));
            CHECK(compare_exact(w.psi1, w.psi2) < 0);
            CHECK(same_core(w.core1, w.core2));
            CHECK(same_core(w.core1, a));
            // f vanishes on T(q1) and is g > 0 on T(q2) away from tau's boundary
            const Vec in1 = vscale(vadd(w.c1.q, a.at(Q(1, 4))), Q(1, 2));
            const Vec in2 = vscale(vadd(w.c2.q, a.at(Q(1, 4))), Q(1, 2));
            CHECK(w.f.eval(in1) == 0);
            CHECK(w.f.eval(in2) > 0);
        }
    }
    PathGerm a = PathGerm::line(p3(0, 0, -1), p3(0, 0, 1));
    CHECK_THROWS_WITH_AS(distinct_homs_witness(fc.m, fc.tau, fc.sigma, q1, q1, a), doctest::Contains("SameApex"), Error);
    CHECK_THROWS_WITH_AS(distinct_homs_witness(fc.m, fc.tau, fc.sigma, q1, fc.on(5, Q(1, 2)), a),
                         doctest::Contains("PreconditionViolated"), Error);
    CHECK_THROWS_WITH_AS(distinct_homs_witness(fc.m, fc.tau, fc.sigma, q1, q2, PathGerm::line(p3(1, 0, 0), p3(0, 0, 1))),
                         doctest::Contains("GermNotInTau"), Error);
}
