#include "doctest.h"
#include "gen.hpp"

#include "saet/carve.hpp"
#include "saet/errors.hpp"
#include "saet/fixtures.hpp"
#include "saet/poly.hpp"

#include <algorithm>
#include <functional>

using namespace saet;

namespace {

Vec v2(const Q& a, const Q& b) { return {a, b}; }

// true when the box contains x and every side is at most 2^-30
bool tight_around(const IVec& box, const Vec& x) { return contains(box, x) && max_width(box) <= pow2_neg(30); }

Interval inorm2_for_test(const IVec& v) {
    Interval s(0);
    for (const auto& c : v) s = s + sqr(c);
    return s;
}

bool point_box_equals(const IVec& box, const Vec& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!box[i].is_point() || box[i].lo != x[i]) return false;
    return true;
}

// Points of the closed cells, half of them pulled towards a random carved
// simplex so the tube regions get hit.
std::vector<Vec> samples_near(gen::Rng& rng, const CarvedSet& n, int count,
                              const std::function<bool(const Vec&)>& keep) {
    const auto cells = n.closure_cells();
    std::vector<Vec> out;
    for (int guard = 0; static_cast<int>(out.size()) < count && guard < 200 * count; ++guard) {
        const auto& c = cells[rng.integer(0, static_cast<long>(cells.size()) - 1)];
        Vec x = rng.interior_point(c, 64);
        if (!n.tubes().empty() && rng.integer(0, 3) > 0) {
            const auto& t = n.tubes()[rng.integer(0, static_cast<long>(n.tubes().size()) - 1)].big;
            bool around = true;
            for (const auto& p : t.pts)
                if (std::find(c.begin(), c.end(), p) == c.end()) around = false;
            if (around) {
                Vec pi = rng.interior_point(t.pts, 64);
                Q lam(rng.integer(1, 32), 32);
                lam.canonicalize();
                x = vadd(pi, vscale(vsub(x, pi), lam));
            }
        }
        if (keep(x)) out.push_back(x);
    }
    return out;
}

CarvedSet segment_tube_set(const Q& eps_sq) {
    auto k = fixtures::square8();
    PLSet all(k);
    for (int i = 0; i < k->size(); ++i) all.insert(i);
    CarvedTube ct;
    ct.big = Tube::make({v2(0, 0), v2(1, 0)}, eps_sq, k->id_of({0, 1}));
    ct.half = ct.big.rescaled(frac(1, 4));
    ct.coeffs = deformation_coeffs_for(eps_sq);
    return CarvedSet(all).with({ct});
}

} // namespace

TEST_CASE("deformation coefficients: worked example and order check") {
    DeformCoeffs c = deformation_coeffs(Interval(frac(1, 4)), Interval(frac(1, 2)));
    CHECK(c.a1.lo == frac(1, 4));
    CHECK(c.a1.is_point());
    CHECK(c.a2.lo == frac(1, 2));
    CHECK(c.a2.is_point());
    CHECK(c.b1.lo == 2);
    CHECK(c.b1.is_point());
    CHECK(c.b2.lo == frac(-1, 2));
    CHECK(c.b2.is_point());
    CHECK((c.a1 + c.a2 * c.b2).lo == 0);
    CHECK((c.a2 * c.b1).lo == 1);
    CHECK_THROWS_AS(deformation_coeffs(Interval(frac(1, 2)), Interval(frac(1, 2))), Error);
    CHECK_THROWS_AS(deformation_coeffs(Interval(frac(3, 4)), Interval(frac(1, 2))), Error);
    CHECK_THROWS_AS(deformation_coeffs(Interval(0), Interval(frac(1, 2))), Error);
}

TEST_CASE("deformation coefficients: identities as polynomials in s, s'") {
    // a2 = (s'-s)/s', b1 = s'/(s'-s), b2 = -s s'/(s'-s); clear denominators.
    Poly s = Poly::variable(2, 0), sp = Poly::variable(2, 1);
    Poly gap = sp - s;
    // a1 + a2 b2 = 0  <=>  s * s'(s'-s) + (s'-s)(-s s') = 0
    CHECK((s * (sp * gap) - gap * (s * sp)).is_zero());
    // a2 b1 = 1  <=>  (s'-s) s' = s' (s'-s)
    CHECK((gap * sp - sp * gap).is_zero());
    // defining systems: a1 + s' a2 = s'  and  s b1 + b2 = 0, s' b1 + b2 = s'
    CHECK((s * sp + sp * gap - sp * sp).is_zero());
    CHECK((s * sp - s * sp).is_zero());
    CHECK((sp * sp - s * sp - sp * gap).is_zero());

    gen::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Q a = rng.rational(1, 8, 64), b = rng.rational(1, 8, 64);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        DeformCoeffs c = deformation_coeffs(Interval(a), Interval(b));
        CHECK((c.a1 + c.a2 * c.b2).lo == 0);
        CHECK((c.a2 * c.b1).lo == 1);
        CHECK((c.a1 + Interval(b) * c.a2).lo == b);
        CHECK((Interval(a) * c.b1 + c.b2).lo == 0);
        CHECK((Interval(b) * c.b1 + c.b2).lo == b);
    }
}

TEST_CASE("deformation coefficients for eps^2 = 1/5") {
    DeformCoeffs c = deformation_coeffs_for(frac(1, 5));
    // eps*^2 = 1/4, (eps/2)*^2 = 1/19
    CHECK(c.sp.is_point());
    CHECK(c.sp.lo == frac(1, 2));
    CHECK(c.s.lo * c.s.lo <= frac(1, 19));
    CHECK(c.s.hi * c.s.hi >= frac(1, 19));
    CHECK(c.s.width() <= pow2_neg(60));
    CHECK((c.a1 + c.a2 * c.b2).contains(0));
    CHECK((c.a2 * c.b1).contains(1));
}

TEST_CASE("push on the segment tube") {
    CarvedSet n = segment_tube_set(frac(1, 5));
    DeformationMap g(MapDirection::Push, n), h(MapDirection::Pull, n);
    const DeformCoeffs& c = n.tubes()[0].coeffs;

    IVec img = push_point(g, v2(frac(1, 2), frac(1, 8)));
    CHECK(img[0].contains(frac(1, 2)));
    Interval want = c.a1 * Interval(frac(1, 2)) + c.a2 * Interval(frac(1, 8));
    CHECK(overlaps(img[1], want));
    CHECK(img[1].width() <= pow2_neg(50));
    // pulled back onto the input
    IVec back = h.apply(img);
    CHECK(tight_around(back, v2(frac(1, 2), frac(1, 8))));

    // outside the eps tube and on dtau: identity, exactly
    CHECK(point_box_equals(push_point(g, v2(frac(1, 2), frac(1, 2))), v2(frac(1, 2), frac(1, 2))));
    CHECK(point_box_equals(push_point(g, v2(0, 0)), v2(0, 0)));
    CHECK(point_box_equals(push_point(g, v2(1, 0)), v2(1, 0)));
}

TEST_CASE("carved membership: half tube minus dtau is removed") {
    CarvedSet n = segment_tube_set(frac(1, 5));
    gen::Rng rng(5);
    const Tube& half = n.tubes()[0].half;
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        Vec x = rng.point(2, -1, 1, 64);
        if (!hat_lift_membership(half, x)) {
            CHECK(n.member(x));
            continue;
        }
        ++checked;
        CHECK(n.member(x) == half.on_tau_boundary(x));
    }
    CHECK(checked > 20);
    CHECK(n.member(v2(0, 0)));
    CHECK(n.member(v2(1, 0)));
    CHECK(!n.member(v2(frac(1, 3), 0)));
    CHECK(n.closure_member(v2(0, 0)));
    CHECK(!n.closure_member(v2(frac(1, 3), 0)));
}

TEST_CASE("carving with empty eta changes nothing") {
    for (const PLSet& s : {fixtures::fix_b(), fixtures::fix_c()}) {
        CarveResult r = appropriate_embed(s);
        CHECK(r.steps.empty());
        CHECK(r.eta_dims == std::vector<int>{-1});
        gen::Rng rng(3);
        const auto cells = r.set.closure_cells();
        for (int i = 0; i < 300; ++i) {
            const auto& c = cells[rng.integer(0, static_cast<long>(cells.size()) - 1)];
            Vec x = rng.interior_point(c);
            CHECK(r.set.member(x) == s.contains_point(x));
            if (s.contains_point(x)) {
                CHECK(point_box_equals(push_point(r.push, x), x));
                CHECK(point_box_equals(pull_point(r.pull, x), x));
            }
        }
    }
    CarveResult r = carve_level(fixtures::fix_b(), {});
    CHECK(r.set.tubes().empty());
}

TEST_CASE("FIX-A embeds in two levels") {
    const PLSet m = fixtures::fix_a();
    const auto& k = *m.complex();
    CarveResult r = appropriate_embed(m);
    REQUIRE(r.steps.size() == 2);
    CHECK(r.eta_dims == std::vector<int>{1, 0, -1});
    std::vector<int> edges{k.id_of({0, 1}), k.id_of({0, 5})};
    std::sort(edges.begin(), edges.end());
    CHECK(r.steps[0].taus == edges);
    CHECK(r.steps[0].dim == 1);
    std::vector<int> verts{k.id_of({1}), k.id_of({5})};
    std::sort(verts.begin(), verts.end());
    CHECK(r.steps[1].taus == verts);
    CHECK(r.set.levels() == 2);
    for (const auto& st : r.steps)
        for (const auto& cert : st.certificates)
            for (const auto& in : cert.checks) CHECK_MESSAGE(in.holds(), in.what);

    // the origin stays, the removed edges and vertices stay out
    CHECK(r.set.member(v2(0, 0)));
    CHECK(!r.set.member(v2(1, 0)));
    CHECK(!r.set.member(v2(frac(-1, 3), frac(1, 1024))));
    CHECK(r.set.member(v2(frac(1, 3), frac(1, 3))));
}

TEST_CASE("FIX-A round trips") {
    const PLSet m = fixtures::fix_a();
    CarveResult r = appropriate_embed(m);
    gen::Rng rng(17);
    auto n_pts = samples_near(rng, r.set, 1000, [&](const Vec& x) { return r.set.member(x); });
    REQUIRE(n_pts.size() == 1000);
    int moved = 0;
    for (const auto& x : n_pts) {
        IVec hx = pull_point(r.pull, x);
        if (!point_box_equals(hx, x)) ++moved;
        IVec ghx = r.push.apply(hx);
        CHECK(tight_around(ghx, x));
    }
    CHECK(moved > 50);
    auto m_pts = samples_near(rng, r.set, 1000, [&](const Vec& x) { return m.contains_point(x); });
    REQUIRE(m_pts.size() == 1000);
    for (const auto& x : m_pts) {
        IVec gx = push_point(r.push, x);
        CHECK(r.set.member(mids(gx)));
        CHECK(tight_around(r.pull.apply(gx), x));
    }
}

TEST_CASE("FIX-A pull is injective on samples and lands in the closure") {
    const PLSet m = fixtures::fix_a();
    CarveResult r = appropriate_embed(m);
    const PLSet cl = closure(m);
    gen::Rng rng(23);
    auto pts = samples_near(rng, r.set, 200, [&](const Vec& x) { return r.set.member(x); });
    std::vector<IVec> imgs;
    for (const auto& x : pts) {
        imgs.push_back(pull_point(r.pull, x));
        CHECK(cl.contains_point(mids(imgs.back())));
    }
    for (std::size_t i = 0; i < imgs.size(); ++i)
        for (std::size_t j = i + 1; j < imgs.size(); ++j) {
            if (pts[i] == pts[j]) continue;
            bool apart = false;
            for (std::size_t c = 0; c < 2; ++c)
                if (!overlaps(imgs[i][c], imgs[j][c])) apart = true;
            CHECK(apart);
        }
}

TEST_CASE("pull is Lipschitz with constant 2 b1 + |b2| + 1 on one level") {
    const PLSet m = fixtures::fix_a();
    const auto& k = *m.complex();
    CarveResult r = carve_level(m, {k.id_of({0, 1}), k.id_of({0, 5})});
    const DeformCoeffs& c = r.set.tubes()[0].coeffs;
    const Interval lip = Interval(2) * c.b1 + iabs(c.b2) + Interval(1);
    gen::Rng rng(29);
    auto pts = samples_near(rng, r.set, 400, [&](const Vec& x) { return r.set.member(x); });
    int pairs = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        Vec y = vadd(pts[i], rng.point(2, -1, 1, 1024));
        if (!r.set.member(y)) continue;
        IVec hx = pull_point(r.pull, pts[i]), hy = pull_point(r.pull, y);
        Interval diff2 = inorm2_for_test(ivsub(hx, hy));
        ++pairs;
        CHECK(diff2.lo <= lip.hi * lip.hi * norm2(vsub(pts[i], y)));
    }
    CHECK(pairs > 50);
}

TEST_CASE("punctured square: radial collar") {
    const PLSet m = fixtures::punctured_square();
    CarveResult r = appropriate_embed(m);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].dim == 0);
    CHECK(r.eta_dims == std::vector<int>{0, -1});
    const CarvedTube& ball = r.set.tubes()[0];
    const Q rad = ball.radius;
    CHECK(ball.big.eps_sq == rad * rad);

    gen::Rng rng(31);
    auto n_pts = samples_near(rng, r.set, 1000, [&](const Vec& x) { return r.set.member(x); });
    for (const auto& x : n_pts) CHECK(tight_around(r.push.apply(pull_point(r.pull, x)), x));
    // the whole collar except the centre is in S: membership is preserved
    auto m_pts = samples_near(rng, r.set, 1000, [&](const Vec& x) { return m.contains_point(x); });
    int inside_collar = 0;
    for (const auto& x : m_pts) {
        IVec gx = push_point(r.push, x);
        CHECK(r.set.member(mids(gx)));
        CHECK(tight_around(r.pull.apply(gx), x));
        if (norm2(x) < rad * rad) ++inside_collar;
    }
    CHECK(inside_collar > 50);

    // |x - v| = r is fixed, |x - v| = r/2 goes to 3r/4
    const Vec on_r = v2(rad * frac(3, 5), rad * frac(4, 5));
    CHECK(point_box_equals(push_point(r.push, on_r), on_r));
    IVec half = push_point(r.push, v2(rad / 2, 0));
    CHECK(half[0].contains(rad * frac(3, 4)));
    CHECK(!r.set.member(v2(rad / 2, 0)));
    CHECK(r.set.closure_member(v2(rad / 2, 0)));
    CHECK(r.set.member(v2(rad / 2 + pow2_neg(40), 0)));
}

TEST_CASE("domain checks") {
    const PLSet m = fixtures::fix_a();
    CarveResult r = appropriate_embed(m);
    CHECK_THROWS_AS(push_point(r.push, v2(frac(1, 2), 0)), Error);
    CHECK_THROWS_AS(pull_point(r.pull, v2(frac(1, 2), pow2_neg(20))), Error);
    CHECK_THROWS_AS(push_point(r.pull, v2(frac(1, 2), frac(1, 2))), Error);
    try {
        push_point(r.push, v2(2, 0));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfDomain);
    }
}

TEST_CASE("germ probe sees the obstruction before carving and not after") {
    const PLSet m = fixtures::fix_a();
    CarvedSet before(m);
    ProbeReport pre = probe_germ(before, v2(frac(1, 2), 0), frac(1, 16), 48, 1);
    CHECK(pre.verdict == GermVerdict::Disconnected);
    CHECK(pre.obstruction());
    CHECK(pre.samples == 48);
    // too sparse to decide: the probe escalates, and still sees two sides
    ProbeReport sparse = probe_germ(before, v2(frac(1, 2), 0), frac(1, 16), 3, 1);
    CHECK(sparse.samples > 3);
    CHECK(sparse.verdict != GermVerdict::Connected);

    CarveResult r = appropriate_embed(m);
    auto qs = frontier_samples(r.set, 24, 7);
    REQUIRE(qs.size() == 24);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const Vec& q = qs[i];
        CHECK(!r.set.member(q));
        ProbeReport rep = probe_germ(r.set, q, probe_radius(r.set, q), 48, 100 + i);
        CHECK_MESSAGE(rep.verdict == GermVerdict::Connected, to_string(rep.verdict));
        CHECK(rep.codim() == 1);
        CHECK(!rep.obstruction());
    }
}
