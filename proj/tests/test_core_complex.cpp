#include "doctest.h"
#include "gen.hpp"

#include "saet/complex.hpp"
#include "saet/errors.hpp"
#include "saet/fixtures.hpp"

#include <set>

using namespace saet;
namespace fx = saet::fixtures;

namespace {

std::set<VertexList> lists(const PLSet& s) {
    std::set<VertexList> r;
    for (int i : s.ids()) r.insert(s.complex()->simplex(i));
    return r;
}

PLSet random_subset(const ComplexPtr& k, gen::Rng& rng) {
    PLSet s(k);
    for (int i = 0; i < k->size(); ++i)
        if (rng.integer(0, 2) == 0) s.insert(i);
    return s;
}

// Independent oracle for rho: points of S adherent to Cl(S)\S, decided per
// simplex by checking whether some proper coface is in Cl(S)\S or the
// simplex itself is.
PLSet rho_oracle(const PLSet& s) {
    const auto& k = *s.complex();
    std::vector<char> in_cl(k.size(), 0);
    for (int i = 0; i < k.size(); ++i)
        if (s.contains(i))
            for (int j = 0; j < k.size(); ++j)
                if (k.is_face(j, i)) in_cl[j] = 1;
    PLSet r(s.complex());
    for (int i = 0; i < k.size(); ++i) {
        if (!s.contains(i)) continue;
        for (int j = 0; j < k.size(); ++j)
            if (in_cl[j] && !s.contains(j) && k.is_face(i, j)) r.insert(i);
    }
    return r;
}

} // namespace

TEST_CASE("build_complex: the eight-triangle square") {
    auto k = fx::square8();
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < k->size(); ++i) counts[k->dim(i)]++;
    CHECK(counts[0] == 9);
    CHECK(counts[1] == 16);
    CHECK(counts[2] == 8);
    CHECK(k->tops().size() == 8);
}

TEST_CASE("build_complex: gluing checks") {
    std::vector<Vec> v = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    CHECK_NOTHROW(Complex::build(v, {{0, 1, 2}, {1, 2, 3}}));

    // Second triangle overlaps the first along half of an edge.
    std::vector<Vec> w = {{0, 0}, {2, 0}, {0, 1}, {1, 0}, {3, 0}, {1, -1}};
    try {
        Complex::build(w, {{0, 1, 2}, {3, 4, 5}});
        FAIL("expected BadGlue");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadGlue);
    }
    std::vector<Vec> d = {{0, 0}, {1, 1}, {2, 2}};
    try {
        Complex::build(d, {{0, 1, 2}});
        FAIL("expected DegenerateSimplex");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSimplex);
    }
}

TEST_CASE("closure of one open triangle") {
    auto k = fx::square8();
    int t = k->id_of({0, 1, 2});
    PLSet s(k, {t});
    PLSet c = closure(s);
    CHECK(c.count() == 7);
    PLSet all = fx::by_barycenter(k, [](const Vec& b) {
        return abs(b[0]) < 1 && abs(b[1]) < 1;
    });
    CHECK(closure(all).count() == k->size());
}

TEST_CASE("rho and lc_part on the fixtures") {
    auto k = fx::square8();
    PLSet open_sq = fx::by_barycenter(k, [](const Vec& b) { return abs(b[0]) < 1 && abs(b[1]) < 1; });
    CHECK(rho(open_sq).empty());
    CHECK(lc_part(open_sq) == open_sq);

    PLSet corner = open_sq;
    corner.insert(k->vertex_simplex(2));
    CHECK(lists(rho(corner)) == std::set<VertexList>{{2}});

    PLSet a = fx::fix_a();
    CHECK(lists(rho(a)) == std::set<VertexList>{{0}});
    PLSet lc = lc_part(a);
    CHECK_FALSE(lc.contains(k->vertex_simplex(0)));
    CHECK(lc.count() == a.count() - 1);
    CHECK(rho(lc).empty());
}

TEST_CASE("local_dim and germ_connected") {
    PLSet a = fx::fix_a();
    auto k = a.complex();
    CHECK(local_dim(a, k->vertex_simplex(0)) == 2);
    PLSet edge(k, {k->id_of({0, 2})});
    CHECK(local_dim(edge, k->vertex_simplex(2)) == 1);
    CHECK_THROWS_AS(local_dim(edge, k->vertex_simplex(5)), Error);

    CHECK_FALSE(germ_connected(a, k->id_of({0, 1})));
    CHECK(germ_connected(a, k->vertex_simplex(0)));

    PLSet b = fx::fix_b();
    CHECK(germ_connected(b, b.complex()->id_of({0, 1})));

    PLSet c = fx::fix_c();
    CHECK(local_dim(c, c.complex()->vertex_simplex(3)) == 3);
}

TEST_CASE("eta and appropriate embedding on the fixtures") {
    PLSet a = fx::fix_a();
    std::set<VertexList> expect = {{0, 1}, {0, 5}, {1}, {5}};
    CHECK(lists(eta(a)) == expect);
    CHECK_FALSE(is_appropriately_embedded(a));
    CHECK(eta(fx::fix_b()).empty());
    CHECK(eta(fx::fix_c()).empty());
    CHECK(is_appropriately_embedded(fx::fix_c()));
    CHECK(lists(eta(fx::punctured_square())) == std::set<VertexList>{{0}});
}

TEST_CASE("set identities on random marked subsets") {
    gen::Rng rng(101);
    for (auto k : {fx::square8(), fx::wedge_prism()}) {
        for (int trial = 0; trial < 100; ++trial) {
            PLSet s = random_subset(k, rng);
            PLSet c = closure(s);
            CHECK(closure(c) == c);
            CHECK(s.subset_of(c));
            PLSet r = rho(s);
            CHECK(r == rho_oracle(s));
            CHECK(r.subset_of(s));
            PLSet lc = lc_part(s);
            CHECK((lc & r).empty());
            CHECK(rho(lc).empty());
            // lc_part is dense in S: its closure covers S
            CHECK(s.subset_of(closure(lc)));
            PLSet e = eta(s);
            CHECK(e.subset_of(c - s));
            CHECK(is_appropriately_embedded(c));
            for (int i : s.ids()) CHECK(germ_connected(s, i));
            PLSet t = random_subset(k, rng);
            CHECK(closure(s | t) == (closure(s) | closure(t)));
        }
    }
}

TEST_CASE("barycentric subdivision") {
    std::vector<Vec> v = {{0, 0}, {1, 0}, {0, 1}};
    auto k = Complex::build(v, {{0, 1, 2}});
    PLSet full(k, {k->id_of({0, 1, 2})});
    auto sub = barycentric_subdivide(k, full);
    CHECK(sub.complex->tops().size() == 6);
    int nv = 0;
    for (int i = 0; i < sub.complex->size(); ++i) nv += sub.complex->dim(i) == 0;
    CHECK(nv == 7);

    // Realized sets agree on random points, including points on the skeleton.
    gen::Rng rng(7);
    PLSet a = fx::fix_a();
    auto s1 = barycentric_subdivide(a.complex(), a);
    auto s2 = barycentric_subdivide(s1.complex, s1.marked);
    PLSet e0 = eta(a), e2 = eta(s2.marked);
    const auto& ka = *a.complex();
    for (int i = 0; i < 1000; ++i) {
        Vec x;
        int mode = static_cast<int>(rng.integer(0, 2));
        if (mode == 0) {
            x = rng.point(2, -1, 1, 64);
        } else {
            int e = static_cast<int>(rng.integer(0, ka.size() - 1));
            x = rng.interior_point(ka.points(e));
        }
        CHECK(a.contains_point(x) == s1.marked.contains_point(x));
        CHECK(a.contains_point(x) == s2.marked.contains_point(x));
        CHECK(e0.contains_point(x) == e2.contains_point(x));
    }
}
