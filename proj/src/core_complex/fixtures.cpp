#include "saet/fixtures.hpp"

namespace saet::fixtures {

namespace {

Vec pt(long x, long y) { return {Q(x), Q(y)}; }
Vec pt(long x, long y, long z) { return {Q(x), Q(y), Q(z)}; }

} // namespace

PLSet by_barycenter(const ComplexPtr& k, const std::function<bool(const Vec&)>& pred) {
    PLSet s(k);
    for (int i = 0; i < k->size(); ++i)
        if (pred(k->barycenter(i))) s.insert(i);
    return s;
}

ComplexPtr square8() {
    std::vector<Vec> v = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(-1, 1),
                          pt(-1, 0), pt(-1, -1), pt(0, -1), pt(1, -1)};
    std::vector<VertexList> t;
    for (int i = 1; i <= 8; ++i) t.push_back({0, i, i % 8 + 1});
    return Complex::build(v, t);
}

ComplexPtr square4() {
    std::vector<Vec> v = {pt(0, 0), pt(1, 1), pt(-1, 1), pt(-1, -1), pt(1, -1)};
    return Complex::build(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
}

ComplexPtr wedge_prism() {
    std::vector<Vec> v;
    for (long z : {-1L, 0L, 1L}) {
        v.push_back(pt(0, 0, z));
        v.push_back(pt(1, 0, z));
        v.push_back(pt(1, 1, z));
    }
    std::vector<VertexList> t;
    for (int l : {0, 3}) {
        int a = l, b = l + 1, c = l + 2, au = l + 3, bu = l + 4, cu = l + 5;
        t.push_back({a, b, c, cu});
        t.push_back({a, b, bu, cu});
        t.push_back({a, au, bu, cu});
    }
    return Complex::build(v, t);
}

PLSet fix_a() {
    auto k = square8();
    PLSet s = by_barycenter(k, [](const Vec& b) { return b[1] != 0; });
    s.insert(k->vertex_simplex(0));
    return s;
}

PLSet fix_b() {
    auto k = square4();
    PLSet s = by_barycenter(k, [](const Vec& b) { return abs(b[1]) > abs(b[0]); });
    s.insert(k->vertex_simplex(0));
    return s;
}

PLSet fix_c() {
    auto k = wedge_prism();
    PLSet s = by_barycenter(k, [](const Vec& b) { return b[0] - b[1] > 0 && b[1] > 0; });
    s.insert(k->vertex_simplex(3));
    return s;
}

PLSet punctured_square() {
    auto k = square8();
    PLSet s = by_barycenter(k, [](const Vec&) { return true; });
    s.erase(k->vertex_simplex(0));
    return s;
}

} // namespace saet::fixtures
