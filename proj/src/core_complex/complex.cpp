#include "saet/complex.hpp"

#include "saet/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace saet {

namespace {

bool boxes_overlap(const std::pair<Vec, Vec>& a, const std::pair<Vec, Vec>& b) {
    for (std::size_t i = 0; i < a.first.size(); ++i)
        if (a.second[i] < b.first[i] || b.second[i] < a.first[i]) return false;
    return true;
}

std::string list_str(const VertexList& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

} // namespace

ComplexPtr Complex::build(std::vector<Vec> vertices, std::vector<VertexList> tops, bool check_glue) {
    if (vertices.empty()) throw Error(ErrorKind::DegenerateSimplex, "complex needs at least one vertex");
    auto k = std::shared_ptr<Complex>(new Complex());
    k->n_ = static_cast<int>(vertices[0].size());
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != k->n_) throw Error(ErrorKind::ParseError, "mixed ambient dimensions");
    k->verts_ = std::move(vertices);
    const int nv = static_cast<int>(k->verts_.size());

    std::set<VertexList> all;
    std::vector<char> used(nv, 0);
    for (auto& t : tops) {
        std::sort(t.begin(), t.end());
        if (t.empty() || std::adjacent_find(t.begin(), t.end()) != t.end())
            throw Error(ErrorKind::DegenerateSimplex, "empty or repeated vertex list " + list_str(t));
        for (int v : t)
            if (v < 0 || v >= nv) throw Error(ErrorKind::ParseError, "vertex id out of range in " + list_str(t));
        std::vector<Vec> pts;
        for (int v : t) pts.push_back(k->verts_[v]);
        if (!affinely_independent(pts))
            throw Error(ErrorKind::DegenerateSimplex, "affinely dependent simplex " + list_str(t));
        if (t.size() > 30) throw Error(ErrorKind::DegenerateSimplex, "simplex too large");
        for (unsigned m = 1; m < (1u << t.size()); ++m) {
            VertexList f;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (m & (1u << i)) f.push_back(t[i]);
            all.insert(f);
        }
        for (int v : t) used[v] = 1;
    }
    for (int v = 0; v < nv; ++v)
        if (!used[v]) all.insert({v});

    std::vector<VertexList> order(all.begin(), all.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const VertexList& a, const VertexList& b) { return a.size() < b.size(); });
    k->simps_ = order;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) k->index_[order[i]] = i;

    const int ns = k->size();
    k->faces_.assign(ns, {});
    k->cofaces_.assign(ns, {});
    for (int i = 0; i < ns; ++i) {
        const auto& s = k->simps_[i];
        for (unsigned m = 1; m < (1u << s.size()); ++m) {
            VertexList f;
            for (std::size_t j = 0; j < s.size(); ++j)
                if (m & (1u << j)) f.push_back(s[j]);
            int fid = k->index_.at(f);
            k->faces_[i].push_back(fid);
            k->cofaces_[fid].push_back(i);
        }
    }
    for (int i = 0; i < ns; ++i) {
        std::sort(k->faces_[i].begin(), k->faces_[i].end());
        std::sort(k->cofaces_[i].begin(), k->cofaces_[i].end());
        if (k->cofaces_[i].size() == 1) k->tops_.push_back(i);
    }
    k->bbox_.resize(ns);
    k->frames_.reserve(ns);
    for (int i = 0; i < ns; ++i) {
        auto pts = k->points(i);
        Vec lo = pts[0], hi = pts[0];
        for (const auto& p : pts)
            for (int j = 0; j < k->n_; ++j) {
                if (p[j] < lo[j]) lo[j] = p[j];
                if (p[j] > hi[j]) hi[j] = p[j];
            }
        k->bbox_[i] = {lo, hi};
        k->frames_.push_back(make_frame(pts));
    }

    // Pairwise gluing: the intersection of two maximal simplices must be their
    // common face. Equivalent to a strict separator vanishing on that face.
    for (std::size_t a = 0; check_glue && a < k->tops_.size(); ++a)
        for (std::size_t b = a + 1; b < k->tops_.size(); ++b) {
            int ia = k->tops_[a], ib = k->tops_[b];
            if (!boxes_overlap(k->bbox_[ia], k->bbox_[ib])) continue;
            const auto& sa = k->simps_[ia];
            const auto& sb = k->simps_[ib];
            std::vector<Vec> shared, neg, pos;
            for (int v : sa)
                (std::binary_search(sb.begin(), sb.end(), v) ? shared : neg).push_back(k->verts_[v]);
            for (int v : sb)
                if (!std::binary_search(sa.begin(), sa.end(), v)) pos.push_back(k->verts_[v]);
            if (!strict_separator(shared, neg, pos))
                throw Error(ErrorKind::BadGlue, "simplices " + list_str(sa) + " and " + list_str(sb) +
                                                    " meet outside a common face");
        }
    return k;
}

int Complex::max_dim() const {
    int d = -1;
    for (int t : tops_) d = std::max(d, dim(t));
    return d;
}

std::optional<int> Complex::find(VertexList verts) const {
    std::sort(verts.begin(), verts.end());
    auto it = index_.find(verts);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Complex::id_of(VertexList verts) const {
    auto r = find(verts);
    if (!r) throw Error(ErrorKind::NotAFace, "no simplex " + list_str(verts));
    return *r;
}

std::vector<int> Complex::facets(int id) const {
    std::vector<int> r;
    const auto& s = simps_[id];
    if (s.size() == 1) return r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        VertexList f;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        r.push_back(index_.at(f));
    }
    return r;
}

bool Complex::is_face(int a, int b) const {
    const auto& sa = simps_[a];
    const auto& sb = simps_[b];
    return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

std::vector<Vec> Complex::points(int id) const {
    std::vector<Vec> r;
    for (int v : simps_[id]) r.push_back(verts_[v]);
    return r;
}

Vec Complex::barycenter(int id) const {
    Vec b = zeros(n_);
    for (int v : simps_[id]) b = vadd(b, verts_[v]);
    return vscale(b, Q(1, static_cast<unsigned long>(simps_[id].size())));
}

const AffineFrame& Complex::frame(int id) const { return frames_[id]; }

std::optional<int> Complex::carrier_in(int id, const Vec& x) const {
    const auto& f = frames_[id];
    if (!f.in_hull(x)) return std::nullopt;
    Vec lam = f.barycentric(x);
    VertexList c;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] < 0) return std::nullopt;
        if (lam[i] > 0) c.push_back(simps_[id][i]);
    }
    return index_.at(c);
}

std::optional<int> Complex::locate(const Vec& x) const {
    for (int t : tops_) {
        const auto& bb = bbox_[t];
        bool in = true;
        for (int j = 0; j < n_ && in; ++j)
            if (x[j] < bb.first[j] || x[j] > bb.second[j]) in = false;
        if (!in) continue;
        if (auto c = carrier_in(t, x)) return c;
    }
    return std::nullopt;
}

std::vector<VertexList> Complex::top_lists() const {
    std::vector<VertexList> r;
    for (int t : tops_) r.push_back(simps_[t]);
    return r;
}

PLSet::PLSet(ComplexPtr k) : k_(std::move(k)), mask_(k_->size(), 0) {}

PLSet::PLSet(ComplexPtr k, const std::vector<int>& ids) : PLSet(std::move(k)) {
    for (int i : ids) mask_.at(i) = 1;
}

std::vector<int> PLSet::ids() const {
    std::vector<int> r;
    for (int i = 0; i < static_cast<int>(mask_.size()); ++i)
        if (mask_[i]) r.push_back(i);
    return r;
}

bool PLSet::empty() const { return std::find(mask_.begin(), mask_.end(), 1) == mask_.end(); }

int PLSet::count() const { return static_cast<int>(std::count(mask_.begin(), mask_.end(), 1)); }

int PLSet::dim() const {
    int d = -1;
    for (int i = 0; i < static_cast<int>(mask_.size()); ++i)
        if (mask_[i]) d = std::max(d, k_->dim(i));
    return d;
}

PLSet PLSet::operator|(const PLSet& o) const {
    PLSet r = *this;
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] | o.mask_[i];
    return r;
}

PLSet PLSet::operator&(const PLSet& o) const {
    PLSet r = *this;
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] & o.mask_[i];
    return r;
}

PLSet PLSet::operator-(const PLSet& o) const {
    PLSet r = *this;
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] & !o.mask_[i];
    return r;
}

bool PLSet::subset_of(const PLSet& o) const {
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i] && !o.mask_[i]) return false;
    return true;
}

bool PLSet::contains_point(const Vec& x) const {
    auto c = k_->locate(x);
    return c && mask_[*c];
}

bool segment_in_plset(const PLSet& s, const Vec& a, const Vec& b) {
    const auto& k = *s.complex();
    const Vec d = vsub(b, a);
    // Carriers are constant between consecutive zero crossings of the
    // barycentric coordinates of any top simplex.
    std::vector<Q> cuts{Q(0), Q(1)};
    for (int t : k.tops()) {
        const auto& f = k.frame(t);
        // the segment may cross a lower-dimensional hull at a single point
        Vec n0 = vsub(a, f.project(a));
        Vec n1 = vsub(vsub(b, f.project(b)), n0);
        if (norm2(n1) != 0) {
            Q s0 = -dot(n0, n1) / norm2(n1);
            if (s0 > 0 && s0 < 1 && norm2(vadd(n0, vscale(n1, s0))) == 0) cuts.push_back(s0);
        }
        Vec la = f.barycentric(a);
        Vec lb = f.barycentric(b);
        for (std::size_t i = 0; i < la.size(); ++i) {
            Q slope = lb[i] - la[i];
            if (slope == 0) continue;
            Q s0 = -la[i] / slope;
            if (s0 > 0 && s0 < 1) cuts.push_back(s0);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto at = [&](const Q& t) { return vadd(a, vscale(d, t)); };
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (!s.contains_point(at(cuts[i]))) return false;
        if (i + 1 < cuts.size() && !s.contains_point(at((cuts[i] + cuts[i + 1]) / 2))) return false;
    }
    return true;
}

PLSet closure(const PLSet& s) {
    PLSet r(s.complex());
    const auto& k = *s.complex();
    for (int i = 0; i < k.size(); ++i)
        if (s.contains(i))
            for (int f : k.faces(i)) r.insert(f);
    return r;
}

PLSet rho(const PLSet& s) { return closure(closure(s) - s) & s; }

PLSet lc_part(const PLSet& s) { return s - rho(s); }

namespace {

void require_in_closure(const PLSet& s, int sigma) {
    const auto& k = *s.complex();
    for (int c : k.cofaces(sigma))
        if (s.contains(c)) return;
    throw Error(ErrorKind::NotInClosure, "simplex " + std::to_string(sigma) + " is not in the closure");
}

} // namespace

int local_dim(const PLSet& s, int sigma) {
    require_in_closure(s, sigma);
    const auto& k = *s.complex();
    int d = -1;
    for (int c : k.cofaces(sigma))
        if (s.contains(c)) d = std::max(d, k.dim(c));
    return d;
}

bool germ_connected(const PLSet& s, int sigma) {
    const auto& k = *s.complex();
    std::vector<int> nodes;
    for (int c : k.cofaces(sigma))
        if (s.contains(c)) nodes.push_back(c);
    if (nodes.empty()) throw Error(ErrorKind::EmptyGerm, "no member simplex has " + std::to_string(sigma) + " as a face");
    std::vector<int> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (k.is_face(nodes[i], nodes[j]) || k.is_face(nodes[j], nodes[i])) parent[root(i)] = root(j);
    int r0 = root(0);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (root(i) != r0) return false;
    return true;
}

std::vector<GermInfo> germ_table(const PLSet& s) {
    const auto& k = *s.complex();
    PLSet cl = closure(s);
    PLSet bd = cl - s;
    std::vector<GermInfo> out;
    for (int sigma = 0; sigma < k.size(); ++sigma) {
        if (!cl.contains(sigma)) continue;
        GermInfo g{sigma, local_dim(s, sigma), -1, germ_connected(s, sigma), false};
        for (int c : k.cofaces(sigma))
            if (bd.contains(c)) g.out_dim = std::max(g.out_dim, k.dim(c));
        if (bd.contains(sigma)) g.obstructed = !g.connected || (g.out_dim >= 0 && g.out_dim < g.local_dim - 1);
        out.push_back(g);
    }
    return out;
}

PLSet eta(const PLSet& s) {
    PLSet r(s.complex());
    for (const auto& g : germ_table(s))
        if (g.obstructed) r.insert(g.simplex);
    return r;
}

bool is_appropriately_embedded(const PLSet& s) { return eta(s).empty(); }

Subdivision barycentric_subdivide(const ComplexPtr& kp, const PLSet& marked) {
    const auto& k = *kp;
    std::vector<Vec> verts;
    for (int i = 0; i < k.size(); ++i) verts.push_back(k.barycenter(i));
    // Maximal chains: sigma_0 < sigma_1 < ... < top, one facet dropped per step.
    std::vector<VertexList> tops;
    std::vector<int> top_of_chain;
    for (int t : k.tops()) {
        std::vector<std::vector<int>> chains = {{t}};
        for (int step = 0; step < k.dim(t); ++step) {
            std::vector<std::vector<int>> next;
            for (const auto& ch : chains)
                for (int f : k.facets(ch.back())) {
                    auto c = ch;
                    c.push_back(f);
                    next.push_back(c);
                }
            chains = std::move(next);
        }
        for (auto& ch : chains) {
            std::sort(ch.begin(), ch.end());
            tops.push_back(ch);
        }
    }
    auto sub = Complex::build(verts, tops, false);
    PLSet m(sub);
    for (int i = 0; i < sub->size(); ++i) {
        // A chain's open simplex lies in the open simplex of its largest element.
        int largest = -1;
        for (int v : sub->simplex(i))
            if (largest < 0 || k.dim(v) > k.dim(largest)) largest = v;
        if (marked.contains(largest)) m.insert(i);
    }
    return {sub, m};
}

PLSet transport(const PLSet& s, const ComplexPtr& refined) {
    PLSet r(refined);
    for (int i = 0; i < refined->size(); ++i)
        if (s.contains_point(refined->barycenter(i))) r.insert(i);
    return r;
}

} // namespace saet
