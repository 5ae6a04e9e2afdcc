#pragma once

#include "saet/geometry.hpp"
#include "saet/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace saet {

using VertexList = std::vector<int>; // sorted vertex ids

// Finite geometric simplicial complex with exact rational vertices.
// Simplex ids are ordered by (dimension, vertex list).
class Complex {
public:
    // Validates affine independence and proper gluing; computes all faces.
    // check_glue=false is for refinements of already validated complexes.
    static std::shared_ptr<const Complex> build(std::vector<Vec> vertices, std::vector<VertexList> tops,
                                                bool check_glue = true);

    int ambient_dim() const { return n_; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const Vec& vertex(int v) const { return verts_[v]; }
    int size() const { return static_cast<int>(simps_.size()); }
    const VertexList& simplex(int id) const { return simps_[id]; }
    int dim(int id) const { return static_cast<int>(simps_[id].size()) - 1; }
    int max_dim() const;
    std::optional<int> find(VertexList verts) const;
    int id_of(VertexList verts) const; // throws NotAFace
    int vertex_simplex(int v) const { return id_of({v}); }

    // All simplices having `id` as a face (including id itself).
    const std::vector<int>& cofaces(int id) const { return cofaces_[id]; }
    // All faces of `id` (including id itself).
    const std::vector<int>& faces(int id) const { return faces_[id]; }
    const std::vector<int>& tops() const { return tops_; }
    std::vector<int> facets(int id) const;
    bool is_face(int a, int b) const; // a <= b

    std::vector<Vec> points(int id) const;
    Vec barycenter(int id) const;
    const AffineFrame& frame(int id) const;

    // Carrier open simplex of x in |K|, if any.
    std::optional<int> locate(const Vec& x) const;
    // Carrier of x restricted to a given simplex (x must lie in it).
    std::optional<int> carrier_in(int id, const Vec& x) const;

    std::vector<VertexList> top_lists() const;

private:
    int n_ = 0;
    std::vector<Vec> verts_;
    std::vector<VertexList> simps_;
    std::map<VertexList, int> index_;
    std::vector<std::vector<int>> cofaces_, faces_;
    std::vector<int> tops_;
    std::vector<AffineFrame> frames_;
    std::vector<std::pair<Vec, Vec>> bbox_; // per simplex
};

using ComplexPtr = std::shared_ptr<const Complex>;

// Subset of |K| given as a union of open simplices.
class PLSet {
public:
    PLSet() = default;
    explicit PLSet(ComplexPtr k);
    PLSet(ComplexPtr k, const std::vector<int>& ids);

    const ComplexPtr& complex() const { return k_; }
    bool contains(int id) const { return mask_[id]; }
    void insert(int id) { mask_[id] = 1; }
    void erase(int id) { mask_[id] = 0; }
    std::vector<int> ids() const;
    bool empty() const;
    int count() const;
    int dim() const; // -1 for empty

    PLSet operator|(const PLSet& o) const;
    PLSet operator&(const PLSet& o) const;
    PLSet operator-(const PLSet& o) const;
    bool operator==(const PLSet& o) const { return mask_ == o.mask_; }
    bool subset_of(const PLSet& o) const;

    // Realized membership of a rational point.
    bool contains_point(const Vec& x) const;

private:
    ComplexPtr k_;
    std::vector<char> mask_;
};

// Exact: whether every point of the closed segment [a, b] lies in S.
bool segment_in_plset(const PLSet& s, const Vec& a, const Vec& b);

PLSet closure(const PLSet& s);
PLSet rho(const PLSet& s);
PLSet lc_part(const PLSet& s);
int local_dim(const PLSet& s, int sigma);
bool germ_connected(const PLSet& s, int sigma);
PLSet eta(const PLSet& s);
bool is_appropriately_embedded(const PLSet& s);

// Per-simplex germ data for reports.
struct GermInfo {
    int simplex;
    int local_dim;
    int out_dim; // max dim of a star simplex in Cl(S)\S, -1 if none
    bool connected;
    bool obstructed;
};
std::vector<GermInfo> germ_table(const PLSet& s);

struct Subdivision {
    ComplexPtr complex;
    PLSet marked;
};
Subdivision barycentric_subdivide(const ComplexPtr& k, const PLSet& marked);

// Transports a PLSet to a refinement of its complex (by barycenter location).
PLSet transport(const PLSet& s, const ComplexPtr& refined);

} // namespace saet
