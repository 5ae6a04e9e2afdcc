#pragma once

#include "saet/complex.hpp"
#include "saet/geometry.hpp"
#include "saet/interval.hpp"

#include <string>
#include <vector>

namespace saet {

inline constexpr unsigned kDefaultBits = 60;

// Facet functionals of a d-simplex with vertices p_0..p_d.
// f[i] for i < d is the barycentric coordinate of p_{i+1}; f[d] is that of
// p_0, so sum_i f[i] == 1 on the affine hull. f[i](x) = u[i].x + c[i] with u[i]
// in the direction space of the hull; f[i] vanishes on the facet missing
// vertex[i].
struct FaceFunctionals {
    std::vector<Vec> pts;
    AffineFrame frame;
    std::vector<Vec> u;
    Vec c;
    Vec unorm2;
    std::vector<int> vertex;

    int dim() const { return static_cast<int>(pts.size()) - 1; }
    Q eval(int i, const Vec& x) const { return dot(u[i], x) + c[i]; }
    Interval eval(int i, const IVec& x) const;
    // index of the functional that equals the barycentric coordinate of p_k
    int index_of_vertex(int k) const;
};

FaceFunctionals face_functionals(const std::vector<Vec>& pts);

struct IncenterResult {
    IVec p;     // incenter enclosure
    Interval r; // distance to the boundary
    unsigned bits = 0;
};

// Enclosures of the incenter and inradius with widths <= target_width.
IncenterResult incenter(const std::vector<Vec>& pts, const Q& target_width = pow2_neg(kDefaultBits));

using Hyperplane = AffineForm;

// h == 0 on the common face, h < 0 at the other vertices of tau1, h > 0 at
// the other vertices of tau2. Common vertices are detected by coordinates.
Hyperplane separating_hyperplane(const std::vector<Vec>& tau1, const std::vector<Vec>& tau2);
Hyperplane separating_hyperplane(const Complex& k, int tau1, int tau2);

// One strict inequality lhs < rhs, certified when lhs.hi < rhs.lo.
struct Inequality {
    std::string what;
    Interval lhs, rhs;
    bool holds() const { return lhs.hi < rhs.lo; }
};

struct EpsCertificate {
    int tau = -1;
    Q eps_sq;
    int halvings = 0; // number of 1/4 steps taken from 1/4
    std::vector<Inequality> checks;
};

// eps^* squared, exact.
inline Q eps_star_sq(const Q& eps_sq) { return eps_sq / (1 - eps_sq); }

// Largest eps^2 in {1/4, 1/16, ...} such that (a) every star simplex of tau
// keeps its facets away from the tube apex ball and (b) the apex ball of tau
// (and of each peer of the same positive dimension) avoids the separating
// hyperplane against every peer and every maximal simplex not containing tau.
// For a vertex tau the tube is the ball of radius eps around it.
EpsCertificate certify_epsilon(const Complex& k, int tau, const std::vector<int>& peers,
                               unsigned bits = kDefaultBits);

// Peer whose tube is already fixed: its apex ball uses its own eps.
struct FixedPeer {
    int id;
    Q eps_sq;
};
EpsCertificate certify_epsilon(const Complex& k, int tau, const std::vector<int>& peers,
                               const std::vector<FixedPeer>& fixed, unsigned bits = kDefaultBits);

} // namespace saet
