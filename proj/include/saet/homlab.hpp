#pragma once

#include "saet/complex.hpp"
#include "saet/extend.hpp"
#include "saet/poly.hpp"

#include <optional>
#include <vector>

namespace saet {

// Piecewise affine path on (0, delta]. Piece i lives on [t_i, t_{i+1}] with
// t_0 = 0; piece 0 is the germ near 0.
class PathGerm {
public:
    struct Piece {
        Vec c, v; // t -> c + t v
    };

    // breaks = t_1 < ... < t_k = delta, one piece per interval; checks
    // continuity at the interior breakpoints.
    static PathGerm make(std::vector<Q> breaks, std::vector<Piece> pieces);
    static PathGerm line(Vec c, Vec v, Q delta = 1);

    int dim() const { return static_cast<int>(pieces_[0].c.size()); }
    const std::vector<Q>& breaks() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const Piece& germ() const { return pieces_[0]; }
    const Vec& limit() const { return pieces_[0].c; }
    bool constant() const;
    Vec at(const Q& t) const; // t in (0, delta]

private:
    std::vector<Q> breaks_;
    std::vector<Piece> pieces_;
};

// a + b t with t a positive infinitesimal. num/den keep the whole rational
// germ (already divided by the common power of t) for exact comparison when
// first order is not enough.
struct GermValue {
    Q a, b;
    UPoly num, den;

    bool operator==(const GermValue& o) const { return a == o.a && b == o.b; }
    bool operator<(const GermValue& o) const { return a < o.a || (a == o.a && b < o.b); }
};
GermValue germ_constant(const Q& a);
// Exact sign of x - y as germs at 0+; falls back to the stored rational
// functions when (a, b) agree.
int compare_exact(const GermValue& x, const GermValue& y);
bool is_zero_germ(const GermValue& x);
std::string to_string(const GermValue& g);

// Open simplex holding x = terms[0] + e_1 terms[1] + e_2 terms[2] + ... for
// positive infinitesimals 1 >> e_1 >> e_2 >> ..., if any.
std::optional<int> lex_carrier(const Complex& k, const std::vector<Vec>& terms);
std::optional<int> germ_carrier(const Complex& k, const PathGerm& a);

GermValue evaluate(const PLFFunction& f, const PathGerm& a);
PathGerm core(const PathGerm& a);
bool same_core(const PathGerm& a, const PathGerm& b);

bool is_in_extension(const PathGerm& a, const PLSet& s);
enum class Adjacency { Adjacent, NotAdjacent, Unknown };
const char* to_string(Adjacency a);
// Curve germs are decided exactly: adjacent iff the germ lies in S, or it
// lies in Cl(S) and its limit point is in S. Unknown is never returned.
Adjacency adjacency_test(const PathGerm& a, const PLSet& s);

int depth(const PathGerm& a, const PLSet& s);

GermValue eval_hom(const PLFFunction& f, const PathGerm& a, const ExtensionReport& ext);

// tau(q) = conv(tau, q) and T(q) = tau(q) ∩ M.
struct ConeSet {
    PLSet m;
    int tau = -1, sigma = -1;
    int v = -1;      // vertex of sigma outside tau with q on (v, b)
    int epsilon = -1; // facet of sigma containing tau and v
    Vec b, q;
    std::vector<Vec> tau_pts;

    std::vector<Vec> cone_pts() const; // tau_pts then q
    bool in_cone(const Vec& x) const;  // x in tau(q)
    bool contains(const Vec& x) const; // x in T(q)
};

ConeSet cone_restriction(const PLSet& m, int tau, int sigma, const Vec& q);
// Value at the germ a in tau^0 of the continuous extension of f|T(q),
// read off along rays toward the apex.
GermValue hom_via_cone(const PLFFunction& f, const ConeSet& c, const PathGerm& a);

struct HomWitness {
    PLFFunction f; // on a subdivision of M's complex
    ConeSet c1, c2; // on M itself
    GermValue psi1, psi2;
    PathGerm core1, core2;
};
HomWitness distinct_homs_witness(const PLSet& m, int tau, int sigma, const Vec& q1, const Vec& q2,
                                 const PathGerm& a);

// Open-simplex germ test on a simplex given by its points (no complex).
bool germ_in_open_hull(const std::vector<Vec>& pts, const PathGerm& a);

} // namespace saet
