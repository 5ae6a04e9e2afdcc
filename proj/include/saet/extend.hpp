#pragma once

#include "saet/complex.hpp"
#include "saet/poly.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace saet {

// One piece num/den on an open member simplex. Factors are affine forms
// [c0, c1, .., cn]; num and den are their products (empty product = 1).
struct PLFPiece {
    int simplex = -1;
    std::vector<Vec> num_factors;
    std::vector<Vec> den_factors;
    Poly num, den; // filled by PLFFunction::make
};

PLFPiece affine_piece(int simplex, Vec form);
PLFPiece ratio_piece(int simplex, std::vector<Vec> num_factors, std::vector<Vec> den_factors);

class PLFFunction {
public:
    // Checks: pieces on member simplices, no duplicates, every maximal
    // member simplex has a piece, each denominator factor keeps one sign on
    // the open piece.
    static PLFFunction make(PLSet domain, std::vector<PLFPiece> pieces);

    const PLSet& domain() const { return m_; }
    const Complex& complex() const { return *m_.complex(); }
    const std::vector<PLFPiece>& pieces() const { return pieces_; }
    const PLFPiece* piece_on(int simplex) const;
    // pieces whose simplex has `beta` as a face, own piece included
    std::vector<int> pieces_around(int beta) const;
    bool is_pl() const; // numerators of degree <= 1, constant denominators
    // Exact value at a point of M; OutOfDomain outside M or where no piece
    // gives a finite value.
    Q eval(const Vec& x) const;

private:
    PLSet m_;
    std::vector<PLFPiece> pieces_;
    std::map<int, int> by_simplex_;
};

// PL function interpolating values at the complex's vertices, one affine
// piece per maximal member simplex.
PLFFunction pl_from_vertex_values(const PLSet& m, const Vec& values);

// Rational function on aff(face), in the affine parameters mu of the face's
// frame (x = p0 + sum mu_i (p_i - p0), vertices in id order).
struct FaceForm {
    int face = -1;
    Poly num, den;

    std::optional<Q> at_params(const Vec& mu) const;
    // x must lie in aff(face)
    std::optional<Q> at(const Complex& k, const Vec& x) const;
    // values at the face's vertices; where a denominator vanishes, only if
    // num/den is affine after cancelling
    std::optional<Vec> vertex_values(const Complex& k) const;
};

// Restriction of an ambient ratio num/den to aff(face).
FaceForm restrict_to_face(const Complex& k, int face, const Poly& num, const Poly& den);
bool same_value(const FaceForm& a, const FaceForm& b);

struct LimitResult {
    enum class Kind { Value, DirectionDependent, Infinite };
    Kind kind = Kind::Value;
    FaceForm value; // Kind::Value only
};
const char* to_string(LimitResult::Kind k);

// Limit of the piece on `sigma` at points of the open face beta, taken along
// rays into sigma. Orders in the ray parameter decide Value / Infinite; a
// leading ratio that depends on the ray direction is DirectionDependent.
LimitResult face_limit(const PLFFunction& f, int sigma, int beta);

struct FaceLimits {
    enum class Status { Extends, Conflict, Excluded };
    int face = -1;
    Status status = Status::Extends;
    std::vector<std::pair<int, LimitResult>> by_piece; // piece simplex -> limit
    std::optional<FaceForm> value;                       // Extends only
};
const char* to_string(FaceLimits::Status s);

struct ExtensionReport {
    PLSet V, Y;
    std::vector<FaceLimits> faces;     // every open simplex of Cl(M) \ M
    std::vector<int> discontinuities; // member simplices where some piece's limit differs from f
    bool hypothesis_holds = true;      // germ of M connected at every simplex of Cl(M)
    std::vector<int> hypothesis_failures;
    std::vector<int> bound_violations; // Y simplices with local dim Y > local dim M - 2

    const FaceLimits* limits_at(int face) const;
    // G at a point of V \ Y: f on M, the face value on the rest
    std::optional<Q> G(const PLFFunction& f, const Vec& x) const;
};

std::vector<int> germ_hypothesis_failures(const PLSet& m);

ExtensionReport weak_extension(const PLFFunction& f);
// Requires dim M = 2 and the germ hypothesis (HypothesisViolated, naming the
// failing simplices); a conflict afterwards throws ConflictFound.
ExtensionReport dim2_extension(const PLFFunction& f);

// Graph of a PL f as closed simplices in R^{n+1}; fibers over boundary
// simplices are read off the graph vertices.
struct GraphClosureReport {
    std::map<int, std::set<Vec>> boundary_fibers; // face -> distinct vertex-value tuples
    std::vector<int> non_singleton_members;       // member simplices with more than one tuple
};
GraphClosureReport graph_closure_oracle(const PLFFunction& f);
// Fiber of the closed graph over one point.
std::vector<Q> graph_fiber(const PLFFunction& f, const Vec& p);

// Limit tuples of a report in the oracle's format (Value limits only).
std::map<int, std::set<Vec>> limit_tuples(const PLFFunction& f, const ExtensionReport& r);

} // namespace saet
