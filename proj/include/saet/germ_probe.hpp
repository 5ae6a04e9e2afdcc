#pragma once

#include "saet/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace saet {

// A set known through exact membership, a (conservative) segment test and a
// list of closed cells covering its closure.
class GermOracle {
public:
    virtual ~GermOracle() = default;
    virtual bool member(const Vec& x) const = 0;
    // true only if every point of [a, b] is a member
    virtual bool segment_inside(const Vec& a, const Vec& b) const = 0;
    virtual std::vector<std::vector<Vec>> closure_cells() const = 0;
};

enum class GermVerdict { Connected, Disconnected, Inconclusive };
const char* to_string(GermVerdict v);

struct ProbeReport {
    GermVerdict verdict = GermVerdict::Inconclusive;
    Q radius;              // after clamping to the star of q
    int components = 0;    // at link length delta
    int components_2x = 0; // at 2 delta
    int members = 0;
    int nonmembers = 0;
    int boundary_points = 0;
    int member_dim = -1;
    int complement_dim = -1; // of Cl(N) \ N near q; 0 when only q itself shows up
    int samples = 0;         // per cell, after any escalation

    int codim() const { return member_dim - complement_dim; }
    // the germ violates the appropriate-embedding conditions
    bool obstruction() const {
        return verdict == GermVerdict::Disconnected || (verdict == GermVerdict::Connected && codim() >= 2);
    }
};

// Samples the shell radius/2 <= |x - q| <= radius inside the cells through q,
// classifies samples exactly, links member samples closer than delta whose
// segment stays inside, and estimates the dimension of the frontier from
// bisected member/non-member pairs. Throws PreconditionViolated if q is a
// member or lies outside every cell. A verdict left open by sparse samples
// (delta and 2 delta disagree, or too few members) is retried at 2x and 4x.
ProbeReport probe_germ(const GermOracle& n, const Vec& q, Q radius, int samples, std::uint64_t seed);

} // namespace saet
