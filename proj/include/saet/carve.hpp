#pragma once

#include "saet/complex.hpp"
#include "saet/germ_probe.hpp"
#include "saet/interval.hpp"
#include "saet/metric.hpp"
#include "saet/tube.hpp"

#include <cstdint>
#include <vector>

namespace saet {

// Coefficients of the tube maps for the pair of slopes s < s'.
// g: height t -> a1 d + a2 t,  h: height t -> b1 t + b2 d.
struct DeformCoeffs {
    Interval s, sp;
    Interval a1, a2, b1, b2;
};

// Throws BadOrder unless s < s' is certified.
DeformCoeffs deformation_coeffs(const Interval& s, const Interval& sp);
// s = (eps/2)^*, s' = eps^* for the given eps^2.
DeformCoeffs deformation_coeffs_for(const Q& eps_sq, unsigned bits = kDefaultBits);

// One carved neighbourhood: the big tube (eps) supports the maps, the half
// tube (eps/2, closed, minus dtau) is removed. Vertex tubes are balls.
struct CarvedTube {
    Tube big;
    Tube half;
    int level = 1;
    DeformCoeffs coeffs; // unused for vertices
    Q radius;            // vertices only: exact ball radius
};

class CarvedSet : public GermOracle {
public:
    CarvedSet() = default;
    explicit CarvedSet(PLSet base);
    CarvedSet with(std::vector<CarvedTube> more) const;

    const PLSet& base() const { return base_; }
    const std::vector<CarvedTube>& tubes() const { return tubes_; }
    int levels() const;

    bool member(const Vec& x) const override;
    bool segment_inside(const Vec& a, const Vec& b) const override;
    std::vector<std::vector<Vec>> closure_cells() const override;
    // closure of the base minus the open half tubes
    bool closure_member(const Vec& x) const;
    // inside some removed half tube (off dtau)
    bool carved_out(const Vec& x) const;

private:
    PLSet base_, closed_base_;
    std::vector<CarvedTube> tubes_;
    std::vector<std::pair<Vec, Vec>> boxes_; // of the half tubes
    std::vector<std::vector<Vec>> cells_;
};

enum class MapDirection { Push, Pull };

// g (push) or h (pull) of a carve run, as a composition of per-tube maps.
// Push applies level 1 first; pull applies the last level first.
class DeformationMap {
public:
    DeformationMap() = default;
    DeformationMap(MapDirection dir, CarvedSet n, unsigned bits = kDefaultBits);

    MapDirection direction() const { return dir_; }
    unsigned bits() const { return bits_; }
    // Domain checks are exact: push needs x in the base set, pull needs x in
    // the closure of the carved set. Throws OutOfDomain otherwise.
    IVec operator()(const Vec& x) const;
    // No domain check; boxes straddling a tube frontier get the hull of both branches.
    IVec apply(const IVec& x) const;
    IVec apply_level(int level, const IVec& x) const;

private:
    struct Prepared {
        int tube = -1; // index into the carved set's tubes
        Mat proj; // orthogonal projection onto the direction space of tau
        std::vector<Interval> unorm;
    };
    IVec tube_map(const Prepared& p, const IVec& x) const;
    IVec ball_map(const Prepared& p, const IVec& x) const;

    MapDirection dir_ = MapDirection::Push;
    CarvedSet n_;
    unsigned bits_ = kDefaultBits;
    std::vector<Prepared> prep_;
    int levels_ = 0;
};

IVec push_point(const DeformationMap& g, const Vec& x);
IVec pull_point(const DeformationMap& h, const Vec& x);

struct CarveStep {
    int level = 0;
    int dim = -1; // dim of the carved simplices, = dim eta before the step
    std::vector<int> taus;
    Q eps_sq; // common eps^2 (vertices: per tube in the certificates)
    std::vector<EpsCertificate> certificates;
};

struct CarveResult {
    CarvedSet set;
    DeformationMap push, pull;
    std::vector<CarveStep> steps;
    std::vector<int> eta_dims; // dim eta of the input to each level, then of the residual
};

// Carves the positive-dimensional simplices `taus` (one dimension) out of n
// with a jointly certified eps; earlier tubes enter as fixed peers.
CarveResult carve_level(const CarvedSet& n, const std::vector<int>& taus, unsigned bits = kDefaultBits);
CarveResult carve_level(const PLSet& s, const std::vector<int>& taus, unsigned bits = kDefaultBits);

// Radial collars around obstruction vertices, radius 2^-k.
CarveResult carve_base_vertices(const CarvedSet& n, const std::vector<int>& vertex_ids,
                                unsigned bits = kDefaultBits);
CarveResult carve_base_vertices(const PLSet& s, const std::vector<int>& vertex_ids, unsigned bits = kDefaultBits);

// Levels follow the dimensions of eta(S) downward. Levels after the first
// carve the remaining original simplices of eta(S); the carved set is not
// re-triangulated.
CarveResult appropriate_embed(const PLSet& s, unsigned bits = kDefaultBits);

// Non-members of N within 2^-50 of its frontier, bisected between points of
// the removed tubes and members (plain cell pairs when nothing was carved).
std::vector<Vec> frontier_samples(const CarvedSet& n, int count, std::uint64_t seed);
// min(2^-5, dist(q, nearest vertex)/4), dyadic.
Q probe_radius(const CarvedSet& n, const Vec& q);

} // namespace saet
