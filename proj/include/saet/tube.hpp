#pragma once

#include "saet/complex.hpp"
#include "saet/germ_probe.hpp"
#include "saet/interval.hpp"
#include "saet/metric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace saet {

// Closed tube around a simplex tau: points whose distance to tau is at most
// eps times their distance to the boundary of tau. For a vertex the tube is
// the closed ball and eps_sq is its squared radius.
struct Tube {
    int tau = -1; // id in the owning complex, -1 when free-standing
    std::vector<Vec> pts;
    Q eps_sq;
    FaceFunctionals ff; // unused for vertices

    static Tube make(std::vector<Vec> pts, Q eps_sq, int tau = -1);
    int dim() const { return static_cast<int>(pts.size()) - 1; }
    Q star_sq() const { return eps_star_sq(eps_sq); }
    Vec project(const Vec& x) const;
    // Same simplex, eps_sq multiplied by `factor` (1/4 halves eps).
    Tube rescaled(const Q& factor) const;
    // x on the relative boundary of tau (never true for vertices).
    bool on_tau_boundary(const Vec& x) const;
    // Axis box containing the closed tube, exact but not tight.
    std::pair<Vec, Vec> bounding_box() const;
};

enum class TubeMembership { InsideOpen, OnBoundary, Outside };
const char* to_string(TubeMembership m);

// Distance-ratio definition, exact: dist(x,tau)^2 against eps^2 dist(x,dtau)^2.
TubeMembership tube_membership(const Tube& t, const Vec& x);

// Normal-height description: x is in the closed tube iff pi(x) in tau and
// |x - pi(x)| <= eps* min_i f_i(pi(x)) / |u_i|, checked in squared form.
bool hat_lift_membership(const Tube& t, const Vec& x);

// Cone over tau with apex above the incenter at height eps* r_tau.
struct HatSimplex {
    std::vector<Vec> base;
    IVec apex_foot; // incenter
    Interval height;
};
HatSimplex hat_simplex(const Tube& t, unsigned bits = kDefaultBits);

// Slice of the closed tube by the half-flat through aff(tau) and p.
struct CrossSection {
    std::vector<Vec> base;
    Vec normal; // p - pi(p), not normalized
    IVec apex;
};
CrossSection cross_section(const Tube& t, const Vec& p, unsigned bits = kDefaultBits);

enum class SegmentHit { Avoids, Meets, Unknown };

// Whether the closed segment [a, b] meets the closed tube. With
// `ignore_tau_boundary` a segment whose contact is confined to dtau counts as
// avoiding (only decided exactly when the segment lies in a face of tau).
// Unknown when interval refinement cannot separate root enclosures.
SegmentHit segment_meets_tube(const Tube& t, const Vec& a, const Vec& b, bool ignore_tau_boundary,
                              unsigned bits = kDefaultBits);

struct SliceReport {
    int samples = 0;
    int certified = 0;
    int counterexamples = 0;
    int undecided = 0;
    std::optional<Vec> witness; // midpoint of an apex enclosure outside sigma
};

// Samples p in sigma minus tau and checks that the cross-section simplex
// conv(tau, q) stays inside sigma (interval-certified on the apex q, exact on
// sampled points of the slice).
SliceReport slice_containment_check(const Complex& k, const Tube& t, int sigma, int samples, std::uint64_t seed,
                                    unsigned bits = kDefaultBits);

struct FalsifierReport {
    int samples = 0;
    int face_hits = 0; // points of a face not containing tau inside the tube, off dtau
    int peer_hits = 0; // points in two tubes outside their common face
    std::optional<Vec> witness;
    bool clean() const { return face_hits == 0 && peer_hits == 0; }
};

// Rational sampling check of a tube certificate: faces of simplices that do
// not contain tau must miss the tube off dtau, and tau's tube meets each peer's
// tube only in the common face.
FalsifierReport falsify_tube_certificate(const Complex& k, int tau, const Q& eps_sq, const std::vector<int>& peers,
                                         int samples, std::uint64_t seed);

// sigma minus the closed tube, open (sigma interior) or closed.
class SimplexMinusTube : public GermOracle {
public:
    SimplexMinusTube(std::vector<Vec> sigma, Tube t, bool open);
    bool member(const Vec& x) const override;
    bool segment_inside(const Vec& a, const Vec& b) const override;
    std::vector<std::vector<Vec>> closure_cells() const override { return {sigma_}; }

private:
    bool in_sigma(const Vec& x) const;
    std::vector<Vec> sigma_;
    AffineFrame frame_;
    Tube t_;
    bool open_;
};

struct CarvedDifferenceReport {
    int probes = 0;
    int obstructions = 0;
    int inconclusive = 0;
    std::vector<Vec> points;
    std::vector<ProbeReport> open_reports;   // sigma interior minus the tube
    std::vector<ProbeReport> closed_reports; // sigma minus the tube
    bool clean() const { return obstructions == 0; }
};

// Probes the germs of sigma0 \ U and sigma \ U at points of the tube frontier
// inside sigma, away from dtau.
CarvedDifferenceReport carved_difference_eta(const Complex& k, int sigma, const Tube& t, int probes, int samples,
                                             std::uint64_t seed);

} // namespace saet
