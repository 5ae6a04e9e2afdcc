#pragma once

#include "saet/rational.hpp"

#include <optional>

namespace saet {

// Affine frame of a point list p0..pd: barycentric coordinates of x are
// (1 - sum(mu), mu) with mu = pinv * (x - p0), valid when x is in the hull.
struct AffineFrame {
    Vec origin;
    Mat dirs; // d rows, each p_i - p0
    Mat pinv; // d x n, (A^T A)^{-1} A^T
    int dim() const { return static_cast<int>(dirs.size()); }

    // Barycentric coordinates relative to the original points (d+1 entries).
    Vec barycentric(const Vec& x) const;
    // Orthogonal projection onto the affine hull.
    Vec project(const Vec& x) const;
    bool in_hull(const Vec& x) const;
};

// Throws DegenerateSimplex for affinely dependent points.
AffineFrame make_frame(const std::vector<Vec>& pts);
bool affinely_independent(const std::vector<Vec>& pts);

// Squared Euclidean distance from x to the convex hull of affinely
// independent points, exact (face enumeration of projections).
Q dist2_to_simplex(const std::vector<Vec>& pts, const Vec& x);
Q dist2_to_affine_hull(const std::vector<Vec>& pts, const Vec& x);

// Affine form h(x) = w.x + c.
struct AffineForm {
    Vec w;
    Q c;
    Q operator()(const Vec& x) const { return dot(w, x) + c; }
};

// Finds h with h == 0 on `shared`, h < 0 on `neg`, h > 0 on `pos`, minimizing
// the l1 norm of w under the normalization h <= -1 / h >= 1. nullopt if none.
std::optional<AffineForm> strict_separator(const std::vector<Vec>& shared, const std::vector<Vec>& neg,
                                           const std::vector<Vec>& pos);

} // namespace saet
