#pragma once

#include "saet/complex.hpp"

#include <functional>

namespace saet::fixtures {

// Marks every open simplex whose barycenter satisfies `pred`.
PLSet by_barycenter(const ComplexPtr& k, const std::function<bool(const Vec&)>& pred);

// [-1,1]^2 cut by both axes and both diagonals: 9 vertices, 8 triangles.
// Vertex 0 is the origin, 1..8 go counterclockwise from (1,0).
ComplexPtr square8();
// [-1,1]^2 cut by the diagonals only: origin + 4 corners.
ComplexPtr square4();
// Two triangular prisms over conv{(0,0),(1,0),(1,1)} stacked on z in
// [-1,0] and [0,1], 3 tetrahedra each. Vertices: (0,0,z),(1,0,z),(1,1,z) for
// z = -1, 0, 1 in that order; vertex 3 is the origin.
ComplexPtr wedge_prism();

// Closed square minus the line {y = 0}, plus the origin.
PLSet fix_a();
// {|y| > |x|} in the closed square, plus the origin.
PLSet fix_b();
// {x - y > 0, y > 0} inside the prism pair, plus the origin.
PLSet fix_c();
// Closed square minus its center vertex (punctured disk analog on square8).
PLSet punctured_square();

} // namespace saet::fixtures
