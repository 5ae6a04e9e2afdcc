#pragma once

#include "saet/rational.hpp"

#include <optional>

namespace saet {

// Exact linear program over free variables:
//   minimize c.x  s.t.  eq_a x = eq_b,  le_a x <= le_b.
// Dense two-phase simplex with Bland's rule (terminates; no cycling).
// Returns nullopt when infeasible. Unbounded objectives are reported as
// infeasible-for-optimization via `unbounded`.
struct LinearProgram {
    std::size_t nvars = 0;
    Mat eq_a;
    Vec eq_b;
    Mat le_a;
    Vec le_b;
    Vec objective; // empty => pure feasibility
};

struct LpResult {
    bool feasible = false;
    bool unbounded = false;
    Vec x;
};

LpResult solve_lp(const LinearProgram& lp);

} // namespace saet
