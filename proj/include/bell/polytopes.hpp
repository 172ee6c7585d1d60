#pragma once

#include <vector>

#include "bell/core.hpp"
#include "bell/linear_feasibility.hpp"

namespace bell {

// The 16 deterministic behaviors (a0,a1,b0,b1 in {+1,-1}).
const std::vector<Behavior>& deterministic_vertices();

// The 8 PR-box behaviors: zero marginals, correlators scale*(s00,s10,s01,s11)
// with s_i in {+1,-1} and product -1.
std::vector<Behavior> pr_vertices(double scale = 1.0);

struct Polytope {
    std::vector<Behavior> vertices;
};

Polytope lhvm_polytope();
Polytope nosig_polytope();
// 16 deterministic vertices plus the 8 PR boxes scaled into the Tsirelson
// points (default scale 1/sqrt(2)).
Polytope pseudo_quantum_polytope(double scale);

// Exact maxima of a linear functional over the vertex sets.
double lhvm_max(const CoefficientVector& c);
double nosig_max(const CoefficientVector& c);

enum class Membership { Member, NotMember, SolverFailure };

// Convex-hull membership by linear feasibility over the vertex list.
Membership polytope_member(const Polytope& p, const Behavior& b, double tol = 1e-9);

// Facet fast path: all 8 CHSH-type combinations (odd number of minus signs)
// of the correlators bounded by 2. Caller guarantees b is NOSIG-valid.
bool lhvm_member_fast(const Behavior& b, double tol = 1e-9);

}  // namespace bell
