#include "bell/polytopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bell {

const std::vector<Behavior>& deterministic_vertices() {
    static const std::vector<Behavior> verts = [] {
        std::vector<Behavior> vs;
        for (int mask = 0; mask < 16; ++mask) {
            const double a0 = (mask & 1) ? -1.0 : 1.0;
            const double a1 = (mask & 2) ? -1.0 : 1.0;
            const double b0 = (mask & 4) ? -1.0 : 1.0;
            const double b1 = (mask & 8) ? -1.0 : 1.0;
            vs.push_back({{a0, a1, b0, b1, a0 * b0, a1 * b0, a0 * b1, a1 * b1}});
        }
        return vs;
    }();
    return verts;
}

std::vector<Behavior> pr_vertices(double scale) {
    std::vector<Behavior> vs;
    for (int mask = 0; mask < 16; ++mask) {
        const double s00 = (mask & 1) ? -1.0 : 1.0;
        const double s10 = (mask & 2) ? -1.0 : 1.0;
        const double s01 = (mask & 4) ? -1.0 : 1.0;
        const double s11 = (mask & 8) ? -1.0 : 1.0;
        if (s00 * s10 * s01 * s11 > 0) continue;
        vs.push_back({{0, 0, 0, 0, scale * s00, scale * s10, scale * s01, scale * s11}});
    }
    return vs;
}

Polytope lhvm_polytope() { return {deterministic_vertices()}; }

Polytope nosig_polytope() {
    Polytope p{deterministic_vertices()};
    for (const auto& v : pr_vertices(1.0)) p.vertices.push_back(v);
    return p;
}

Polytope pseudo_quantum_polytope(double scale) {
    if (!(scale > 0.0) || scale > 1.0)
        throw std::invalid_argument("pseudo_quantum_polytope: scale must be in (0,1]");
    Polytope p{deterministic_vertices()};
    for (const auto& v : pr_vertices(scale)) p.vertices.push_back(v);
    return p;
}

double lhvm_max(const CoefficientVector& c) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : deterministic_vertices())
        best = std::max(best, functional_value(c, v));
    return best;
}

double nosig_max(const CoefficientVector& c) {
    double best = lhvm_max(c);
    for (const auto& v : pr_vertices(1.0))
        best = std::max(best, functional_value(c, v));
    return best;
}

Membership polytope_member(const Polytope& p, const Behavior& b, double tol) {
    if (p.vertices.empty())
        throw std::invalid_argument("polytope_member: empty vertex list");
    std::vector<std::array<double, 8>> verts;
    verts.reserve(p.vertices.size());
    for (const auto& v : p.vertices) verts.push_back(v.v);
    switch (convex_combination_exists(verts, b.v, tol)) {
        case Feasibility::Feasible: return Membership::Member;
        case Feasibility::Infeasible: return Membership::NotMember;
        default: return Membership::SolverFailure;
    }
}

bool lhvm_member_fast(const Behavior& b, double tol) {
    const double e00 = b[4], e10 = b[5], e01 = b[6], e11 = b[7];
    for (int mask = 0; mask < 16; ++mask) {
        const double s0 = (mask & 1) ? -1.0 : 1.0;
        const double s1 = (mask & 2) ? -1.0 : 1.0;
        const double s2 = (mask & 4) ? -1.0 : 1.0;
        const double s3 = (mask & 8) ? -1.0 : 1.0;
        if (s0 * s1 * s2 * s3 > 0) continue;  // odd number of minus signs
        if (s0 * e00 + s1 * e10 + s2 * e01 + s3 * e11 > 2.0 + tol) return false;
    }
    return true;
}

}  // namespace bell
