#pragma once

#include <array>
#include <string>
#include <vector>

#include "bell/core.hpp"
#include "bell/symmetry.hpp"

namespace bell {

// Arcsin criteria (TLM consumes correlators only, NPA the full behavior).
bool tlm_satisfied(const Behavior& b, double tol = 1e-9);
// Throws std::domain_error if an arcsin argument exceeds 1 by more than 1e-9
// (signals a non-NOSIG input). Near-unit marginals take the degenerate
// branch: the correlator must factorize and its term contributes 0.
bool npa_satisfied(const Behavior& b, double tol = 1e-9);

enum class QBName { QB1, QB2, QB3 };

std::string qb_name_string(QBName name);

// Piecewise closed-form quantum maximum as a function of x.
double qb_bound(QBName name, double x);

// Template c(x) = base + x * direction.
void qb_template_parts(QBName name, CoefficientVector& base, CoefficientVector& direction);
CoefficientVector qb_template(QBName name, double x);

// 401-point x grid over [-64, 64] (linear core, log tails) plus the branch
// points {+-1/3, +-1, +-2}.
const std::vector<double>& default_x_grid();

// One-parameter bound compiled against the symmetry group: the template orbit
// is precomputed and grouped by the x-direction so membership scans reduce to
// a handful of dot products plus a 1-d grid sweep.
struct FunctionValuedBound {
    QBName name = QBName::QB1;
    std::vector<double> x_grid;
    std::vector<double> bound_at;  // qb_bound at each grid point

    struct OrbitGroup {
        std::array<double, 8> direction{};
        std::vector<std::array<double, 8>> bases;
    };
    std::vector<OrbitGroup> orbit;

    static FunctionValuedBound make(QBName name, const SymmetryGroup& g);
};

// True iff some symmetry image of the template beats the bound at some x on
// the grid; near-misses are re-checked by 1-d local refinement in x.
bool fv_violated(const Behavior& b, const FunctionValuedBound& fb, double tol = 1e-9);

}  // namespace bell
