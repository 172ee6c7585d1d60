#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bell/core.hpp"

namespace bell {

using OperatorMatrix = Eigen::MatrixXcd;

struct MeasurementAngles {
    double thetaA = 0.0;  // radians, [0, pi]
    double thetaB = 0.0;
};

struct QuarticCoefficients {
    double mu2 = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
    std::complex<double> e, f, g, h;
    std::complex<double> u{1.0, 0.0}, v{1.0, 0.0};
};

struct SolverOptions {
    int grid = 64;            // coarse scan resolution per angle
    int multistart = 8;       // refinement starts taken from the top grid cells
    double angle_tol = 1e-8;  // simplex contraction tolerance
    int max_iterations = 500; // per refinement start
    int certificate_grid = 257;
};

struct QuantumBoundResult {
    double bound = 0.0;
    std::vector<double> argmax;      // one angle per party
    double certificate_margin = 0.0; // only for the bipartite path
    long iterations = 0;
};

// Z = sum_i c_i * (measurement operator product); 4x4, Hermitian, traceless.
// Apparatus n at angle t measures cos(t) sx + (-1)^n sin(t) sy on its qubit.
OperatorMatrix build_operator(const CoefficientVector& c, MeasurementAngles angles);

// Coefficients of det(mI - Z) = m^4 + mu2 m^2 + mu3 m + mu4 for a traceless
// Hermitian 4x4; throws if the m^3 coefficient exceeds 1e-10.
QuarticCoefficients charpoly_from_matrix(const OperatorMatrix& z);

// Closed-form coefficients from the complex unit pair (u, v).
QuarticCoefficients mu_from_formula(const CoefficientVector& c,
                                    std::complex<double> u,
                                    std::complex<double> v);

double max_eigenvalue(const OperatorMatrix& z);

// sup over angles in [0,pi]^2 of the largest eigenvalue: coarse grid scan plus
// Nelder-Mead refinement from the best cells. Throws on non-convergence.
QuantumBoundResult quantum_bound(const CoefficientVector& c,
                                 const SolverOptions& opts = {});

// Minimum over a grid x grid angle mesh of the four positivity conditions
// {m^4+mu2 m^2+mu3 m+mu4, 4m^3+2 mu2 m+mu3, 6m^2+mu2, m}. Nonnegative at
// m = bound + eps certifies the bound from above on the mesh.
double certificate_check(const CoefficientVector& c, double m, int grid);

// Multiparty functional: each term is a product over parties of apparatus 0,
// apparatus 1, or identity (-1), weighted by a real coefficient.
struct OperatorWord {
    std::vector<int> apparatus;  // length = number of parties; entries -1,0,1
};
struct MultipartyTerm {
    OperatorWord word;
    double weight = 0.0;
};

OperatorMatrix build_operator_multiparty(int parties,
                                         const std::vector<MultipartyTerm>& terms,
                                         const std::vector<double>& angles);

// Same sup-eigenvalue computation on the 2^K operator over K angles; rejects
// K > 6. Bipartite inputs take the grid path, K >= 3 uses multistart local
// refinement over the K-cube.
QuantumBoundResult quantum_bound_multiparty(int parties,
                                            const std::vector<MultipartyTerm>& terms,
                                            const SolverOptions& opts = {});

}  // namespace bell
