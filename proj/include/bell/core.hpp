#pragma once

#include <array>
#include <cstddef>

// Data model for the bipartite dichotomic 8-space.
//
// Component ordering is fixed everywhere as
//   0: <A0>   1: <A1>   2: <B0>   3: <B1>
//   4: <A0B0> 5: <A1B0> 6: <A0B1> 7: <A1B1>
// i.e. correlator index order (00, 10, 01, 11). Slot 5 multiplies A1B0 and
// slot 6 multiplies A0B1, not the transpose; the symmetry tables depend on
// this ordering.

namespace bell {

inline constexpr double kDefaultPositivityTol = 1e-12;

struct CoefficientVector {
    std::array<double, 8> c{};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    bool operator==(const CoefficientVector&) const = default;
};

struct Behavior {
    // Same slot layout as CoefficientVector: 4 marginals then 4 correlators.
    std::array<double, 8> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double marginalA(int j) const { return v[static_cast<std::size_t>(j)]; }
    double marginalB(int k) const { return v[static_cast<std::size_t>(2 + k)]; }
    // Correlator <Aj Bk>.
    double correlator(int j, int k) const {
        return v[static_cast<std::size_t>(4 + j + 2 * k)];
    }

    bool operator==(const Behavior&) const = default;
};

struct JointProbabilities {
    // p[j][k][a][b] with outcome index 0 meaning +1 and 1 meaning -1.
    double p[2][2][2][2]{};

    double min_entry() const;
};

// <Z> = sum_i c_i * b_i.
double functional_value(const CoefficientVector& c, const Behavior& b);

// Reconstruction p(a,b|j,k) = (1 + a<Aj> + b<Bk> + ab<AjBk>) / 4. Negative
// entries are passed through; validity is the caller's question (is_nosig).
JointProbabilities behavior_to_probabilities(const Behavior& b);

// Recover expectations from a probability table (used as a round-trip check).
Behavior probabilities_to_behavior(const JointProbabilities& jp);

// Membership in the no-signaling polytope: all 16 reconstructed joint
// probabilities >= -tol.
bool is_nosig(const Behavior& b, double tol = kDefaultPositivityTol);

}  // namespace bell
