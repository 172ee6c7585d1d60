#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bell/core.hpp"

namespace bell {

// Signed permutation of the eight slots: (g*c)[perm[i]] = sign[i] * c[i].
struct SymmetryElement {
    std::array<std::uint8_t, 8> perm{0, 1, 2, 3, 4, 5, 6, 7};
    std::array<std::int8_t, 8> sign{1, 1, 1, 1, 1, 1, 1, 1};

    template <typename T>
    std::array<T, 8> apply(const std::array<T, 8>& x) const {
        std::array<T, 8> out{};
        for (std::size_t i = 0; i < 8; ++i) out[perm[i]] = static_cast<T>(sign[i]) * x[i];
        return out;
    }
    CoefficientVector apply(const CoefficientVector& c) const { return {apply(c.c)}; }
    Behavior apply(const Behavior& b) const { return {apply(b.v)}; }

    // this ∘ other: apply `other` first, then `*this`.
    SymmetryElement compose(const SymmetryElement& other) const;

    std::uint64_t key() const;  // unique encoding, used for closure bookkeeping

    bool operator==(const SymmetryElement&) const = default;
};

struct SymmetryGroup {
    std::vector<SymmetryElement> elements;  // includes the identity
    std::array<SymmetryElement, 7> generators{};

    std::size_t size() const { return elements.size(); }

    // Closure of the 7 physical generators (party swap, two apparatus swaps,
    // four output flips). Throws if the closure does not have 128 elements.
    static SymmetryGroup generate();
};

// Lexicographically smallest vector in the orbit {g*c}.
CoefficientVector canonical(const CoefficientVector& c, const SymmetryGroup& g);

struct EquivalenceClass {
    std::array<int, 8> representative{};  // entries in {-1,0,1}
    int orbit_size = 0;

    CoefficientVector coefficients() const {
        CoefficientVector c;
        for (std::size_t i = 0; i < 8; ++i) c[i] = representative[i];
        return c;
    }
};

// Canonical representatives of all 3^8 sign-or-zero vectors; orbit sizes sum
// to 6561. Sorted lexicographically by representative.
std::vector<EquivalenceClass> enumerate_classes(const SymmetryGroup& g);

struct SurveyRow {
    EquivalenceClass cls;
    double lhvm = 0.0;
    double nosig = 0.0;
    bool gap = false;
    std::optional<double> quantum;  // filled for gap classes only
};

struct SurveyResult {
    std::vector<SurveyRow> rows;        // one per class
    std::vector<SurveyRow> gap_rows;    // nosig > lhvm + 1e-9, sorted by rep
    std::size_t class_count = 0;
    std::size_t class_count_excluding_zero = 0;
};

SurveyResult gap_survey(const std::vector<EquivalenceClass>& classes,
                        bool compute_quantum_for_gaps = true);

// K! * (N!)^K * (D!)^(K*N); throws std::overflow_error if it does not fit.
std::uint64_t symmetry_count(int parties, int settings, int outcomes);
// (K!-1) + K(N!-1) + K*N*(D!-1)
std::uint64_t fundamental_symmetry_count(int parties, int settings, int outcomes);

}  // namespace bell
