#include "bell/symmetry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "bell/polytopes.hpp"
#include "bell/tsirelson.hpp"

namespace bell {

SymmetryElement SymmetryElement::compose(const SymmetryElement& other) const {
    SymmetryElement r;
    for (std::size_t i = 0; i < 8; ++i) {
        r.perm[i] = perm[other.perm[i]];
        r.sign[i] = static_cast<std::int8_t>(other.sign[i] * sign[other.perm[i]]);
    }
    return r;
}

std::uint64_t SymmetryElement::key() const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        k = k * 16 + perm[i];
        k = k * 2 + (sign[i] > 0 ? 1 : 0);
    }
    return k;
}

namespace {

SymmetryElement swap_slots(std::initializer_list<std::pair<int, int>> swaps) {
    SymmetryElement e;
    for (auto [a, b] : swaps) {
        e.perm[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(b);
        e.perm[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(a);
    }
    return e;
}

SymmetryElement negate_slots(std::initializer_list<int> slots) {
    SymmetryElement e;
    for (int s : slots) e.sign[static_cast<std::size_t>(s)] = -1;
    return e;
}

}  // namespace

SymmetryGroup SymmetryGroup::generate() {
    SymmetryGroup g;
    // Slot indices are 0-based: C1..C8 -> 0..7.
    g.generators = {
        swap_slots({{0, 2}, {1, 3}, {5, 6}}),  // party swap A<->B
        swap_slots({{0, 1}, {4, 5}, {6, 7}}),  // apparatus swap A0<->A1
        swap_slots({{2, 3}, {4, 6}, {5, 7}}),  // apparatus swap B0<->B1
        negate_slots({0, 4, 6}),               // output flip A0
        negate_slots({1, 5, 7}),               // output flip A1
        negate_slots({2, 4, 5}),               // output flip B0
        negate_slots({3, 6, 7}),               // output flip B1
    };

    std::unordered_set<std::uint64_t> seen;
    std::vector<SymmetryElement> frontier{SymmetryElement{}};
    seen.insert(SymmetryElement{}.key());
    g.elements.push_back(SymmetryElement{});
    while (!frontier.empty()) {
        std::vector<SymmetryElement> next;
        for (const auto& e : frontier) {
            for (const auto& gen : g.generators) {
                SymmetryElement prod = gen.compose(e);
                if (seen.insert(prod.key()).second) {
                    g.elements.push_back(prod);
                    next.push_back(prod);
                }
            }
        }
        frontier = std::move(next);
    }
    if (g.elements.size() != 128)
        throw std::logic_error("symmetry group closure has " +
                               std::to_string(g.elements.size()) +
                               " elements, expected 128");
    return g;
}

CoefficientVector canonical(const CoefficientVector& c, const SymmetryGroup& g) {
    CoefficientVector best = c;
    for (const auto& e : g.elements) {
        CoefficientVector img = e.apply(c);
        if (std::lexicographical_compare(img.c.begin(), img.c.end(),
                                         best.c.begin(), best.c.end()))
            best = img;
    }
    return best;
}

std::vector<EquivalenceClass> enumerate_classes(const SymmetryGroup& g) {
    std::map<std::array<int, 8>, int> classes;
    std::array<int, 8> v{};
    for (int code = 0; code < 6561; ++code) {
        int rem = code;
        for (std::size_t i = 0; i < 8; ++i) {
            v[i] = rem % 3 - 1;
            rem /= 3;
        }
        std::array<int, 8> best = v;
        for (const auto& e : g.elements) {
            std::array<int, 8> img = e.apply(v);
            if (img < best) best = img;
        }
        classes[best] += 1;
    }
    std::vector<EquivalenceClass> out;
    out.reserve(classes.size());
    for (const auto& [rep, n] : classes) out.push_back({rep, n});
    return out;
}

SurveyResult gap_survey(const std::vector<EquivalenceClass>& classes,
                        bool compute_quantum_for_gaps) {
    SurveyResult res;
    const std::array<int, 8> zero{};
    for (const auto& cls : classes) {
        SurveyRow row;
        row.cls = cls;
        const CoefficientVector c = cls.coefficients();
        row.lhvm = lhvm_max(c);
        row.nosig = nosig_max(c);
        row.gap = row.nosig > row.lhvm + 1e-9;
        if (row.gap && compute_quantum_for_gaps)
            row.quantum = quantum_bound(c).bound;
        res.rows.push_back(row);
        if (row.gap) res.gap_rows.push_back(row);
        if (cls.representative != zero) ++res.class_count_excluding_zero;
    }
    res.class_count = classes.size();
    return res;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (b != 0 && a > UINT64_MAX / b) throw std::overflow_error("symmetry_count overflow");
    return a * b;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f = checked_mul(f, static_cast<std::uint64_t>(i));
    return f;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

}  // namespace

std::uint64_t symmetry_count(int parties, int settings, int outcomes) {
    if (parties < 1 || settings < 1 || outcomes < 1)
        throw std::invalid_argument("symmetry_count: arguments must be >= 1");
    const auto k = static_cast<std::uint64_t>(parties);
    std::uint64_t r = factorial(parties);
    r = checked_mul(r, checked_pow(factorial(settings), k));
    r = checked_mul(r, checked_pow(factorial(outcomes),
                                   checked_mul(k, static_cast<std::uint64_t>(settings))));
    return r;
}

std::uint64_t fundamental_symmetry_count(int parties, int settings, int outcomes) {
    if (parties < 1 || settings < 1 || outcomes < 1)
        throw std::invalid_argument("fundamental_symmetry_count: arguments must be >= 1");
    const auto k = static_cast<std::uint64_t>(parties);
    const auto n = static_cast<std::uint64_t>(settings);
    return (factorial(parties) - 1) + k * (factorial(settings) - 1) +
           k * n * (factorial(outcomes) - 1);
}

}  // namespace bell
