#include <doctest.h>

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "bell/polytopes.hpp"
#include "bell/rng.hpp"

using namespace bell;

namespace {

Behavior pr_box() { return {{0, 0, 0, 0, 1, 1, 1, -1}}; }

Behavior random_nosig(Xoshiro256pp& rng) {
    for (;;) {
        Behavior b;
        for (auto& x : b.v) x = rng.next_symmetric();
        if (is_nosig(b)) return b;
    }
}

}  // namespace

TEST_CASE("vertex sets have the expected cardinalities") {
    CHECK(deterministic_vertices().size() == 16);
    CHECK(pr_vertices().size() == 8);
    std::set<std::array<double, 8>> distinct;
    for (const auto& v : nosig_polytope().vertices) distinct.insert(v.v);
    CHECK(distinct.size() == 24);
    for (const auto& v : pr_vertices()) {
        CHECK(v[0] == 0.0);
        CHECK(v[4] * v[5] * v[6] * v[7] == -1.0);
    }
}

TEST_CASE("lhvm_max examples") {
    CHECK(lhvm_max({{0, 0, 0, 0, 1, 1, 1, -1}}) == 2.0);
    CHECK(lhvm_max({{1, 0, 0, 0, 1, 1, 1, -1}}) == 3.0);
    CHECK(lhvm_max({{3, 3, -3, 0, 1, 1, 1, -1}}) == 7.0);
}

TEST_CASE("nosig_max examples") {
    CHECK(nosig_max({{0, 0, 0, 0, 1, 1, 1, -1}}) == 4.0);
    CHECK(nosig_max({{1, 0, 0, 0, 1, 1, 1, -1}}) == 4.0);
    CHECK(nosig_max({{2, 0, 0, 0, 1, 1, 1, -1}}) == 4.0);
    CHECK(nosig_max({{3, 3, -3, 0, 1, 1, 1, -1}}) == 7.0);
}

TEST_CASE("polytope_member examples") {
    CHECK(polytope_member(lhvm_polytope(), pr_box()) == Membership::NotMember);
    CHECK(polytope_member(lhvm_polytope(), Behavior{}) == Membership::Member);

    const double s = 1.0 / std::sqrt(2.0);
    Behavior tsirelson_point{{0, 0, 0, 0, s, s, s, -s}};
    CHECK(polytope_member(pseudo_quantum_polytope(s), tsirelson_point) ==
          Membership::Member);
    CHECK(polytope_member(lhvm_polytope(), tsirelson_point) == Membership::NotMember);
}

TEST_CASE("lhvm_member_fast examples") {
    CHECK_FALSE(lhvm_member_fast(pr_box()));
    CHECK(lhvm_member_fast({{0, 0, 0, 0, 0.5, 0.5, 0.5, -0.5}}));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_FALSE(lhvm_member_fast({{0, 0, 0, 0, s, s, s, -s}}));
}

TEST_CASE("facet fast path agrees with the LP membership test") {
    Xoshiro256pp rng(21, 0);
    const Polytope lhvm = lhvm_polytope();
    for (int trial = 0; trial < 10000; ++trial) {
        const Behavior b = random_nosig(rng);
        const auto lp = polytope_member(lhvm, b, 1e-9);
        REQUIRE(lp != Membership::SolverFailure);
        CHECK(lhvm_member_fast(b, 1e-9) == (lp == Membership::Member));
    }
}

TEST_CASE("nosig_max dominates the functional on random NOSIG points") {
    Xoshiro256pp rng(22, 0);
    for (int trial = 0; trial < 20; ++trial) {
        CoefficientVector c;
        for (auto& x : c.c) x = 2.0 * rng.next_symmetric();
        const double bound = nosig_max(c);
        for (int i = 0; i < 5000; ++i) {
            const Behavior b = random_nosig(rng);
            CHECK(functional_value(c, b) <= bound + 1e-9);
        }
    }
}

TEST_CASE("lhvm_max never exceeds nosig_max") {
    Xoshiro256pp rng(23, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        CoefficientVector c;
        for (auto& x : c.c) x = 2.0 * rng.next_symmetric();
        CHECK(lhvm_max(c) <= nosig_max(c));
    }
}

TEST_CASE("pseudo-quantum scale is validated") {
    CHECK_THROWS_AS(pseudo_quantum_polytope(0.0), std::invalid_argument);
    CHECK_THROWS_AS(pseudo_quantum_polytope(1.5), std::invalid_argument);
}
