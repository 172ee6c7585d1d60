#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bell/known_bounds.hpp"
#include "bell/polytopes.hpp"
#include "bell/volume.hpp"

using namespace bell;

namespace {

SamplerConfig small_config(std::uint64_t samples) {
    SamplerConfig cfg;
    cfg.seed = 123456789;
    cfg.samples = samples;
    return cfg;
}

}  // namespace

TEST_CASE("results are bit-identical for any worker count") {
    SamplerConfig cfg = small_config(300000);
    cfg.threads = 1;
    const VolumeReport one = volume8({"nosig", "lhvm", "npa", "qb3"}, cfg);
    cfg.threads = 3;
    const VolumeReport three = volume8({"nosig", "lhvm", "npa", "qb3"}, cfg);

    CHECK(one.n_raw == three.n_raw);
    CHECK(one.n_conditioned == three.n_conditioned);
    CHECK(one.npa_domain_errors == three.npa_domain_errors);
    for (const auto& [name, est] : one.criteria) {
        const auto& other = three.criteria.at(name);
        CHECK(est.count == other.count);
        CHECK(est.mean == other.mean);
    }
}

TEST_CASE("conditioning changes bookkeeping but not the accepted counts") {
    SamplerConfig cfg = small_config(200000);
    const VolumeReport cond = volume8({"nosig", "lhvm"}, cfg);
    cfg.conditioning = Conditioning::None;
    const VolumeReport uncond = volume8({"nosig", "lhvm"}, cfg);

    CHECK(cond.n_raw == uncond.n_raw);
    CHECK(cond.n_conditioned < cond.n_raw);
    CHECK(uncond.n_conditioned == uncond.n_raw);
    CHECK(cond.criteria.at("nosig").count == uncond.criteria.at("nosig").count);
    CHECK(cond.criteria.at("lhvm").count == uncond.criteria.at("lhvm").count);
}

TEST_CASE("4-space estimates land near the known constants") {
    SamplerConfig cfg = small_config(200000);
    const VolumeReport rep = volume4({"lhvm", "tb", "tlm"}, cfg);
    CHECK(rep.n_raw == 200000);
    CHECK(rep.n_conditioned == 200000);

    const double lhvm = rep.criteria.at("lhvm").mean;
    const double tb = rep.criteria.at("tb").mean;
    const double tlm = rep.criteria.at("tlm").mean;
    CHECK(rep.criteria.at("lhvm").units == "multiples_of_2^4");
    CHECK(std::abs(lhvm - 2.0 / 3.0) < 0.01);
    CHECK(std::abs(tb - (48.0 * std::sqrt(2.0) - 65.0) / 3.0) < 0.01);
    CHECK(std::abs(tlm - 3.0 * std::numbers::pi * std::numbers::pi / 32.0) < 0.01);
    CHECK(lhvm < tlm);
    CHECK(tlm < tb);
}

TEST_CASE("8-space estimates land near the polytope volumes") {
    SamplerConfig cfg = small_config(2000000);
    const VolumeReport rep = volume8({"nosig", "lhvm", "composite"}, cfg);
    CHECK(rep.criteria.at("nosig").units == "multiples_of_2^8_over_8!");
    CHECK(std::abs(rep.criteria.at("nosig").mean - 1088.0) < 25.0);
    CHECK(std::abs(rep.criteria.at("lhvm").mean - 1024.0) < 25.0);

    // Containment chain on the counts themselves.
    CHECK(rep.criteria.at("lhvm").count <= rep.criteria.at("composite").count);
    CHECK(rep.criteria.at("composite").count <= rep.criteria.at("nosig").count);
}

TEST_CASE("composite count never exceeds its factors") {
    SamplerConfig cfg = small_config(400000);
    const VolumeReport rep = volume8({"npa", "qb2", "qb3", "composite", "exceptional"}, cfg);
    const auto composite = rep.criteria.at("composite").count;
    CHECK(composite <= rep.criteria.at("npa").count);
    CHECK(composite <= rep.criteria.at("qb2").count);
    CHECK(composite <= rep.criteria.at("qb3").count);
    // exceptional points pass qb2 & qb3 but fail npa, so the two sets are
    // disjoint subsets of the (qb2 & qb3) acceptances
    CHECK(composite + rep.criteria.at("exceptional").count <=
          std::min(rep.criteria.at("qb2").count, rep.criteria.at("qb3").count));
}

TEST_CASE("exceptional_points keeps genuinely exceptional samples") {
    SamplerConfig cfg = small_config(4000000);
    const ExceptionalPoints out = exceptional_points(cfg, 64);
    CHECK(out.samples.size() <= 64);
    CHECK(out.measure.mean < 1.0);  // a sliver of the no-signaling volume

    static const SymmetryGroup group = SymmetryGroup::generate();
    static const FunctionValuedBound qb2 = FunctionValuedBound::make(QBName::QB2, group);
    static const FunctionValuedBound qb3 = FunctionValuedBound::make(QBName::QB3, group);
    for (const auto& b : out.samples) {
        CHECK(is_nosig(b));
        bool npa_ok = false;
        try {
            npa_ok = npa_satisfied(b);
        } catch (const std::domain_error&) {
            npa_ok = false;
        }
        CHECK_FALSE(npa_ok);
        CHECK(tlm_satisfied(b));
        CHECK_FALSE(fv_violated(b, qb2));
        CHECK_FALSE(fv_violated(b, qb3));
    }
}

TEST_CASE("pseudo_quantum_volume sits between the local and no-signaling volumes") {
    SamplerConfig cfg = small_config(1500000);
    const PseudoQuantumVolume out = pseudo_quantum_volume(cfg, 1.0 / std::sqrt(2.0));
    CHECK(out.lp_failures == 0);
    CHECK(out.estimate.mean > 1000.0);
    CHECK(out.estimate.mean < 1088.0);
}

TEST_CASE("input validation") {
    SamplerConfig cfg = small_config(1000);
    CHECK_THROWS_AS(volume8({"bogus"}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(volume4({"npa"}, cfg), std::invalid_argument);
    cfg.samples = 0;
    CHECK_THROWS_AS(volume8({"nosig"}, cfg), std::invalid_argument);
}
