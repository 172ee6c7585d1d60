#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bell/core.hpp"
#include "bell/rng.hpp"

namespace bell {

enum class Space { Four, Eight };
enum class Conditioning { None, Nosig };

struct SamplerConfig {
    std::uint64_t seed = 20260823;
    std::uint64_t samples = 1000000;  // raw uniform draws
    Space space = Space::Eight;
    Conditioning conditioning = Conditioning::Nosig;
    int threads = 1;
    std::uint64_t chunk_size = 65536;
    double nosig_tol = kDefaultPositivityTol;
    double tol = 1e-9;                // membership tolerance
    double pseudoq_scale = 0.70710678118654752440;
};

struct VolumeEstimate {
    double mean = 0.0;
    double stderr_value = 0.0;
    std::uint64_t n_samples = 0;  // raw draws backing the estimate
    std::uint64_t count = 0;      // accepted samples
    std::string units;
};

struct VolumeReport {
    std::uint64_t n_raw = 0;
    std::uint64_t n_conditioned = 0;
    std::uint64_t lp_failures = 0;
    std::uint64_t npa_domain_errors = 0;
    double wall_seconds = 0.0;
    std::string prng = kPrngId;
    // Keyed by criterion name, insertion-ordered via map for stable output.
    std::map<std::string, VolumeEstimate> criteria;
};

// 4-space criteria: "lhvm", "tb", "tlm", "qb1".
VolumeReport volume4(const std::vector<std::string>& criteria, const SamplerConfig& cfg);

// 8-space criteria: "nosig", "lhvm", "tlm", "npa", "qb1", "qb2", "qb3",
// "composite" (npa & qb2 & qb3), "exceptional" (points the marginal-adjusted
// arcsin criterion alone rejects: !npa & tlm & qb2 & qb3), "pseudoq".
VolumeReport volume8(const std::vector<std::string>& criteria, const SamplerConfig& cfg);

struct ExceptionalPoints {
    std::vector<Behavior> samples;  // capped collection of the rejected-by-NPA-only points
    VolumeEstimate measure;
    std::uint64_t n_conditioned = 0;
};

ExceptionalPoints exceptional_points(const SamplerConfig& cfg, std::size_t max_kept = 256);

struct PseudoQuantumVolume {
    VolumeEstimate estimate;
    std::uint64_t lp_failures = 0;
    std::uint64_t n_conditioned = 0;
};

PseudoQuantumVolume pseudo_quantum_volume(const SamplerConfig& cfg, double scale);

}  // namespace bell
