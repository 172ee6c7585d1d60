#include "bell/volume.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bell/known_bounds.hpp"
#include "bell/polytopes.hpp"
#include "bell/symmetry.hpp"

namespace bell {

namespace {

constexpr double kEightSpaceUnit = 40320.0;  // counts -> multiples of 2^8/8!
const double kTwoSqrtTwo = 2.0 * std::sqrt(2.0);

enum CriterionId {
    kNosig,
    kLhvm,
    kTb,
    kTlm,
    kNpa,
    kQb1,
    kQb2,
    kQb3,
    kComposite,
    kExceptional,
    kPseudoq,
    kNumCriteria
};

CriterionId criterion_from_name(const std::string& name) {
    if (name == "nosig") return kNosig;
    if (name == "lhvm") return kLhvm;
    if (name == "tb") return kTb;
    if (name == "tlm") return kTlm;
    if (name == "npa") return kNpa;
    if (name == "qb1") return kQb1;
    if (name == "qb2") return kQb2;
    if (name == "qb3") return kQb3;
    if (name == "composite") return kComposite;
    if (name == "exceptional") return kExceptional;
    if (name == "pseudoq") return kPseudoq;
    throw std::invalid_argument("unknown volume criterion: " + name);
}

struct SharedTables {
    SymmetryGroup group = SymmetryGroup::generate();
    FunctionValuedBound qb1 = FunctionValuedBound::make(QBName::QB1, group);
    FunctionValuedBound qb2 = FunctionValuedBound::make(QBName::QB2, group);
    FunctionValuedBound qb3 = FunctionValuedBound::make(QBName::QB3, group);
};

const SharedTables& shared_tables() {
    static const SharedTables tables;
    return tables;
}

struct Accumulator {
    std::uint64_t n_raw = 0;
    std::uint64_t n_conditioned = 0;
    std::uint64_t lp_failures = 0;
    std::uint64_t npa_domain_errors = 0;
    std::array<std::uint64_t, kNumCriteria> counts{};
    std::vector<Behavior> kept;  // exceptional points, in chunk order

    void merge(const Accumulator& o) {
        n_raw += o.n_raw;
        n_conditioned += o.n_conditioned;
        lp_failures += o.lp_failures;
        npa_domain_errors += o.npa_domain_errors;
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
        kept.insert(kept.end(), o.kept.begin(), o.kept.end());
    }
};

double max_chsh(const Behavior& b) {
    const double e00 = b[4], e10 = b[5], e01 = b[6], e11 = b[7];
    double best = -8.0;
    for (int mask = 0; mask < 16; ++mask) {
        const double s0 = (mask & 1) ? -1.0 : 1.0;
        const double s1 = (mask & 2) ? -1.0 : 1.0;
        const double s2 = (mask & 4) ? -1.0 : 1.0;
        const double s3 = (mask & 8) ? -1.0 : 1.0;
        if (s0 * s1 * s2 * s3 > 0) continue;
        best = std::max(best, s0 * e00 + s1 * e10 + s2 * e01 + s3 * e11);
    }
    return best;
}

struct RunPlan {
    std::vector<CriterionId> requested;
    std::array<bool, kNumCriteria> need{};
    bool keep_exceptional = false;
    std::size_t max_kept = 0;
};

RunPlan make_plan(const std::vector<std::string>& names) {
    RunPlan plan;
    for (const auto& n : names) {
        const CriterionId id = criterion_from_name(n);
        plan.requested.push_back(id);
        plan.need[id] = true;
    }
    if (plan.need[kComposite] || plan.need[kExceptional]) {
        plan.need[kNpa] = plan.need[kQb2] = plan.need[kQb3] = true;
    }
    if (plan.need[kExceptional]) plan.need[kTlm] = true;
    return plan;
}

// Evaluates the requested criteria on one NOSIG-valid 8-space sample. LHVM
// membership implies membership in every quantum-side criterion (the local
// polytope sits inside each bound), so local points short-circuit the
// expensive orbit scans. flags[] is indexed by CriterionId.
void evaluate8(const Behavior& b, const RunPlan& plan, const SamplerConfig& cfg,
               const Polytope& pseudoq, Accumulator& acc,
               std::array<bool, kNumCriteria>& flags) {
    const SharedTables& tab = shared_tables();
    const bool local = lhvm_member_fast(b, cfg.tol);
    flags[kNosig] = true;
    flags[kLhvm] = local;
    if (plan.need[kTb]) flags[kTb] = max_chsh(b) <= kTwoSqrtTwo + cfg.tol;
    if (plan.need[kTlm]) flags[kTlm] = local || tlm_satisfied(b, cfg.tol);
    if (plan.need[kNpa]) {
        if (local) {
            flags[kNpa] = true;
        } else {
            try {
                flags[kNpa] = npa_satisfied(b, cfg.tol);
            } catch (const std::domain_error&) {
                ++acc.npa_domain_errors;
                flags[kNpa] = false;
            }
        }
    }
    if (plan.need[kQb1]) flags[kQb1] = local || !fv_violated(b, tab.qb1, cfg.tol);
    if (plan.need[kQb2]) flags[kQb2] = local || !fv_violated(b, tab.qb2, cfg.tol);
    if (plan.need[kQb3]) flags[kQb3] = local || !fv_violated(b, tab.qb3, cfg.tol);
    if (plan.need[kComposite]) flags[kComposite] = flags[kNpa] && flags[kQb2] && flags[kQb3];
    // "Exceptional" points are those only the marginal-adjusted arcsin
    // criterion catches; points whose correlators alone are already
    // non-quantum (TLM-rejected) don't need it.
    if (plan.need[kExceptional])
        flags[kExceptional] =
            !flags[kNpa] && flags[kTlm] && flags[kQb2] && flags[kQb3];
    if (plan.need[kPseudoq]) {
        if (local) {
            flags[kPseudoq] = true;
        } else {
            switch (polytope_member(pseudoq, b, cfg.tol)) {
                case Membership::Member: flags[kPseudoq] = true; break;
                case Membership::NotMember: flags[kPseudoq] = false; break;
                default:
                    ++acc.lp_failures;
                    flags[kPseudoq] = false;
                    break;
            }
        }
    }
}

void evaluate4(const Behavior& b, const RunPlan& plan, const SamplerConfig& cfg,
               std::array<bool, kNumCriteria>& flags) {
    const SharedTables& tab = shared_tables();
    const double chsh = max_chsh(b);
    const bool local = chsh <= 2.0 + cfg.tol;
    flags[kLhvm] = local;
    if (plan.need[kTb]) flags[kTb] = chsh <= kTwoSqrtTwo + cfg.tol;
    if (plan.need[kTlm]) flags[kTlm] = local || tlm_satisfied(b, cfg.tol);
    if (plan.need[kQb1]) flags[kQb1] = local || !fv_violated(b, tab.qb1, cfg.tol);
}

Accumulator run_chunks(const std::vector<std::string>& names, const SamplerConfig& cfg,
                       std::size_t max_kept) {
    const RunPlan base_plan = [&] {
        RunPlan p = make_plan(names);
        p.max_kept = max_kept;
        p.keep_exceptional = max_kept > 0 && p.need[kExceptional];
        return p;
    }();
    if (cfg.chunk_size == 0) throw std::invalid_argument("chunk_size must be > 0");
    if (cfg.samples == 0) throw std::invalid_argument("samples must be > 0");

    const Polytope pseudoq = base_plan.need[kPseudoq]
                                 ? pseudo_quantum_polytope(cfg.pseudoq_scale)
                                 : Polytope{};
    shared_tables();  // build orbit tables before workers start

    const std::uint64_t n_chunks = (cfg.samples + cfg.chunk_size - 1) / cfg.chunk_size;
    const bool four = cfg.space == Space::Four;
    const bool conditioned = !four && cfg.conditioning == Conditioning::Nosig;

    auto process_chunk = [&](std::uint64_t chunk, Accumulator& acc) {
        Xoshiro256pp rng(cfg.seed, chunk);
        const std::uint64_t begin = chunk * cfg.chunk_size;
        const std::uint64_t end = std::min(begin + cfg.chunk_size, cfg.samples);
        std::array<bool, kNumCriteria> flags{};
        for (std::uint64_t i = begin; i < end; ++i) {
            Behavior b;
            if (four) {
                b.v = {0, 0, 0, 0, rng.next_symmetric(), rng.next_symmetric(),
                       rng.next_symmetric(), rng.next_symmetric()};
            } else {
                for (auto& x : b.v) x = rng.next_symmetric();
            }
            ++acc.n_raw;
            if (four) {
                ++acc.n_conditioned;
                flags.fill(false);
                evaluate4(b, base_plan, cfg, flags);
            } else {
                const bool valid = is_nosig(b, cfg.nosig_tol);
                if (conditioned && !valid) continue;
                ++acc.n_conditioned;
                flags.fill(false);
                if (valid) evaluate8(b, base_plan, cfg, pseudoq, acc, flags);
                // Invalid (unconditioned) samples fail every criterion.
            }
            for (int id = 0; id < kNumCriteria; ++id)
                if (flags[id]) ++acc.counts[id];
            if (base_plan.keep_exceptional && flags[kExceptional] &&
                acc.kept.size() < base_plan.max_kept)
                acc.kept.push_back(b);
        }
    };

    const int threads = std::max(1, cfg.threads);
    if (threads == 1 || n_chunks == 1) {
        Accumulator acc;
        for (std::uint64_t chunk = 0; chunk < n_chunks; ++chunk) process_chunk(chunk, acc);
        return acc;
    }

    // Chunk results are integer counters merged in chunk order, so the totals
    // are identical for any worker count.
    std::vector<Accumulator> per_chunk(n_chunks);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t chunk = next.fetch_add(1);
                if (chunk >= n_chunks) return;
                process_chunk(chunk, per_chunk[chunk]);
            }
        });
    }
    for (auto& th : pool) th.join();
    Accumulator acc;
    for (const auto& c : per_chunk) acc.merge(c);
    if (acc.kept.size() > max_kept) acc.kept.resize(max_kept);
    return acc;
}

VolumeEstimate make_estimate(std::uint64_t count, std::uint64_t n_raw, Space space) {
    VolumeEstimate est;
    est.count = count;
    est.n_samples = n_raw;
    const double p = n_raw > 0 ? double(count) / double(n_raw) : 0.0;
    const double se = n_raw > 0 ? std::sqrt(std::max(p * (1.0 - p), 0.0) / double(n_raw)) : 0.0;
    if (space == Space::Four) {
        est.mean = p;
        est.stderr_value = se;
        est.units = "multiples_of_2^4";
    } else {
        est.mean = p * kEightSpaceUnit;
        est.stderr_value = se * kEightSpaceUnit;
        est.units = "multiples_of_2^8_over_8!";
    }
    return est;
}

VolumeReport run_report(const std::vector<std::string>& names, const SamplerConfig& cfg,
                        std::size_t max_kept, std::vector<Behavior>* kept_out) {
    const auto t0 = std::chrono::steady_clock::now();
    Accumulator acc = run_chunks(names, cfg, max_kept);
    VolumeReport rep;
    rep.n_raw = acc.n_raw;
    rep.n_conditioned = acc.n_conditioned;
    rep.lp_failures = acc.lp_failures;
    rep.npa_domain_errors = acc.npa_domain_errors;
    for (const auto& name : names) {
        const CriterionId id = criterion_from_name(name);
        rep.criteria[name] = make_estimate(acc.counts[id], acc.n_raw, cfg.space);
    }
    if (kept_out) *kept_out = std::move(acc.kept);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

VolumeReport volume4(const std::vector<std::string>& criteria, const SamplerConfig& cfg) {
    SamplerConfig c = cfg;
    c.space = Space::Four;
    for (const auto& n : criteria) {
        const CriterionId id = criterion_from_name(n);
        if (id != kLhvm && id != kTb && id != kTlm && id != kQb1)
            throw std::invalid_argument("volume4: criterion '" + n +
                                        "' needs marginals (8-space only)");
    }
    return run_report(criteria, c, 0, nullptr);
}

VolumeReport volume8(const std::vector<std::string>& criteria, const SamplerConfig& cfg) {
    SamplerConfig c = cfg;
    c.space = Space::Eight;
    return run_report(criteria, c, 0, nullptr);
}

ExceptionalPoints exceptional_points(const SamplerConfig& cfg, std::size_t max_kept) {
    SamplerConfig c = cfg;
    c.space = Space::Eight;
    c.conditioning = Conditioning::Nosig;
    ExceptionalPoints out;
    VolumeReport rep = run_report({"exceptional"}, c, max_kept, &out.samples);
    out.measure = rep.criteria.at("exceptional");
    out.n_conditioned = rep.n_conditioned;
    return out;
}

PseudoQuantumVolume pseudo_quantum_volume(const SamplerConfig& cfg, double scale) {
    SamplerConfig c = cfg;
    c.space = Space::Eight;
    c.conditioning = Conditioning::Nosig;
    c.pseudoq_scale = scale;
    PseudoQuantumVolume out;
    VolumeReport rep = run_report({"pseudoq"}, c, 0, nullptr);
    out.estimate = rep.criteria.at("pseudoq");
    out.lp_failures = rep.lp_failures;
    out.n_conditioned = rep.n_conditioned;
    return out;
}

}  // namespace bell
