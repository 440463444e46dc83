#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace tracelab {

// The acceptance suite.  Each criterion is an exact property (no tolerances:
// every comparison is an identity in Q(zeta) or a finite ring); quick mode
// shrinks the sampled ranges but never the per-case strictness.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::uint64_t cases = 0;
    double seconds = 0.0;
    std::string detail; // first failure, or a short summary
};

struct SelfTestReport {
    std::uint64_t seed = 0;
    bool quick = false;
    std::vector<CriterionResult> results;
    bool all_pass = false;
    double total_seconds = 0.0;

    nlohmann::ordered_json to_json(bool include_timings) const;
    // Canonical byte form used by the determinism check: no timings.
    std::string canonical_bytes() const;
};

SelfTestReport run_selftest(std::uint64_t seed, bool quick);

// Individual criteria (1-based ids matching the acceptance list).
CriterionResult criterion_fourier_inversion(std::uint64_t seed, bool quick);
CriterionResult criterion_orthogonality(std::uint64_t seed, bool quick);
CriterionResult criterion_kernel_pipeline(std::uint64_t seed, bool quick);
CriterionResult criterion_as_decomposition(std::uint64_t seed, bool quick);
CriterionResult criterion_witt_laws(std::uint64_t seed, bool quick);
CriterionResult criterion_heisenberg(std::uint64_t seed, bool quick);
CriterionResult criterion_slope_calculus(std::uint64_t seed, bool quick);
CriterionResult criterion_curve_operators(std::uint64_t seed, bool quick);
CriterionResult criterion_kappa_scaling(std::uint64_t seed, bool quick);
CriterionResult criterion_local_ft(std::uint64_t seed, bool quick);

} // namespace tracelab
