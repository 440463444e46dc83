#pragma once

#include <optional>

#include "tracelab/trace_datum.hpp"

namespace tracelab {

// Fourier transform on the affine line at trace-function level.  The kernel
// convention is fixed once and for all:
//
//   (ft f)_m(t) = - sum_{x in F_{q^m}} f_m(x) * psi_m(-x t),    psi_m = psi o Tr,
//
// where psi is a fixed nontrivial additive character of F_q.  The leading
// minus is the homological shift [1]; it is never normalized away.
struct FourierConfig {
    const FFTower* tower;
    AdditiveCharacter psi; // nontrivial; ConfigError otherwise
    int levels;

    FourierConfig(const FFTower& t, AdditiveCharacter character, int level_bound)
        : tower(&t), psi(std::move(character)), levels(level_bound) {
        if (psi.trivial()) throw ConfigError("Fourier transform requires a nontrivial character");
    }

    FourierConfig with_inverse_character() const {
        return FourierConfig(*tower, psi.inverse(), levels);
    }
};

// Closed-form transform (kernel summation).
TraceDatum ft(const FourierConfig& cfg, const TraceDatum& f);

// The same functor computed by its definition: pull back to A^2, twist by the
// multiplicative pullback of the character system, push forward along the
// first projection, then shift by [1].  Independent code path from ft(); the
// two must agree exactly.
TraceDatum ft_via_pipeline(const FourierConfig& cfg, const TraceDatum& f);

struct FourierCheckReport {
    bool pass = false;
    int levels = 0;
    std::optional<int> fail_level;
    std::optional<std::uint64_t> fail_point;
    std::string detail;
};

// Verifies ft_{psi^{-1}}(ft_psi(f)) == tate_twist(f, -1), i.e. q^m * f at
// level m, as an exact identity in Q(zeta_p).
FourierCheckReport inversion_check(const FourierConfig& cfg, const TraceDatum& f);

// Verifies sum_t F(f)(t) conj(F(g)(t)) == q^m * sum_x f(x) conj(g(x)) per level.
FourierCheckReport plancherel_check(const FourierConfig& cfg, const TraceDatum& f,
                                    const TraceDatum& g);

} // namespace tracelab
