#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/cyclotomic.hpp"
#include "tracelab/finite_field.hpp"

namespace tracelab {

// Finite quotient G = pi^{-N} O / pi^{M} O of the local field E, carrying a
// self-duality pairing and the exact Fourier transform on functions G -> Q(zeta).
//
// Two digit models share the interface:
//   - equal characteristic (default): E = F_q((pi)); addition is digitwise,
//     and the pairing reads the F_q digit of x*y at pi^{M-N-1} through the
//     trace to F_p.
//   - Qp mode: E = Q_p with q = p; the quotient is cyclic and the pairing is
//     zeta_{p^{N+M}}^{a_x a_y} on integer representatives.
//
// The standard character is the conductor-zero one (trivial on O, nontrivial
// on pi^{-1} O when N >= 1).  The pairing used by the transform shifts the
// conductor by M - N so that it is well defined and perfect on any window;
// the shift is reported as metadata and vanishes exactly on symmetric windows.
class LocalQuotient {
  public:
    enum class Mode { EqualChar, Qp };

    LocalQuotient(const FFTower& tower, int n_neg, int m_pos, Mode mode = Mode::EqualChar);

    const FFTower& tower() const { return *tower_; }
    Mode mode() const { return mode_; }
    int window_n() const { return n_; }
    int window_m() const { return m_; }
    int conductor_shift() const { return m_ - n_; }
    std::uint64_t size() const { return size_; }

    unsigned p() const { return tower_->p(); }
    // Order of the cyclotomic field carrying all values for this quotient.
    unsigned zeta_k() const;

    // Elements are indices in [0, size).
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;

    // Digit of an element at pi-exponent in [-N, M).
    std::uint64_t digit(std::uint64_t a, int pi_exp) const; // index into F_q / Z p-digit
    std::uint64_t from_digit(int pi_exp, std::uint64_t value) const;

    CycNum standard_character(std::uint64_t a) const;
    // Perfect pairing <a, b> = psi_w(a b) with the window-adapted conductor.
    CycNum pair(std::uint64_t a, std::uint64_t b) const;
    // Zeta exponent of the pairing; pair(a,b) == zeta_by_exp(pair_exponent(a,b)).
    std::uint64_t pair_exponent(std::uint64_t a, std::uint64_t b) const;
    const CycNum& zeta_by_exp(std::uint64_t e) const { return zeta_pow_[e % zeta_pow_.size()]; }

    std::string describe() const;

  private:
    const FFTower* tower_;
    Mode mode_;
    int n_, m_;
    std::uint64_t size_;
    std::vector<CycNum> zeta_pow_; // zeta^{0..ord-1} for the value order
};

// Function on the quotient with exact cyclotomic values.
struct QFun {
    const LocalQuotient* group = nullptr;
    std::vector<CycNum> values;

    static QFun zero(const LocalQuotient& g);
    static QFun delta(const LocalQuotient& g, std::uint64_t at);
    static QFun constant(const LocalQuotient& g, const CycNum& v);

    bool operator==(const QFun& o) const { return values == o.values; }
};

// F(f)(y) = sum_x f(x) <x, y>.
QFun local_ft(const QFun& f);

struct LocalDualityReport {
    std::uint64_t size = 0;
    int conductor_shift = 0;
    bool pairing_perfect = false;        // x -> <x, -> is injective
    bool double_transform_reflects = false; // F(F(f)) = |G| f(-x) on a probe
    bool transform_invertible = false;   // consequence recorded explicitly
};

LocalDualityReport duality_report(const LocalQuotient& g);

} // namespace tracelab
