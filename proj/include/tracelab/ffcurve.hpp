#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/cyclotomic.hpp" // Int / Rat
#include "tracelab/finite_field.hpp"

namespace tracelab {

// Truncated model of the equal-characteristic curve rings: pi-power series
// whose coefficients are finite F_q-combinations of t^alpha with exponents in
// Z[1/p].  phi is the q-power Frobenius on coefficients (t-exponents scale by
// q, pi is fixed).  Precision is explicit: a LaurentApprox knows the pi-degree
// from which its terms are unknown, and every operation propagates it.

struct CurveConfig {
    const FFTower* tower;      // coefficient field F_q at level 1
    unsigned denom_budget = 24;     // exponent denominators bounded by p^denom_budget
    long long pi_prec = 16;         // default working pi-precision
    std::optional<Rat> t_prec;      // optional bound on t-exponents (error when crossed)
};

// Finite sum  sum_alpha c_alpha t^alpha, c_alpha in F_q, alpha in Z[1/p].
class PerfCoeff {
  public:
    explicit PerfCoeff(const CurveConfig& cfg) : cfg_(&cfg) {}

    static PerfCoeff zero(const CurveConfig& cfg) { return PerfCoeff(cfg); }
    static PerfCoeff monomial(const CurveConfig& cfg, const Rat& exp, const FFElem& c);
    static PerfCoeff t_power(const CurveConfig& cfg, const Rat& exp); // coefficient 1
    static PerfCoeff constant(const CurveConfig& cfg, const FFElem& c);

    const CurveConfig& config() const { return *cfg_; }
    const std::map<Rat, FFElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // All exponents strictly positive (the topologically nilpotent condition).
    bool nilpotent() const;

    PerfCoeff operator+(const PerfCoeff& o) const;
    PerfCoeff operator-(const PerfCoeff& o) const;
    PerfCoeff operator*(const PerfCoeff& o) const;

    // q^e-power Frobenius: exponents scale by q^e; PrecisionError if a
    // denominator leaves the budget (negative e takes q-th roots).
    PerfCoeff frobenius(long long e) const;

    bool operator==(const PerfCoeff& o) const { return terms_ == o.terms_; }
    bool operator!=(const PerfCoeff& o) const { return !(*this == o); }

    std::string to_string() const;

    void add_term(const Rat& exp, const FFElem& c); // checks budgets

  private:
    const CurveConfig* cfg_;
    std::map<Rat, FFElem> terms_;
};

enum class Region { Unspecified, B01InvPi, B11, B1Inf, B1Q };

// Region tags are advisory: they record which ring a series is meant to live
// in and combine to the common overlap; no adic geometry is modeled.
Region combine_regions(Region a, Region b);
std::string region_name(Region r);

class LaurentApprox {
  public:
    LaurentApprox(const CurveConfig& cfg, long long prec, Region region = Region::Unspecified)
        : cfg_(&cfg), prec_(prec), region_(region) {}

    static LaurentApprox zero(const CurveConfig& cfg, long long prec);
    static LaurentApprox monomial(const CurveConfig& cfg, long long pi_deg, PerfCoeff c,
                                  long long prec, Region region = Region::Unspecified);

    const CurveConfig& config() const { return *cfg_; }
    long long precision() const { return prec_; }
    Region region() const { return region_; }
    void set_region(Region r) { region_ = r; }
    const std::map<long long, PerfCoeff>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<long long> valuation() const; // lowest pi-degree, if nonzero

    PerfCoeff coeff(long long pi_deg) const;
    void set_coeff(long long pi_deg, PerfCoeff c); // drops degrees >= precision

    LaurentApprox operator+(const LaurentApprox& o) const;
    LaurentApprox operator-(const LaurentApprox& o) const;
    LaurentApprox operator*(const LaurentApprox& o) const;
    LaurentApprox shifted(long long pi_power) const; // multiply by pi^k

    bool operator==(const LaurentApprox& o) const; // same terms and precision
    bool equal_to_precision(const LaurentApprox& o, long long prec) const;
    LaurentApprox truncated(long long prec) const;

    std::string to_string() const;

  private:
    const CurveConfig* cfg_;
    long long prec_;
    Region region_;
    std::map<long long, PerfCoeff> terms_;
};

// Coefficient-wise q^e Frobenius; pi-degrees and precision unchanged.
LaurentApprox phi(const LaurentApprox& f, long long e = 1);

// phi(x) - pi^twist * x for any nonzero integer twist.
LaurentApprox apply_phi_pi(const LaurentApprox& x, long long twist);

// The inverse series on the [0,1]-side:
//   g(f) = phi^{-1}(f) + pi^n phi^{-2}(f) + pi^{2n} phi^{-3}(f) + ...
// truncated to K terms.  Satisfies (phi - pi^n) g_K(f) = f - pi^{Kn} phi^{-K}(f).
LaurentApprox g_series(const LaurentApprox& f, unsigned n, unsigned k);

// The inverse series on the [1,inf]-side, for nilpotent coefficients:
//   g'(h) = -pi^n h - pi^{2n} phi(h) - pi^{3n} phi^2(h) - ...
// As printed this inverts the mirror twist: (phi - pi^{-n}) g'_K(h) =
// h - pi^{Kn} phi^K(h), equivalently (pi^n phi - id) g'_K(h) = pi^n h -
// pi^{(K+1)n} phi^K(h).  Both identities are exact and tested; see the module
// notes on the O(n)/O(-n) labeling choice.
LaurentApprox g_prime_series(const LaurentApprox& h, unsigned n, unsigned k);

struct SolveResult {
    LaurentApprox preimage;
    LaurentApprox part_f; // routed through the [0,1][1/pi] series
    LaurentApprox part_h; // the nilpotent positive-degree part of the target
    unsigned terms_used = 0;
};

// Preimage of target under phi - pi^twist, valid up to the stated precision.
// Positive twists run both split parts through the g-series (the formally
// convergent inverse for that sign); negative twists require a nilpotent
// target and use the g'-series.  PrecisionError when the target cannot be
// split or the budget runs out.
SolveResult solve_phi_pi(const LaurentApprox& target, long long twist, unsigned k);

// Sections of the slope-n twist on the H^0 side: series sum r_i pi^i with
// r_{i+n} = phi(r_i) and the first n coefficients free (and nilpotent).
// Returns one basis section per seed slot: section j has r_j = seeds[j] and
// the other free slots zero.
std::vector<LaurentApprox> h0_basis(const CurveConfig& cfg, unsigned n,
                                    const std::vector<PerfCoeff>& seeds);

// Window proof that the slope-n recurrence with n < 0 has no nonzero section
// supported in pi-degrees [0, window).
struct H0NegativeReport {
    long long n = 0;
    long long window = 0;
    bool no_nonzero_section = false;
    // one forcing chain per candidate bottom index: the indices whose
    // coefficients are forced to vanish starting from that bottom.
    std::vector<std::vector<long long>> forcing_chains;
};

H0NegativeReport h0_negative_check(long long n, long long window);

// A rank-1 point of the punctured disc remembered through the two radii
// |t| and |pi| in (0, 1), stored exactly as negated rational logarithms.
struct RadiusPoint {
    Rat neg_log_t;  // -log|t|  > 0
    Rat neg_log_pi; // -log|pi| > 0
};

RadiusPoint make_radius_point(const Rat& neg_log_t, const Rat& neg_log_pi); // validates
Rat kappa(const RadiusPoint& x);              // log|t| / log|pi|
RadiusPoint phi_radius(const RadiusPoint& x, unsigned q); // |t| -> |t|^q

// Parses sums of monomials like "t + 2*t^(1/2)*pi^3 - pi^2"; 'g' denotes the
// multiplicative generator of F_q, exponents are integers or (a/b).
LaurentApprox parse_series(const CurveConfig& cfg, const std::string& text, long long prec);

} // namespace tracelab
