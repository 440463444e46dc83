#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/cyclotomic.hpp"
#include "tracelab/finite_field.hpp"

namespace tracelab {

// Sparse multivariate polynomial with integer coefficients, exponent vectors
// as keys.  Just enough arithmetic to solve and evaluate the universal Witt
// laws; deterministic iteration order via std::map.
class ZPoly {
  public:
    using Key = std::vector<std::uint32_t>;

    explicit ZPoly(int nvars) : nvars_(nvars) {}

    static ZPoly variable(int nvars, int index);
    static ZPoly constant(int nvars, Int c);

    int nvars() const { return nvars_; }
    const std::map<Key, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Int& s) const;
    ZPoly pow(unsigned e) const;

    // Exact division by an integer; throws DomainError if any coefficient
    // fails to divide (the Witt-law integrality check).
    ZPoly div_exact(const Int& d) const;

    bool operator==(const ZPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    Int eval_int(const std::vector<Int>& point) const;
    FFElem eval_ff(const FFTower& tower, const std::vector<FFElem>& point) const;

    void add_term(Key k, Int c);

  private:
    int nvars_;
    std::map<Key, Int> terms_;
};

// Universal p-typical Witt laws of length n: polynomials S_i, P_i, N_i in the
// components of one or two vectors such that the ghost map
//
//   gh_i(a) = a_0^{p^i} + p a_1^{p^{i-1}} + ... + p^i a_i
//
// turns S into coordinatewise sum, P into product, and N into negation.  The
// laws are solved once per (p, n) from the ghost equations over Q, verified to
// be integral and to satisfy the ghost identities symbolically, and cached.
class WittLaw {
  public:
    WittLaw(unsigned p, unsigned n);

    unsigned p() const { return p_; }
    unsigned n() const { return n_; }

    const std::vector<ZPoly>& sum() const { return sum_; }   // 2n variables
    const std::vector<ZPoly>& prod() const { return prod_; } // 2n variables
    const std::vector<ZPoly>& negation() const { return neg_; } // n variables

    // Ghost components of an integer vector (test-mode oracle entry point).
    std::vector<Int> ghost(const std::vector<Int>& comps) const;

    // Process-wide single-flight cache; also persists to dir (or the
    // TRACELAB_CACHE environment variable) as JSON when available.
    static const WittLaw& get(unsigned p, unsigned n);
    static void set_cache_dir(const std::string& dir); // empty = env or none

    std::string to_json() const;
    static WittLaw from_json(const std::string& text);

    // Re-derives the ghost identities from the stored polynomials; throws
    // DomainError when anything fails.  Runs at construction and on cache load.
    void verify() const;

  private:
    WittLaw() = default;

    unsigned p_ = 0, n_ = 0;
    std::vector<ZPoly> sum_, prod_, neg_;
};

// Truncated Witt vector over F_{p^m}: components at level m of a prime tower.
class WittVec {
  public:
    WittVec(const WittLaw& law, const FFTower& tower, std::vector<FFElem> comps);

    static WittVec zero(const WittLaw& law, const FFTower& tower, int level);
    static WittVec one(const WittLaw& law, const FFTower& tower, int level);
    static WittVec teichmuller(const WittLaw& law, const FFTower& tower, const FFElem& a);
    // k * 1 by repeated addition (used for the Z/p^n identification).
    static WittVec from_integer(const WittLaw& law, const FFTower& tower, int level,
                                std::uint64_t k);

    const WittLaw& law() const { return *law_; }
    const FFTower& tower() const { return *tower_; }
    int level() const { return level_; }
    const std::vector<FFElem>& comps() const { return comps_; }

    WittVec operator+(const WittVec& o) const;
    WittVec operator*(const WittVec& o) const;
    WittVec operator-() const;
    WittVec operator-(const WittVec& o) const { return *this + (-o); }

    // Witt Frobenius: componentwise p-th power over a perfect base.  The
    // q-power operator used over F_q = F_{p^e} is frobenius(e).
    WittVec frobenius(unsigned e = 1) const;
    WittVec verschiebung() const;

    bool is_zero() const;
    bool operator==(const WittVec& o) const;
    bool operator!=(const WittVec& o) const { return !(*this == o); }
    bool operator<(const WittVec& o) const { return comps_ < o.comps_; }

    // True when every component lies in the prime field.
    bool prime_field_components() const;

    std::string to_string() const;

  private:
    const WittLaw* law_;
    const FFTower* tower_;
    int level_;
    std::vector<FFElem> comps_;
};

// ker(F - id) on W_n(F_{p^m}) by enumeration.
struct WittKernelReport {
    unsigned p = 0, n = 0;
    int level = 0;
    std::uint64_t total = 0;          // p^{nm}
    std::uint64_t kernel_size = 0;    // must be p^n
    std::uint64_t image_size = 0;     // of F - id
    std::uint64_t cokernel_size = 0;  // total / image_size
    bool kernel_is_prime_field = false;
    bool kernel_cyclic = false;       // generated by [1]
    bool pass = false;
};

WittKernelReport witt_kernel_report(unsigned p, unsigned n, int level,
                                    std::uint64_t capacity = (1ull << 16));

// <a, b> = Tr_W(a * b) with Tr_W = sum of F^i over i < m, valued in
// W_n(F_p) identified with Z/p^n via k <-> k * 1.
std::uint64_t theta_pairing(const WittVec& a, const WittVec& b);

struct ThetaReport {
    unsigned p = 0, n = 0;
    int level = 0;
    bool nondegenerate = false;
    bool biadditive_sampled = false;
    std::uint64_t radical_size = 0; // 1 when perfect
};

ThetaReport theta_nondegeneracy_report(unsigned p, unsigned n, int level,
                                       std::uint64_t capacity = (1ull << 16));

} // namespace tracelab
