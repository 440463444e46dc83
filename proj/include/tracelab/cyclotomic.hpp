#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

using Int = mpz_class;
using Rat = mpq_class;

// Exact element of the cyclotomic field Q(zeta_N) for a prime-power order
// N = p^k.  The value is stored as the canonical residue modulo the N-th
// cyclotomic polynomial
//
//   Phi_{p^k}(x) = 1 + x^{p^{k-1}} + x^{2 p^{k-1}} + ... + x^{(p-1) p^{k-1}},
//
// i.e. a rational coefficient vector of length phi(N) = (p-1) p^{k-1} in
// degree order.  Coefficients are kept in lowest terms with positive
// denominators (mpq_class canonical form), so equality of values is plain
// coefficient equality and every check in this library is an exact identity.
//
// Orders with the same p lift into each other via zeta_{p^k} = zeta_{p^K}^{p^{K-k}}.
// Values that are plain rationals lift into any order.  Anything else with
// mismatched characteristic is refused.
class CycNum {
  public:
    // Zero of Q(zeta_2) = Q.
    CycNum() : p_(2), k_(1), coeffs_(1, Rat(0)) {}

    // Rational constant embedded in Q(zeta_{p^k}).
    CycNum(const Rat& value, unsigned p, unsigned k = 1);

    // From a polynomial in zeta of arbitrary degree; reduced mod Phi_{p^k}.
    static CycNum from_poly(std::vector<Rat> poly, unsigned p, unsigned k);

    // zeta_N^j for N = p^k (j may be negative).
    static CycNum root_of_unity(unsigned p, unsigned k, long long j);

    // Validates that n is a prime power p^k with k >= 1 and returns zeta_n^j.
    static CycNum make_root_of_unity(unsigned long long n, long long j);

    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    unsigned long long order() const; // N = p^k
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;          // all non-constant coefficients vanish
    Rat rational_value() const;        // requires is_rational()

    CycNum operator-() const;
    CycNum operator+(const CycNum& o) const;
    CycNum operator-(const CycNum& o) const;
    CycNum operator*(const CycNum& o) const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);

    CycNum operator*(const Rat& s) const;
    CycNum operator/(const CycNum& o) const; // ArithmeticError on zero divisor

    CycNum inv() const;                // ArithmeticError on zero
    CycNum pow(long long e) const;     // negative exponents via inv()
    CycNum conj() const;               // field automorphism zeta -> zeta^{-1}

    // Re-express at order p^{k2} (k2 >= k) of the same p.
    CycNum lifted(unsigned k2) const;

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    // Multiplicative order if the value is a root of unity (bounded search up
    // to 2N), 0 otherwise.  Used by tests.
    unsigned long long mult_order() const;

    std::string to_string() const; // display form, e.g. "2*z9^3 - 1/2"

  private:
    CycNum(unsigned p, unsigned k, std::vector<Rat> coeffs)
        : p_(p), k_(k), coeffs_(std::move(coeffs)) {}

    // Brings two operands to a common order; throws DomainError when the
    // characteristics genuinely differ.
    static void align(CycNum& a, CycNum& b);

    unsigned p_;
    unsigned k_;
    std::vector<Rat> coeffs_; // length phi(p^k), canonical residue mod Phi
};

inline CycNum operator*(const Rat& s, const CycNum& a) { return a * s; }

unsigned long long euler_phi_prime_power(unsigned p, unsigned k);

// Decomposes n as p^k; returns false if n is not a prime power (or n < 2).
bool prime_power_decompose(unsigned long long n, unsigned& p, unsigned& k);

} // namespace tracelab
