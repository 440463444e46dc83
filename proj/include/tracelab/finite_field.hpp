#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tracelab/errors.hpp"

namespace tracelab {

class FFTower;

// Element of F_{q^m} inside a tower: coefficient vector over F_p of length
// n*m against the level-m modulus.  Plain value type; all arithmetic goes
// through the owning tower.
struct FFElem {
    const FFTower* tower = nullptr;
    int level = 0;
    std::vector<std::uint32_t> c;

    bool operator==(const FFElem& o) const { return level == o.level && c == o.c; }
    bool operator!=(const FFElem& o) const { return !(*this == o); }
    bool operator<(const FFElem& o) const {
        if (level != o.level) return level < o.level;
        return c < o.c;
    }
};

// A tower of finite fields F_{p^n} = level 1 up to level M = F_{p^{nM}},
// with explicit moduli and mutually compatible embeddings between all levels
// m | m'.  Moduli default to the first monic irreducible of each degree in
// coefficient-vector order (constant term least significant), found by
// deterministic search, so towers are reproducible without external tables.
//
// Immutable after construction; elements can be shared freely across threads.
class FFTower {
  public:
    FFTower(unsigned p, unsigned n, int levels, std::uint64_t capacity = (1ull << 16));

    // Same, but with a caller-supplied modulus (coefficients of the monic
    // irreducible, constant first, without the leading 1) for each level.
    FFTower(unsigned p, unsigned n, int levels, std::vector<std::vector<std::uint32_t>> moduli,
            std::uint64_t capacity);

    unsigned p() const { return p_; }
    unsigned n() const { return n_; }
    int levels() const { return levels_; }
    std::uint64_t capacity() const { return capacity_; }
    std::uint64_t base_q() const { return ipow(p_, n_); } // q = p^n
    std::uint64_t level_size(int m) const;                // q^m

    const std::vector<std::uint32_t>& modulus(int m) const; // degree n*m, monic, lead dropped

    FFElem zero(int m) const;
    FFElem one(int m) const;
    FFElem from_int(int m, std::uint64_t value) const; // constant in the prime field
    FFElem gen(int m) const;                           // the class of x at level m
    FFElem from_coeffs(int m, std::vector<std::uint32_t> coeffs) const;

    FFElem add(const FFElem& a, const FFElem& b) const;
    FFElem sub(const FFElem& a, const FFElem& b) const;
    FFElem neg(const FFElem& a) const;
    FFElem mul(const FFElem& a, const FFElem& b) const;
    FFElem inv(const FFElem& a) const; // ArithmeticError on zero
    FFElem pow(const FFElem& a, std::uint64_t e) const;

    bool is_zero(const FFElem& a) const;
    bool is_one(const FFElem& a) const;

    // x -> x^{p^e}; e may be negative (the map has order n*m at level m).
    FFElem frobenius(const FFElem& x, long long e) const;

    // Sum of the q^{d i}-power conjugates, landing in the level-d subfield.
    FFElem rel_trace(const FFElem& x, int d) const; // DomainError unless d | level
    // Absolute trace down to F_p, returned as a residue in [0, p).
    std::uint32_t abs_trace(const FFElem& x) const;

    FFElem embed(const FFElem& x, int finer) const;   // level | finer required
    FFElem project(const FFElem& x, int coarser) const; // DomainError if not in subfield

    // Deterministic element <-> index bijection at each level (coefficient
    // vectors in lexicographic order, constant digit least significant).
    std::uint64_t index_of(const FFElem& x) const;
    FFElem element_at(int m, std::uint64_t index) const;

    // All y at the same level with y^q - y = t.
    std::vector<FFElem> artin_schreier_fiber(const FFElem& t) const;

    // Number of points of A^d at level m; CapacityError beyond the bound.
    std::uint64_t point_count(int d, int m) const;
    std::vector<FFElem> point_at(int d, int m, std::uint64_t index) const;
    std::uint64_t point_index(const std::vector<FFElem>& pt) const;
    std::vector<std::vector<FFElem>> enumerate_points(int d, int m) const;

    std::string field_label(int m) const; // e.g. "3^2"

    static std::uint64_t ipow(std::uint64_t b, unsigned e) {
        std::uint64_t r = 1;
        while (e--) r *= b;
        return r;
    }

  private:
    void check_level(int m) const;
    void check_same(const FFElem& a, const FFElem& b) const;
    void build(std::vector<std::vector<std::uint32_t>> moduli);

    // dense F_p[x] helpers against the level-m modulus
    std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b, int m) const;
    FFElem eval_poly_at(const std::vector<std::uint32_t>& coarse_coeffs, const FFElem& x) const;

    unsigned p_, n_;
    int levels_;
    std::uint64_t capacity_;
    std::vector<std::vector<std::uint32_t>> modulus_; // [m-1]: degree n*m, monic, lead dropped
    // generator images for every pair coarse | fine
    std::map<std::pair<int, int>, FFElem> emb_gen_;
    // inverse-embedding lookup: (coarse, fine) -> { fine coeffs -> coarse elem }
    std::map<std::pair<int, int>, std::map<std::vector<std::uint32_t>, FFElem>> proj_;
};

// Parses "p^n" or "p" into (p, n).
std::pair<unsigned, unsigned> parse_field_spec(const std::string& s);

} // namespace tracelab
