#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/cyclotomic.hpp"
#include "tracelab/finite_field.hpp"

namespace tracelab {

// Additive character of F_q, its twists, and its lift to every extension
// level by composing with the relative trace:
//
//   psi_{u,a}(x) = zeta_p ^ { u * Tr_{F_{q^m}/F_p}(a x) },   a in F_q, u in F_p^*.
//
// The "arithmetic" flavor returns that value; the "geometric" flavor returns
// its conjugate (the trace of the inverse Frobenius on the rank-1 system).
// psi is trivial iff a = 0.
class AdditiveCharacter {
  public:
    enum class Flavor { Arithmetic, Geometric };

    AdditiveCharacter(const FFTower& tower, FFElem twist, unsigned u = 1,
                      Flavor flavor = Flavor::Arithmetic);

    static AdditiveCharacter standard(const FFTower& tower, std::uint64_t a = 1, unsigned u = 1,
                                      Flavor flavor = Flavor::Arithmetic);

    const FFTower& tower() const { return *tower_; }
    const FFElem& twist() const { return a_; }
    unsigned exponent() const { return u_; }
    Flavor flavor() const { return flavor_; }
    bool trivial() const;

    AdditiveCharacter inverse() const;     // psi -> psi^{-1} (u -> -u)
    AdditiveCharacter conjugate_flavor() const;
    AdditiveCharacter retwisted(const FFElem& a) const;

    // Value at a point of any level of the tower.
    CycNum eval(const FFElem& x) const;

    // Plain zeta_p^{u t} lookup for t in [0, p).
    const CycNum& zeta_power(std::uint32_t t) const;

  private:
    const FFTower* tower_;
    FFElem a_; // level-1 twist
    unsigned u_;
    Flavor flavor_;
    std::vector<CycNum> zeta_; // zeta_p^0 .. zeta_p^{p-1}
};

// Polynomial point map A^din -> A^dout defined over F_q (level-1 coefficients),
// evaluated at any level by embedding the coefficients.  Because the
// coefficients live in F_q, the map commutes with the Frobenius on points.
class PointMap {
  public:
    struct Term {
        std::vector<std::uint32_t> exponents; // one per input variable
        FFElem coeff;                         // level 1
    };
    using Coord = std::vector<Term>;

    PointMap(const FFTower& tower, int dim_in, std::vector<Coord> coords);

    static PointMap identity(const FFTower& t, int dim);
    static PointMap projection(const FFTower& t, int dim_in, int index);
    static PointMap scale(const FFTower& t, const FFElem& a);       // x -> a x on A^1
    static PointMap translate(const FFTower& t, const FFElem& c);   // x -> x + c on A^1
    static PointMap power(const FFTower& t, unsigned k);            // x -> x^k on A^1
    static PointMap multiply(const FFTower& t);                     // (x, y) -> x y
    static PointMap to_point(const FFTower& t, int dim_in);         // A^d -> A^0

    int dim_in() const { return dim_in_; }
    int dim_out() const { return static_cast<int>(coords_.size()); }

    std::vector<FFElem> apply(const std::vector<FFElem>& x) const;

  private:
    const FFTower* tower_;
    int dim_in_;
    std::vector<Coord> coords_;
};

// A trace-function family on A^d: one exact Q(zeta_{p^k})-valued function on
// the F_{q^m}-points for every level m <= M, stored densely in point-index
// order.  This is the function-level shadow on which all sheaf operations
// below act.
class TraceDatum {
  public:
    TraceDatum(const FFTower& tower, int dim, int level_bound);

    static TraceDatum constant(const FFTower& t, int dim, int levels, const CycNum& value);
    static TraceDatum zero(const FFTower& t, int dim, int levels);
    // Indicator of a level-1 rational point, embedded at every level.
    static TraceDatum delta(const FFTower& t, int levels, const FFElem& at);
    // The datum of the rank-1 character system: level-m value at x is
    // psi(Tr_{F_{q^m}/F_q}(a x)) in the requested flavor (geometric returns
    // conjugates, which is the convention the Fourier pipeline consumes).
    static TraceDatum character(const AdditiveCharacter& psi, int levels);
    // Generic builder (used by tests and import).
    static TraceDatum build(const FFTower& t, int dim, int levels,
                            const std::function<CycNum(int, const std::vector<FFElem>&)>& f);

    const FFTower& tower() const { return *tower_; }
    int dim() const { return dim_; }
    int levels() const { return levels_; }

    const CycNum& value(int m, std::uint64_t point_index) const;
    CycNum& value(int m, std::uint64_t point_index);
    const CycNum& value_at(int m, const std::vector<FFElem>& pt) const;
    std::uint64_t points(int m) const;

    bool operator==(const TraceDatum& o) const;
    bool operator!=(const TraceDatum& o) const { return !(*this == o); }

    TraceDatum operator+(const TraceDatum& o) const;
    TraceDatum operator*(const Rat& s) const;

  private:
    const FFTower* tower_;
    int dim_;
    int levels_;
    std::vector<std::vector<CycNum>> table_; // [m-1][point index]

    friend TraceDatum tensor(const TraceDatum&, const TraceDatum&);
    friend TraceDatum shift(const TraceDatum&, long long);
    friend TraceDatum tate_twist(const TraceDatum&, long long);
    friend TraceDatum pullback(const TraceDatum&, const PointMap&);
    friend TraceDatum pushforward_c(const TraceDatum&, const PointMap&);
};

// Pointwise product (tensor of complexes at trace level).
TraceDatum tensor(const TraceDatum& a, const TraceDatum& b);
// Homological shift [k]: multiplies by (-1)^k.
TraceDatum shift(const TraceDatum& a, long long k);
// Tate twist (d): level-m values scale by q^{-d m} (geometric-Frobenius
// normalization, pinned by the Fourier inversion suite).
TraceDatum tate_twist(const TraceDatum& a, long long d);
// value of pullback at x is value at f(x).
TraceDatum pullback(const TraceDatum& a, const PointMap& f);
// Compactly supported pushforward = fiberwise sums (trace formula shadow).
TraceDatum pushforward_c(const TraceDatum& a, const PointMap& f);

// Checks, for every t in F_{q^m}, that the Artin-Schreier fiber count of
// y -> y^q - y over t equals the character sum  sum_{x in F_q} psi(x * Tr(t)).
struct ASDecompositionReport {
    unsigned p = 0, n = 0;
    int level = 0;
    bool pass = false;
    std::uint64_t checked = 0;
    std::optional<std::uint64_t> first_counterexample; // point index of t
    std::vector<std::pair<std::uint64_t, std::uint64_t>> fiber_sizes; // (t index, count)
};

ASDecompositionReport artin_schreier_identity_check(const FFTower& tower,
                                                    const AdditiveCharacter& psi, int level);

} // namespace tracelab
