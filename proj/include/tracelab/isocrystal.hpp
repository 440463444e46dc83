#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracelab/cyclotomic.hpp" // Int / Rat aliases

namespace tracelab {

// Isocrystal (equivalently, a vector bundle on the curve over a geometric
// point) in Dieudonne-Manin normal form: a multiset of slopes lambda = s/r in
// lowest terms with multiplicities, kept sorted by decreasing slope.  O(s/r)
// has rank r and degree s; everything here factors through that data.
class Isocrystal {
  public:
    struct Piece {
        Rat slope;           // s/r, canonical form (r > 0, gcd 1)
        long long mult = 1;  // number of copies of O(slope)

        long rank_each() const { return slope.get_den().get_si(); }
        long deg_each() const { return slope.get_num().get_si(); }
    };

    Isocrystal() = default; // zero object
    static Isocrystal line(const Rat& slope, long long mult = 1);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool is_zero() const { return pieces_.empty(); }

    Int rank() const;
    Int deg() const;
    Rat slope() const; // DomainError on the zero object

    Isocrystal dual() const;
    Isocrystal direct_sum(const Isocrystal& o) const;
    Isocrystal tensor(const Isocrystal& o) const;

    bool operator==(const Isocrystal& o) const { return pieces_same(o); }
    bool operator!=(const Isocrystal& o) const { return !pieces_same(o); }

    // Harder-Narasimhan polygon: vertices from (0,0), segments in decreasing
    // slope order, one per piece-copy group; ends at (rank, deg).
    std::vector<std::pair<Int, Int>> hn_polygon() const;

    std::string to_string() const; // e.g. "O(1)^4 (+) O(-1/2)"

  private:
    bool pieces_same(const Isocrystal& o) const;
    void add_piece(const Rat& slope, long long mult);
    std::vector<Piece> pieces_; // decreasing slope, multiplicities merged
};

// Per-piece cohomology flags from the slope sign, plus the aggregates used by
// the Banach-Colmez predicates.
struct CohomologyReport {
    struct Entry {
        Rat slope;
        long long mult;
        bool h0_vanishes; // slope < 0
        bool h1_vanishes; // slope > 0
        bool h0_is_E;     // slope = 0
    };
    std::vector<Entry> entries;
    bool only_positive = false;
    bool only_negative = false;
    bool only_nonnegative = false;
};

CohomologyReport cohomology_predicates(const Isocrystal& e);

// Dimension of the Banach-Colmez space: the sum of slope numerators over the
// pieces (an all-negative bundle is measured through its dual placed in
// degree 1).  The report records both the numerator count actually produced
// by the section recurrence and the rank subscript that appears in the
// statement it shadows, because the two differ for non-integral slopes.
struct BCDimensionReport {
    Int dimension;              // sum of k * s
    Int statement_rank_vars;    // sum of k * r, the subscript in the statement
    bool computed_on_dual = false;
};

BCDimensionReport bc_dimension(const Isocrystal& e); // DomainError on mixed signs

// The descent matrix of O(s/r): r x r, ones on the superdiagonal and pi^{-s}
// in the lower-left corner.
struct SlopeMatrix {
    long long r = 0, s = 0;
    struct Entry {
        bool nonzero = false;
        long long pi_exp = 0; // coefficient is 1 when nonzero
    };
    std::vector<std::vector<Entry>> cells;

    // Determinant as a signed power of pi: (sign, exponent).
    std::pair<int, long long> det() const;
    std::string to_string() const;
};

SlopeMatrix xi_matrix(const Rat& lambda);

// Tiny expression grammar: atoms O(s/r) or O(n); operators (+) and (x), with
// (x) binding tighter; dual(expr); parentheses via [ ... ] are not needed
// because dual provides grouping.
Isocrystal parse_slope_expr(const std::string& text);

} // namespace tracelab
