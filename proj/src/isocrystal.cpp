#include "tracelab/isocrystal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tracelab {

Isocrystal Isocrystal::line(const Rat& slope, long long mult) {
    Isocrystal e;
    e.add_piece(slope, mult);
    return e;
}

void Isocrystal::add_piece(const Rat& slope, long long mult) {
    if (mult <= 0) throw DomainError("multiplicity must be positive");
    Rat s = slope;
    s.canonicalize();
    for (auto& p : pieces_) {
        if (p.slope == s) {
            p.mult += mult;
            return;
        }
    }
    pieces_.push_back(Piece{s, mult});
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& a, const Piece& b) { return a.slope > b.slope; });
}

bool Isocrystal::pieces_same(const Isocrystal& o) const {
    if (pieces_.size() != o.pieces_.size()) return false;
    for (size_t i = 0; i < pieces_.size(); ++i)
        if (pieces_[i].slope != o.pieces_[i].slope || pieces_[i].mult != o.pieces_[i].mult)
            return false;
    return true;
}

Int Isocrystal::rank() const {
    Int r = 0;
    for (const auto& p : pieces_) r += Int(static_cast<long>(p.mult)) * p.rank_each();
    return r;
}

Int Isocrystal::deg() const {
    Int d = 0;
    for (const auto& p : pieces_) d += Int(static_cast<long>(p.mult)) * p.deg_each();
    return d;
}

Rat Isocrystal::slope() const {
    if (is_zero()) throw DomainError("the zero object has no slope");
    Rat mu(deg(), rank());
    mu.canonicalize();
    return mu;
}

Isocrystal Isocrystal::dual() const {
    Isocrystal e;
    for (const auto& p : pieces_) e.add_piece(-p.slope, p.mult);
    return e;
}

Isocrystal Isocrystal::direct_sum(const Isocrystal& o) const {
    Isocrystal e = *this;
    for (const auto& p : o.pieces_) e.add_piece(p.slope, p.mult);
    return e;
}

Isocrystal Isocrystal::tensor(const Isocrystal& o) const {
    Isocrystal e;
    for (const auto& a : pieces_) {
        for (const auto& b : o.pieces_) {
            Rat nu = a.slope + b.slope;
            nu.canonicalize();
            // O(a) (x) O(b) = O(a+b)^{ r_a r_b / r_{a+b} }
            const Int copies =
                Int(static_cast<long>(a.rank_each())) * b.rank_each() / nu.get_den();
            e.add_piece(nu, a.mult * b.mult * copies.get_si());
        }
    }
    return e;
}

std::vector<std::pair<Int, Int>> Isocrystal::hn_polygon() const {
    std::vector<std::pair<Int, Int>> verts;
    verts.emplace_back(Int(0), Int(0));
    Int x = 0, y = 0;
    for (const auto& p : pieces_) { // already sorted by decreasing slope
        x += Int(static_cast<long>(p.mult)) * p.rank_each();
        y += Int(static_cast<long>(p.mult)) * p.deg_each();
        verts.emplace_back(x, y);
    }
    return verts;
}

std::string Isocrystal::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& p : pieces_) {
        if (!first) os << " (+) ";
        first = false;
        os << "O(" << p.slope.get_num().get_str();
        if (p.slope.get_den() != 1) os << "/" << p.slope.get_den().get_str();
        os << ")";
        if (p.mult > 1) os << "^" << p.mult;
    }
    return os.str();
}

CohomologyReport cohomology_predicates(const Isocrystal& e) {
    CohomologyReport rep;
    rep.only_positive = !e.is_zero();
    rep.only_negative = !e.is_zero();
    rep.only_nonnegative = !e.is_zero();
    for (const auto& p : e.pieces()) {
        const int sign = p.slope > 0 ? 1 : (p.slope < 0 ? -1 : 0);
        rep.entries.push_back(CohomologyReport::Entry{p.slope, p.mult,
                                                      sign < 0,   // H^0 = 0
                                                      sign > 0,   // H^1 = 0
                                                      sign == 0});
        if (sign <= 0) rep.only_positive = false;
        if (sign >= 0) rep.only_negative = false;
        if (sign < 0) rep.only_nonnegative = false;
    }
    return rep;
}

BCDimensionReport bc_dimension(const Isocrystal& e) {
    if (e.is_zero()) throw DomainError("the zero object has no Banach-Colmez space");
    const CohomologyReport pred = cohomology_predicates(e);
    if (!pred.only_positive && !pred.only_negative)
        throw DomainError("mixed-sign slopes have no Banach-Colmez dimension here");
    BCDimensionReport rep;
    const Isocrystal base = pred.only_negative ? e.dual() : e;
    rep.computed_on_dual = pred.only_negative;
    rep.dimension = base.deg();                // free coefficients of the recurrence
    rep.statement_rank_vars = base.rank();     // the subscript in the statement
    return rep;
}

SlopeMatrix xi_matrix(const Rat& lambda) {
    Rat l = lambda;
    l.canonicalize();
    SlopeMatrix m;
    m.r = l.get_den().get_si();
    m.s = l.get_num().get_si();
    m.cells.assign(static_cast<size_t>(m.r),
                   std::vector<SlopeMatrix::Entry>(static_cast<size_t>(m.r)));
    if (m.r == 1) {
        m.cells[0][0] = {true, -m.s};
        return m;
    }
    for (long long i = 0; i + 1 < m.r; ++i)
        m.cells[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = {true, 0};
    m.cells[static_cast<size_t>(m.r - 1)][0] = {true, -m.s};
    return m;
}

std::pair<int, long long> SlopeMatrix::det() const {
    // Cofactor expansion along the first column; the matrix has at most one
    // nonzero entry per row and column, so the recursion visits one branch.
    struct Rec {
        const SlopeMatrix* m;
        std::pair<int, long long> go(std::vector<int> rows, std::vector<int> cols) const {
            if (rows.empty()) return {1, 0};
            const int c0 = cols[0];
            for (size_t ri = 0; ri < rows.size(); ++ri) {
                const auto& e = m->cells[static_cast<size_t>(rows[ri])][static_cast<size_t>(c0)];
                if (!e.nonzero) continue;
                std::vector<int> r2, c2(cols.begin() + 1, cols.end());
                for (size_t j = 0; j < rows.size(); ++j)
                    if (j != ri) r2.push_back(rows[j]);
                auto sub = go(std::move(r2), std::move(c2));
                const int sign = (ri % 2 == 0) ? 1 : -1;
                return {sign * sub.first, e.pi_exp + sub.second};
            }
            return {0, 0};
        }
    };
    std::vector<int> rows, cols;
    for (long long i = 0; i < r; ++i) {
        rows.push_back(static_cast<int>(i));
        cols.push_back(static_cast<int>(i));
    }
    return Rec{this}.go(rows, cols);
}

std::string SlopeMatrix::to_string() const {
    std::ostringstream os;
    for (long long i = 0; i < r; ++i) {
        os << "[";
        for (long long j = 0; j < r; ++j) {
            if (j) os << " ";
            const auto& e = cells[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (!e.nonzero) os << "0";
            else if (e.pi_exp == 0) os << "1";
            else os << "pi^" << e.pi_exp;
        }
        os << "]";
        if (i + 1 < r) os << "\n";
    }
    return os.str();
}

// ---- expression parser ----

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw DomainError("slope expression parse error at position " + std::to_string(pos) +
                          ": " + why);
    }

    long long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("expected an integer");
        return std::stoll(s.substr(start, pos - start));
    }

    // atom := O(s[/r]) | dual(expr)
    Isocrystal atom() {
        skip_ws();
        if (eat("dual")) {
            if (!eat("(")) fail("expected '(' after dual");
            Isocrystal inner = expr();
            if (!eat(")")) fail("expected ')' closing dual");
            return inner.dual();
        }
        if (eat("O") || eat("o")) {
            if (!eat("(")) fail("expected '(' after O");
            long long num = integer();
            long long den = 1;
            if (eat("/")) den = integer();
            if (den == 0) fail("zero denominator");
            if (!eat(")")) fail("expected ')' closing O");
            Rat slope(static_cast<long>(num), static_cast<long>(den));
            slope.canonicalize();
            Isocrystal e = Isocrystal::line(slope);
            skip_ws();
            if (eat("^")) {
                long long mult = integer();
                if (mult < 1) fail("multiplicity must be positive");
                e = Isocrystal::line(slope, mult);
            }
            return e;
        }
        fail("expected O(...) or dual(...)");
    }

    // factor chain under (x)
    Isocrystal term() {
        Isocrystal left = atom();
        while (true) {
            skip_ws();
            if (eat("(x)")) left = left.tensor(atom());
            else return left;
        }
    }

    // term chain under (+)
    Isocrystal expr() {
        Isocrystal left = term();
        while (true) {
            skip_ws();
            if (eat("(+)")) left = left.direct_sum(term());
            else return left;
        }
    }
};

} // namespace

Isocrystal parse_slope_expr(const std::string& text) {
    Parser p(text);
    Isocrystal e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

} // namespace tracelab
