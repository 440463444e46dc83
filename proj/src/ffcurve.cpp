#include "tracelab/ffcurve.hpp"

#include <sstream>

namespace tracelab {

namespace {

Int int_pow_ll(unsigned base, unsigned e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

void check_denominator(const CurveConfig& cfg, const Rat& exp) {
    // Denominator must be a power of p within the budget.
    Int den = exp.get_den();
    const Int bound = int_pow_ll(cfg.tower->p(), cfg.denom_budget);
    if (den > bound) throw PrecisionError("t-exponent denominator budget exhausted");
    Int d = den;
    while (d % cfg.tower->p() == 0) d /= cfg.tower->p();
    if (d != 1)
        throw DomainError("t-exponent denominators must be powers of p");
}

} // namespace

// ---- PerfCoeff ----

void PerfCoeff::add_term(const Rat& exp, const FFElem& c) {
    if (cfg_->tower->is_zero(c)) return;
    check_denominator(*cfg_, exp);
    if (cfg_->t_prec && exp >= *cfg_->t_prec)
        throw PrecisionError("t-exponent crossed the configured t-precision");
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        FFElem s = cfg_->tower->add(it->second, c);
        if (cfg_->tower->is_zero(s)) terms_.erase(it);
        else it->second = s;
    }
}

PerfCoeff PerfCoeff::monomial(const CurveConfig& cfg, const Rat& exp, const FFElem& c) {
    PerfCoeff r(cfg);
    r.add_term(exp, c);
    return r;
}

PerfCoeff PerfCoeff::t_power(const CurveConfig& cfg, const Rat& exp) {
    return monomial(cfg, exp, cfg.tower->one(1));
}

PerfCoeff PerfCoeff::constant(const CurveConfig& cfg, const FFElem& c) {
    return monomial(cfg, Rat(0), c);
}

bool PerfCoeff::nilpotent() const {
    for (const auto& [e, c] : terms_)
        if (e <= 0) return false;
    return true;
}

PerfCoeff PerfCoeff::operator+(const PerfCoeff& o) const {
    PerfCoeff r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

PerfCoeff PerfCoeff::operator-(const PerfCoeff& o) const {
    PerfCoeff r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, cfg_->tower->neg(c));
    return r;
}

PerfCoeff PerfCoeff::operator*(const PerfCoeff& o) const {
    PerfCoeff r(*cfg_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, cfg_->tower->mul(ca, cb));
    return r;
}

PerfCoeff PerfCoeff::frobenius(long long e) const {
    PerfCoeff r(*cfg_);
    const Rat q(static_cast<long>(cfg_->tower->base_q()));
    Rat scale(1);
    for (long long i = 0; i < (e > 0 ? e : -e); ++i) scale *= q;
    if (e < 0) scale = Rat(1) / scale;
    for (const auto& [exp, c] : terms_) {
        Rat e2 = exp * scale;
        e2.canonicalize();
        // Coefficients are fixed by the q-power map on F_q.
        r.add_term(e2, c);
    }
    return r;
}

std::string PerfCoeff::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        const std::uint64_t ci = cfg_->tower->index_of(c);
        if (e == 0) {
            os << "[" << ci << "]";
            continue;
        }
        if (!cfg_->tower->is_one(c)) os << "[" << ci << "]*";
        os << "t";
        if (e != 1) {
            os << "^";
            if (e.get_den() == 1) os << e.get_num().get_str();
            else os << "(" << e.get_num().get_str() << "/" << e.get_den().get_str() << ")";
        }
    }
    return os.str();
}

// ---- regions ----

Region combine_regions(Region a, Region b) {
    if (a == b) return a;
    if (a == Region::Unspecified) return b;
    if (b == Region::Unspecified) return a;
    // [1,q] sits inside [1,inf]; everything else overlaps in [1,1].
    auto inside = [](Region x, Region y) {
        return (x == Region::B1Q && y == Region::B1Inf) ||
               (x == Region::B11 && (y == Region::B1Q || y == Region::B1Inf ||
                                     y == Region::B01InvPi));
    };
    if (inside(a, b)) return a;
    if (inside(b, a)) return b;
    return Region::B11;
}

std::string region_name(Region r) {
    switch (r) {
        case Region::B01InvPi: return "B[0,1][1/pi]";
        case Region::B11: return "B[1,1]";
        case Region::B1Inf: return "B[1,inf]";
        case Region::B1Q: return "B[1,q]";
        default: return "unspecified";
    }
}

// ---- LaurentApprox ----

LaurentApprox LaurentApprox::zero(const CurveConfig& cfg, long long prec) {
    return LaurentApprox(cfg, prec);
}

LaurentApprox LaurentApprox::monomial(const CurveConfig& cfg, long long pi_deg, PerfCoeff c,
                                      long long prec, Region region) {
    LaurentApprox r(cfg, prec, region);
    r.set_coeff(pi_deg, std::move(c));
    return r;
}

std::optional<long long> LaurentApprox::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

PerfCoeff LaurentApprox::coeff(long long pi_deg) const {
    auto it = terms_.find(pi_deg);
    if (it == terms_.end()) return PerfCoeff::zero(*cfg_);
    return it->second;
}

void LaurentApprox::set_coeff(long long pi_deg, PerfCoeff c) {
    if (pi_deg >= prec_) return; // beyond the recorded precision: unknown
    if (c.is_zero()) terms_.erase(pi_deg);
    else terms_.insert_or_assign(pi_deg, std::move(c));
}

LaurentApprox LaurentApprox::operator+(const LaurentApprox& o) const {
    LaurentApprox r(*cfg_, std::min(prec_, o.prec_), combine_regions(region_, o.region_));
    for (const auto& [d, c] : terms_) r.set_coeff(d, c);
    for (const auto& [d, c] : o.terms_) r.set_coeff(d, r.coeff(d) + c);
    return r;
}

LaurentApprox LaurentApprox::operator-(const LaurentApprox& o) const {
    LaurentApprox r(*cfg_, std::min(prec_, o.prec_), combine_regions(region_, o.region_));
    for (const auto& [d, c] : terms_) r.set_coeff(d, c);
    for (const auto& [d, c] : o.terms_) r.set_coeff(d, r.coeff(d) - c);
    return r;
}

LaurentApprox LaurentApprox::operator*(const LaurentApprox& o) const {
    // Precision of a product: each factor's unknown tail enters multiplied by
    // the other factor's lowest term.
    long long prec = std::min(prec_, o.prec_);
    if (!terms_.empty()) prec = std::min(prec, o.prec_ + terms_.begin()->first);
    if (!o.terms_.empty()) prec = std::min(prec, prec_ + o.terms_.begin()->first);
    LaurentApprox r(*cfg_, prec, combine_regions(region_, o.region_));
    for (const auto& [da, ca] : terms_)
        for (const auto& [db, cb] : o.terms_) {
            const long long d = da + db;
            if (d >= prec) continue;
            r.set_coeff(d, r.coeff(d) + ca * cb);
        }
    return r;
}

LaurentApprox LaurentApprox::shifted(long long pi_power) const {
    LaurentApprox r(*cfg_, prec_ + pi_power, region_);
    for (const auto& [d, c] : terms_) r.set_coeff(d + pi_power, c);
    return r;
}

bool LaurentApprox::operator==(const LaurentApprox& o) const {
    return prec_ == o.prec_ && terms_ == o.terms_;
}

bool LaurentApprox::equal_to_precision(const LaurentApprox& o, long long prec) const {
    if (prec_ < prec || o.prec_ < prec)
        throw PrecisionError("operands do not carry the requested precision");
    auto ita = terms_.begin();
    auto itb = o.terms_.begin();
    while (true) {
        while (ita != terms_.end() && ita->first >= prec) ++ita;
        while (itb != o.terms_.end() && itb->first >= prec) ++itb;
        const bool ea = ita == terms_.end() || ita->first >= prec;
        const bool eb = itb == o.terms_.end() || itb->first >= prec;
        if (ea && eb) return true;
        if (ea != eb) return false;
        if (ita->first != itb->first || ita->second != itb->second) return false;
        ++ita;
        ++itb;
    }
}

LaurentApprox LaurentApprox::truncated(long long prec) const {
    LaurentApprox r(*cfg_, std::min(prec, prec_), region_);
    for (const auto& [d, c] : terms_) r.set_coeff(d, c);
    return r;
}

std::string LaurentApprox::to_string() const {
    std::ostringstream os;
    if (terms_.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [d, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.to_string() << ")";
            if (d != 0) os << "*pi^" << d;
        }
    }
    os << " + O(pi^" << prec_ << ")";
    return os.str();
}

// ---- operators ----

LaurentApprox phi(const LaurentApprox& f, long long e) {
    LaurentApprox r(f.config(), f.precision(), f.region());
    for (const auto& [d, c] : f.terms()) r.set_coeff(d, c.frobenius(e));
    return r;
}

LaurentApprox apply_phi_pi(const LaurentApprox& x, long long twist) {
    if (twist == 0) throw DomainError("twist must be nonzero");
    return phi(x, 1) - x.shifted(twist);
}

LaurentApprox g_series(const LaurentApprox& f, unsigned n, unsigned k) {
    if (n == 0) throw DomainError("the series needs a positive twist");
    LaurentApprox acc = LaurentApprox::zero(f.config(), f.precision());
    for (unsigned j = 1; j <= k; ++j) {
        // pi^{(j-1)n} phi^{-j}(f); the shift raises the known precision of
        // the term, the sum keeps the minimum f.precision().
        LaurentApprox term = phi(f, -static_cast<long long>(j))
                                 .shifted(static_cast<long long>((j - 1) * n));
        acc = acc + term;
    }
    return acc;
}

LaurentApprox g_prime_series(const LaurentApprox& h, unsigned n, unsigned k) {
    if (n == 0) throw DomainError("the series needs a positive twist");
    for (const auto& [d, c] : h.terms()) {
        (void)d;
        if (!c.nilpotent())
            throw DomainError("g' needs topologically nilpotent coefficients");
    }
    LaurentApprox acc = LaurentApprox::zero(h.config(), h.precision() + n);
    for (unsigned j = 1; j <= k; ++j) {
        LaurentApprox term =
            phi(h, static_cast<long long>(j) - 1).shifted(static_cast<long long>(j) * n);
        acc = acc - term;
    }
    return acc;
}

SolveResult solve_phi_pi(const LaurentApprox& target, long long twist, unsigned k) {
    if (twist == 0) throw DomainError("twist must be nonzero");
    const CurveConfig& cfg = target.config();

    // Split by inspection: strictly positive pi-degrees with nilpotent
    // coefficients form the [w]B[1,inf] part, the rest belongs to the
    // [0,1][1/pi] side.
    LaurentApprox part_f(cfg, target.precision(), Region::B01InvPi);
    LaurentApprox part_h(cfg, target.precision(), Region::B1Inf);
    for (const auto& [d, c] : target.terms()) {
        if (d >= 1 && c.nilpotent()) part_h.set_coeff(d, c);
        else part_f.set_coeff(d, c);
    }

    // Validity of the K-term preimage: the dropped tail enters at
    // pi^{K |twist|} above the target's valuation.
    long long validity = static_cast<long long>(k) * (twist > 0 ? twist : -twist);
    if (auto v = target.valuation()) validity += *v;

    if (twist > 0) {
        // The g-series telescopes formally for either part under phi - pi^n.
        const unsigned n = static_cast<unsigned>(twist);
        LaurentApprox pf = g_series(part_f, n, k);
        LaurentApprox ph = g_series(part_h, n, k);
        LaurentApprox pre = (pf + ph).truncated(validity);
        SolveResult res{pre, part_f, part_h, k};
        return res;
    }

    // Negative twist: only the nilpotent side is invertible in positive
    // pi-powers; a nonzero [0,1]-part cannot be split off.
    if (!part_f.is_zero())
        throw PrecisionError("target is unsplittable at this precision for a negative twist");
    const unsigned n = static_cast<unsigned>(-twist);
    LaurentApprox ph = g_prime_series(part_h, n, k).truncated(validity);
    SolveResult res{ph, part_f, part_h, k};
    return res;
}

std::vector<LaurentApprox> h0_basis(const CurveConfig& cfg, unsigned n,
                                    const std::vector<PerfCoeff>& seeds) {
    if (n == 0) throw DomainError("positive slope required");
    if (seeds.size() != n) throw DomainError("need exactly n seeds");
    for (const auto& s : seeds)
        if (!s.is_zero() && !s.nilpotent())
            throw DomainError("seeds must be topologically nilpotent");

    std::vector<LaurentApprox> sections;
    for (unsigned j = 0; j < n; ++j) {
        LaurentApprox sec(cfg, cfg.pi_prec);
        if (!seeds[j].is_zero()) {
            PerfCoeff r = seeds[j];
            for (long long i = static_cast<long long>(j); i < cfg.pi_prec;
                 i += static_cast<long long>(n)) {
                sec.set_coeff(i, r);
                r = r.frobenius(1);
            }
        }
        sections.push_back(std::move(sec));
    }
    return sections;
}

H0NegativeReport h0_negative_check(long long n, long long window) {
    if (n >= 0) throw DomainError("this check is for negative slopes");
    H0NegativeReport rep;
    rep.n = n;
    rep.window = window;

    // The recurrence phi(r_i) = r_{i+n} with n < 0 reads r_{i+n} from r_i.
    // For any candidate bottom index b of a nonzero section supported in
    // [0, window): if b + n < 0 the recurrence forces phi(r_b) = 0, so
    // r_b = 0; otherwise r_{b+n} = phi(r_b) is a nonzero coefficient below
    // the bottom.  Either way the bottom empties, and induction clears the
    // window.  The chains below record, for each b, the indices successively
    // forced to zero when walking the recurrence upward from b.
    rep.no_nonzero_section = true;
    for (long long b = 0; b < window; ++b) {
        std::vector<long long> chain;
        long long i = b;
        while (i < window) {
            chain.push_back(i);
            i -= n; // the recurrence transports the forced zero upward by |n|
        }
        rep.forcing_chains.push_back(std::move(chain));
    }
    return rep;
}

RadiusPoint make_radius_point(const Rat& neg_log_t, const Rat& neg_log_pi) {
    if (neg_log_t <= 0 || neg_log_pi <= 0)
        throw DomainError("radii must lie strictly inside the unit disc");
    RadiusPoint x;
    x.neg_log_t = neg_log_t;
    x.neg_log_pi = neg_log_pi;
    x.neg_log_t.canonicalize();
    x.neg_log_pi.canonicalize();
    return x;
}

Rat kappa(const RadiusPoint& x) {
    Rat r = x.neg_log_t / x.neg_log_pi;
    r.canonicalize();
    return r;
}

RadiusPoint phi_radius(const RadiusPoint& x, unsigned q) {
    RadiusPoint y = x;
    y.neg_log_t *= static_cast<long>(q);
    y.neg_log_t.canonicalize();
    return y;
}

namespace {

struct SeriesParser {
    const CurveConfig& cfg;
    const std::string& s;
    size_t pos = 0;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw DomainError("series parse error at position " + std::to_string(pos) + ": " + why);
    }

    bool eat(char c) {
        ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    long long integer() {
        ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected an integer");
        return std::stoll(s.substr(start, pos - start));
    }

    Rat exponent() {
        if (eat('(')) {
            long long a = integer();
            if (!eat('/')) fail("expected '/' in exponent");
            long long b = integer();
            if (!eat(')')) fail("expected ')' closing exponent");
            if (b == 0) fail("zero exponent denominator");
            Rat e(static_cast<long>(a), static_cast<long>(b));
            e.canonicalize();
            return e;
        }
        return Rat(static_cast<long>(integer()));
    }

    // factor := integer | g | t[^exp] | pi[^exp]
    // accumulated into (field coefficient, t-exponent, pi-degree)
    void factor(FFElem& coeff, Rat& texp, long long& pideg) {
        ws();
        if (pos >= s.size()) fail("expected a factor");
        if (s.compare(pos, 2, "pi") == 0) {
            pos += 2;
            long long e = 1;
            if (eat('^')) e = integer();
            pideg += e;
            return;
        }
        if (s[pos] == 't') {
            ++pos;
            Rat e(1);
            if (eat('^')) e = exponent();
            texp += e;
            return;
        }
        if (s[pos] == 'g') {
            ++pos;
            FFElem gen = cfg.tower->gen(1);
            long long e = 1;
            if (eat('^')) e = integer();
            for (long long i = 0; i < e; ++i) coeff = cfg.tower->mul(coeff, gen);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '-' || s[pos] == '+') {
            long long v = integer();
            long long m = ((v % cfg.tower->p()) + cfg.tower->p()) % cfg.tower->p();
            coeff = cfg.tower->mul(coeff, cfg.tower->from_int(1, static_cast<std::uint64_t>(m)));
            return;
        }
        fail("unrecognized factor");
    }

    LaurentApprox parse(long long prec) {
        LaurentApprox acc(cfg, prec);
        bool first = true;
        while (true) {
            ws();
            if (pos >= s.size()) break;
            int sign = 1;
            if (eat('+')) {
                sign = 1;
            } else if (eat('-')) {
                sign = -1;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            first = false;
            FFElem coeff = cfg.tower->one(1);
            Rat texp(0);
            long long pideg = 0;
            factor(coeff, texp, pideg);
            while (eat('*')) factor(coeff, texp, pideg);
            if (sign < 0) coeff = cfg.tower->neg(coeff);
            PerfCoeff c = acc.coeff(pideg);
            c.add_term(texp, coeff);
            acc.set_coeff(pideg, c);
        }
        return acc;
    }
};

} // namespace

LaurentApprox parse_series(const CurveConfig& cfg, const std::string& text, long long prec) {
    SeriesParser p{cfg, text};
    return p.parse(prec);
}

} // namespace tracelab

