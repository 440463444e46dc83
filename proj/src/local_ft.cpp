#include "tracelab/local_ft.hpp"

#include <sstream>

namespace tracelab {

LocalQuotient::LocalQuotient(const FFTower& tower, int n_neg, int m_pos, Mode mode)
    : tower_(&tower), mode_(mode), n_(n_neg), m_(m_pos) {
    if (n_ < 0 || m_ < 0) throw DomainError("window components must be nonnegative");
    if (mode_ == Mode::Qp && tower.n() != 1)
        throw DomainError("the Qp digit model needs a prime residue field");
    const unsigned digits = static_cast<unsigned>(n_ + m_);
    const std::uint64_t base = (mode_ == Mode::EqualChar) ? tower.level_size(1) : tower.p();
    size_ = 1;
    for (unsigned i = 0; i < digits; ++i) size_ *= base;

    const unsigned kk = zeta_k();
    const std::uint64_t ord = FFTower::ipow(p(), kk);
    zeta_pow_.reserve(ord);
    for (std::uint64_t j = 0; j < ord; ++j)
        zeta_pow_.push_back(CycNum::root_of_unity(p(), kk, static_cast<long long>(j)));
}

unsigned LocalQuotient::zeta_k() const {
    return mode_ == Mode::EqualChar ? 1u : std::max(1u, static_cast<unsigned>(n_ + m_));
}

std::uint64_t LocalQuotient::add(std::uint64_t a, std::uint64_t b) const {
    if (mode_ == Mode::Qp) return (a + b) % size_;
    // digitwise over F_q
    const std::uint64_t q = tower_->level_size(1);
    std::uint64_t r = 0, mul = 1;
    for (int i = 0; i < n_ + m_; ++i) {
        const FFElem s = tower_->add(tower_->element_at(1, a % q), tower_->element_at(1, b % q));
        r += tower_->index_of(s) * mul;
        a /= q;
        b /= q;
        mul *= q;
    }
    return r;
}

std::uint64_t LocalQuotient::neg(std::uint64_t a) const {
    if (mode_ == Mode::Qp) return (size_ - a % size_) % size_;
    const std::uint64_t q = tower_->level_size(1);
    std::uint64_t r = 0, mul = 1;
    for (int i = 0; i < n_ + m_; ++i) {
        const FFElem s = tower_->neg(tower_->element_at(1, a % q));
        r += tower_->index_of(s) * mul;
        a /= q;
        mul *= q;
    }
    return r;
}

std::uint64_t LocalQuotient::digit(std::uint64_t a, int pi_exp) const {
    if (pi_exp < -n_ || pi_exp >= m_) throw DomainError("digit exponent outside the window");
    const std::uint64_t base = (mode_ == Mode::EqualChar) ? tower_->level_size(1) : tower_->p();
    for (int i = 0; i < pi_exp + n_; ++i) a /= base;
    return a % base;
}

std::uint64_t LocalQuotient::from_digit(int pi_exp, std::uint64_t value) const {
    if (pi_exp < -n_ || pi_exp >= m_) throw DomainError("digit exponent outside the window");
    const std::uint64_t base = (mode_ == Mode::EqualChar) ? tower_->level_size(1) : tower_->p();
    std::uint64_t mul = 1;
    for (int i = 0; i < pi_exp + n_; ++i) mul *= base;
    return (value % base) * mul;
}

CycNum LocalQuotient::standard_character(std::uint64_t a) const {
    if (mode_ == Mode::Qp) {
        // zeta_{p^N}^{a mod p^N}: depends on the principal part only.
        if (n_ == 0) return CycNum(Rat(1), p(), zeta_k());
        const std::uint64_t pn = FFTower::ipow(p(), static_cast<unsigned>(n_));
        const std::uint64_t scale = FFTower::ipow(p(), static_cast<unsigned>(m_));
        return zeta_pow_[(a % pn) * scale % zeta_pow_.size()];
    }
    if (n_ == 0) return CycNum(Rat(1), p(), 1); // trivial on O
    const FFElem d = tower_->element_at(1, digit(a, -1));
    return zeta_pow_[tower_->abs_trace(d)];
}

std::uint64_t LocalQuotient::pair_exponent(std::uint64_t a, std::uint64_t b) const {
    if (mode_ == Mode::Qp) {
        // <a, b> = zeta_{p^{N+M}}^{a b}
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % size_);
    }
    // Digit of a*b at pi-exponent M-N-1: positions must satisfy
    // (i - N) + (j - N) = M - N - 1, i.e. i + j = N + M - 1.
    const std::uint64_t q = tower_->level_size(1);
    FFElem acc = tower_->zero(1);
    const int total = n_ + m_;
    std::vector<std::uint64_t> da(static_cast<size_t>(total)), db(static_cast<size_t>(total));
    std::uint64_t ta = a, tb = b;
    for (int i = 0; i < total; ++i) {
        da[static_cast<size_t>(i)] = ta % q;
        db[static_cast<size_t>(i)] = tb % q;
        ta /= q;
        tb /= q;
    }
    for (int i = 0; i < total; ++i) {
        const int j = total - 1 - i;
        acc = tower_->add(acc, tower_->mul(tower_->element_at(1, da[static_cast<size_t>(i)]),
                                           tower_->element_at(1, db[static_cast<size_t>(j)])));
    }
    return tower_->abs_trace(acc);
}

CycNum LocalQuotient::pair(std::uint64_t a, std::uint64_t b) const {
    return zeta_by_exp(pair_exponent(a, b));
}

std::string LocalQuotient::describe() const {
    std::ostringstream os;
    os << (mode_ == Mode::EqualChar ? "F_q((pi))" : "Q_p") << " window (" << n_ << "," << m_
       << "), |G| = " << size_ << ", conductor shift " << conductor_shift();
    return os.str();
}

QFun QFun::zero(const LocalQuotient& g) {
    QFun f;
    f.group = &g;
    f.values.assign(static_cast<size_t>(g.size()), CycNum(Rat(0), g.p(), g.zeta_k()));
    return f;
}

QFun QFun::delta(const LocalQuotient& g, std::uint64_t at) {
    QFun f = zero(g);
    f.values[static_cast<size_t>(at)] = CycNum(Rat(1), g.p(), g.zeta_k());
    return f;
}

QFun QFun::constant(const LocalQuotient& g, const CycNum& v) {
    QFun f = zero(g);
    for (auto& x : f.values) x = v;
    return f;
}

QFun local_ft(const QFun& f) {
    const LocalQuotient& g = *f.group;
    QFun out = QFun::zero(g);
    for (std::uint64_t y = 0; y < g.size(); ++y) {
        CycNum acc(Rat(0), g.p(), g.zeta_k());
        for (std::uint64_t x = 0; x < g.size(); ++x) {
            const CycNum& v = f.values[static_cast<size_t>(x)];
            if (v.is_zero()) continue;
            acc += v * g.zeta_by_exp(g.pair_exponent(x, y));
        }
        out.values[static_cast<size_t>(y)] = acc;
    }
    return out;
}

LocalDualityReport duality_report(const LocalQuotient& g) {
    LocalDualityReport rep;
    rep.size = g.size();
    rep.conductor_shift = g.conductor_shift();

    // Perfectness: every nonzero x must pair nontrivially with some y.  A
    // witness dual to the lowest nonzero digit works immediately; scan the
    // whole group only if it does not.
    rep.pairing_perfect = true;
    const int total = g.window_n() + g.window_m();
    for (std::uint64_t x = 1; x < g.size(); ++x) {
        bool separated = false;
        if (g.mode() == LocalQuotient::Mode::EqualChar) {
            int lowest = -1;
            for (int pos = 0; pos < total && lowest < 0; ++pos)
                if (g.digit(x, pos - g.window_n()) != 0) lowest = pos;
            const int pi_exp = g.window_m() - 1 - lowest;
            const std::uint64_t q = g.tower().level_size(1);
            for (std::uint64_t c = 1; c < q && !separated; ++c)
                separated = g.pair_exponent(x, g.from_digit(pi_exp, c)) != 0;
        } else {
            for (int j = 0; j < total && !separated; ++j)
                for (std::uint64_t c = 1; c < g.p() && !separated; ++c)
                    separated =
                        g.pair_exponent(x, g.from_digit(j - g.window_n(), c)) != 0;
        }
        for (std::uint64_t y = 0; y < g.size() && !separated; ++y)
            separated = g.pair_exponent(x, y) != 0;
        if (!separated) {
            rep.pairing_perfect = false;
            break;
        }
    }

    // Double transform on a probe function: F(F(delta_1 + 2 delta_0)) must be
    // |G| times the reflection.
    QFun probe = QFun::zero(g);
    probe.values[0] = CycNum(Rat(2), g.p(), g.zeta_k());
    if (g.size() > 1) probe.values[1] = CycNum(Rat(1), g.p(), g.zeta_k());
    const QFun twice = local_ft(local_ft(probe));
    rep.double_transform_reflects = true;
    const Rat sz(static_cast<long>(g.size()));
    for (std::uint64_t z = 0; z < g.size(); ++z) {
        const CycNum want = probe.values[static_cast<size_t>(g.neg(z))] * sz;
        if (twice.values[static_cast<size_t>(z)] != want) {
            rep.double_transform_reflects = false;
            break;
        }
    }

    // |G| f(-z) recovers f from F(F(f)), so the transform is injective hence
    // invertible on the function space.
    rep.transform_invertible = rep.pairing_perfect && rep.double_transform_reflects;
    return rep;
}

} // namespace tracelab
