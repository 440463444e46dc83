#include "tracelab/trace_datum.hpp"

#include <algorithm>

namespace tracelab {

// ---- AdditiveCharacter ----

AdditiveCharacter::AdditiveCharacter(const FFTower& tower, FFElem twist, unsigned u, Flavor flavor)
    : tower_(&tower), a_(std::move(twist)), u_(u % tower.p()), flavor_(flavor) {
    if (a_.level != 1) throw DomainError("character twist must live at level 1");
    if (u_ == 0) throw ConfigError("character exponent u must be a unit mod p");
    zeta_.reserve(tower.p());
    for (unsigned t = 0; t < tower.p(); ++t)
        zeta_.push_back(CycNum::root_of_unity(tower.p(), 1, static_cast<long long>(t)));
}

AdditiveCharacter AdditiveCharacter::standard(const FFTower& tower, std::uint64_t a, unsigned u,
                                              Flavor flavor) {
    return AdditiveCharacter(tower, tower.element_at(1, a % tower.level_size(1)), u, flavor);
}

bool AdditiveCharacter::trivial() const { return tower_->is_zero(a_); }

AdditiveCharacter AdditiveCharacter::inverse() const {
    return AdditiveCharacter(*tower_, a_, tower_->p() - u_, flavor_);
}

AdditiveCharacter AdditiveCharacter::conjugate_flavor() const {
    return AdditiveCharacter(*tower_, a_, u_,
                             flavor_ == Flavor::Arithmetic ? Flavor::Geometric : Flavor::Arithmetic);
}

AdditiveCharacter AdditiveCharacter::retwisted(const FFElem& a) const {
    return AdditiveCharacter(*tower_, a, u_, flavor_);
}

const CycNum& AdditiveCharacter::zeta_power(std::uint32_t t) const { return zeta_[t % tower_->p()]; }

CycNum AdditiveCharacter::eval(const FFElem& x) const {
    const FFElem ax = tower_->mul(tower_->embed(a_, x.level), x);
    std::uint32_t t = tower_->abs_trace(ax);
    t = static_cast<std::uint32_t>((static_cast<std::uint64_t>(t) * u_) % tower_->p());
    if (flavor_ == Flavor::Geometric) t = (tower_->p() - t) % tower_->p();
    return zeta_[t];
}

// ---- PointMap ----

PointMap::PointMap(const FFTower& tower, int dim_in, std::vector<Coord> coords)
    : tower_(&tower), dim_in_(dim_in), coords_(std::move(coords)) {
    for (const auto& coord : coords_)
        for (const auto& term : coord) {
            if (static_cast<int>(term.exponents.size()) != dim_in)
                throw DomainError("point map exponent arity mismatch");
            if (term.coeff.level != 1) throw DomainError("point map coefficients live at level 1");
        }
}

PointMap PointMap::identity(const FFTower& t, int dim) {
    std::vector<Coord> coords;
    for (int i = 0; i < dim; ++i) {
        Term term{std::vector<std::uint32_t>(dim, 0), t.one(1)};
        term.exponents[static_cast<size_t>(i)] = 1;
        coords.push_back({term});
    }
    return PointMap(t, dim, std::move(coords));
}

PointMap PointMap::projection(const FFTower& t, int dim_in, int index) {
    Term term{std::vector<std::uint32_t>(static_cast<size_t>(dim_in), 0), t.one(1)};
    term.exponents[static_cast<size_t>(index)] = 1;
    return PointMap(t, dim_in, {{term}});
}

PointMap PointMap::scale(const FFTower& t, const FFElem& a) {
    Term term{{1}, a};
    return PointMap(t, 1, {{term}});
}

PointMap PointMap::translate(const FFTower& t, const FFElem& c) {
    Term lin{{1}, t.one(1)};
    Term cst{{0}, c};
    return PointMap(t, 1, {{lin, cst}});
}

PointMap PointMap::power(const FFTower& t, unsigned k) {
    Term term{{k}, t.one(1)};
    return PointMap(t, 1, {{term}});
}

PointMap PointMap::multiply(const FFTower& t) {
    Term term{{1, 1}, t.one(1)};
    return PointMap(t, 2, {{term}});
}

PointMap PointMap::to_point(const FFTower& t, int dim_in) {
    return PointMap(t, dim_in, std::vector<Coord>{});
}

std::vector<FFElem> PointMap::apply(const std::vector<FFElem>& x) const {
    if (static_cast<int>(x.size()) != dim_in_) throw DomainError("point arity mismatch");
    const int m = x.empty() ? 1 : x[0].level;
    std::vector<FFElem> out;
    out.reserve(coords_.size());
    for (const auto& coord : coords_) {
        FFElem acc = tower_->zero(m);
        for (const auto& term : coord) {
            FFElem v = tower_->embed(term.coeff, m);
            for (int i = 0; i < dim_in_; ++i) {
                const std::uint32_t e = term.exponents[static_cast<size_t>(i)];
                if (e) v = tower_->mul(v, tower_->pow(x[static_cast<size_t>(i)], e));
            }
            acc = tower_->add(acc, v);
        }
        out.push_back(acc);
    }
    return out;
}

// ---- TraceDatum ----

TraceDatum::TraceDatum(const FFTower& tower, int dim, int level_bound)
    : tower_(&tower), dim_(dim), levels_(level_bound) {
    if (level_bound < 1 || level_bound > tower.levels())
        throw LevelError("level bound outside the tower");
    table_.resize(static_cast<size_t>(level_bound));
    for (int m = 1; m <= level_bound; ++m)
        table_[static_cast<size_t>(m - 1)].assign(static_cast<size_t>(tower.point_count(dim, m)),
                                                  CycNum(Rat(0), tower.p(), 1));
}

TraceDatum TraceDatum::constant(const FFTower& t, int dim, int levels, const CycNum& value) {
    TraceDatum d(t, dim, levels);
    for (auto& lvl : d.table_)
        for (auto& v : lvl) v = value;
    return d;
}

TraceDatum TraceDatum::zero(const FFTower& t, int dim, int levels) {
    return TraceDatum(t, dim, levels);
}

TraceDatum TraceDatum::delta(const FFTower& t, int levels, const FFElem& at) {
    if (at.level != 1) throw DomainError("delta supports level-1 rational points");
    TraceDatum d(t, 1, levels);
    const CycNum one(Rat(1), t.p(), 1);
    for (int m = 1; m <= levels; ++m) {
        const FFElem pt = t.embed(at, m);
        d.value(m, t.index_of(pt)) = one;
    }
    return d;
}

TraceDatum TraceDatum::character(const AdditiveCharacter& psi, int levels) {
    const FFTower& t = psi.tower();
    TraceDatum d(t, 1, levels);
    for (int m = 1; m <= levels; ++m) {
        const std::uint64_t sz = t.level_size(m);
        for (std::uint64_t i = 0; i < sz; ++i) d.value(m, i) = psi.eval(t.element_at(m, i));
    }
    return d;
}

TraceDatum TraceDatum::build(const FFTower& t, int dim, int levels,
                             const std::function<CycNum(int, const std::vector<FFElem>&)>& f) {
    TraceDatum d(t, dim, levels);
    for (int m = 1; m <= levels; ++m) {
        const std::uint64_t total = t.point_count(dim, m);
        for (std::uint64_t i = 0; i < total; ++i) d.value(m, i) = f(m, t.point_at(dim, m, i));
    }
    return d;
}

const CycNum& TraceDatum::value(int m, std::uint64_t point_index) const {
    if (m < 1 || m > levels_) throw LevelError("level outside datum bound");
    return table_[static_cast<size_t>(m - 1)][static_cast<size_t>(point_index)];
}

CycNum& TraceDatum::value(int m, std::uint64_t point_index) {
    if (m < 1 || m > levels_) throw LevelError("level outside datum bound");
    return table_[static_cast<size_t>(m - 1)][static_cast<size_t>(point_index)];
}

const CycNum& TraceDatum::value_at(int m, const std::vector<FFElem>& pt) const {
    return value(m, tower_->point_index(pt));
}

std::uint64_t TraceDatum::points(int m) const {
    if (m < 1 || m > levels_) throw LevelError("level outside datum bound");
    return table_[static_cast<size_t>(m - 1)].size();
}

bool TraceDatum::operator==(const TraceDatum& o) const {
    if (tower_ != o.tower_ || dim_ != o.dim_ || levels_ != o.levels_) return false;
    return table_ == o.table_;
}

TraceDatum TraceDatum::operator+(const TraceDatum& o) const {
    if (tower_ != o.tower_ || dim_ != o.dim_ || levels_ != o.levels_)
        throw DomainError("datum shape mismatch");
    TraceDatum r = *this;
    for (size_t m = 0; m < table_.size(); ++m)
        for (size_t i = 0; i < table_[m].size(); ++i) r.table_[m][i] += o.table_[m][i];
    return r;
}

TraceDatum TraceDatum::operator*(const Rat& s) const {
    TraceDatum r = *this;
    for (auto& lvl : r.table_)
        for (auto& v : lvl) v = v * s;
    return r;
}

TraceDatum tensor(const TraceDatum& a, const TraceDatum& b) {
    if (a.tower_ != b.tower_ || a.dim_ != b.dim_ || a.levels_ != b.levels_)
        throw DomainError("tensor requires matching space and level bound");
    TraceDatum r = a;
    for (size_t m = 0; m < r.table_.size(); ++m)
        for (size_t i = 0; i < r.table_[m].size(); ++i) r.table_[m][i] *= b.table_[m][i];
    return r;
}

TraceDatum shift(const TraceDatum& a, long long k) {
    if (k % 2 == 0) return a;
    TraceDatum r = a;
    for (auto& lvl : r.table_)
        for (auto& v : lvl) v = -v;
    return r;
}

TraceDatum tate_twist(const TraceDatum& a, long long d) {
    if (d == 0) return a;
    TraceDatum r = a;
    const Rat q(static_cast<long>(a.tower_->base_q()));
    for (int m = 1; m <= a.levels_; ++m) {
        // q^{-d m} exactly
        Rat scale(1);
        const long long e = d * m;
        for (long long i = 0; i < (e > 0 ? e : -e); ++i) scale *= q;
        if (e > 0) scale = Rat(1) / scale;
        for (auto& v : r.table_[static_cast<size_t>(m - 1)]) v = v * scale;
    }
    return r;
}

TraceDatum pullback(const TraceDatum& a, const PointMap& f) {
    if (f.dim_out() != a.dim()) throw DomainError("pullback map lands in the wrong space");
    const FFTower& t = a.tower();
    TraceDatum r(t, f.dim_in(), a.levels());
    for (int m = 1; m <= a.levels(); ++m) {
        const std::uint64_t total = t.point_count(f.dim_in(), m);
        for (std::uint64_t i = 0; i < total; ++i) {
            const auto y = f.apply(t.point_at(f.dim_in(), m, i));
            r.value(m, i) = a.value(m, t.point_index(y));
        }
    }
    return r;
}

TraceDatum pushforward_c(const TraceDatum& a, const PointMap& f) {
    if (f.dim_in() != a.dim()) throw DomainError("pushforward map starts from the wrong space");
    const FFTower& t = a.tower();
    TraceDatum r(t, f.dim_out(), a.levels());
    for (int m = 1; m <= a.levels(); ++m) {
        const std::uint64_t total = t.point_count(a.dim(), m);
        for (std::uint64_t i = 0; i < total; ++i) {
            const auto y = f.apply(t.point_at(a.dim(), m, i));
            r.value(m, t.point_index(y)) += a.value(m, i);
        }
    }
    return r;
}

ASDecompositionReport artin_schreier_identity_check(const FFTower& tower,
                                                    const AdditiveCharacter& psi, int level) {
    ASDecompositionReport rep;
    rep.p = tower.p();
    rep.n = tower.n();
    rep.level = level;
    rep.pass = true;

    const std::uint64_t sz = tower.level_size(level);
    const std::uint64_t q = tower.base_q();

    // Count fibers of y -> y^q - y in one sweep.
    std::map<std::uint64_t, std::uint64_t> fiber;
    for (std::uint64_t i = 0; i < sz; ++i) {
        FFElem y = tower.element_at(level, i);
        FFElem t = tower.sub(tower.pow(y, q), y);
        ++fiber[tower.index_of(t)];
    }

    for (std::uint64_t ti = 0; ti < sz; ++ti) {
        const FFElem t = tower.element_at(level, ti);
        const FFElem tr = tower.rel_trace(t, 1);
        CycNum sum(Rat(0), tower.p(), 1);
        for (std::uint64_t xi = 0; xi < q; ++xi) {
            const FFElem x = tower.element_at(1, xi);
            sum += psi.eval(tower.mul(x, tr));
        }
        const std::uint64_t count = fiber.count(ti) ? fiber[ti] : 0;
        rep.fiber_sizes.emplace_back(ti, count);
        if (sum != CycNum(Rat(static_cast<long>(count)), tower.p(), 1)) {
            rep.pass = false;
            if (!rep.first_counterexample) rep.first_counterexample = ti;
        }
        ++rep.checked;
    }
    return rep;
}

} // namespace tracelab
