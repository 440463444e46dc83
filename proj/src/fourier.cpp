#include "tracelab/fourier.hpp"

#include <sstream>

namespace tracelab {

namespace {

void require_line(const TraceDatum& f) {
    if (f.dim() != 1) throw DomainError("transform is defined on A^1 data");
}

} // namespace

TraceDatum ft(const FourierConfig& cfg, const TraceDatum& f) {
    require_line(f);
    const FFTower& t = *cfg.tower;
    const int levels = std::min(cfg.levels, f.levels());
    TraceDatum out(t, 1, levels);

    for (int m = 1; m <= levels; ++m) {
        const std::uint64_t sz = t.level_size(m);
        // Exponent table: u * Tr(a * x t) for the kernel psi(-x t).
        // Tabulating zeta exponents keeps the inner loop to one cyclotomic
        // multiply-accumulate per (x, t) pair.
        const FFElem a_m = t.embed(cfg.psi.twist(), m);
        std::vector<std::uint32_t> tr_exp(sz);
        for (std::uint64_t i = 0; i < sz; ++i) {
            const FFElem z = t.mul(a_m, t.element_at(m, i));
            tr_exp[i] = static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(t.abs_trace(z)) * cfg.psi.exponent()) % t.p());
        }
        for (std::uint64_t ti = 0; ti < sz; ++ti) {
            const FFElem tt = t.element_at(m, ti);
            CycNum acc(Rat(0), t.p(), 1);
            for (std::uint64_t xi = 0; xi < sz; ++xi) {
                const CycNum& fv = f.value(m, xi);
                if (fv.is_zero()) continue;
                const FFElem mxt = t.neg(t.mul(t.element_at(m, xi), tt));
                acc += fv * cfg.psi.zeta_power(tr_exp[t.index_of(mxt)]);
            }
            out.value(m, ti) = -acc;
        }
    }
    return out;
}

TraceDatum ft_via_pipeline(const FourierConfig& cfg, const TraceDatum& f) {
    require_line(f);
    const FFTower& t = *cfg.tower;
    const int levels = std::min(cfg.levels, f.levels());

    // A^2 with coordinates (t, x); the output variable comes first.
    const PointMap pi1 = PointMap::projection(t, 2, 0);
    const PointMap pi2 = PointMap::projection(t, 2, 1);
    const PointMap mult = PointMap::multiply(t);

    // Geometric flavor: the character system contributes psi^{-1}(tx) = psi(-tx).
    AdditiveCharacter psi_g(t, cfg.psi.twist(), cfg.psi.exponent(),
                            AdditiveCharacter::Flavor::Geometric);
    TraceDatum lpsi = TraceDatum::character(psi_g, levels);

    TraceDatum fa = (f.levels() == levels)
                        ? f
                        : TraceDatum::build(t, 1, levels, [&](int m, const std::vector<FFElem>& pt) {
                              return f.value(m, t.point_index(pt));
                          });

    TraceDatum plane = tensor(pullback(fa, pi2), pullback(lpsi, mult));
    return shift(pushforward_c(plane, pi1), 1);
}

FourierCheckReport inversion_check(const FourierConfig& cfg, const TraceDatum& f) {
    FourierCheckReport rep;
    rep.levels = std::min(cfg.levels, f.levels());
    const TraceDatum once = ft(cfg, f);
    const TraceDatum twice = ft(cfg.with_inverse_character(), once);
    const TraceDatum expected = tate_twist(f, -1);
    rep.pass = true;
    for (int m = 1; m <= rep.levels; ++m) {
        for (std::uint64_t i = 0; i < twice.points(m); ++i) {
            if (twice.value(m, i) != expected.value(m, i)) {
                rep.pass = false;
                rep.fail_level = m;
                rep.fail_point = i;
                std::ostringstream os;
                os << "level " << m << " point " << i << ": got " << twice.value(m, i).to_string()
                   << ", want " << expected.value(m, i).to_string();
                rep.detail = os.str();
                return rep;
            }
        }
    }
    return rep;
}

FourierCheckReport plancherel_check(const FourierConfig& cfg, const TraceDatum& f,
                                    const TraceDatum& g) {
    FourierCheckReport rep;
    rep.levels = std::min({cfg.levels, f.levels(), g.levels()});
    const FFTower& t = *cfg.tower;
    const TraceDatum ff = ft(cfg, f);
    const TraceDatum fg = ft(cfg, g);
    rep.pass = true;
    for (int m = 1; m <= rep.levels; ++m) {
        CycNum lhs(Rat(0), t.p(), 1), rhs(Rat(0), t.p(), 1);
        for (std::uint64_t i = 0; i < ff.points(m); ++i) lhs += ff.value(m, i) * fg.value(m, i).conj();
        for (std::uint64_t i = 0; i < f.points(m); ++i) rhs += f.value(m, i) * g.value(m, i).conj();
        Rat qm(1);
        for (int j = 0; j < m; ++j) qm *= Rat(static_cast<long>(t.base_q()));
        if (lhs != rhs * qm) {
            rep.pass = false;
            rep.fail_level = m;
            std::ostringstream os;
            os << "level " << m << ": " << lhs.to_string() << " vs q^m * " << rhs.to_string();
            rep.detail = os.str();
            return rep;
        }
    }
    return rep;
}

} // namespace tracelab
