#include "tracelab/selftest.hpp"

#include <chrono>
#include <sstream>

#include "tracelab/ffcurve.hpp"
#include "tracelab/fourier.hpp"
#include "tracelab/heisenberg.hpp"
#include "tracelab/io.hpp"
#include "tracelab/isocrystal.hpp"
#include "tracelab/local_ft.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/witt.hpp"

namespace tracelab {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct FieldSpec {
    unsigned p, n;
};

const std::vector<FieldSpec> kInversionFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                 {7, 1}, {2, 3}, {3, 2}};

Rat random_rat(Rng& rng) {
    static const long dens[] = {1, 1, 1, 2, 3};
    Rat r(rng.range(-9, 9), dens[rng.below(5)]);
    r.canonicalize();
    return r;
}

CycNum random_cyc(Rng& rng, unsigned p) {
    std::vector<Rat> coeffs(euler_phi_prime_power(p, 1));
    for (auto& c : coeffs) c = random_rat(rng);
    return CycNum::from_poly(std::move(coeffs), p, 1);
}

TraceDatum random_datum(Rng& rng, const FFTower& t, int levels) {
    TraceDatum d(t, 1, levels);
    for (int m = 1; m <= levels; ++m)
        for (std::uint64_t i = 0; i < d.points(m); ++i) d.value(m, i) = random_cyc(rng, t.p());
    return d;
}

std::string field_name(const FieldSpec& f) {
    return std::to_string(f.p) + "^" + std::to_string(f.n);
}

// Per-instance numeric ghost solve: the independent oracle for the Witt laws.
std::vector<Int> witt_from_ghost(unsigned p, const std::vector<Int>& ghost_target) {
    std::vector<Int> comp;
    for (size_t i = 0; i < ghost_target.size(); ++i) {
        Int acc = ghost_target[i];
        Int pj = 1;
        for (size_t j = 0; j < i; ++j) {
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), comp[j].get_mpz_t(),
                       FFTower::ipow(p, static_cast<unsigned>(i - j)));
            acc -= pj * pw;
            pj *= p;
        }
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), pj.get_mpz_t());
        if (rem != 0) throw DomainError("ghost solve hit a non-integral step");
        comp.push_back(q);
    }
    return comp;
}

} // namespace

// 1. Fourier inversion over every configured field, both levels, seeded fs.
CriterionResult criterion_fourier_inversion(std::uint64_t seed, bool quick) {
    CriterionResult res{1, "fourier_inversion", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(1);
    const int per_field = quick ? 5 : 25;
    for (const auto& f : kInversionFields) {
        FFTower tower(f.p, f.n, 2);
        FourierConfig cfg(tower, AdditiveCharacter::standard(tower), 2);
        for (int i = 0; i < per_field && res.pass; ++i) {
            TraceDatum datum = random_datum(rng, tower, 2);
            const auto rep = inversion_check(cfg, datum);
            ++res.cases;
            if (!rep.pass) {
                res.pass = false;
                res.detail = "field " + field_name(f) + ": " + rep.detail;
            }
        }
    }
    res.seconds = timer.seconds();
    if (res.pass && res.seconds >= 10.0) {
        res.pass = false;
        res.detail = "runtime target exceeded";
    }
    return res;
}

// 2. ft(constant 1) = -q^m delta_0.
CriterionResult criterion_orthogonality(std::uint64_t seed, bool quick) {
    (void)seed;
    (void)quick;
    CriterionResult res{2, "orthogonality", true, 0, 0.0, ""};
    Timer timer;
    for (const auto& f : kInversionFields) {
        FFTower tower(f.p, f.n, 2);
        FourierConfig cfg(tower, AdditiveCharacter::standard(tower), 2);
        const TraceDatum one = TraceDatum::constant(tower, 1, 2, CycNum(Rat(1), f.p, 1));
        const TraceDatum got = ft(cfg, one);
        for (int m = 1; m <= 2 && res.pass; ++m) {
            Rat qm(1);
            for (int j = 0; j < m; ++j) qm *= Rat(static_cast<long>(tower.base_q()));
            for (std::uint64_t i = 0; i < got.points(m); ++i) {
                const CycNum want =
                    (i == 0) ? CycNum(-qm, f.p, 1) : CycNum(Rat(0), f.p, 1);
                ++res.cases;
                if (got.value(m, i) != want) {
                    res.pass = false;
                    res.detail = "field " + field_name(f) + " level " + std::to_string(m);
                    break;
                }
            }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 3. Closed-form kernel vs the definition pipeline on A^2.
CriterionResult criterion_kernel_pipeline(std::uint64_t seed, bool quick) {
    CriterionResult res{3, "kernel_pipeline_agreement", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(3);
    const std::vector<FieldSpec> fields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}};
    const int per_field = quick ? 3 : 10;
    for (const auto& f : fields) {
        FFTower tower(f.p, f.n, 2);
        FourierConfig cfg(tower, AdditiveCharacter::standard(tower), 2);
        for (int i = 0; i < per_field && res.pass; ++i) {
            TraceDatum datum = random_datum(rng, tower, 2);
            ++res.cases;
            if (ft(cfg, datum) != ft_via_pipeline(cfg, datum)) {
                res.pass = false;
                res.detail = "field " + field_name(f) + " input " + std::to_string(i);
            }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 4. Fiber counts of y^q - y match the character sums at every target.
CriterionResult criterion_as_decomposition(std::uint64_t seed, bool quick) {
    (void)seed;
    (void)quick;
    CriterionResult res{4, "artin_schreier_decomposition", true, 0, 0.0, ""};
    Timer timer;
    const std::vector<FieldSpec> fields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}};
    for (const auto& f : fields) {
        const std::uint64_t q = FFTower::ipow(f.p, f.n);
        int levels = 0;
        std::uint64_t size = 1;
        while (levels < 3 && size * q <= 125) {
            size *= q;
            ++levels;
        }
        FFTower tower(f.p, f.n, levels);
        AdditiveCharacter psi = AdditiveCharacter::standard(tower);
        for (int m = 1; m <= levels && res.pass; ++m) {
            const auto rep = artin_schreier_identity_check(tower, psi, m);
            res.cases += rep.checked;
            if (!rep.pass) {
                res.pass = false;
                res.detail = "field " + field_name(f) + " level " + std::to_string(m);
            }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 5. Witt laws against the numeric ghost oracle, kernel of F - id, theta pairing.
CriterionResult criterion_witt_laws(std::uint64_t seed, bool quick) {
    CriterionResult res{5, "witt_laws", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(5);
    const std::vector<std::pair<unsigned, unsigned>> laws = {
        {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}};
    const int samples = quick ? 8 : 40;
    const std::uint64_t cap = quick ? (1ull << 8) : (1ull << 12);

    for (const auto& [p, n] : laws) {
        const WittLaw& law = WittLaw::get(p, n);
        for (int s = 0; s < samples && res.pass; ++s) {
            std::vector<Int> xy;
            for (unsigned i = 0; i < 2 * n; ++i) xy.emplace_back(rng.range(-20, 20));
            const std::vector<Int> x(xy.begin(), xy.begin() + n);
            const std::vector<Int> y(xy.begin() + n, xy.end());

            // law evaluation over Z
            std::vector<Int> sum_law, prod_law;
            for (unsigned i = 0; i < n; ++i) {
                sum_law.push_back(law.sum()[i].eval_int(xy));
                prod_law.push_back(law.prod()[i].eval_int(xy));
            }
            // oracle: coordinatewise ghost arithmetic, then solve back
            const auto gx = law.ghost(x);
            const auto gy = law.ghost(y);
            std::vector<Int> gsum, gprod;
            for (unsigned i = 0; i < n; ++i) {
                gsum.push_back(gx[i] + gy[i]);
                gprod.push_back(gx[i] * gy[i]);
            }
            ++res.cases;
            if (witt_from_ghost(p, gsum) != sum_law || witt_from_ghost(p, gprod) != prod_law) {
                res.pass = false;
                res.detail = "ghost oracle mismatch at p=" + std::to_string(p) +
                             " n=" + std::to_string(n);
            }
        }

        for (int m = 1; res.pass; ++m) {
            std::uint64_t total = 1;
            bool fits = true;
            for (unsigned i = 0; i < n * static_cast<unsigned>(m); ++i) {
                total *= p;
                if (total > cap) {
                    fits = false;
                    break;
                }
            }
            if (!fits) break;
            const auto krep = witt_kernel_report(p, n, m, cap);
            ++res.cases;
            if (!krep.pass) {
                res.pass = false;
                res.detail = "kernel report failed at p=" + std::to_string(p) +
                             " n=" + std::to_string(n) + " m=" + std::to_string(m);
                break;
            }
            const auto trep = theta_nondegeneracy_report(p, n, m, cap);
            ++res.cases;
            if (!trep.nondegenerate || !trep.biadditive_sampled) {
                res.pass = false;
                res.detail = "theta pairing degenerate at p=" + std::to_string(p) +
                             " n=" + std::to_string(n) + " m=" + std::to_string(m);
                break;
            }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 6. Heisenberg structure constants over the acceptance grid.
CriterionResult criterion_heisenberg(std::uint64_t seed, bool quick) {
    (void)seed;
    CriterionResult res{6, "heisenberg_structure", true, 0, 0.0, ""};
    Timer timer;
    std::vector<std::pair<FieldSpec, int>> grid = {
        {{2, 1}, 1}, {{3, 1}, 1}, {{5, 1}, 1}, {{2, 1}, 2}, {{3, 1}, 2}};
    if (quick) grid.resize(2);
    for (const auto& [f, g] : grid) {
        FFTower tower(f.p, f.n, 1);
        HeisenbergGroup group(tower, g);
        const auto rep = group.commutator_data();
        ++res.cases;
        const std::uint64_t q = tower.level_size(1);
        std::uint64_t q2g = 1;
        for (int i = 0; i < 2 * g; ++i) q2g *= q;
        bool ok = rep.center_equals_commutator && rep.center_is_scalar_line &&
                  rep.center_size == q && rep.commutator_width_one && rep.a_b_c_identity &&
                  rep.character_count == q2g && rep.degree_sum_ok;
        if (g == 1) ok = ok && rep.class_count == q * q + q - 1;
        if (!ok) {
            res.pass = false;
            res.detail = "q=" + std::to_string(q) + " g=" + std::to_string(g);
            break;
        }
    }
    res.seconds = timer.seconds();
    if (res.pass && res.seconds >= 30.0) {
        res.pass = false;
        res.detail = "runtime target exceeded";
    }
    return res;
}

// 7. Slope calculus properties on random expressions.
CriterionResult criterion_slope_calculus(std::uint64_t seed, bool quick) {
    CriterionResult res{7, "slope_calculus", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(7);

    auto random_iso = [&rng]() {
        Isocrystal e;
        const int pieces = static_cast<int>(rng.below(3)) + 1;
        for (int i = 0; i < pieces; ++i) {
            long long s = rng.range(-4, 4);
            long long r = rng.range(1, 4);
            Rat slope(static_cast<long>(s), static_cast<long>(r));
            slope.canonicalize();
            e = e.direct_sum(Isocrystal::line(slope, rng.range(1, 3)));
        }
        return e;
    };

    const int rounds = quick ? 40 : 200;
    for (int i = 0; i < rounds && res.pass; ++i) {
        const Isocrystal e = random_iso();
        const Isocrystal f = random_iso();
        ++res.cases;

        bool ok = true;
        // additivity in (+)
        const Isocrystal s = e.direct_sum(f);
        ok = ok && s.rank() == e.rank() + f.rank() && s.deg() == e.deg() + f.deg();
        // tensor bilinearity
        const Isocrystal t = e.tensor(f);
        ok = ok && t.rank() == e.rank() * f.rank();
        ok = ok && t.deg() == e.deg() * f.rank() + f.deg() * e.rank();
        // dual involution and slope negation
        ok = ok && e.dual().dual() == e && e.dual().slope() == -e.slope();
        // HN polygon concavity and endpoints
        const auto poly = e.hn_polygon();
        ok = ok && poly.front() == std::make_pair(Int(0), Int(0));
        ok = ok && poly.back() == std::make_pair(e.rank(), e.deg());
        for (size_t v = 2; v < poly.size() && ok; ++v) {
            // slopes of consecutive segments must strictly decrease
            const Int dx1 = poly[v - 1].first - poly[v - 2].first;
            const Int dy1 = poly[v - 1].second - poly[v - 2].second;
            const Int dx2 = poly[v].first - poly[v - 1].first;
            const Int dy2 = poly[v].second - poly[v - 1].second;
            ok = dy1 * dx2 > dy2 * dx1;
        }
        // vanishing predicates per piece
        const auto pred = cohomology_predicates(e);
        for (const auto& entry : pred.entries) {
            ok = ok && entry.h0_vanishes == (entry.slope < 0);
            ok = ok && entry.h1_vanishes == (entry.slope > 0);
            ok = ok && entry.h0_is_E == (entry.slope == 0);
        }
        if (!ok) {
            res.pass = false;
            res.detail = "round " + std::to_string(i) + ": " + e.to_string() + " / " +
                         f.to_string();
        }
    }

    // pinned example
    const Isocrystal half = Isocrystal::line(Rat(1, 2));
    ++res.cases;
    if (res.pass && half.tensor(half) != Isocrystal::line(Rat(1), 4)) {
        res.pass = false;
        res.detail = "O(1/2) (x) O(1/2) != O(1)^4";
    }
    res.seconds = timer.seconds();
    return res;
}

// 8. Curve operators: solve to precision 8, section dimensions, negative slopes.
CriterionResult criterion_curve_operators(std::uint64_t seed, bool quick) {
    CriterionResult res{8, "curve_operators", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(8);
    const int per_case = quick ? 5 : 20;

    for (unsigned q : {2u, 3u}) {
        FFTower tower(q, 1, 1);
        CurveConfig cfg{&tower, 48, 16, std::nullopt};

        auto random_target = [&]() {
            LaurentApprox f(cfg, 16);
            const int nterms = static_cast<int>(rng.below(3)) + 1;
            for (int i = 0; i < nterms; ++i) {
                const long long deg = rng.range(-2, 5);
                PerfCoeff c = f.coeff(deg);
                const int parts = static_cast<int>(rng.below(2)) + 1;
                for (int j = 0; j < parts; ++j) {
                    long e_num = static_cast<long>(rng.range(0, 6));
                    long e_den = rng.coin() ? 1 : static_cast<long>(q);
                    Rat alpha(e_num, e_den);
                    alpha.canonicalize();
                    const FFElem coeff = tower.element_at(1, 1 + rng.below(q - 1));
                    c.add_term(alpha, coeff);
                }
                f.set_coeff(deg, c);
            }
            return f;
        };

        for (unsigned n : {1u, 2u, 3u}) {
            const unsigned k = (11 + n - 1) / n + 1;
            for (int i = 0; i < per_case && res.pass; ++i) {
                const LaurentApprox target = random_target();
                const auto sol = solve_phi_pi(target, static_cast<long long>(n), k);
                const LaurentApprox image = apply_phi_pi(sol.preimage, static_cast<long long>(n));
                ++res.cases;
                if (!image.equal_to_precision(target, 8)) {
                    res.pass = false;
                    res.detail = "solve failed q=" + std::to_string(q) + " n=" + std::to_string(n);
                    break;
                }
                // exact telescoping of the two series on this target
                const LaurentApprox f_only = target;
                const LaurentApprox gs = g_series(f_only, n, k);
                const LaurentApprox lhs = apply_phi_pi(gs, static_cast<long long>(n));
                const LaurentApprox rhs =
                    f_only - phi(f_only, -static_cast<long long>(k))
                                 .shifted(static_cast<long long>(k * n));
                if (!lhs.equal_to_precision(rhs, f_only.precision())) {
                    res.pass = false;
                    res.detail = "g series telescoping failed";
                    break;
                }
            }
            if (!res.pass) break;

            // companion identity for the printed g' on a nilpotent target
            LaurentApprox h(cfg, 16);
            h.set_coeff(1, PerfCoeff::t_power(cfg, Rat(1)));
            h.set_coeff(3, PerfCoeff::t_power(cfg, Rat(1, static_cast<long>(q))));
            const unsigned kk = 4;
            const LaurentApprox gp = g_prime_series(h, n, kk);
            const LaurentApprox lhs2 = phi(gp, 1).shifted(static_cast<long long>(n)) - gp;
            const LaurentApprox rhs2 =
                h.shifted(static_cast<long long>(n)) -
                phi(h, static_cast<long long>(kk)).shifted(static_cast<long long>((kk + 1) * n));
            ++res.cases;
            if (res.pass && !lhs2.equal_to_precision(rhs2, h.precision() + n)) {
                res.pass = false;
                res.detail = "g' companion identity failed";
            }

            // section space has dimension n
            std::vector<PerfCoeff> seeds;
            for (unsigned j = 0; j < n; ++j)
                seeds.push_back(PerfCoeff::t_power(cfg, Rat(static_cast<long>(j) + 1)));
            const auto sections = h0_basis(cfg, n, seeds);
            bool dims = sections.size() == n;
            for (unsigned j = 0; j < n && dims; ++j) {
                dims = !sections[j].is_zero();
                // the recurrence holds on every computed coefficient
                for (long long d = 0; d + static_cast<long long>(n) < cfg.pi_prec && dims; ++d) {
                    const PerfCoeff up = sections[j].coeff(d + static_cast<long long>(n));
                    dims = (up == sections[j].coeff(d).frobenius(1));
                }
                // distinct basis slots stay independent: supports are disjoint
                for (unsigned j2 = 0; j2 < j && dims; ++j2)
                    dims = (sections[j] + sections[j2]).is_zero() ? false : true;
            }
            ++res.cases;
            if (res.pass && !dims) {
                res.pass = false;
                res.detail = "h0 basis dimension check failed at n=" + std::to_string(n);
            }
        }
        if (!res.pass) break;

        for (long long n : {-1ll, -2ll}) {
            const auto rep = h0_negative_check(n, 6);
            ++res.cases;
            if (res.pass && !rep.no_nonzero_section) {
                res.pass = false;
                res.detail = "negative slope check failed at n=" + std::to_string(n);
            }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 9. kappa(phi(x)) = q kappa(x) exactly.
CriterionResult criterion_kappa_scaling(std::uint64_t seed, bool quick) {
    CriterionResult res{9, "kappa_scaling", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(9);
    const int rounds = quick ? 25 : 100;
    const unsigned qs[] = {2, 3, 4, 5, 7};
    for (int i = 0; i < rounds && res.pass; ++i) {
        Rat lt(static_cast<long>(rng.range(1, 40)), static_cast<long>(rng.range(1, 12)));
        Rat lp(static_cast<long>(rng.range(1, 40)), static_cast<long>(rng.range(1, 12)));
        const auto x = make_radius_point(lt, lp);
        const unsigned q = qs[rng.below(5)];
        ++res.cases;
        if (kappa(phi_radius(x, q)) != Rat(static_cast<long>(q)) * kappa(x)) {
            res.pass = false;
            res.detail = "kappa scaling failed";
        }
    }
    res.seconds = timer.seconds();
    return res;
}

// 10. Local transform: double transform reflects and the pairing is perfect
// on every window, plus the Qp digit model on symmetric-size windows.
CriterionResult criterion_local_ft(std::uint64_t seed, bool quick) {
    CriterionResult res{10, "local_fourier_duality", true, 0, 0.0, ""};
    Timer timer;
    Rng rng = Rng(seed).fork(10);
    const std::uint64_t bound = quick ? (1ull << 6) : (1ull << 10);

    for (const auto& f : kInversionFields) {
        FFTower tower(f.p, f.n, 1);
        const std::uint64_t q = tower.level_size(1);
        for (int total = 1;; ++total) {
            std::uint64_t sz = 1;
            bool fits = true;
            for (int i = 0; i < total; ++i) {
                sz *= q;
                if (sz > bound) {
                    fits = false;
                    break;
                }
            }
            if (!fits) break;
            for (int nn = 0; nn <= total && res.pass; ++nn) {
                LocalQuotient g(tower, nn, total - nn);
                const auto rep = duality_report(g);
                ++res.cases;
                if (!rep.pairing_perfect || !rep.double_transform_reflects ||
                    !rep.transform_invertible) {
                    res.pass = false;
                    res.detail = "window (" + std::to_string(nn) + "," +
                                 std::to_string(total - nn) + ") over " + field_name(f);
                    break;
                }
                if (g.size() <= 512) {
                    // seeded double-transform probe
                    QFun fn = QFun::zero(g);
                    for (auto& v : fn.values) v = random_cyc(rng, f.p);
                    const QFun twice = local_ft(local_ft(fn));
                    const Rat szr(static_cast<long>(g.size()));
                    for (std::uint64_t z = 0; z < g.size(); ++z) {
                        if (twice.values[static_cast<size_t>(z)] !=
                            fn.values[static_cast<size_t>(g.neg(z))] * szr) {
                            res.pass = false;
                            res.detail = "random double transform failed on window (" +
                                         std::to_string(nn) + "," + std::to_string(total - nn) +
                                         ") over " + field_name(f);
                            break;
                        }
                    }
                    ++res.cases;
                }
            }
            if (!res.pass) break;
        }
        if (!res.pass) break;
    }

    // Qp digit model spot windows.
    if (res.pass) {
        for (unsigned p : {2u, 3u}) {
            FFTower tower(p, 1, 1);
            for (int nn = 0; nn <= 3 && res.pass; ++nn)
                for (int mm = 0; mm <= 3 && res.pass; ++mm) {
                    if (nn + mm == 0) continue;
                    std::uint64_t sz = FFTower::ipow(p, static_cast<unsigned>(nn + mm));
                    if (sz > (quick ? 64u : 256u)) continue;
                    LocalQuotient g(tower, nn, mm, LocalQuotient::Mode::Qp);
                    const auto rep = duality_report(g);
                    ++res.cases;
                    if (!rep.pairing_perfect || !rep.double_transform_reflects) {
                        res.pass = false;
                        res.detail = "Qp window (" + std::to_string(nn) + "," +
                                     std::to_string(mm) + ") p=" + std::to_string(p);
                    }
                }
        }
    }
    res.seconds = timer.seconds();
    return res;
}

SelfTestReport run_selftest(std::uint64_t seed, bool quick) {
    SelfTestReport rep;
    rep.seed = seed;
    rep.quick = quick;
    Timer timer;
    rep.results.push_back(criterion_fourier_inversion(seed, quick));
    rep.results.push_back(criterion_orthogonality(seed, quick));
    rep.results.push_back(criterion_kernel_pipeline(seed, quick));
    rep.results.push_back(criterion_as_decomposition(seed, quick));
    rep.results.push_back(criterion_witt_laws(seed, quick));
    rep.results.push_back(criterion_heisenberg(seed, quick));
    rep.results.push_back(criterion_slope_calculus(seed, quick));
    rep.results.push_back(criterion_curve_operators(seed, quick));
    rep.results.push_back(criterion_kappa_scaling(seed, quick));
    rep.results.push_back(criterion_local_ft(seed, quick));
    rep.all_pass = true;
    for (const auto& r : rep.results) rep.all_pass = rep.all_pass && r.pass;
    rep.total_seconds = timer.seconds();
    return rep;
}

nlohmann::ordered_json SelfTestReport::to_json(bool include_timings) const {
    nlohmann::ordered_json j;
    j["schema"] = "trace-lab/1";
    j["report"] = "selftest";
    j["seed"] = seed;
    j["mode"] = quick ? "quick" : "full";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["cases"] = r.cases;
        if (!r.detail.empty()) e["detail"] = r.detail;
        if (include_timings) e["seconds"] = r.seconds;
        arr.push_back(std::move(e));
    }
    j["criteria"] = std::move(arr);
    j["all_pass"] = all_pass;
    if (include_timings) j["total_seconds"] = total_seconds;
    return j;
}

std::string SelfTestReport::canonical_bytes() const { return to_json(false).dump(2) + "\n"; }

} // namespace tracelab
