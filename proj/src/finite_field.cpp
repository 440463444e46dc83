#include "tracelab/finite_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tracelab {

namespace {

std::vector<int> divisors_of(int m) {
    std::vector<int> d;
    for (int i = 1; i <= m; ++i)
        if (m % i == 0) d.push_back(i);
    return d;
}

// F_p[x] arithmetic on coefficient vectors (constant first, no implicit trim).
struct PolyFp {
    unsigned p;

    std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> c(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j) {
                if (!b[j]) continue;
                c[i + j] = (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
            }
        }
        return c;
    }

    // Reduce modulo a monic polynomial given by its low coefficients (degree d).
    void reduce(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& mod_low) const {
        const size_t d = mod_low.size();
        for (size_t e = a.size(); e-- > d;) {
            std::uint32_t t = a[e];
            if (!t) continue;
            a[e] = 0;
            for (size_t i = 0; i < d; ++i) {
                std::uint64_t v = a[e - d + i] + static_cast<std::uint64_t>(p - mod_low[i] % p) * t;
                a[e - d + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        a.resize(d);
    }

    std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b,
                                      const std::vector<std::uint32_t>& mod_low) const {
        auto c = mul(a, b);
        reduce(c, mod_low);
        return c;
    }

    std::vector<std::uint32_t> powmod(std::vector<std::uint32_t> base, std::uint64_t e,
                                      const std::vector<std::uint32_t>& mod_low) const {
        std::vector<std::uint32_t> acc(mod_low.size(), 0);
        acc[0] = 1;
        while (e) {
            if (e & 1) acc = mulmod(acc, base, mod_low);
            base = mulmod(base, base, mod_low);
            e >>= 1;
        }
        return acc;
    }

    static bool is_zero(const std::vector<std::uint32_t>& a) {
        return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
    }

    // gcd of two polynomials (low-first, trimmed internally)
    std::vector<std::uint32_t> gcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) const {
        auto deg = [](const std::vector<std::uint32_t>& f) -> int {
            for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
                if (f[i]) return i;
            return -1;
        };
        while (deg(b) >= 0) {
            // a mod b
            int db = deg(b);
            std::uint32_t lead = b[db];
            // modular inverse of lead
            std::uint32_t li = 1;
            for (std::uint32_t t = 1; t < p; ++t)
                if ((static_cast<std::uint64_t>(t) * lead) % p == 1) { li = t; break; }
            int da = deg(a);
            while (da >= db) {
                std::uint32_t c = static_cast<std::uint32_t>(
                    (static_cast<std::uint64_t>(a[da]) * li) % p);
                if (c) {
                    for (int i = 0; i <= db; ++i) {
                        std::uint64_t v =
                            a[da - db + i] + static_cast<std::uint64_t>(p - (static_cast<std::uint64_t>(c) * b[i]) % p);
                        a[da - db + i] = static_cast<std::uint32_t>(v % p);
                    }
                }
                --da;
                while (da >= 0 && !a[da]) --da;
            }
            std::swap(a, b);
        }
        return a;
    }
};

// Deterministic irreducibility test over F_p:
// f (monic, degree d) is irreducible iff x^{p^d} = x (mod f) and
// gcd(x^{p^{d/r}} - x, f) = 1 for every prime r | d.
bool is_irreducible(unsigned p, const std::vector<std::uint32_t>& mod_low) {
    PolyFp P{p};
    const unsigned d = static_cast<unsigned>(mod_low.size());
    std::vector<std::uint32_t> x(d, 0);
    if (d == 1) return true; // any monic linear polynomial
    x[1] = 1;

    // x^{p^e} mod f by repeated p-th powers
    auto frob_pow = [&](std::vector<std::uint32_t> v, unsigned e) {
        for (unsigned i = 0; i < e; ++i) v = P.powmod(v, p, mod_low);
        return v;
    };

    auto xpd = frob_pow(x, d);
    if (xpd != x) return false;

    std::vector<unsigned> primes;
    unsigned dd = d;
    for (unsigned r = 2; r * r <= dd; ++r)
        while (dd % r == 0) {
            if (primes.empty() || primes.back() != r) primes.push_back(r);
            dd /= r;
        }
    if (dd > 1) primes.push_back(dd);

    for (unsigned r : primes) {
        auto v = frob_pow(x, d / r);
        // v - x
        std::vector<std::uint32_t> w = v;
        w[1] = (w[1] + p - 1) % p;
        if (PolyFp::is_zero(w)) return false;
        std::vector<std::uint32_t> f = mod_low; // re-append the leading 1 of the monic modulus
        f.push_back(1);
        auto g = P.gcd(w, f);
        int degg = -1;
        for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i)
            if (g[i]) { degg = i; break; }
        if (degg != 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> smallest_irreducible(unsigned p, unsigned degree) {
    const std::uint64_t count = FFTower::ipow(p, degree);
    for (std::uint64_t v = 0; v < count; ++v) {
        std::vector<std::uint32_t> low(degree);
        std::uint64_t t = v;
        for (unsigned i = 0; i < degree; ++i) {
            low[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        if (is_irreducible(p, low)) return low;
    }
    throw DomainError("no irreducible polynomial found (impossible)");
}

} // namespace

FFTower::FFTower(unsigned p, unsigned n, int levels, std::uint64_t capacity)
    : p_(p), n_(n), levels_(levels), capacity_(capacity) {
    if (levels < 1) throw DomainError("tower needs at least one level");
    std::vector<std::vector<std::uint32_t>> moduli;
    for (int m = 1; m <= levels; ++m) moduli.push_back(smallest_irreducible(p, n * m));
    build(std::move(moduli));
}

FFTower::FFTower(unsigned p, unsigned n, int levels, std::vector<std::vector<std::uint32_t>> moduli,
                 std::uint64_t capacity)
    : p_(p), n_(n), levels_(levels), capacity_(capacity) {
    if (static_cast<int>(moduli.size()) != levels) throw DomainError("one modulus per level required");
    for (int m = 1; m <= levels; ++m) {
        if (moduli[m - 1].size() != n * static_cast<unsigned>(m))
            throw DomainError("modulus degree mismatch at level " + std::to_string(m));
        if (!is_irreducible(p, moduli[m - 1]))
            throw DomainError("supplied modulus is reducible at level " + std::to_string(m));
    }
    build(std::move(moduli));
}

void FFTower::build(std::vector<std::vector<std::uint32_t>> moduli) {
    modulus_ = std::move(moduli);

    // Generator images for every coarse | fine pair, chosen so the embeddings
    // compose: emb_{a->c} = emb_{b->c} . emb_{a->b} whenever a | b | c.  For a
    // fine level we scan elements in index order and keep the first root of
    // the coarse modulus consistent with all previously fixed embeddings.
    for (int fine = 1; fine <= levels_; ++fine) {
        for (int coarse : divisors_of(fine)) {
            if (coarse == fine) {
                emb_gen_[{coarse, fine}] = gen(fine);
                continue;
            }
            const auto& cm = modulus_[coarse - 1];
            std::vector<std::uint32_t> cm_full = cm;
            cm_full.push_back(1);
            bool found = false;
            const std::uint64_t sz = level_size(fine);
            for (std::uint64_t idx = 0; idx < sz && !found; ++idx) {
                FFElem cand = element_at(fine, idx);
                FFElem val = eval_poly_at(cm_full, cand);
                if (!is_zero(val)) continue;
                bool ok = true;
                for (int d : divisors_of(coarse)) {
                    if (d == coarse) continue;
                    // emb_{d->fine}(x_d) must equal emb_{d->coarse}(x_d) evaluated at cand
                    const FFElem& want = emb_gen_.at({d, fine});
                    std::vector<std::uint32_t> via = emb_gen_.at({d, coarse}).c;
                    FFElem got = eval_poly_at(via, cand);
                    if (got != want) { ok = false; break; }
                }
                if (ok) {
                    emb_gen_[{coarse, fine}] = cand;
                    found = true;
                }
            }
            if (!found)
                throw DomainError("no compatible embedding found (tower construction)");
        }
    }

    // Inverse-embedding tables.
    for (int fine = 1; fine <= levels_; ++fine) {
        for (int coarse : divisors_of(fine)) {
            if (coarse == fine) continue;
            auto& table = proj_[{coarse, fine}];
            const std::uint64_t sz = level_size(coarse);
            for (std::uint64_t idx = 0; idx < sz; ++idx) {
                FFElem e = element_at(coarse, idx);
                table[embed(e, fine).c] = e;
            }
        }
    }
}

void FFTower::check_level(int m) const {
    if (m < 1 || m > levels_) throw LevelError("level " + std::to_string(m) + " outside tower");
}

void FFTower::check_same(const FFElem& a, const FFElem& b) const {
    if (a.level != b.level) throw DomainError("level mismatch (embed first)");
}

std::uint64_t FFTower::level_size(int m) const {
    check_level(m);
    return ipow(base_q(), static_cast<unsigned>(m));
}

const std::vector<std::uint32_t>& FFTower::modulus(int m) const {
    check_level(m);
    return modulus_[m - 1];
}

FFElem FFTower::zero(int m) const {
    check_level(m);
    return FFElem{this, m, std::vector<std::uint32_t>(n_ * static_cast<unsigned>(m), 0)};
}

FFElem FFTower::one(int m) const { return from_int(m, 1); }

FFElem FFTower::from_int(int m, std::uint64_t value) const {
    FFElem e = zero(m);
    e.c[0] = static_cast<std::uint32_t>(value % p_);
    return e;
}

FFElem FFTower::gen(int m) const {
    FFElem e = zero(m);
    if (e.c.size() > 1) e.c[1] = 1; // level 1 of a prime tower is F_p itself
    return e;
}

FFElem FFTower::from_coeffs(int m, std::vector<std::uint32_t> coeffs) const {
    check_level(m);
    if (coeffs.size() != n_ * static_cast<unsigned>(m)) throw DomainError("coefficient length mismatch");
    for (auto& c : coeffs) c %= p_;
    return FFElem{this, m, std::move(coeffs)};
}

FFElem FFTower::add(const FFElem& a, const FFElem& b) const {
    if (a.level != b.level) {
        if (a.level < b.level && b.level % a.level == 0) return add(embed(a, b.level), b);
        if (b.level < a.level && a.level % b.level == 0) return add(a, embed(b, a.level));
        throw DomainError("incompatible levels");
    }
    FFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
    return r;
}

FFElem FFTower::neg(const FFElem& a) const {
    FFElem r = a;
    for (auto& c : r.c) c = (p_ - c) % p_;
    return r;
}

FFElem FFTower::sub(const FFElem& a, const FFElem& b) const { return add(a, neg(b)); }

std::vector<std::uint32_t> FFTower::poly_mulmod(const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b, int m) const {
    PolyFp P{p_};
    return P.mulmod(a, b, modulus_[m - 1]);
}

FFElem FFTower::mul(const FFElem& a, const FFElem& b) const {
    if (a.level != b.level) {
        if (a.level < b.level && b.level % a.level == 0) return mul(embed(a, b.level), b);
        if (b.level < a.level && a.level % b.level == 0) return mul(a, embed(b, a.level));
        throw DomainError("incompatible levels");
    }
    return FFElem{this, a.level, poly_mulmod(a.c, b.c, a.level)};
}

bool FFTower::is_zero(const FFElem& a) const { return PolyFp::is_zero(a.c); }

bool FFTower::is_one(const FFElem& a) const {
    if (a.c.empty() || a.c[0] != 1) return false;
    for (size_t i = 1; i < a.c.size(); ++i)
        if (a.c[i]) return false;
    return true;
}

FFElem FFTower::inv(const FFElem& a) const {
    if (is_zero(a)) throw ArithmeticError("inverse of zero in F_q");
    // x^{q^m - 2}; fine at these sizes.
    return pow(a, level_size(a.level) - 2);
}

FFElem FFTower::pow(const FFElem& a, std::uint64_t e) const {
    PolyFp P{p_};
    return FFElem{this, a.level, P.powmod(a.c, e, modulus_[a.level - 1])};
}

FFElem FFTower::frobenius(const FFElem& x, long long e) const {
    const long long ord = static_cast<long long>(n_) * x.level;
    long long r = ((e % ord) + ord) % ord;
    FFElem v = x;
    for (long long i = 0; i < r; ++i) v = pow(v, p_);
    return v;
}

FFElem FFTower::rel_trace(const FFElem& x, int d) const {
    if (d < 1 || x.level % d != 0) throw DomainError("relative trace needs d | m");
    FFElem acc = zero(x.level);
    const int count = x.level / d;
    FFElem v = x;
    for (int i = 0; i < count; ++i) {
        acc = add(acc, v);
        v = frobenius(v, static_cast<long long>(n_) * d);
    }
    return project(acc, d);
}

std::uint32_t FFTower::abs_trace(const FFElem& x) const {
    FFElem acc = zero(x.level);
    FFElem v = x;
    const unsigned total = n_ * static_cast<unsigned>(x.level);
    for (unsigned i = 0; i < total; ++i) {
        acc = add(acc, v);
        v = pow(v, p_);
    }
    for (size_t i = 1; i < acc.c.size(); ++i)
        if (acc.c[i]) throw DomainError("absolute trace did not land in F_p (tower corrupt)");
    return acc.c[0];
}

FFElem FFTower::eval_poly_at(const std::vector<std::uint32_t>& coarse_coeffs, const FFElem& x) const {
    // Horner against F_p coefficients.
    FFElem acc = zero(x.level);
    for (size_t i = coarse_coeffs.size(); i-- > 0;) {
        acc = mul(acc, x);
        acc.c[0] = (acc.c[0] + coarse_coeffs[i]) % p_;
    }
    return acc;
}

FFElem FFTower::embed(const FFElem& x, int finer) const {
    check_level(finer);
    if (x.level == finer) return x;
    if (finer % x.level != 0) throw DomainError("embedding needs m | m'");
    const FFElem& root = emb_gen_.at({x.level, finer});
    return eval_poly_at(x.c, root);
}

FFElem FFTower::project(const FFElem& x, int coarser) const {
    if (x.level == coarser) return x;
    if (coarser < 1 || x.level % coarser != 0) throw DomainError("projection needs d | m");
    const auto& table = proj_.at({coarser, x.level});
    auto it = table.find(x.c);
    if (it == table.end()) throw DomainError("element does not lie in the requested subfield");
    return it->second;
}

std::uint64_t FFTower::index_of(const FFElem& x) const {
    std::uint64_t idx = 0;
    for (size_t i = x.c.size(); i-- > 0;) idx = idx * p_ + x.c[i];
    return idx;
}

FFElem FFTower::element_at(int m, std::uint64_t index) const {
    FFElem e = zero(m);
    for (size_t i = 0; i < e.c.size(); ++i) {
        e.c[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return e;
}

std::vector<FFElem> FFTower::artin_schreier_fiber(const FFElem& t) const {
    const int m = t.level;
    const std::uint64_t sz = level_size(m);
    if (sz > capacity_) throw CapacityError("Artin-Schreier fiber enumeration exceeds capacity");
    const std::uint64_t q = base_q();
    std::vector<FFElem> out;
    for (std::uint64_t i = 0; i < sz; ++i) {
        FFElem y = element_at(m, i);
        if (sub(pow(y, q), y) == t) out.push_back(y);
    }
    return out;
}

std::uint64_t FFTower::point_count(int d, int m) const {
    check_level(m);
    if (d < 0) throw DomainError("negative dimension");
    std::uint64_t total = 1;
    const std::uint64_t sz = level_size(m);
    for (int i = 0; i < d; ++i) {
        if (total > capacity_ / (sz ? sz : 1)) throw CapacityError("point space exceeds capacity");
        total *= sz;
    }
    if (total > capacity_) throw CapacityError("point space exceeds capacity");
    return total;
}

std::vector<FFElem> FFTower::point_at(int d, int m, std::uint64_t index) const {
    const std::uint64_t sz = level_size(m);
    std::vector<FFElem> pt;
    pt.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        pt.push_back(element_at(m, index % sz));
        index /= sz;
    }
    return pt;
}

std::uint64_t FFTower::point_index(const std::vector<FFElem>& pt) const {
    std::uint64_t idx = 0;
    for (size_t i = pt.size(); i-- > 0;) {
        idx = idx * level_size(pt[i].level) + index_of(pt[i]);
    }
    return idx;
}

std::vector<std::vector<FFElem>> FFTower::enumerate_points(int d, int m) const {
    const std::uint64_t total = point_count(d, m);
    std::vector<std::vector<FFElem>> pts;
    pts.reserve(static_cast<size_t>(total));
    for (std::uint64_t i = 0; i < total; ++i) pts.push_back(point_at(d, m, i));
    return pts;
}

std::string FFTower::field_label(int m) const {
    std::ostringstream os;
    os << p_ << "^" << n_ * static_cast<unsigned>(m);
    return os.str();
}

std::pair<unsigned, unsigned> parse_field_spec(const std::string& s) {
    auto caret = s.find('^');
    unsigned p = 0, n = 1;
    try {
        if (caret == std::string::npos) {
            p = static_cast<unsigned>(std::stoul(s));
        } else {
            p = static_cast<unsigned>(std::stoul(s.substr(0, caret)));
            n = static_cast<unsigned>(std::stoul(s.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        throw DomainError("bad field spec '" + s + "' (expected p or p^n)");
    }
    if (p < 2 || n < 1) throw DomainError("bad field spec '" + s + "'");
    // p must be prime
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("field characteristic must be prime in '" + s + "'");
    return {p, n};
}

} // namespace tracelab
