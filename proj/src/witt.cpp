#include "tracelab/witt.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tracelab {

using ordered_json = nlohmann::ordered_json;

// ---- ZPoly ----

void ZPoly::add_term(Key k, Int c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ZPoly ZPoly::variable(int nvars, int index) {
    ZPoly r(nvars);
    Key k(static_cast<size_t>(nvars), 0);
    k[static_cast<size_t>(index)] = 1;
    r.add_term(std::move(k), Int(1));
    return r;
}

ZPoly ZPoly::constant(int nvars, Int c) {
    ZPoly r(nvars);
    r.add_term(Key(static_cast<size_t>(nvars), 0), std::move(c));
    return r;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    ZPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    ZPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    ZPoly r(nvars_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k(static_cast<size_t>(nvars_));
            for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            r.add_term(std::move(k), ca * cb);
        }
    }
    return r;
}

ZPoly ZPoly::operator*(const Int& s) const {
    ZPoly r(nvars_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
}

ZPoly ZPoly::pow(unsigned e) const {
    ZPoly acc = constant(nvars_, 1);
    ZPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

ZPoly ZPoly::div_exact(const Int& d) const {
    ZPoly r(nvars_);
    for (const auto& [k, c] : terms_) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        if (rem != 0) throw DomainError("Witt law integrality violated");
        r.add_term(k, q);
    }
    return r;
}

Int ZPoly::eval_int(const std::vector<Int>& point) const {
    Int acc = 0;
    for (const auto& [k, c] : terms_) {
        Int t = c;
        for (size_t i = 0; i < k.size(); ++i) {
            if (!k[i]) continue;
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), point[i].get_mpz_t(), k[i]);
            t *= pw;
        }
        acc += t;
    }
    return acc;
}

FFElem ZPoly::eval_ff(const FFTower& tower, const std::vector<FFElem>& point) const {
    const int m = point.empty() ? 1 : point[0].level;
    // Per-variable power tables; exponents in the Witt laws stay below p^n.
    std::vector<std::uint32_t> max_exp(point.size(), 0);
    for (const auto& [k, c] : terms_)
        for (size_t i = 0; i < k.size(); ++i) max_exp[i] = std::max(max_exp[i], k[i]);
    std::vector<std::vector<FFElem>> pows(point.size());
    for (size_t i = 0; i < point.size(); ++i) {
        pows[i].reserve(max_exp[i] + 1);
        pows[i].push_back(tower.one(m));
        for (std::uint32_t e = 1; e <= max_exp[i]; ++e)
            pows[i].push_back(tower.mul(pows[i].back(), point[i]));
    }
    FFElem acc = tower.zero(m);
    for (const auto& [k, c] : terms_) {
        Int cmod = c % static_cast<long>(tower.p());
        if (cmod < 0) cmod += static_cast<long>(tower.p());
        if (cmod == 0) continue;
        FFElem t = tower.from_int(m, cmod.get_ui());
        for (size_t i = 0; i < k.size(); ++i)
            if (k[i]) t = tower.mul(t, pows[i][k[i]]);
        acc = tower.add(acc, t);
    }
    return acc;
}

// ---- WittLaw ----

namespace {

Int int_pow(unsigned base, unsigned e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// gh_i over the variables starting at offset.
ZPoly ghost_poly(int nvars, unsigned p, unsigned i, int offset) {
    ZPoly acc(nvars);
    for (unsigned j = 0; j <= i; ++j) {
        ZPoly term = ZPoly::variable(nvars, offset + static_cast<int>(j))
                         .pow(static_cast<unsigned>(int_pow(p, i - j).get_ui()));
        acc = acc + term * int_pow(p, j);
    }
    return acc;
}

// Solves gh_i(result) = rhs_i for the unique polynomial components.
std::vector<ZPoly> solve_ghost(unsigned p, unsigned n, const std::vector<ZPoly>& rhs) {
    std::vector<ZPoly> comp;
    for (unsigned i = 0; i < n; ++i) {
        ZPoly acc = rhs[i];
        for (unsigned j = 0; j < i; ++j) {
            ZPoly pw = comp[j].pow(static_cast<unsigned>(int_pow(p, i - j).get_ui()));
            acc = acc - pw * int_pow(p, j);
        }
        comp.push_back(acc.div_exact(int_pow(p, i)));
    }
    return comp;
}

std::mutex g_law_mutex;
std::map<std::pair<unsigned, unsigned>, const WittLaw*> g_laws;
std::string g_cache_dir;

std::string cache_path(unsigned p, unsigned n) {
    std::string dir = g_cache_dir;
    if (dir.empty()) {
        const char* env = std::getenv("TRACELAB_CACHE");
        if (env) dir = env;
    }
    if (dir.empty()) return {};
    return dir + "/witt_law_p" + std::to_string(p) + "_n" + std::to_string(n) + ".json";
}

ordered_json poly_to_json(const ZPoly& poly) {
    ordered_json terms = ordered_json::array();
    for (const auto& [k, c] : poly.terms()) {
        ordered_json t;
        t["e"] = k;
        t["c"] = c.get_str();
        terms.push_back(std::move(t));
    }
    return terms;
}

ZPoly poly_from_json(const ordered_json& j, int nvars) {
    ZPoly poly(nvars);
    for (const auto& t : j) {
        ZPoly::Key k = t.at("e").get<std::vector<std::uint32_t>>();
        if (static_cast<int>(k.size()) != nvars) throw DomainError("law cache arity mismatch");
        poly.add_term(std::move(k), Int(t.at("c").get<std::string>()));
    }
    return poly;
}

} // namespace

WittLaw::WittLaw(unsigned p, unsigned n) : p_(p), n_(n) {
    if (n < 1) throw DomainError("Witt length must be positive");
    const int nv2 = static_cast<int>(2 * n);
    const int nv1 = static_cast<int>(n);

    std::vector<ZPoly> sum_rhs, prod_rhs, neg_rhs;
    for (unsigned i = 0; i < n; ++i) {
        ZPoly gx = ghost_poly(nv2, p, i, 0);
        ZPoly gy = ghost_poly(nv2, p, i, static_cast<int>(n));
        sum_rhs.push_back(gx + gy);
        prod_rhs.push_back(gx * gy);
        neg_rhs.push_back(ghost_poly(nv1, p, i, 0) * Int(-1));
    }
    sum_ = solve_ghost(p, n, sum_rhs);
    prod_ = solve_ghost(p, n, prod_rhs);
    neg_ = solve_ghost(p, n, neg_rhs);
    verify();
}

void WittLaw::verify() const {
    const int nv2 = static_cast<int>(2 * n_);
    const int nv1 = static_cast<int>(n_);
    for (unsigned i = 0; i < n_; ++i) {
        // gh_i(S) etc. recomputed from the stored components.
        auto ghost_of = [&](const std::vector<ZPoly>& comps, int nv) {
            ZPoly acc(nv);
            for (unsigned j = 0; j <= i; ++j)
                acc = acc + comps[j].pow(static_cast<unsigned>(int_pow(p_, i - j).get_ui())) *
                                int_pow(p_, j);
            return acc;
        };
        ZPoly gx = ghost_poly(nv2, p_, i, 0);
        ZPoly gy = ghost_poly(nv2, p_, i, static_cast<int>(n_));
        if (!(ghost_of(sum_, nv2) == gx + gy)) throw DomainError("Witt sum law fails ghost identity");
        if (!(ghost_of(prod_, nv2) == gx * gy))
            throw DomainError("Witt product law fails ghost identity");
        ZPoly g1 = ghost_poly(nv1, p_, i, 0);
        if (!(ghost_of(neg_, nv1) == g1 * Int(-1)))
            throw DomainError("Witt negation law fails ghost identity");
    }
}

std::vector<Int> WittLaw::ghost(const std::vector<Int>& comps) const {
    if (comps.size() != n_) throw DomainError("ghost expects n components");
    std::vector<Int> out;
    for (unsigned i = 0; i < n_; ++i) {
        Int acc = 0;
        for (unsigned j = 0; j <= i; ++j) {
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), comps[j].get_mpz_t(), int_pow(p_, i - j).get_ui());
            acc += int_pow(p_, j) * pw;
        }
        out.push_back(acc);
    }
    return out;
}

std::string WittLaw::to_json() const {
    ordered_json j;
    j["schema"] = "trace-lab/1";
    j["p"] = p_;
    j["n"] = n_;
    j["sum"] = ordered_json::array();
    j["prod"] = ordered_json::array();
    j["neg"] = ordered_json::array();
    for (const auto& s : sum_) j["sum"].push_back(poly_to_json(s));
    for (const auto& s : prod_) j["prod"].push_back(poly_to_json(s));
    for (const auto& s : neg_) j["neg"].push_back(poly_to_json(s));
    return j.dump(2);
}

WittLaw WittLaw::from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    WittLaw law;
    law.p_ = j.at("p").get<unsigned>();
    law.n_ = j.at("n").get<unsigned>();
    const int nv2 = static_cast<int>(2 * law.n_);
    const int nv1 = static_cast<int>(law.n_);
    for (const auto& s : j.at("sum")) law.sum_.push_back(poly_from_json(s, nv2));
    for (const auto& s : j.at("prod")) law.prod_.push_back(poly_from_json(s, nv2));
    for (const auto& s : j.at("neg")) law.neg_.push_back(poly_from_json(s, nv1));
    law.verify();
    return law;
}

void WittLaw::set_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lock(g_law_mutex);
    g_cache_dir = dir;
}

const WittLaw& WittLaw::get(unsigned p, unsigned n) {
    std::lock_guard<std::mutex> lock(g_law_mutex);
    auto key = std::make_pair(p, n);
    auto it = g_laws.find(key);
    if (it != g_laws.end()) return *it->second;

    const std::string path = cache_path(p, n);
    if (!path.empty()) {
        std::ifstream in(path);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            try {
                auto* law = new WittLaw(WittLaw::from_json(buf.str()));
                if (law->p() == p && law->n() == n) {
                    g_laws[key] = law;
                    return *law;
                }
                delete law;
            } catch (const std::exception&) {
                // fall through to a fresh solve; the cache file is advisory
            }
        }
    }

    auto* law = new WittLaw(p, n);
    if (!path.empty()) {
        std::ofstream out(path);
        if (out) out << law->to_json();
    }
    g_laws[key] = law;
    return *law;
}

// ---- WittVec ----

WittVec::WittVec(const WittLaw& law, const FFTower& tower, std::vector<FFElem> comps)
    : law_(&law), tower_(&tower), comps_(std::move(comps)) {
    if (comps_.size() != law.n()) throw DomainError("component count must equal the Witt length");
    if (tower.p() != law.p()) throw DomainError("tower characteristic differs from the law");
    level_ = comps_.empty() ? 1 : comps_[0].level;
    for (const auto& c : comps_)
        if (c.level != level_) throw DomainError("Witt components must share one level");
}

WittVec WittVec::zero(const WittLaw& law, const FFTower& tower, int level) {
    return WittVec(law, tower, std::vector<FFElem>(law.n(), tower.zero(level)));
}

WittVec WittVec::one(const WittLaw& law, const FFTower& tower, int level) {
    auto comps = std::vector<FFElem>(law.n(), tower.zero(level));
    comps[0] = tower.one(level);
    return WittVec(law, tower, std::move(comps));
}

WittVec WittVec::teichmuller(const WittLaw& law, const FFTower& tower, const FFElem& a) {
    auto comps = std::vector<FFElem>(law.n(), tower.zero(a.level));
    comps[0] = a;
    return WittVec(law, tower, std::move(comps));
}

WittVec WittVec::from_integer(const WittLaw& law, const FFTower& tower, int level,
                              std::uint64_t k) {
    WittVec acc = zero(law, tower, level);
    const WittVec one_w = one(law, tower, level);
    const std::uint64_t modulus = FFTower::ipow(law.p(), law.n());
    k %= modulus;
    for (std::uint64_t i = 0; i < k; ++i) acc = acc + one_w;
    return acc;
}

namespace {
std::vector<FFElem> joined(const WittVec& a, const WittVec& b) {
    std::vector<FFElem> pt = a.comps();
    pt.insert(pt.end(), b.comps().begin(), b.comps().end());
    return pt;
}
} // namespace

WittVec WittVec::operator+(const WittVec& o) const {
    if (law_ != o.law_ || level_ != o.level_) throw DomainError("Witt law/level mismatch");
    const auto pt = joined(*this, o);
    std::vector<FFElem> out;
    out.reserve(law_->n());
    for (const auto& s : law_->sum()) out.push_back(s.eval_ff(*tower_, pt));
    return WittVec(*law_, *tower_, std::move(out));
}

WittVec WittVec::operator*(const WittVec& o) const {
    if (law_ != o.law_ || level_ != o.level_) throw DomainError("Witt law/level mismatch");
    const auto pt = joined(*this, o);
    std::vector<FFElem> out;
    out.reserve(law_->n());
    for (const auto& s : law_->prod()) out.push_back(s.eval_ff(*tower_, pt));
    return WittVec(*law_, *tower_, std::move(out));
}

WittVec WittVec::operator-() const {
    std::vector<FFElem> out;
    out.reserve(law_->n());
    for (const auto& s : law_->negation()) out.push_back(s.eval_ff(*tower_, comps_));
    return WittVec(*law_, *tower_, std::move(out));
}

WittVec WittVec::frobenius(unsigned e) const {
    std::vector<FFElem> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(tower_->frobenius(c, static_cast<long long>(e)));
    return WittVec(*law_, *tower_, std::move(out));
}

WittVec WittVec::verschiebung() const {
    std::vector<FFElem> out(comps_.size(), tower_->zero(level_));
    for (size_t i = 0; i + 1 < comps_.size(); ++i) out[i + 1] = comps_[i];
    return WittVec(*law_, *tower_, std::move(out));
}

bool WittVec::is_zero() const {
    for (const auto& c : comps_)
        if (!tower_->is_zero(c)) return false;
    return true;
}

bool WittVec::operator==(const WittVec& o) const {
    return law_ == o.law_ && level_ == o.level_ && comps_ == o.comps_;
}

bool WittVec::prime_field_components() const {
    for (const auto& c : comps_)
        for (size_t i = 1; i < c.c.size(); ++i)
            if (c.c[i]) return false;
    return true;
}

std::string WittVec::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (i) os << ",";
        os << tower_->index_of(comps_[i]);
    }
    os << ")";
    return os.str();
}

// ---- kernel and pairing reports ----

namespace {

WittVec witt_at_index(const WittLaw& law, const FFTower& tower, int level, std::uint64_t idx) {
    const std::uint64_t sz = tower.level_size(level);
    std::vector<FFElem> comps;
    comps.reserve(law.n());
    for (unsigned i = 0; i < law.n(); ++i) {
        comps.push_back(tower.element_at(level, idx % sz));
        idx /= sz;
    }
    return WittVec(law, tower, std::move(comps));
}

std::uint64_t witt_index(const WittVec& w) {
    const FFTower& t = w.tower();
    const std::uint64_t sz = t.level_size(w.level());
    std::uint64_t idx = 0;
    for (size_t i = w.comps().size(); i-- > 0;) idx = idx * sz + t.index_of(w.comps()[i]);
    return idx;
}

} // namespace

WittKernelReport witt_kernel_report(unsigned p, unsigned n, int level, std::uint64_t capacity) {
    WittKernelReport rep;
    rep.p = p;
    rep.n = n;
    rep.level = level;

    const WittLaw& law = WittLaw::get(p, n);
    FFTower tower(p, 1, level);
    const std::uint64_t sz = tower.level_size(level);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (total > capacity / sz) throw CapacityError("Witt kernel enumeration exceeds capacity");
        total *= sz;
    }
    rep.total = total;

    std::set<std::uint64_t> image;
    std::vector<std::uint64_t> kernel;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const WittVec w = witt_at_index(law, tower, level, idx);
        const WittVec d = w.frobenius(1) - w;
        image.insert(witt_index(d));
        if (d.is_zero()) kernel.push_back(idx);
    }
    rep.kernel_size = kernel.size();
    rep.image_size = image.size();
    rep.cokernel_size = total / rep.image_size;

    rep.kernel_is_prime_field = true;
    for (std::uint64_t idx : kernel) {
        if (!witt_at_index(law, tower, level, idx).prime_field_components()) {
            rep.kernel_is_prime_field = false;
            break;
        }
    }

    // Cyclic of order p^n: the unit must have exact additive order p^n.
    const std::uint64_t pn = FFTower::ipow(p, n);
    WittVec acc = WittVec::zero(law, tower, level);
    const WittVec one = WittVec::one(law, tower, level);
    std::uint64_t order = 0;
    for (std::uint64_t k = 1; k <= pn; ++k) {
        acc = acc + one;
        if (acc.is_zero()) {
            order = k;
            break;
        }
    }
    rep.kernel_cyclic = (order == pn) && (rep.kernel_size == pn);

    rep.pass = rep.kernel_cyclic && rep.kernel_is_prime_field && rep.kernel_size == pn &&
               rep.cokernel_size == rep.kernel_size;
    return rep;
}

namespace {

// k <-> components of k * 1 in W_n(F_p), read off at prime-field level and
// keyed by the coefficient digits.  Built once per (p, n).
const std::map<std::vector<std::uint32_t>, std::uint64_t>& znp_table(const WittLaw& law) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>,
                    std::map<std::vector<std::uint32_t>, std::uint64_t>>
        tables;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(law.p(), law.n());
    auto it = tables.find(key);
    if (it != tables.end()) return it->second;

    FFTower prime(law.p(), 1, 1);
    std::map<std::vector<std::uint32_t>, std::uint64_t> table;
    const std::uint64_t pn = FFTower::ipow(law.p(), law.n());
    WittVec acc = WittVec::zero(law, prime, 1);
    const WittVec one = WittVec::one(law, prime, 1);
    for (std::uint64_t k = 0; k < pn; ++k) {
        std::vector<std::uint32_t> digits;
        for (const auto& c : acc.comps()) digits.push_back(c.c[0]);
        table.emplace(std::move(digits), k);
        acc = acc + one;
    }
    return tables.emplace(key, std::move(table)).first->second;
}

} // namespace

std::uint64_t theta_pairing(const WittVec& a, const WittVec& b) {
    if (a.level() != b.level()) throw DomainError("pairing requires equal levels");
    const WittLaw& law = a.law();
    const FFTower& t = a.tower();
    WittVec tr = WittVec::zero(law, t, a.level());
    WittVec it = a * b;
    for (int i = 0; i < a.level(); ++i) {
        tr = tr + it;
        it = it.frobenius(1);
    }
    if (!tr.prime_field_components())
        throw DomainError("Witt trace did not land in W_n(F_p)");
    std::vector<std::uint32_t> digits;
    for (const auto& c : tr.comps()) digits.push_back(c.c[0]);
    const auto& table = znp_table(law);
    auto found = table.find(digits);
    if (found == table.end())
        throw DomainError("trace value not reached by multiples of 1 (unexpected)");
    return found->second;
}

ThetaReport theta_nondegeneracy_report(unsigned p, unsigned n, int level, std::uint64_t capacity) {
    ThetaReport rep;
    rep.p = p;
    rep.n = n;
    rep.level = level;

    const WittLaw& law = WittLaw::get(p, n);
    FFTower tower(p, 1, level);
    const std::uint64_t sz = tower.level_size(level);
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (total > capacity / sz) throw CapacityError("theta enumeration exceeds capacity");
        total *= sz;
    }

    // Teichmueller lifts of the F_p-basis {x^j} generate the additive group,
    // so pairing trivially against them puts an element in the radical.
    std::vector<WittVec> gens;
    for (int j = 0; j < level; ++j) {
        FFElem b = tower.one(level);
        for (int i = 0; i < j; ++i) b = tower.mul(b, tower.gen(level));
        gens.push_back(WittVec::teichmuller(law, tower, b));
    }

    rep.radical_size = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const WittVec w = witt_at_index(law, tower, level, idx);
        bool rad = true;
        for (const auto& g : gens) {
            if (theta_pairing(w, g) != 0) { rad = false; break; }
        }
        if (rad) ++rep.radical_size;
    }
    rep.nondegenerate = (rep.radical_size == 1); // only the zero vector

    // Spot-check biadditivity on a fixed small panel.
    rep.biadditive_sampled = true;
    const std::uint64_t step = total < 7 ? 1 : total / 7;
    for (std::uint64_t i = 0; i < total && rep.biadditive_sampled; i += step)
        for (std::uint64_t j = 0; j < total; j += step)
            for (std::uint64_t k = 0; k < total; k += step) {
                const WittVec x = witt_at_index(law, tower, level, i);
                const WittVec y = witt_at_index(law, tower, level, j);
                const WittVec z = witt_at_index(law, tower, level, k);
                const std::uint64_t pn = FFTower::ipow(p, n);
                if ((theta_pairing(x + y, z)) % pn !=
                    (theta_pairing(x, z) + theta_pairing(y, z)) % pn) {
                    rep.biadditive_sampled = false;
                    break;
                }
            }
    return rep;
}

} // namespace tracelab
