#include "tracelab/cyclotomic.hpp"

#include <algorithm>
#include <sstream>

namespace tracelab {

namespace {

unsigned long long ipow(unsigned long long b, unsigned e) {
    unsigned long long r = 1;
    while (e--) r *= b;
    return r;
}

// ---- dense rational polynomial helpers (internal) ----

using Poly = std::vector<Rat>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    poly_trim(c);
    return c;
}

// Remainder of a modulo monic b.
Poly poly_rem(Poly a, const Poly& b) {
    poly_trim(a);
    size_t db = b.size() - 1;
    while (a.size() > db) {
        Rat lead = a.back();
        size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (size_t i = 0; i < db; ++i) a[shift + i] -= lead * b[i];
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() <= db) break;
    }
    return a;
}

// Extended gcd against a monic modulus: returns u with u*a = gcd (mod m),
// where gcd is a nonzero constant whenever a is invertible mod m.
bool poly_invert(const Poly& a, const Poly& m, Poly& out) {
    // Standard extended Euclid over Q[x].
    Poly r0 = m, r1 = a, s0 = {}, s1 = {Rat(1)};
    poly_trim(r1);
    while (!r1.empty()) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        poly_trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rat(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rat c = rem.back() / r1.back();
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                poly_trim(rem);
            }
        }
        // (r0, r1) <- (r1, rem) ; (s0, s1) <- (s1, s0 - q*s1)
        Poly qs = poly_mul(q, s1);
        Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        poly_trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1) return false; // gcd not constant: a not invertible
    Rat g = r0[0];
    out = s0;
    for (auto& c : out) c /= g;
    return true;
}

} // namespace

unsigned long long euler_phi_prime_power(unsigned p, unsigned k) {
    return ipow(p, k - 1) * (p - 1);
}

bool prime_power_decompose(unsigned long long n, unsigned& p, unsigned& k) {
    if (n < 2) return false;
    unsigned long long d = 2;
    while (d * d <= n && n % d != 0) ++d;
    unsigned long long base = (d * d <= n) ? d : n;
    unsigned long long m = n;
    unsigned kk = 0;
    while (m % base == 0) {
        m /= base;
        ++kk;
    }
    if (m != 1) return false;
    p = static_cast<unsigned>(base);
    k = kk;
    return true;
}

CycNum::CycNum(const Rat& value, unsigned p, unsigned k) : p_(p), k_(k) {
    if (p < 2 || k < 1) throw DomainError("cyclotomic order must be p^k with k >= 1");
    coeffs_.assign(euler_phi_prime_power(p, k), Rat(0));
    coeffs_[0] = value;
    coeffs_[0].canonicalize();
}

// Canonical reduction: first fold exponents mod N (zeta^N = 1), then use
//   x^{phi(N)} = -(1 + x^{p^{k-1}} + ... + x^{(p-2) p^{k-1}})
// top-down until everything lives below phi(N).
CycNum CycNum::from_poly(std::vector<Rat> poly, unsigned p, unsigned k) {
    if (p < 2 || k < 1) throw DomainError("cyclotomic order must be p^k with k >= 1");
    const unsigned long long n = ipow(p, k);
    const size_t phi = static_cast<size_t>(euler_phi_prime_power(p, k));
    const size_t step = static_cast<size_t>(ipow(p, k - 1));
    std::vector<Rat> c(n, Rat(0));
    for (size_t e = 0; e < poly.size(); ++e) {
        if (poly[e] == 0) continue;
        c[e % n] += poly[e];
    }
    for (size_t e = n; e-- > phi;) {
        if (c[e] == 0) continue;
        Rat t = c[e];
        c[e] = 0;
        for (unsigned j = 0; j + 1 < p; ++j) c[e - phi + j * step] -= t;
    }
    c.resize(phi);
    for (auto& x : c) x.canonicalize();
    return CycNum(p, k, std::move(c));
}

CycNum CycNum::root_of_unity(unsigned p, unsigned k, long long j) {
    const long long n = static_cast<long long>(ipow(p, k));
    long long e = ((j % n) + n) % n;
    std::vector<Rat> poly(static_cast<size_t>(e) + 1, Rat(0));
    poly[static_cast<size_t>(e)] = 1;
    return from_poly(std::move(poly), p, k);
}

CycNum CycNum::make_root_of_unity(unsigned long long n, long long j) {
    unsigned p = 0, k = 0;
    if (!prime_power_decompose(n, p, k))
        throw DomainError("root-of-unity order must be a prime power, got " + std::to_string(n));
    return root_of_unity(p, k, j);
}

unsigned long long CycNum::order() const { return ipow(p_, k_); }

bool CycNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rat CycNum::rational_value() const {
    if (!is_rational()) throw DomainError("value is not rational");
    return coeffs_[0];
}

CycNum CycNum::lifted(unsigned k2) const {
    if (k2 < k_) throw DomainError("cannot lift to a smaller order");
    if (k2 == k_) return *this;
    const size_t stride = static_cast<size_t>(ipow(p_, k2 - k_));
    std::vector<Rat> poly(coeffs_.size() * stride, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) poly[i * stride] = coeffs_[i];
    return from_poly(std::move(poly), p_, k2);
}

void CycNum::align(CycNum& a, CycNum& b) {
    if (a.p_ == b.p_) {
        if (a.k_ < b.k_) a = a.lifted(b.k_);
        else if (b.k_ < a.k_) b = b.lifted(a.k_);
        return;
    }
    // Plain rationals live in every cyclotomic field.
    if (a.is_rational()) {
        a = CycNum(a.coeffs_[0], b.p_, b.k_);
        return;
    }
    if (b.is_rational()) {
        b = CycNum(b.coeffs_[0], a.p_, a.k_);
        return;
    }
    throw DomainError("mixed cyclotomic characteristics " + std::to_string(a.p_) + " vs " +
                      std::to_string(b.p_));
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycNum CycNum::operator+(const CycNum& o) const {
    CycNum a = *this, b = o;
    align(a, b);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
    CycNum a = *this, b = o;
    align(a, b);
    std::vector<Rat> prod(a.coeffs_.size() + b.coeffs_.size(), Rat(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j] == 0) continue;
            prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return from_poly(std::move(prod), a.p_, a.k_);
}

CycNum& CycNum::operator+=(const CycNum& o) { return *this = *this + o; }
CycNum& CycNum::operator-=(const CycNum& o) { return *this = *this - o; }
CycNum& CycNum::operator*=(const CycNum& o) { return *this = *this * o; }

CycNum CycNum::operator*(const Rat& s) const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
}

CycNum CycNum::inv() const {
    if (is_zero()) throw ArithmeticError("division by zero in Q(zeta)");
    if (is_rational()) return CycNum(Rat(1) / coeffs_[0], p_, k_);
    // Phi_{p^k} as a dense monic polynomial.
    const size_t phi = coeffs_.size();
    const size_t step = static_cast<size_t>(ipow(p_, k_ - 1));
    Poly modulus(phi + 1, Rat(0));
    for (unsigned j = 0; j < p_; ++j) modulus[j * step] = 1;
    Poly a(coeffs_.begin(), coeffs_.end());
    poly_trim(a);
    Poly u;
    if (!poly_invert(a, modulus, u)) throw ArithmeticError("non-invertible element");
    u = poly_rem(u, modulus);
    u.resize(phi, Rat(0));
    return CycNum(p_, k_, std::move(u));
}

CycNum CycNum::operator/(const CycNum& o) const { return *this * o.inv(); }

CycNum CycNum::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    CycNum acc(Rat(1), p_, k_);
    CycNum base = *this;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

CycNum CycNum::conj() const {
    const unsigned long long n = order();
    std::vector<Rat> poly(n, Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        poly[(i * (n - 1)) % n] += coeffs_[i];
    }
    return from_poly(std::move(poly), p_, k_);
}

bool CycNum::operator==(const CycNum& o) const {
    CycNum a = *this, b = o;
    try {
        align(a, b);
    } catch (const DomainError&) {
        return false;
    }
    return a.coeffs_ == b.coeffs_;
}

unsigned long long CycNum::mult_order() const {
    if (is_zero()) return 0;
    const CycNum one(Rat(1), p_, k_);
    CycNum acc = *this;
    const unsigned long long bound = 2 * order();
    for (unsigned long long m = 1; m <= bound; ++m) {
        if (acc == one) return m;
        acc *= *this;
    }
    return 0;
}

std::string CycNum::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        Rat c = coeffs_[i];
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "z" << order();
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace tracelab
