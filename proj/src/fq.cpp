#include "wittcris/fq.hpp"

#include <algorithm>
#include <map>

namespace wittcris {

namespace polyfp {

std::vector<u64> mod(std::vector<u64> a, const std::vector<u64>& h, u64 p) {
    const size_t dh = h.size() - 1;
    while (a.size() > dh) {
        u64 lead = a.back() % p;
        size_t off = a.size() - 1 - dh;
        if (lead) {
            for (size_t i = 0; i <= dh; ++i) {
                u128 sub = (u128)lead * h[i] % p;
                u64& t = a[off + i];
                t = (u64)((t + p - (u64)sub) % p);
            }
        }
        a.pop_back();
    }
    while (a.size() < dh) a.push_back(0);
    for (u64& x : a) x %= p;
    return a;
}

std::vector<u64> mul_mod(const std::vector<u64>& a, const std::vector<u64>& b,
                         const std::vector<u64>& h, u64 p) {
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            prod[i + j] = (u64)(((u128)prod[i + j] + (u128)a[i] * b[j]) % p);
        }
    }
    return mod(std::move(prod), h, p);
}

std::vector<u64> pow_mod(const std::vector<u64>& a, u128 e, const std::vector<u64>& h, u64 p) {
    std::vector<u64> base = mod(std::vector<u64>(a), h, p);
    std::vector<u64> r(h.size() - 1, 0);
    r[0] = 1 % p;
    while (e) {
        if (e & 1) r = mul_mod(r, base, h, p);
        e >>= 1;
        if (e) base = mul_mod(base, base, h, p);
    }
    return r;
}

static std::vector<u64> x_poly(size_t deg_space) {
    std::vector<u64> x(deg_space, 0);
    if (deg_space >= 2) x[1] = 1;
    return x;
}

bool is_irreducible(const std::vector<u64>& h, u64 p) {
    // monic, degree m >= 1; test x^(p^m) == x mod h and, for each prime l | m,
    // x^(p^(m/l)) != x mod h.
    const size_t m = h.size() - 1;
    if (m == 0) return false;
    if (h.back() % p != 1) return false;
    std::vector<u64> x = x_poly(m >= 2 ? m : 2);
    x = mod(std::move(x), h, p);

    auto xq = [&](u64 deg) { // x^(p^deg) mod h
        std::vector<u64> r = x;
        for (u64 i = 0; i < deg; ++i) r = pow_mod(r, p, h, p);
        return r;
    };

    if (xq(m) != x) return false;
    for (u64 l = 2; l <= m; ++l) {
        if (m % l) continue;
        bool prime = true;
        for (u64 d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        if (xq(m / l) == x) return false;
    }
    return true;
}

} // namespace polyfp

namespace {

// Small table of standard defining polynomials (lexicographically minimal
// irreducibles of the usual normalized form).  Coefficients low-to-high.
const std::map<std::pair<u64, u64>, std::vector<u64>>& poly_table() {
    static const std::map<std::pair<u64, u64>, std::vector<u64>> t = {
        {{2, 1}, {1, 1}},                   // x + 1
        {{2, 2}, {1, 1, 1}},                // x^2 + x + 1
        {{2, 3}, {1, 1, 0, 1}},             // x^3 + x + 1
        {{2, 4}, {1, 1, 0, 0, 1}},          // x^4 + x + 1
        {{2, 5}, {1, 0, 1, 0, 0, 1}},       // x^5 + x^2 + 1
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},    // x^6 + x^4 + x^3 + x + 1
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}}, // x^8 + x^4 + x^3 + x^2 + 1
        {{3, 1}, {1, 1}},                   // x + 1
        {{3, 2}, {2, 2, 1}},                // x^2 + 2x + 2
        {{3, 3}, {1, 2, 0, 1}},             // x^3 + 2x + 1
        {{5, 1}, {2, 1}},                   // x + 2
        {{5, 2}, {2, 4, 1}},                // x^2 + 4x + 2
        {{7, 1}, {4, 1}},                   // x + 4
        {{7, 2}, {3, 6, 1}},                // x^2 + 6x + 3
    };
    return t;
}

bool is_prime_u64(u64 p) {
    if (p < 2) return false;
    for (u64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

FqDescPtr FqDesc::make(u64 p, u64 m, const std::vector<u64>& hbar) {
    if (!is_prime_u64(p)) throw InvalidError("field characteristic must be prime");
    if (m < 1 || m > 16) throw InvalidError("field degree out of supported range [1,16]");
    if (hbar.size() != m + 1) throw InvalidError("defining polynomial must have degree m");
    std::vector<u64> h = hbar;
    for (u64& x : h) x %= p;
    if (h.back() != 1) throw InvalidError("defining polynomial must be monic");
    // guard against huge q in index enumeration paths
    u64 q = 1;
    for (u64 i = 0; i < m; ++i) {
        u128 t = (u128)q * p;
        if (t > (u128)1 << 62) throw InvalidError("field size too large");
        q = (u64)t;
    }
    if (!polyfp::is_irreducible(h, p)) throw InvalidError("defining polynomial is reducible");
    auto d = std::make_shared<FqDesc>();
    d->p = p;
    d->m = m;
    d->q = q;
    d->hbar = std::move(h);
    return d;
}

FqDescPtr FqDesc::make(u64 p, u64 m) {
    auto it = poly_table().find({p, m});
    if (it == poly_table().end()) {
        // fall back: search the lexicographically smallest monic irreducible
        if (!is_prime_u64(p) || m < 1 || m > 16)
            throw InvalidError("unsupported (p, m) for field construction");
        std::vector<u64> h(m + 1, 0);
        h[m] = 1;
        // enumerate lower coefficients base p
        u64 total = 1;
        for (u64 i = 0; i < m; ++i) {
            u128 t = (u128)total * p;
            if (t > 100000000ull) throw InvalidError("no tabulated defining polynomial; pass one explicitly");
            total = (u64)t;
        }
        for (u64 code = 0; code < total; ++code) {
            u64 c = code;
            for (u64 i = 0; i < m; ++i) {
                h[i] = c % p;
                c /= p;
            }
            if (polyfp::is_irreducible(h, p)) return make(p, m, h);
        }
        throw InvalidError("no irreducible polynomial found (unreachable)");
    }
    return make(p, m, it->second);
}

FqElem FqElem::operator+(const FqElem& o) const {
    if (k.get() != o.k.get()) throw MismatchError("field mismatch in +");
    FqElem r(k);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (c[i] + o.c[i]) % k->p;
    return r;
}

FqElem FqElem::operator-() const {
    FqElem r(k);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] = (k->p - c[i]) % k->p;
    return r;
}

FqElem FqElem::operator*(const FqElem& o) const {
    if (k.get() != o.k.get()) throw MismatchError("field mismatch in *");
    FqElem r(k);
    r.c = polyfp::mul_mod(c, o.c, k->hbar, k->p);
    return r;
}

FqElem FqElem::pow(u64 e) const {
    FqElem r(k);
    r.c = polyfp::pow_mod(c, e, k->hbar, k->p);
    return r;
}

FqElem FqElem::inv() const {
    if (is_zero()) throw InvalidError("inverse of zero in finite field");
    return pow(k->q - 2);
}

std::string FqElem::to_string() const {
    std::string s;
    bool any = false;
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        if (any) s += "+";
        if (i == 0) s += std::to_string(c[i]);
        else {
            if (c[i] != 1) s += std::to_string(c[i]) + "*";
            s += "g";
            if (i > 1) s += "^" + std::to_string(i);
        }
        any = true;
    }
    return any ? s : "0";
}

} // namespace wittcris
