#include "wittcris/galois_ring.hpp"

#include <map>
#include <mutex>

namespace wittcris {

namespace {

// dense poly arithmetic over Z/pn modulo monic h (coeffs fit u64, pn <= 2^62)
std::vector<u64> zmod(std::vector<u64> a, const std::vector<u64>& h, u64 pn) {
    const size_t dh = h.size() - 1;
    while (a.size() > dh) {
        u64 lead = a.back() % pn;
        size_t off = a.size() - 1 - dh;
        if (lead) {
            for (size_t i = 0; i <= dh; ++i) {
                u128 sub = (u128)lead * (h[i] % pn) % pn;
                u64& t = a[off + i];
                t = (u64)(((u128)t + pn - (u64)sub) % pn);
            }
        }
        a.pop_back();
    }
    while (a.size() < dh) a.push_back(0);
    for (u64& x : a) x %= pn;
    return a;
}

std::vector<u64> zmul(const std::vector<u64>& a, const std::vector<u64>& b,
                      const std::vector<u64>& h, u64 pn) {
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            prod[i + j] = (u64)(((u128)prod[i + j] + (u128)a[i] % pn * (b[j] % pn)) % pn);
        }
    }
    return zmod(std::move(prod), h, pn);
}

std::vector<u64> zadd(const std::vector<u64>& a, const std::vector<u64>& b, u64 pn) {
    std::vector<u64> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (u64)(((u128)a[i] + b[i]) % pn);
    return r;
}

std::vector<u64> zneg(const std::vector<u64>& a, u64 pn) {
    std::vector<u64> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = (pn - a[i] % pn) % pn;
    return r;
}

std::vector<u64> zpow(std::vector<u64> base, u128 e, const std::vector<u64>& h, u64 pn) {
    std::vector<u64> r(h.size() - 1, 0);
    r[0] = 1 % pn;
    base = zmod(std::move(base), h, pn);
    while (e) {
        if (e & 1) r = zmul(r, base, h, pn);
        e >>= 1;
        if (e) base = zmul(base, base, h, pn);
    }
    return r;
}

// evaluate poly g (coeff vector over Z/pn) at ring element z (in-ring)
std::vector<u64> zeval(const std::vector<u64>& g, const std::vector<u64>& z,
                       const std::vector<u64>& h, u64 pn) {
    std::vector<u64> acc(h.size() - 1, 0); // Horner
    for (size_t i = g.size(); i-- > 0;) {
        acc = zmul(acc, z, h, pn);
        acc[0] = (u64)(((u128)acc[0] + g[i]) % pn);
    }
    return acc;
}

// inverse of a unit u: Hensel from the residue-field inverse
std::vector<u64> zinv_unit(const std::vector<u64>& u, const GrDesc& R) {
    // residue inverse
    FqElem ubar(R.k);
    for (u64 i = 0; i < R.m; ++i) ubar.c[i] = u[i] % R.p;
    FqElem vbar = ubar.inv();
    std::vector<u64> z(R.m, 0);
    for (u64 i = 0; i < R.m; ++i) z[i] = vbar.c[i];
    // z <- z * (2 - u z), doubling precision each step
    u64 steps = 1;
    while ((1ull << steps) < R.n) ++steps;
    for (u64 s = 0; s < steps + 1; ++s) {
        std::vector<u64> uz = zmul(u, z, R.h, R.pn);
        std::vector<u64> two_minus(uz.size(), 0);
        for (size_t i = 0; i < uz.size(); ++i) two_minus[i] = (R.pn - uz[i]) % R.pn;
        two_minus[0] = (u64)(((u128)two_minus[0] + 2) % R.pn);
        z = zmul(z, two_minus, R.h, R.pn);
    }
    return z;
}

struct CacheKey {
    u64 p, m, n;
    std::vector<u64> hbar;
    bool operator<(const CacheKey& o) const {
        if (p != o.p) return p < o.p;
        if (m != o.m) return m < o.m;
        if (n != o.n) return n < o.n;
        return hbar < o.hbar;
    }
};

std::map<CacheKey, GrDescPtr>& desc_cache() {
    static std::map<CacheKey, GrDescPtr> c;
    return c;
}
std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

} // namespace

GrDescPtr GrDesc::make(const FqDescPtr& k, u64 n) {
    if (n < 1 || n > 60) throw InvalidError("ring length out of supported range [1,60]");
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = desc_cache().find(CacheKey{k->p, k->m, n, k->hbar});
        if (it != desc_cache().end()) return it->second;
    }
    // p^n must fit comfortably in u64 for u128 products
    u64 pn = 1;
    for (u64 i = 0; i < n; ++i) {
        u128 t = (u128)pn * k->p;
        if (t > ((u128)1 << 62)) throw InvalidError("p^n too large for exact arithmetic");
        pn = (u64)t;
    }
    auto d = std::make_shared<GrDesc>();
    d->p = k->p;
    d->m = k->m;
    d->n = n;
    d->pn = pn;
    d->k = k;
    d->h.assign(k->hbar.begin(), k->hbar.end()); // coefficient-wise lift

    // sigma(x): Hensel root of h starting from x^p. h' is a unit at the root
    // because hbar is separable, so Newton z <- z - h(z)/h'(z) converges.
    const auto& h = d->h;
    std::vector<u64> hp(d->m, 0); // derivative of h, degree <= m-1
    for (u64 i = 1; i <= d->m; ++i)
        hp[i - 1] = (u64)((u128)(h[i] % pn) * (i % pn) % pn);

    std::vector<u64> x(d->m, 0);
    if (d->m >= 2) x[1] = 1;
    else x[0] = 0;

    std::vector<u64> z;
    if (d->m == 1) {
        z.assign(1, 0); // x is congruent to -h[0]; sigma is identity on Z/pn anyway
        z[0] = (pn - h[0] % pn) % pn;
    } else {
        z = zpow(x, d->p, h, pn);
        u64 steps = 1;
        while ((1ull << steps) < n) ++steps;
        for (u64 s = 0; s < steps + 1; ++s) {
            std::vector<u64> hz = zeval(h, z, h, pn);
            std::vector<u64> hpz = zeval(std::vector<u64>(hp.begin(), hp.end()), z, h, pn);
            std::vector<u64> inv = zinv_unit(hpz, *d);
            std::vector<u64> delta = zmul(hz, inv, h, pn);
            z = zadd(z, zneg(delta, pn), pn);
        }
        // verify h(z) == 0
        std::vector<u64> check = zeval(h, z, h, pn);
        for (u64 v : check)
            if (v % pn) throw Error("internal: Frobenius lift did not converge");
    }

    // powers of sigma as matrices: sigma^j(x^i) = (sigma(x))^{i} iterated
    d->sigma_pows.resize(d->m);
    // sigma^0 = identity
    d->sigma_pows[0].assign(d->m, std::vector<u64>(d->m, 0));
    for (u64 i = 0; i < d->m; ++i) d->sigma_pows[0][i][i] = 1 % pn;
    if (d->m > 1) {
        // sigma^1 columns: images of basis x^i = z^i
        auto& s1 = d->sigma_pows;
        s1[1].assign(d->m, std::vector<u64>(d->m, 0));
        std::vector<u64> zi(d->m, 0);
        zi[0] = 1 % pn;
        for (u64 i = 0; i < d->m; ++i) {
            for (u64 r = 0; r < d->m; ++r) s1[1][r][i] = zi[r];
            if (i + 1 < d->m) zi = zmul(zi, z, h, pn);
        }
        // higher powers by matrix product
        for (u64 j = 2; j < d->m; ++j) {
            s1[j].assign(d->m, std::vector<u64>(d->m, 0));
            for (u64 r = 0; r < d->m; ++r)
                for (u64 c = 0; c < d->m; ++c) {
                    u128 acc = 0;
                    for (u64 t = 0; t < d->m; ++t)
                        acc += (u128)s1[1][r][t] * s1[j - 1][t][c] % pn;
                    s1[j][r][c] = (u64)(acc % pn);
                }
        }
    }

    GrDescPtr result = d;
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        desc_cache().emplace(CacheKey{k->p, k->m, n, k->hbar}, result);
    }
    return result;
}

GrDescPtr GrDesc::make(u64 p, u64 m, u64 n) { return make(FqDesc::make(p, m), n); }

GrElem GrElem::naive_lift(const GrDescPtr& R, const FqElem& a) {
    if (R->k.get() != a.k.get() && R->k->hbar != a.k->hbar)
        throw MismatchError("residue field mismatch in lift");
    GrElem e(R);
    for (u64 i = 0; i < R->m; ++i) e.c[i] = a.c[i] % R->pn;
    return e;
}

GrElem GrElem::operator+(const GrElem& o) const {
    if (R.get() != o.R.get()) throw MismatchError("ring mismatch in +");
    GrElem r(R);
    r.c = zadd(c, o.c, R->pn);
    return r;
}

GrElem GrElem::operator-() const {
    GrElem r(R);
    r.c = zneg(c, R->pn);
    return r;
}

GrElem GrElem::operator*(const GrElem& o) const {
    if (R.get() != o.R.get()) throw MismatchError("ring mismatch in *");
    GrElem r(R);
    r.c = zmul(c, o.c, R->h, R->pn);
    return r;
}

GrElem GrElem::pow(u64 e) const {
    GrElem r(R);
    r.c = zpow(c, e, R->h, R->pn);
    return r;
}

FqElem GrElem::residue() const {
    FqElem r(R->k);
    for (u64 i = 0; i < R->m; ++i) r.c[i] = c[i] % R->p;
    return r;
}

GrElem GrElem::inv() const {
    if (!is_unit()) throw InvalidError("inverse of non-unit in Galois ring");
    GrElem r(R);
    r.c = zinv_unit(c, *R);
    return r;
}

u64 GrElem::val_p() const {
    u64 best = R->n;
    for (u64 x : c) {
        if (!x) continue;
        u64 v = 0;
        while (x % R->p == 0) {
            x /= R->p;
            ++v;
        }
        if (v < best) best = v;
    }
    return best;
}

GrElem GrElem::div_exact_p(u64 k) const {
    if (k == 0) return *this;
    u64 pk = pow_u64(R->p, k);
    GrElem r(R);
    for (u64 i = 0; i < R->m; ++i) {
        if (c[i] % pk) throw PrecisionError("exact division by p^k failed");
        r.c[i] = c[i] / pk;
    }
    return r;
}

GrElem GrElem::mul_pk(u64 k) const {
    if (k >= R->n) return GrElem::zero(R);
    u64 pk = pow_u64(R->p, k);
    GrElem r(R);
    for (u64 i = 0; i < R->m; ++i) r.c[i] = (u64)((u128)c[i] * pk % R->pn);
    return r;
}

GrElem GrElem::sigma(u64 j) const {
    j %= R->m;
    if (j == 0) return *this;
    GrElem r(R);
    const auto& M = R->sigma_pows[j];
    for (u64 row = 0; row < R->m; ++row) {
        u128 acc = 0;
        for (u64 col = 0; col < R->m; ++col) acc += (u128)M[row][col] * c[col] % R->pn;
        r.c[row] = (u64)(acc % R->pn);
    }
    return r;
}

std::string GrElem::to_string() const {
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

GrElem teichmuller(const GrDescPtr& R, const FqElem& a) {
    // iterate z <- z^q; converges to the unique q-th root of itself over a
    GrElem z = GrElem::naive_lift(R, a);
    for (u64 i = 0; i <= R->n; ++i) z = z.pow(R->k->q);
    return z;
}

std::vector<FqElem> teichmuller_digits(const GrElem& a) {
    const GrDescPtr& R = a.R;
    std::vector<FqElem> digits;
    GrElem b = a;
    for (u64 i = 0; i < R->n; ++i) {
        FqElem tau = b.residue();
        digits.push_back(tau);
        GrElem t = teichmuller(R, tau);
        b = (b - t).div_exact_p(1);
    }
    return digits;
}

GrElem from_teichmuller_digits(const GrDescPtr& R, const std::vector<FqElem>& digits) {
    GrElem acc = GrElem::zero(R);
    for (size_t i = digits.size(); i-- > 0;) {
        acc = acc.mul_pk(1) + teichmuller(R, digits[i]);
    }
    return acc;
}

} // namespace wittcris
