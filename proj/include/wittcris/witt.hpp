#pragma once

// Witt vectors of finite length over an arbitrary commutative ring, driven by
// the universal structure polynomials.  The polynomials are computed once per
// (p, length) by solving the ghost-component equations over Z with exact
// division, then cached; every ring operation is evaluation of those
// polynomials.  This keeps a single code path honest for all coefficient
// rings (integers, finite fields, Galois rings, truncated monomial algebras).

#include "common.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace wittcris {

// Sparse multivariate polynomial over Z with checked 128-bit coefficients.
struct UPoly {
    using Mono = std::vector<std::uint16_t>;
    u64 nvars = 0;
    std::map<Mono, i128> terms; // monomial exponents -> nonzero coefficient

    static UPoly zero(u64 nvars) {
        UPoly f;
        f.nvars = nvars;
        return f;
    }
    static UPoly constant(u64 nvars, i128 c) {
        UPoly f = zero(nvars);
        if (c != 0) f.terms.emplace(Mono(nvars, 0), c);
        return f;
    }
    static UPoly var(u64 nvars, u64 idx, u64 exp = 1) {
        UPoly f = zero(nvars);
        Mono mo(nvars, 0);
        if (exp > 0xffff) throw Error("monomial exponent overflow");
        mo[idx] = (std::uint16_t)exp;
        f.terms.emplace(std::move(mo), 1);
        return f;
    }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly pow(u64 e) const;
    UPoly scaled(i128 c) const;
    UPoly div_exact(i128 c) const; // throws Error when a coefficient resists
    u64 term_count() const { return terms.size(); }
};

// All universal polynomials for length-`len` Witt vectors at the prime p.
struct WittOps {
    u64 p = 2;
    u64 len = 1;
    std::vector<UPoly> ghost; // len polys in len vars
    std::vector<UPoly> sum;   // len polys in 2*len vars (X then Y block)
    std::vector<UPoly> prod;  // len polys in 2*len vars
    std::vector<UPoly> diff;  // len polys in 2*len vars
    std::vector<UPoly> neg;   // len polys in len vars
    std::vector<UPoly> frob;  // len-1 polys in len vars (component i uses ghost i+1)

    static const WittOps& get(u64 p, u64 len); // process-wide cache
};

// Ring protocol: R supports a+b, a*b, -a, a==b, a.pow(u64) and
// a.from_int_same(i128), the last giving the integer image in a's ring.
template <class R>
R upoly_eval(const UPoly& f, const std::vector<R>& args, const R& model) {
    R acc = model.from_int_same(0);
    for (const auto& [mono, coeff] : f.terms) {
        R term = model.from_int_same(coeff);
        for (u64 i = 0; i < f.nvars && i < mono.size(); ++i)
            if (mono[i]) term = term * args[i].pow(mono[i]);
        acc = acc + term;
    }
    return acc;
}

// Z itself as a protocol ring, for torsion-free oracle tests.
struct Int128Ring {
    i128 v = 0;
    Int128Ring() = default;
    explicit Int128Ring(i128 x) : v(x) {}

    Int128Ring from_int_same(i128 x) const { return Int128Ring(x); }
    Int128Ring operator+(const Int128Ring& o) const { return Int128Ring(checked_add(v, o.v)); }
    Int128Ring operator*(const Int128Ring& o) const { return Int128Ring(checked_mul(v, o.v)); }
    Int128Ring operator-() const { return Int128Ring(-v); }
    Int128Ring operator-(const Int128Ring& o) const { return Int128Ring(checked_add(v, -o.v)); }
    Int128Ring pow(u64 e) const {
        Int128Ring r(1), b(v);
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
    friend bool operator==(const Int128Ring& a, const Int128Ring& b) { return a.v == b.v; }
    friend bool operator!=(const Int128Ring& a, const Int128Ring& b) { return a.v != b.v; }
};

template <class R>
struct WittVec {
    u64 p = 2;
    std::vector<R> a;

    WittVec() = default;
    WittVec(u64 p_, std::vector<R> comps) : p(p_), a(std::move(comps)) {}

    u64 len() const { return a.size(); }
    const R& model() const {
        if (a.empty()) throw InvalidError("empty Witt vector has no model element");
        return a[0];
    }
    friend bool operator==(const WittVec& x, const WittVec& y) { return x.p == y.p && x.a == y.a; }
    friend bool operator!=(const WittVec& x, const WittVec& y) { return !(x == y); }
};

template <class R>
WittVec<R> witt_zero(u64 p, u64 len, const R& model) {
    std::vector<R> comps(len, model.from_int_same(0));
    return WittVec<R>(p, std::move(comps));
}

namespace detail {
template <class R>
std::vector<R> binary_args(const WittVec<R>& x, const WittVec<R>& y) {
    if (x.p != y.p || x.len() != y.len())
        throw MismatchError("Witt vector shape mismatch");
    std::vector<R> args;
    args.reserve(2 * x.len());
    for (const R& e : x.a) args.push_back(e);
    for (const R& e : y.a) args.push_back(e);
    return args;
}
} // namespace detail

template <class R>
WittVec<R> witt_add(const WittVec<R>& x, const WittVec<R>& y) {
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> args = detail::binary_args(x, y);
    std::vector<R> out;
    out.reserve(x.len());
    for (u64 i = 0; i < x.len(); ++i) out.push_back(upoly_eval(ops.sum[i], args, x.model()));
    return WittVec<R>(x.p, std::move(out));
}

template <class R>
WittVec<R> witt_mul(const WittVec<R>& x, const WittVec<R>& y) {
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> args = detail::binary_args(x, y);
    std::vector<R> out;
    out.reserve(x.len());
    for (u64 i = 0; i < x.len(); ++i) out.push_back(upoly_eval(ops.prod[i], args, x.model()));
    return WittVec<R>(x.p, std::move(out));
}

template <class R>
WittVec<R> witt_sub(const WittVec<R>& x, const WittVec<R>& y) {
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> args = detail::binary_args(x, y);
    std::vector<R> out;
    out.reserve(x.len());
    for (u64 i = 0; i < x.len(); ++i) out.push_back(upoly_eval(ops.diff[i], args, x.model()));
    return WittVec<R>(x.p, std::move(out));
}

template <class R>
WittVec<R> witt_neg(const WittVec<R>& x) {
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> out;
    out.reserve(x.len());
    for (u64 i = 0; i < x.len(); ++i) out.push_back(upoly_eval(ops.neg[i], x.a, x.model()));
    return WittVec<R>(x.p, std::move(out));
}

// Frobenius: length drops by one; component i satisfies ghost_i(F x) = ghost_{i+1}(x).
template <class R>
WittVec<R> witt_frobenius(const WittVec<R>& x) {
    if (x.len() < 2) throw InvalidError("Frobenius needs length >= 2");
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> out;
    out.reserve(x.len() - 1);
    for (u64 i = 0; i + 1 < x.len(); ++i) out.push_back(upoly_eval(ops.frob[i], x.a, x.model()));
    return WittVec<R>(x.p, std::move(out));
}

// Verschiebung: shift components up, prepend zero; length grows by one.
template <class R>
WittVec<R> verschiebung(const WittVec<R>& x) {
    std::vector<R> out;
    out.reserve(x.len() + 1);
    out.push_back(x.model().from_int_same(0));
    for (const R& e : x.a) out.push_back(e);
    return WittVec<R>(x.p, std::move(out));
}

// small integer scalar: repeated addition (used with k = p in identities)
template <class R>
WittVec<R> witt_smul_int(u64 k, const WittVec<R>& x) {
    WittVec<R> acc = witt_zero(x.p, x.len(), x.model());
    for (u64 i = 0; i < k; ++i) acc = witt_add(acc, x);
    return acc;
}

template <class R>
std::vector<R> ghost_components(const WittVec<R>& x) {
    const WittOps& ops = WittOps::get(x.p, x.len());
    std::vector<R> out;
    out.reserve(x.len());
    for (u64 i = 0; i < x.len(); ++i) out.push_back(upoly_eval(ops.ghost[i], x.a, x.model()));
    return out;
}

} // namespace wittcris
