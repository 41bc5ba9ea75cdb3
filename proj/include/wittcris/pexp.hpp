#pragma once

// Nonnegative exponents of the form u / p^v, normalized so that v = 0 or
// p does not divide u.  These index the divided-power monomials.

#include "common.hpp"

namespace wittcris {

struct PExp {
    u64 p = 2;
    u64 u = 0; // numerator
    u64 v = 0; // denominator exponent: value is u / p^v

    PExp() = default;
    PExp(u64 p_, u64 u_, u64 v_) : p(p_), u(u_), v(v_) { normalize(); }

    void normalize() {
        if (u == 0) {
            v = 0;
            return;
        }
        while (v > 0 && u % p == 0) {
            u /= p;
            --v;
        }
    }

    bool is_zero() const { return u == 0; }
    bool is_integer() const { return v == 0; }
    u64 floor_val() const { return v == 0 ? u : u / pow_u64(p, v); }

    // value comparison via cross multiplication in 128 bits
    static int cmp(const PExp& a, const PExp& b) {
        if (a.p != b.p) throw MismatchError("exponent prime mismatch");
        u128 lhs = (u128)a.u * pow_u64(a.p, b.v);
        u128 rhs = (u128)b.u * pow_u64(a.p, a.v);
        if (lhs < rhs) return -1;
        if (lhs > rhs) return 1;
        return 0;
    }
    friend bool operator<(const PExp& a, const PExp& b) { return cmp(a, b) < 0; }
    friend bool operator==(const PExp& a, const PExp& b) {
        return a.p == b.p && a.u == b.u && a.v == b.v;
    }
    friend bool operator!=(const PExp& a, const PExp& b) { return !(a == b); }
    friend bool operator<=(const PExp& a, const PExp& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const PExp& a, const PExp& b) { return cmp(a, b) >= 0; }
    friend bool operator>(const PExp& a, const PExp& b) { return cmp(a, b) > 0; }

    PExp operator+(const PExp& o) const {
        if (p != o.p) throw MismatchError("exponent prime mismatch");
        u64 vm = v > o.v ? v : o.v;
        u128 a = (u128)u * pow_u64(p, vm - v);
        u128 b = (u128)o.u * pow_u64(p, vm - o.v);
        u128 s = a + b;
        if (s > ~(u64)0) throw Error("exponent numerator overflow");
        return PExp(p, (u64)s, vm);
    }

    // multiply by p^k (k may push the value up); exact
    PExp mul_pk(u64 k) const {
        if (u == 0) return *this;
        if (k <= v) return PExp(p, u, v - k);
        u64 extra = k - v;
        u64 nu = u;
        for (u64 i = 0; i < extra; ++i) {
            u128 t = (u128)nu * p;
            if (t > ~(u64)0) throw Error("exponent numerator overflow");
            nu = (u64)t;
        }
        return PExp(p, nu, 0);
    }

    // divide by p^k
    PExp div_pk(u64 k) const { return PExp(p, u, v + k); }

    std::string to_string() const {
        if (v == 0) return std::to_string(u);
        return std::to_string(u) + "/" + std::to_string(pow_u64(p, v));
    }
};

// v_p(floor(alpha)!) by the factorial valuation formula
inline u64 legendre_val(const PExp& a) {
    u64 f = a.floor_val();
    u64 total = 0;
    u64 q = a.p;
    while (q <= f) {
        total += f / q;
        if (q > f / a.p) break; // next q would overflow past f anyway
        q *= a.p;
    }
    return total;
}

// t_s(alpha) = sum_{i=0}^{s-1} floor(alpha * p^i)
inline u64 t_sum(const PExp& a, u64 s) {
    u64 total = 0;
    for (u64 i = 0; i < s; ++i) total += a.mul_pk(i).floor_val();
    return total;
}

} // namespace wittcris
