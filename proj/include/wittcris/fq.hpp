#pragma once

// The finite field F_{p^m} presented as F_p[x]/(hbar) for a fixed monic
// irreducible hbar.  Elements are coefficient vectors in degree < m.

#include "common.hpp"

#include <memory>
#include <vector>

namespace wittcris {

struct FqDesc;
using FqDescPtr = std::shared_ptr<const FqDesc>;

struct FqDesc {
    u64 p = 2;
    u64 m = 1;
    u64 q = 2;                  // p^m
    std::vector<u64> hbar;      // monic defining poly, coeffs in [0,p), size m+1

    static FqDescPtr make(u64 p, u64 m);                               // table lookup
    static FqDescPtr make(u64 p, u64 m, const std::vector<u64>& hbar); // explicit
};

struct FqElem {
    FqDescPtr k;
    std::vector<u64> c; // size m, entries in [0, p)

    FqElem() = default;
    explicit FqElem(FqDescPtr k_) : k(std::move(k_)), c(k->m, 0) {}

    static FqElem zero(const FqDescPtr& k) { return FqElem(k); }
    static FqElem one(const FqDescPtr& k) {
        FqElem e(k);
        if (k->m > 0) e.c[0] = 1 % k->p;
        return e;
    }
    static FqElem gen(const FqDescPtr& k) { // the class of x
        FqElem e(k);
        if (k->m >= 2) e.c[1] = 1;
        else e.c[0] = 0; // m == 1: no generator beyond prime field; stays 0
        return e;
    }
    static FqElem from_int(const FqDescPtr& k, i128 v) {
        FqElem e(k);
        i128 r = v % (i128)k->p;
        if (r < 0) r += (i128)k->p;
        e.c[0] = (u64)r;
        return e;
    }
    // generic-ring protocol: integer image in the same ring as *this
    FqElem from_int_same(i128 v) const { return from_int(k, v); }

    bool is_zero() const {
        for (u64 x : c)
            if (x) return false;
        return true;
    }

    friend bool operator==(const FqElem& a, const FqElem& b) { return a.c == b.c; }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }
    friend bool operator<(const FqElem& a, const FqElem& b) { return a.c < b.c; } // container order

    FqElem operator+(const FqElem& o) const;
    FqElem operator-() const;
    FqElem operator-(const FqElem& o) const { return *this + (-o); }
    FqElem operator*(const FqElem& o) const;
    FqElem pow(u64 e) const;
    FqElem inv() const; // throws InvalidError on zero
    FqElem frob() const { return pow(k->p); }

    // index in [0, q): base-p digits, c[0] least significant
    u64 index() const {
        u64 v = 0;
        for (size_t i = c.size(); i-- > 0;) v = v * k->p + c[i];
        return v;
    }
    static FqElem from_index(const FqDescPtr& k, u64 idx) {
        FqElem e(k);
        for (u64 i = 0; i < k->m; ++i) {
            e.c[i] = idx % k->p;
            idx /= k->p;
        }
        return e;
    }

    std::string to_string() const;
};

// dense F_p[x] helpers used by both the field and the Galois ring lift
namespace polyfp {
// reduce a (any size) modulo monic poly h, coefficients mod p
std::vector<u64> mod(std::vector<u64> a, const std::vector<u64>& h, u64 p);
std::vector<u64> mul_mod(const std::vector<u64>& a, const std::vector<u64>& b,
                         const std::vector<u64>& h, u64 p);
std::vector<u64> pow_mod(const std::vector<u64>& a, u128 e, const std::vector<u64>& h, u64 p);
bool is_irreducible(const std::vector<u64>& h, u64 p);
} // namespace polyfp

} // namespace wittcris
