#pragma once

// W_n(F_{p^m}) presented as the Galois ring (Z/p^n)[x]/(h), with h the
// coefficient-wise lift of the residue field's defining polynomial.  The
// Witt-vector Frobenius becomes the ring automorphism sigma fixing Z/p^n and
// reducing to the p-power map mod p; it is stored as a precomputed matrix.

#include "common.hpp"
#include "fq.hpp"

#include <memory>
#include <vector>

namespace wittcris {

struct GrDesc;
using GrDescPtr = std::shared_ptr<const GrDesc>;
struct GrElem;

struct GrDesc {
    u64 p = 2;
    u64 m = 1;
    u64 n = 1;      // length: ring is Z/p^n[x]/(h)
    u64 pn = 2;     // p^n (fits u64; enforced)
    FqDescPtr k;    // residue field
    std::vector<u64> h; // monic lift of k->hbar, coeffs in [0, pn)

    // sigma^j as an m x m matrix over Z/p^n, column i = sigma^j(x^i), j in [0, m)
    std::vector<std::vector<std::vector<u64>>> sigma_pows;

    static GrDescPtr make(u64 p, u64 m, u64 n);
    static GrDescPtr make(const FqDescPtr& k, u64 n);

    // same (p, m, defining poly) at a different length
    GrDescPtr with_length(u64 n2) const { return make(k, n2); }
};

struct GrElem {
    GrDescPtr R;
    std::vector<u64> c; // size m, entries in [0, pn)

    GrElem() = default;
    explicit GrElem(GrDescPtr R_) : R(std::move(R_)), c(R->m, 0) {}

    static GrElem zero(const GrDescPtr& R) { return GrElem(R); }
    static GrElem one(const GrDescPtr& R) {
        GrElem e(R);
        e.c[0] = 1 % R->pn;
        return e;
    }
    static GrElem from_int(const GrDescPtr& R, i128 v) {
        GrElem e(R);
        i128 r = v % (i128)R->pn;
        if (r < 0) r += (i128)R->pn;
        e.c[0] = (u64)r;
        return e;
    }
    // generic-ring protocol: integer image in the same ring as *this
    GrElem from_int_same(i128 v) const { return from_int(R, v); }
    // lift coefficients of a residue-field element (NOT the Teichmuller lift)
    static GrElem naive_lift(const GrDescPtr& R, const FqElem& a);

    bool is_zero() const {
        for (u64 x : c)
            if (x) return false;
        return true;
    }

    friend bool operator==(const GrElem& a, const GrElem& b) { return a.c == b.c; }
    friend bool operator!=(const GrElem& a, const GrElem& b) { return !(a == b); }
    friend bool operator<(const GrElem& a, const GrElem& b) { return a.c < b.c; } // container order

    GrElem operator+(const GrElem& o) const;
    GrElem operator-() const;
    GrElem operator-(const GrElem& o) const { return *this + (-o); }
    GrElem operator*(const GrElem& o) const;
    GrElem pow(u64 e) const;

    FqElem residue() const; // reduction mod p
    bool is_unit() const { return !residue().is_zero(); }
    GrElem inv() const;     // units only; throws InvalidError otherwise

    // p-adic valuation: min over coords of v_p, in [0, n]; zero gives n
    u64 val_p() const;
    bool divisible_by_p(u64 k = 1) const { return val_p() >= k; }
    // exact division by p^k; throws PrecisionError when not divisible
    GrElem div_exact_p(u64 k) const;
    GrElem mul_pk(u64 k) const; // multiply by p^k

    GrElem sigma(u64 j = 1) const;        // sigma^j, any j (reduced mod m)
    GrElem sigma_inv() const { return sigma(R->m - 1 + (R->m == 1 ? 1 : 0)); }

    std::string to_string() const;
};

// Teichmuller lift: the unique root of z^q = z reducing to a.
GrElem teichmuller(const GrDescPtr& R, const FqElem& a);

// Teichmuller digits: a = sum_i p^i * [tau_i], exactly n digits.
std::vector<FqElem> teichmuller_digits(const GrElem& a);
GrElem from_teichmuller_digits(const GrDescPtr& R, const std::vector<FqElem>& digits);

} // namespace wittcris
