#pragma once

// The target coefficient ring for the length-l kernel oracle: the span over
// F_{p^m} of monomials x^alpha with alpha = u/p^v in [0,1) and v <= N, with
// every product reaching alpha >= 1 collapsing to zero.  That ideal is stable
// under multiplication and p-th powers, so the quotient is an honest ring.

#include "common.hpp"
#include "fq.hpp"
#include "pexp.hpp"

#include <map>

namespace wittcris {

struct CTruncElem {
    FqDescPtr k;
    u64 N = 0; // maximal denominator exponent admitted at construction
    std::map<PExp, FqElem> terms;

    CTruncElem() = default;
    CTruncElem(FqDescPtr k_, u64 N_) : k(std::move(k_)), N(N_) {}

    static CTruncElem zero(const FqDescPtr& k, u64 N) { return CTruncElem(k, N); }
    static CTruncElem monomial(const FqDescPtr& k, u64 N, const FqElem& c, const PExp& a) {
        CTruncElem e(k, N);
        e.add_term(a, c);
        return e;
    }

    CTruncElem from_int_same(i128 v) const {
        CTruncElem e(k, N);
        e.add_term(PExp(k->p, 0, 0), FqElem::from_int(k, v));
        return e;
    }

    void add_term(const PExp& a, const FqElem& c) {
        if (a.p != k->p) throw MismatchError("exponent prime mismatch");
        if (c.is_zero()) return;
        if (a.u != 0 && PExp::cmp(a, PExp(k->p, 1, 0)) >= 0) return; // alpha >= 1 collapses
        if (a.v > N) throw TruncationError("denominator depth " + std::to_string(a.v) +
                                           " exceeds profile bound " + std::to_string(N));
        auto it = terms.find(a);
        if (it == terms.end()) {
            terms.emplace(a, c);
        } else {
            FqElem s = it->second + c;
            if (s.is_zero()) terms.erase(it);
            else it->second = s;
        }
    }

    bool is_zero() const { return terms.empty(); }

    void check_profile(const CTruncElem& o) const {
        if (k.get() != o.k.get() || N != o.N) throw MismatchError("truncation profile mismatch");
    }

    CTruncElem operator+(const CTruncElem& o) const {
        check_profile(o);
        CTruncElem r = *this;
        for (const auto& [a, c] : o.terms) r.add_term(a, c);
        return r;
    }
    CTruncElem operator-() const {
        CTruncElem r(k, N);
        for (const auto& [a, c] : terms) r.add_term(a, -c);
        return r;
    }
    CTruncElem operator-(const CTruncElem& o) const { return *this + (-o); }
    CTruncElem operator*(const CTruncElem& o) const {
        check_profile(o);
        CTruncElem r(k, N);
        for (const auto& [a, ca] : terms)
            for (const auto& [b, cb] : o.terms) r.add_term(a + b, ca * cb);
        return r;
    }
    CTruncElem pow(u64 e) const {
        CTruncElem r = from_int_same(1);
        CTruncElem b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    friend bool operator==(const CTruncElem& a, const CTruncElem& b) {
        return a.terms == b.terms;
    }
    friend bool operator!=(const CTruncElem& a, const CTruncElem& b) { return !(a == b); }

    std::string to_string() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [a, c] : terms) {
            if (!s.empty()) s += " + ";
            s += "(" + c.to_string() + ")*x^[" + a.to_string() + "]";
        }
        return s;
    }
};

} // namespace wittcris
