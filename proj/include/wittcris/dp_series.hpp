#pragma once

// Truncated divided-power series: finite W_n(F_q)-combinations of monomials
// x^<alpha> with alpha = u/p^v, v <= N, alpha <= D.  The span of exponents
// beyond D is an ideal stable under every operator implemented here, so the
// quotient is an honest ring; drops are recorded in a sticky flag.
//
// Normalization: x^<alpha> stands for x^alpha / p^L(alpha) with
// L(alpha) = v_p(floor(alpha)!), which fixes all structure constants.

#include "common.hpp"
#include "ctrunc.hpp"
#include "galois_ring.hpp"
#include "pexp.hpp"
#include "witt.hpp"

#include <map>

namespace wittcris {

struct DpProfile {
    GrDescPtr R; // coefficient ring W_n(F_{p^m})
    u64 N = 0;   // max denominator exponent of stored monomials
    u64 D = 1;   // max exponent value (inclusive integer cap)

    DpProfile() = default;
    DpProfile(GrDescPtr R_, u64 N_, u64 D_) : R(std::move(R_)), N(N_), D(D_) {
        if (!R) throw InvalidError("profile needs a coefficient ring");
        if (D < R->n)
            throw InvalidError("degree cap must be at least the coefficient length "
                               "for the exponent ideal to absorb Frobenius images");
    }
    bool same(const DpProfile& o) const {
        return R.get() == o.R.get() && N == o.N && D == o.D;
    }
    u64 p() const { return R->p; }
};

struct DpSeries {
    DpProfile prof;
    std::map<PExp, GrElem> terms;
    bool trunc_loss = false; // some term fell beyond the degree cap

    DpSeries() = default;
    explicit DpSeries(DpProfile prof_) : prof(std::move(prof_)) {}

    static DpSeries zero(const DpProfile& prof) { return DpSeries(prof); }
    static DpSeries monomial(const DpProfile& prof, const GrElem& c, const PExp& a) {
        DpSeries s(prof);
        s.add_term(a, c);
        return s;
    }

    // merge one term; zero coefficients prune, beyond-cap drops set the flag
    void add_term(const PExp& a, const GrElem& c) {
        if (a.p != prof.p()) throw MismatchError("exponent prime mismatch");
        if (c.R.get() != prof.R.get()) throw MismatchError("coefficient ring mismatch");
        if (c.is_zero()) return;
        if (a.v > prof.N)
            throw TruncationError("denominator depth " + std::to_string(a.v) +
                                  " exceeds profile bound " + std::to_string(prof.N));
        if (a.floor_val() > prof.D || (a.floor_val() == prof.D && !a.is_integer())) {
            trunc_loss = true;
            return;
        }
        auto it = terms.find(a);
        if (it == terms.end()) {
            terms.emplace(a, c);
        } else {
            GrElem s = it->second + c;
            if (s.is_zero()) terms.erase(it);
            else it->second = s;
        }
    }

    bool is_zero() const { return terms.empty(); }

    GrElem coeff(const PExp& a) const {
        auto it = terms.find(a);
        return it == terms.end() ? GrElem::zero(prof.R) : it->second;
    }

    // structural equality of the pruned maps; the loss flag is metadata
    friend bool operator==(const DpSeries& x, const DpSeries& y) { return x.terms == y.terms; }
    friend bool operator!=(const DpSeries& x, const DpSeries& y) { return !(x == y); }

    std::string to_string() const;
};

DpSeries dp_add(const DpSeries& x, const DpSeries& y);
DpSeries dp_neg(const DpSeries& x);
DpSeries dp_sub(const DpSeries& x, const DpSeries& y);
DpSeries dp_mul(const DpSeries& x, const DpSeries& y);
DpSeries dp_scale(const GrElem& c, const DpSeries& x);
DpSeries dp_scale_pk(const DpSeries& x, u64 k);
// exact division of all coefficients by p^k; throws PrecisionError if inexact
DpSeries dp_div_exact_p(const DpSeries& x, u64 k);
// minimal coefficient valuation over all stored terms (n for the zero series)
u64 dp_val_p(const DpSeries& x);

// sigma-semilinear divided-power Frobenius: b x^<a> -> sigma(b) p^floor(a) x^<pa>
DpSeries dp_frobenius(const DpSeries& x);
// exponent-only Frobenius (coefficients untouched): b x^<a> -> b p^floor(a) x^<pa>
DpSeries dp_fc(const DpSeries& x);

// first filtration level: all coefficients at exponents < 1 divisible by p
bool nygaard_contains(const DpSeries& x);

// level-l filtration by iterated divisibility: p^i divides F^i(x), i = 1..l
bool nygaard_modified_contains(const DpSeries& x, u64 level);

// independent membership oracle: the canonical additive map onto length-l
// Witt vectors of the truncated monomial algebra kills exactly the level-l
// members.  Kept separate from the divisibility route so the two can be
// compared on random inputs.
WittVec<CTruncElem> nygaard_level_map(const DpSeries& x, u64 level);
bool nygaard_kernel_oracle_contains(const DpSeries& x, u64 level);

// window submodule A^{r,s}: v_p(coeff) + t_s(alpha) >= s - r for every term
bool ars_contains(const DpSeries& x, u64 r, u64 s);

// exact evaluation of M = p^{r-s} F^s - id on members of A^{r,s}
DpSeries ars_apply_m(const DpSeries& x, u64 r, u64 s);

// solve M(a) == b mod p with a in A^{r,s} (surjectivity of M on the window
// reduction); throws ClosednessError when the constant slot blocks over a
// finite residue field, TruncationError/PrecisionError at window edges
DpSeries ars_solve(const DpSeries& b, u64 r, u64 s);

// Successive approximation for M(a) == b.  Deep fractional slots force
// solution coefficients of the form p^lambda * unit; once lambda plus the
// current approximation order reaches the coefficient length, the refinement
// vanishes and the residual valuation can no longer grow.  The result is the
// best approximant together with the exact valuation of the true residual
// b - M(sol), computed directly (n means the equation closed on the nose).
// The first round propagates solver errors; refinement rounds that fall off
// the profile stop gracefully at the precision already achieved.
struct ArsExactResult {
    DpSeries sol;
    u64 achieved = 0;
};
ArsExactResult ars_solve_exact(const DpSeries& b, u64 r, u64 s);

// exact solution x of fc(x) - x == b; constant slots are unsolvable here
DpSeries fc_minus_one_solve(const DpSeries& b);

} // namespace wittcris
