#include "wittcris/dp_series.hpp"

namespace wittcris {

namespace {

void check_same(const DpSeries& x, const DpSeries& y) {
    if (!x.prof.same(y.prof)) throw MismatchError("divided-power profile mismatch");
}

void check_window(u64 r, u64 s) {
    if (s < 1 || r > s) throw InvalidError("window indices need 1 <= s and r <= s");
}

GrElem sigma_pow_neg(const GrElem& c, u64 s) {
    u64 m = c.R->m;
    return c.sigma((m - (s % m)) % m);
}

} // namespace

std::string DpSeries::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [a, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*x^<" + a.to_string() + ">";
    }
    if (trunc_loss) out += "  [beyond-cap terms dropped]";
    return out;
}

DpSeries dp_add(const DpSeries& x, const DpSeries& y) {
    check_same(x, y);
    DpSeries r = x;
    r.trunc_loss = x.trunc_loss || y.trunc_loss;
    for (const auto& [a, c] : y.terms) r.add_term(a, c);
    return r;
}

DpSeries dp_neg(const DpSeries& x) {
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss;
    for (const auto& [a, c] : x.terms) r.add_term(a, -c);
    return r;
}

DpSeries dp_sub(const DpSeries& x, const DpSeries& y) { return dp_add(x, dp_neg(y)); }

DpSeries dp_mul(const DpSeries& x, const DpSeries& y) {
    check_same(x, y);
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss || y.trunc_loss;
    for (const auto& [a, ca] : x.terms) {
        for (const auto& [b, cb] : y.terms) {
            PExp ab = a + b;
            u64 w = legendre_val(ab) - legendre_val(a) - legendre_val(b);
            r.add_term(ab, (ca * cb).mul_pk(w));
        }
    }
    return r;
}

DpSeries dp_scale(const GrElem& c, const DpSeries& x) {
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss;
    for (const auto& [a, cx] : x.terms) r.add_term(a, c * cx);
    return r;
}

DpSeries dp_scale_pk(const DpSeries& x, u64 k) {
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss;
    for (const auto& [a, cx] : x.terms) r.add_term(a, cx.mul_pk(k));
    return r;
}

DpSeries dp_div_exact_p(const DpSeries& x, u64 k) {
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss;
    for (const auto& [a, cx] : x.terms) r.add_term(a, cx.div_exact_p(k));
    return r;
}

u64 dp_val_p(const DpSeries& x) {
    u64 best = x.prof.R->n;
    for (const auto& [a, c] : x.terms) {
        u64 v = c.val_p();
        if (v < best) best = v;
    }
    return best;
}

namespace {

// shared body of the two Frobenius flavours
DpSeries frob_impl(const DpSeries& x, bool twist_coeff) {
    DpSeries r(x.prof);
    r.trunc_loss = x.trunc_loss;
    for (const auto& [a, c] : x.terms) {
        GrElem c2 = (twist_coeff ? c.sigma() : c).mul_pk(a.floor_val());
        if (c2.is_zero()) continue; // dead coefficient: exponent growth is moot
        r.add_term(a.mul_pk(1), c2);
    }
    return r;
}

} // namespace

DpSeries dp_frobenius(const DpSeries& x) { return frob_impl(x, true); }
DpSeries dp_fc(const DpSeries& x) { return frob_impl(x, false); }

bool nygaard_contains(const DpSeries& x) {
    PExp one(x.prof.p(), 1, 0);
    for (const auto& [a, c] : x.terms) {
        if (a < one && c.val_p() < 1) return false;
    }
    return true;
}

bool nygaard_modified_contains(const DpSeries& x, u64 level) {
    if (level < 1 || level > x.prof.R->n)
        throw InvalidError("filtration level must lie in [1, coefficient length]");
    DpSeries cur = x;
    for (u64 i = 1; i <= level; ++i) {
        cur = dp_frobenius(cur);
        for (const auto& [a, c] : cur.terms)
            if (c.val_p() < i) return false;
    }
    return true;
}

WittVec<CTruncElem> nygaard_level_map(const DpSeries& x, u64 level) {
    if (level < 1 || level > x.prof.R->n)
        throw InvalidError("filtration level must lie in [1, coefficient length]");
    const GrDescPtr& R = x.prof.R;
    const FqDescPtr& k = R->k;
    const u64 p = R->p;
    CTruncElem model = CTruncElem::zero(k, x.prof.N);
    WittVec<CTruncElem> acc = witt_zero(p, level, model);
    PExp one(p, 1, 0);
    for (const auto& [a, c] : x.terms) {
        if (!(a < one)) continue; // exponents >= 1 die in the target
        std::vector<FqElem> digits = teichmuller_digits(c);
        for (u64 i = 0; i < level; ++i) {
            PExp ai = a.mul_pk(i);
            if (!(ai < one)) break; // deeper shifts only grow further
            FqElem coef = digits[i].pow(pow_u64(p, i));
            if (coef.is_zero()) continue;
            std::vector<CTruncElem> comps(level, model);
            comps[i] = CTruncElem::monomial(k, x.prof.N, coef, ai);
            acc = witt_add(acc, WittVec<CTruncElem>(p, std::move(comps)));
        }
    }
    return acc;
}

bool nygaard_kernel_oracle_contains(const DpSeries& x, u64 level) {
    WittVec<CTruncElem> img = nygaard_level_map(x, level);
    CTruncElem model = CTruncElem::zero(x.prof.R->k, x.prof.N);
    return img == witt_zero(x.prof.p(), level, model);
}

bool ars_contains(const DpSeries& x, u64 r, u64 s) {
    check_window(r, s);
    u64 d = s - r;
    for (const auto& [a, c] : x.terms)
        if (c.val_p() + t_sum(a, s) < d) return false;
    return true;
}

DpSeries ars_apply_m(const DpSeries& x, u64 r, u64 s) {
    check_window(r, s);
    u64 d = s - r;
    DpSeries out = dp_neg(x);
    for (const auto& [a, c] : x.terms) {
        u64 t = t_sum(a, s);
        GrElem c2 = c.sigma(s % x.prof.R->m);
        if (t >= d) c2 = c2.mul_pk(t - d);
        else c2 = c2.div_exact_p(d - t); // exact precisely on the window
        out.add_term(a.mul_pk(s), c2);
    }
    return out;
}

namespace {

// one monomial of the mod-p equation M(a) == c x^<alpha>; appends to `out`
void ars_solve_term(DpSeries& out, const PExp& a, const GrElem& c, u64 r, u64 s) {
    const DpProfile& prof = out.prof;
    const u64 d = s - r;
    const u64 t = t_sum(a, s);
    if (t > d) {
        out.add_term(a, -c);
        return;
    }
    if (t == d) {
        if (a.is_zero())
            throw ClosednessError(
                "constant slot requires solving a twisted Artin-Schreier equation, "
                "which has no solution over the finite coefficient ring in general");
        PExp a2 = a.mul_pk(s);
        if (a2.floor_val() > prof.D || (a2.floor_val() == prof.D && !a2.is_integer()))
            throw TruncationError("solution support needs exponent " + a2.to_string() +
                                  " beyond the degree cap " + std::to_string(prof.D));
        out.add_term(a, -c);
        ars_solve_term(out, a2, c.sigma(s % prof.R->m), r, s);
        return;
    }
    // t < d forces alpha < 1: take the p^s-th root of the slot
    if (a.v + s > prof.N)
        throw TruncationError("solution support needs denominator depth " +
                              std::to_string(a.v + s) + " beyond the profile bound " +
                              std::to_string(prof.N));
    PExp a2 = a.div_pk(s);
    u64 lambda = d - t_sum(a2, s);
    if (lambda >= prof.R->n)
        throw PrecisionError("solution coefficient p^" + std::to_string(lambda) +
                             " vanishes at coefficient length " + std::to_string(prof.R->n));
    out.add_term(a2, sigma_pow_neg(c, s).mul_pk(lambda));
}

} // namespace

DpSeries ars_solve(const DpSeries& b, u64 r, u64 s) {
    check_window(r, s);
    DpSeries out(b.prof);
    for (const auto& [a, c] : b.terms) {
        if (c.val_p() >= 1) continue; // already zero mod p
        ars_solve_term(out, a, c, r, s);
    }
    return out;
}

ArsExactResult ars_solve_exact(const DpSeries& b, u64 r, u64 s) {
    check_window(r, s);
    const u64 n = b.prof.R->n;
    DpSeries sol(b.prof);
    for (u64 rounds = 0; rounds <= n; ++rounds) {
        DpSeries res = dp_sub(b, ars_apply_m(sol, r, s));
        u64 val = dp_val_p(res);
        if (res.is_zero()) return {sol, n};
        DpSeries delta;
        try {
            delta = ars_solve(dp_div_exact_p(res, val), r, s);
        } catch (const TruncationError&) {
            if (val == 0) throw; // the mod-p problem itself is out of window
            break;
        } catch (const PrecisionError&) {
            if (val == 0) throw;
            break;
        }
        DpSeries cand = dp_add(sol, dp_scale_pk(delta, val));
        DpSeries res2 = dp_sub(b, ars_apply_m(cand, r, s));
        if (dp_val_p(res2) <= val) break; // precision ceiling of the coefficient ring
        sol = cand;
    }
    DpSeries final_res = dp_sub(b, ars_apply_m(sol, r, s));
    return {sol, final_res.is_zero() ? n : dp_val_p(final_res)};
}

DpSeries fc_minus_one_solve(const DpSeries& b) {
    PExp zero_exp(b.prof.p(), 0, 0);
    if (!b.coeff(zero_exp).is_zero())
        throw ClosednessError(
            "the exponent-zero slot is fixed by the cyclic Frobenius, so targets with a "
            "constant term have no solution in the truncated model");
    DpSeries acc(b.prof);
    DpSeries cur = b;
    const u64 guard = b.prof.N + b.prof.R->n + 8;
    for (u64 i = 0; !cur.is_zero(); ++i) {
        if (i > guard) throw Error("internal: geometric series for the cyclic solver did not terminate");
        acc = dp_add(acc, cur);
        cur = dp_fc(cur);
    }
    return dp_neg(acc);
}

} // namespace wittcris
