#include "wittcris/sigma_module.hpp"

#include <algorithm>
#include <numeric>

namespace wittcris {

SigmaModule::SigmaModule(GrDescPtr R_, GrMat A_) : R(std::move(R_)), A(std::move(A_)) {
    if (!R) throw InvalidError("sigma module: null ring");
    if (A.rows != A.cols) throw InvalidError("sigma module: matrix is not square");
    if (A.rows > 0 && A.R != R) throw MismatchError("sigma module: matrix ring mismatch");
    if (A.rows == 0) A.R = R;
}

std::vector<GrElem> SigmaModule::apply_f(const std::vector<GrElem>& v) const {
    std::vector<GrElem> w = v;
    for (GrElem& e : w) e = e.sigma();
    return gr_apply(A, w);
}

GrMat SigmaModule::f_power_matrix(u64 t) const {
    GrMat B = GrMat::identity(R, rank());
    for (u64 j = 0; j < t; ++j) B = gr_mul(B, A.sigma(j % std::max<u64>(R->m, 1)));
    return B;
}

Frac::Frac(u64 num_, u64 den_) : num(num_), den(den_) {
    if (den == 0) throw InvalidError("fraction with zero denominator");
    u64 g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Frac::to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<std::pair<Frac, u64>> newton_slopes(const SigmaModule& M) {
    const u64 m = M.R->m;
    const u64 r = M.rank();
    if (r == 0) return {};
    GrMat B = M.f_power_matrix(m);
    std::vector<GrElem> c = gr_charpoly(B);
    if (c[0].is_zero())
        throw PrecisionError(
            "newton slopes: constant coefficient vanishes at the working length; "
            "increase the length to see the total slope mass");

    // visible points (i, val) of the valuation polygon; absent points have
    // valuation >= n > val(c_0) and cannot touch the lower hull
    struct Pt {
        i64 x, y;
    };
    std::vector<Pt> pts;
    for (u64 i = 0; i <= r; ++i)
        if (!c[i].is_zero()) pts.push_back({(i64)i, (i64)c[i].val_p()});

    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            i128 cross = (i128)(b.x - a.x) * (pt.y - a.y) - (i128)(b.y - a.y) * (pt.x - a.x);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    std::vector<std::pair<Frac, u64>> slopes;
    for (u64 h = 1; h < hull.size(); ++h) {
        i64 width = hull[h].x - hull[h - 1].x;
        i64 drop = hull[h - 1].y - hull[h].y; // root valuation * width
        if (drop < 0) throw Error("newton slopes: polygon rose toward the leading coefficient");
        slopes.emplace_back(Frac((u64)drop, (u64)width * m), (u64)width);
    }
    std::sort(slopes.begin(), slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Frac, u64>> merged;
    for (const auto& sm : slopes) {
        if (!merged.empty() && merged.back().first == sm.first)
            merged.back().second += sm.second;
        else
            merged.push_back(sm);
    }
    return merged;
}

GrMat f_linearized_matrix(const SigmaModule& M) {
    const u64 r = M.rank(), m = M.R->m;
    GrDescPtr Zn = GrDesc::make(M.R->p, 1, M.R->n);
    GrMat T(Zn, r * m, r * m);
    for (u64 i = 0; i < r; ++i)
        for (u64 k = 0; k < m; ++k) {
            std::vector<GrElem> v(r, GrElem::zero(M.R));
            v[i].c[k] = 1;
            std::vector<GrElem> w = M.apply_f(v);
            for (u64 j = 0; j < r; ++j)
                for (u64 t = 0; t < m; ++t) T.at(j * m + t, i * m + k).c[0] = w[j].c[t];
        }
    return T;
}

std::vector<std::vector<GrElem>> fixed_points_f1(const SigmaModule& M) {
    const u64 r = M.rank(), m = M.R->m;
    GrMat T = f_linearized_matrix(M);
    GrMat TmI = gr_sub(T, GrMat::identity(T.R, T.rows));
    std::vector<std::vector<GrElem>> lin = gr_kernel(TmI);
    std::vector<std::vector<GrElem>> out;
    out.reserve(lin.size());
    for (const auto& g : lin) {
        std::vector<GrElem> v(r, GrElem::zero(M.R));
        for (u64 j = 0; j < r; ++j)
            for (u64 t = 0; t < m; ++t) v[j].c[t] = g[j * m + t].c[0];
        out.push_back(std::move(v));
    }
    return out;
}

UnitRootPart unit_root_part(const SigmaModule& M) {
    const u64 r = M.rank(), m = M.R->m, n = M.R->n;
    UnitRootPart out;
    if (r == 0) {
        out.basis = GrMat(M.R, 0, 0);
        out.sub = SigmaModule(M.R, GrMat(M.R, 0, 0));
        return out;
    }
    // The span transition S -> <F(S)> is a map of submodules (semilinearity
    // moves coefficients through sigma), so the image chain is genuinely
    // stable from the first repeat onward.
    GrMat B = M.A;
    GrSpan S = gr_column_span(B);
    const u64 cap = (n + 1) * r * m + 2;
    for (u64 t = 1;; ++t) {
        if (t > cap) throw PrecisionError("unit-root part: image chain failed to stabilize");
        B = gr_mul(B, M.A.sigma(t % m));
        GrSpan S2 = gr_column_span(B);
        bool stable = S2.same_span(S);
        S = std::move(S2);
        if (stable) break;
    }

    // Free generators of the stable image: the staircase form can hide a free
    // module behind torsion-looking pivots, so read the module structure off
    // a diagonal decomposition of the stabilized matrix instead.
    GrSmith sm = gr_smith(B);
    std::vector<u64> unit_cols;
    for (u64 i = 0; i < sm.diag_count; ++i) {
        if (sm.dvals[i] == 0)
            unit_cols.push_back(i);
        else
            throw PrecisionError("unit-root part: torsion shadow in the stable image "
                                 "at this length");
    }
    const u64 u = unit_cols.size();
    GrMat Uinv = gr_inverse(sm.U);
    GrMat basis(M.R, r, u);
    for (u64 j = 0; j < u; ++j)
        for (u64 i = 0; i < r; ++i) basis.at(i, j) = Uinv.at(i, unit_cols[j]);

    GrMat C = gr_mul(M.A, basis.sigma());
    GrMat Ap(M.R, u, u);
    for (u64 j = 0; j < u; ++j) {
        GrSolve sol = gr_solve_one(basis, C.col(j));
        if (!sol.ok)
            throw PrecisionError("unit-root part: the unit block does not split at this length");
        for (u64 i = 0; i < u; ++i) Ap.at(i, j) = sol.x[i];
    }
    out.basis = std::move(basis);
    out.sub = SigmaModule(M.R, std::move(Ap));
    return out;
}

u64 unit_root_rank(const SigmaModule& M) { return unit_root_part(M).basis.cols; }

IsocrystalSolution isocrystal_solve(const DpProfile& prof, u64 r, u64 s, const std::vector<DpSeries>& b) {
    if (s == 0 || r > s) throw InvalidError("isocrystal: slope must have 0 <= r <= s with s >= 1");
    if (b.size() != s) throw MismatchError("isocrystal: need one target per cyclic component");
    for (const DpSeries& bi : b)
        if (!bi.prof.same(prof)) throw MismatchError("isocrystal: target profile mismatch");
    const u64 n = prof.R->n;

    for (u64 lambda = s - 1; lambda <= s; ++lambda) {
        try {
            // closing equation for u_s: window operator at (r, s) applied to
            // u_s equals sum_{j=1}^{s} p^{lambda-s+j} frob^{s-j}(b_j)
            DpSeries rhs = DpSeries::zero(prof);
            for (u64 j = 1; j <= s; ++j) {
                DpSeries term = b[j - 1];
                for (u64 it = 0; it + j < s; ++it) term = dp_frobenius(term);
                rhs = dp_add(rhs, dp_scale_pk(term, lambda - s + j));
            }
            ArsExactResult closing = ars_solve_exact(rhs, r, s);

            // Forward components from the closed formula
            //   u_i = p^{r-i} frob^i(u_s) - sum_{j<=i} p^{lambda-i+j} frob^{i-j}(b_j).
            // Dividing a freshly formed p-multiple would discard its top
            // digit, so divisions happen only when the slope forces them
            // (i > r), and the resulting precision loss is measured below.
            std::vector<DpSeries> u(s, DpSeries::zero(prof));
            u[s - 1] = closing.sol;
            for (u64 i = 1; i + 1 <= s; ++i) {
                DpSeries acc = u[s - 1];
                for (u64 it = 0; it < i; ++it) acc = dp_frobenius(acc);
                acc = (r >= i) ? dp_scale_pk(acc, r - i) : dp_div_exact_p(acc, i - r);
                for (u64 j = 1; j <= i; ++j) {
                    DpSeries term = b[j - 1];
                    for (u64 it = 0; it + j < i; ++it) term = dp_frobenius(term);
                    acc = dp_sub(acc, dp_scale_pk(term, lambda - i + j));
                }
                u[i - 1] = acc;
            }

            // honest residuals of all s identities
            u64 prec = n;
            DpSeries res1 = dp_sub(dp_sub(dp_scale_pk(dp_frobenius(u[s - 1]), r), dp_scale_pk(u[0], 1)),
                                   dp_scale_pk(b[0], lambda + 1));
            prec = std::min(prec, dp_val_p(res1));
            for (u64 i = 2; i <= s; ++i) {
                DpSeries resi = dp_sub(dp_sub(dp_frobenius(u[i - 2]), dp_scale_pk(u[i - 1], 1)),
                                       dp_scale_pk(b[i - 1], lambda + 1));
                prec = std::min(prec, dp_val_p(resi));
            }
            IsocrystalSolution out;
            out.u = std::move(u);
            out.scale_exp = lambda;
            out.precision = prec;
            return out;
        } catch (const PrecisionError&) {
            if (lambda == s) throw;
        }
    }
    throw PrecisionError("isocrystal: no integral scaled solution at this length");
}

} // namespace wittcris
