#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wittcris/gr_linalg.hpp"
#include "wittcris/sigma_module.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace wittcris;

namespace {

GrElem rand_elem(const GrDescPtr& R, Rng& rng) {
    GrElem c(R);
    for (u64 i = 0; i < R->m; ++i) c.c[i] = rng.below(R->pn);
    return c;
}

GrMat rand_mat(const GrDescPtr& R, u64 rows, u64 cols, Rng& rng) {
    GrMat M(R, rows, cols);
    for (GrElem& e : M.a) e = rand_elem(R, rng);
    return M;
}

GrMat rand_unit_mat(const GrDescPtr& R, u64 k, Rng& rng) {
    for (int tries = 0; tries < 200; ++tries) {
        GrMat M = rand_mat(R, k, k, rng);
        if (gr_residue_rank(M) == k) return M;
    }
    throw Error("failed to sample an invertible matrix");
}

std::vector<GrElem> rand_vec(const GrDescPtr& R, u64 k, Rng& rng) {
    std::vector<GrElem> v(k, GrElem::zero(R));
    for (GrElem& e : v) e = rand_elem(R, rng);
    return v;
}

bool is_zero_vec(const std::vector<GrElem>& v) {
    return std::all_of(v.begin(), v.end(), [](const GrElem& e) { return e.is_zero(); });
}

// every element of a small ring, for exhaustive oracles
std::vector<GrElem> all_elems(const GrDescPtr& R) {
    u64 total = 1;
    for (u64 i = 0; i < R->m; ++i) total *= R->pn;
    std::vector<GrElem> out;
    out.reserve(total);
    for (u64 idx = 0; idx < total; ++idx) {
        GrElem e(R);
        u64 t = idx;
        for (u64 i = 0; i < R->m; ++i) {
            e.c[i] = t % R->pn;
            t /= R->pn;
        }
        out.push_back(e);
    }
    return out;
}

// all module elements generated by `gens` with coefficients in the full ring
std::set<std::vector<u64>> span_set(const GrDescPtr& R, u64 dim,
                                    const std::vector<std::vector<GrElem>>& gens) {
    std::vector<GrElem> coeffs = all_elems(R);
    std::set<std::vector<u64>> out;
    std::vector<std::vector<GrElem>> frontier{std::vector<GrElem>(dim, GrElem::zero(R))};
    std::set<std::vector<u64>> seen;
    auto key = [&](const std::vector<GrElem>& v) {
        std::vector<u64> k;
        for (const GrElem& e : v) k.insert(k.end(), e.c.begin(), e.c.end());
        return k;
    };
    seen.insert(key(frontier[0]));
    for (const auto& g : gens) {
        std::set<std::vector<u64>> next;
        std::vector<std::vector<GrElem>> nextv;
        for (const auto& base : frontier)
            for (const GrElem& c : coeffs) {
                std::vector<GrElem> v = base;
                for (u64 i = 0; i < dim; ++i) v[i] = v[i] + c * g[i];
                auto k = key(v);
                if (next.insert(k).second) nextv.push_back(v);
            }
        frontier = std::move(nextv);
        seen = std::move(next);
    }
    return seen;
}

std::vector<u64> vec_key(const std::vector<GrElem>& v) {
    std::vector<u64> k;
    for (const GrElem& e : v) k.insert(k.end(), e.c.begin(), e.c.end());
    return k;
}

} // namespace

TEST_CASE("chain-ring reduction: U A V is diagonal with p-power entries") {
    Rng rng(stream_for(0xC0FFEE01, "smith"));
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 1, 4}, {2, 2, 3}, {3, 1, 3}, {5, 2, 2}}) {
        GrDescPtr R = GrDesc::make(p, m, n);
        for (int rep = 0; rep < 8; ++rep) {
            u64 rows = 1 + rng.below(4), cols = 1 + rng.below(4);
            GrMat A = rand_mat(R, rows, cols, rng);
            GrSmith s = gr_smith(A);
            CHECK(gr_mul(s.U, gr_mul(A, s.V)) == s.D);
            for (u64 i = 0; i < rows; ++i)
                for (u64 j = 0; j < cols; ++j) {
                    if (i == j) continue;
                    CHECK(s.D.at(i, j).is_zero());
                }
            for (u64 i = 0; i + 1 < s.dvals.size(); ++i) CHECK(s.dvals[i] <= s.dvals[i + 1]);
            for (u64 i = 0; i < std::min(rows, cols); ++i) {
                if (i < s.diag_count)
                    CHECK(s.D.at(i, i) == GrElem::one(R).mul_pk(s.dvals[i]));
                else
                    CHECK(s.D.at(i, i).is_zero());
            }
            // the transforms are genuinely invertible
            CHECK(gr_mul(s.U, gr_inverse(s.U)) == GrMat::identity(R, rows));
            CHECK(gr_mul(gr_inverse(s.V), s.V) == GrMat::identity(R, cols));
        }
    }
}

TEST_CASE("kernel generators annihilate and exhaust the kernel") {
    Rng rng(stream_for(0xC0FFEE02, "kernel"));
    GrDescPtr R = GrDesc::make(2, 1, 2); // Z/4: small enough to enumerate
    for (int rep = 0; rep < 12; ++rep) {
        GrMat A = rand_mat(R, 2, 2, rng);
        auto gens = gr_kernel(A);
        for (const auto& g : gens) CHECK(is_zero_vec(gr_apply(A, g)));
        // brute force over all 16 vectors
        std::set<std::vector<u64>> truth;
        for (const GrElem& x : all_elems(R))
            for (const GrElem& y : all_elems(R)) {
                std::vector<GrElem> v{x, y};
                if (is_zero_vec(gr_apply(A, v))) truth.insert(vec_key(v));
            }
        CHECK(span_set(R, 2, gens) == truth);
    }
}

TEST_CASE("linear solve: reachable targets solved, unreachable refused") {
    Rng rng(stream_for(0xC0FFEE03, "solve"));
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 2, 3}, {3, 1, 4}}) {
        GrDescPtr R = GrDesc::make(p, m, n);
        for (int rep = 0; rep < 10; ++rep) {
            u64 rows = 1 + rng.below(4), cols = 1 + rng.below(4);
            GrMat A = rand_mat(R, rows, cols, rng);
            std::vector<GrElem> x0 = rand_vec(R, cols, rng);
            std::vector<GrElem> b = gr_apply(A, x0);
            GrSolve sol = gr_solve_one(A, b);
            REQUIRE(sol.ok);
            CHECK(gr_apply(A, sol.x) == b);
        }
    }
    // p * identity cannot reach a unit vector
    GrDescPtr R = GrDesc::make(2, 1, 3);
    GrMat A = GrMat::identity(R, 2);
    for (GrElem& e : A.a) e = e.mul_pk(1);
    std::vector<GrElem> e1{GrElem::one(R), GrElem::zero(R)};
    CHECK_FALSE(gr_solve_one(A, e1).ok);
}

TEST_CASE("inverse: two-sided for unit matrices, refusal otherwise") {
    Rng rng(stream_for(0xC0FFEE04, "inverse"));
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 1, 4}, {2, 2, 2}, {7, 1, 3}}) {
        GrDescPtr R = GrDesc::make(p, m, n);
        for (int rep = 0; rep < 6; ++rep) {
            u64 k = 1 + rng.below(4);
            GrMat A = rand_unit_mat(R, k, rng);
            GrMat Ai = gr_inverse(A);
            CHECK(gr_mul(A, Ai) == GrMat::identity(R, k));
            CHECK(gr_mul(Ai, A) == GrMat::identity(R, k));
        }
    }
    GrDescPtr R = GrDesc::make(2, 1, 3);
    GrMat S(R, 2, 2);
    S.at(0, 0) = GrElem::one(R);
    S.at(1, 1) = GrElem::one(R).mul_pk(1); // diag(1, 2): not a unit matrix
    CHECK_THROWS_AS((void)gr_inverse(S), InvalidError);
}

TEST_CASE("column spans: membership, canonical coset representatives") {
    Rng rng(stream_for(0xC0FFEE05, "span"));
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 1, 4}, {2, 2, 3}, {3, 1, 3}}) {
        GrDescPtr R = GrDesc::make(p, m, n);
        for (int rep = 0; rep < 10; ++rep) {
            u64 dim = 2 + rng.below(3), ncols = 1 + rng.below(4);
            GrMat A = rand_mat(R, dim, ncols, rng);
            GrSpan S = gr_column_span(A);
            // staircase shape
            for (u64 b2 = 1; b2 < S.pivot_row.size(); ++b2)
                CHECK(S.pivot_row[b2 - 1] < S.pivot_row[b2]);
            // random combinations of the original columns are members
            for (int t = 0; t < 10; ++t) {
                std::vector<GrElem> v(dim, GrElem::zero(R));
                for (u64 j = 0; j < ncols; ++j) {
                    GrElem c = rand_elem(R, rng);
                    for (u64 i = 0; i < dim; ++i) v[i] = v[i] + c * A.at(i, j);
                }
                CHECK(S.contains(v));
                // canonical representative is a coset invariant
                std::vector<GrElem> w = rand_vec(R, dim, rng);
                std::vector<GrElem> wshift = w;
                for (u64 i = 0; i < dim; ++i) wshift[i] = wshift[i] + v[i];
                CHECK(S.reduce(w) == S.reduce(wshift));
            }
            // span is invariant under recombination of generating columns
            GrMat P = rand_unit_mat(R, ncols, rng);
            CHECK(gr_column_span(gr_mul(A, P)).same_span(S));
        }
    }
    // exhaustive membership agreement on a small case
    GrDescPtr R = GrDesc::make(2, 1, 2);
    Rng rng2(stream_for(0xC0FFEE05, "span-exhaustive"));
    for (int rep = 0; rep < 8; ++rep) {
        GrMat A = rand_mat(R, 2, 2, rng2);
        GrSpan S = gr_column_span(A);
        std::vector<std::vector<GrElem>> cols{A.col(0), A.col(1)};
        auto truth = span_set(R, 2, cols);
        u64 count = 0;
        for (const GrElem& x : all_elems(R))
            for (const GrElem& y : all_elems(R)) {
                std::vector<GrElem> v{x, y};
                bool inside = truth.count(vec_key(v)) > 0;
                CHECK(S.contains(v) == inside);
                if (inside) ++count;
            }
        CHECK(count == truth.size());
    }
}

TEST_CASE("characteristic polynomial: companion matrices and Cayley-Hamilton") {
    Rng rng(stream_for(0xC0FFEE06, "charpoly"));
    GrDescPtr R = GrDesc::make(3, 2, 3);
    // companion matrix of X^3 - a X^2 - b X - c
    for (int rep = 0; rep < 6; ++rep) {
        GrElem a = rand_elem(R, rng), b = rand_elem(R, rng), c = rand_elem(R, rng);
        GrMat M(R, 3, 3);
        M.at(0, 2) = c;
        M.at(1, 2) = b;
        M.at(2, 2) = a;
        M.at(1, 0) = GrElem::one(R);
        M.at(2, 1) = GrElem::one(R);
        auto cp = gr_charpoly(M);
        REQUIRE(cp.size() == 4);
        CHECK(cp[3] == GrElem::one(R));
        CHECK(cp[2] == -a);
        CHECK(cp[1] == -b);
        CHECK(cp[0] == -c);
    }
    // Cayley-Hamilton over assorted rings and ranks
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 1, 5}, {2, 2, 3}, {5, 1, 3}}) {
        GrDescPtr Rr = GrDesc::make(p, m, n);
        for (u64 k = 1; k <= 4; ++k) {
            GrMat A = rand_mat(Rr, k, k, rng);
            auto cp = gr_charpoly(A);
            GrMat acc(Rr, k, k);      // sum c_i A^i
            GrMat pw = GrMat::identity(Rr, k);
            for (u64 i = 0; i <= k; ++i) {
                GrMat term = pw;
                for (GrElem& e : term.a) e = e * cp[i];
                acc = gr_add(acc, term);
                if (i < k) pw = gr_mul(pw, A);
            }
            CHECK(acc == GrMat(Rr, k, k));
        }
    }
}

TEST_CASE("newton slopes: ordinary, supersingular, and a large mixed example") {
    GrDescPtr R = GrDesc::make(2, 1, 6);
    GrElem one = GrElem::one(R);

    SUBCASE("diagonal (1, p) splits into slopes 0 and 1") {
        GrMat A(R, 2, 2);
        A.at(0, 0) = one;
        A.at(1, 1) = one.mul_pk(1);
        auto sl = newton_slopes(SigmaModule(R, A));
        REQUIRE(sl.size() == 2);
        CHECK(sl[0].first == Frac(0, 1));
        CHECK(sl[0].second == 1);
        CHECK(sl[1].first == Frac(1, 1));
        CHECK(sl[1].second == 1);
    }
    SUBCASE("the twisted pair has pure slope 1/2") {
        GrMat A(R, 2, 2);
        A.at(0, 1) = one.mul_pk(1);
        A.at(1, 0) = one;
        auto sl = newton_slopes(SigmaModule(R, A));
        REQUIRE(sl.size() == 1);
        CHECK(sl[0].first == Frac(1, 2));
        CHECK(sl[0].second == 2);
    }
    SUBCASE("rank-22 diagonal with slopes 0, 1 x20, 2") {
        GrDescPtr R25 = GrDesc::make(2, 1, 25);
        GrElem e = GrElem::one(R25);
        GrMat A(R25, 22, 22);
        A.at(0, 0) = e;
        for (u64 i = 1; i <= 20; ++i) A.at(i, i) = e.mul_pk(1);
        A.at(21, 21) = e.mul_pk(2);
        auto sl = newton_slopes(SigmaModule(R25, A));
        REQUIRE(sl.size() == 3);
        CHECK(sl[0] == std::make_pair(Frac(0, 1), (u64)1));
        CHECK(sl[1] == std::make_pair(Frac(1, 1), (u64)20));
        CHECK(sl[2] == std::make_pair(Frac(2, 1), (u64)1));
    }
    SUBCASE("nilpotent matrices have no visible slope mass") {
        GrMat A(R, 2, 2);
        A.at(0, 1) = one;
        CHECK_THROWS_AS((void)newton_slopes(SigmaModule(R, A)), PrecisionError);
    }
}

TEST_CASE("newton slopes: conjugation invariance and the unit-mass cross-check") {
    Rng rng(stream_for(0xC0FFEE07, "slopes"));
    for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 1, 8}, {2, 2, 8}, {3, 1, 6}}) {
        GrDescPtr R = GrDesc::make(p, m, n);
        int done = 0;
        for (int tries = 0; tries < 200 && done < 8; ++tries) {
            u64 k = 1 + rng.below(3);
            GrMat A = rand_mat(R, k, k, rng);
            SigmaModule M(R, A);
            std::vector<std::pair<Frac, u64>> sl;
            try {
                sl = newton_slopes(M);
            } catch (const PrecisionError&) {
                continue; // slope mass out of range for this sample
            }
            ++done;
            u64 total = 0;
            for (auto& [fr, mult] : sl) total += mult;
            CHECK(total == k);
            // slope-zero multiplicity equals the stable residue rank of the
            // linearized power
            u64 zero_mult = (!sl.empty() && sl[0].first == Frac(0, 1)) ? sl[0].second : 0;
            CHECK(zero_mult == gr_residue_stable_rank(M.f_power_matrix(R->m)));
            // base change leaves slopes alone
            GrMat P = rand_unit_mat(R, k, rng);
            GrMat A2 = gr_mul(gr_inverse(P), gr_mul(A, P.sigma()));
            CHECK(newton_slopes(SigmaModule(R, A2)) == sl);
        }
        CHECK(done == 8);
    }
}

TEST_CASE("fixed points of F: exhaustive oracles on small rings") {
    SUBCASE("coordinate swap over Z/4 fixes exactly the diagonal") {
        GrDescPtr R = GrDesc::make(2, 1, 2);
        GrMat A(R, 2, 2);
        A.at(0, 1) = GrElem::one(R);
        A.at(1, 0) = GrElem::one(R);
        SigmaModule M(R, A);
        auto gens = fixed_points_f1(M);
        // oracle: enumerate all 16 vectors
        std::set<std::vector<u64>> truth;
        for (const GrElem& x : all_elems(R))
            for (const GrElem& y : all_elems(R)) {
                std::vector<GrElem> v{x, y};
                if (M.apply_f(v) == v) truth.insert(vec_key(v));
            }
        CHECK(truth.size() == 4); // the cyclic span of (1, 1)
        std::vector<GrElem> diag{GrElem::one(R), GrElem::one(R)};
        CHECK(truth.count(vec_key(diag)) == 1);
        CHECK(span_set(R, 2, gens) == truth);
    }
    SUBCASE("rank one with identity matrix fixes the prime subring") {
        GrDescPtr R = GrDesc::make(2, 2, 2); // W_2(F_4), 16 elements
        GrMat A = GrMat::identity(R, 1);
        SigmaModule M(R, A); // F = sigma
        auto gens = fixed_points_f1(M);
        std::set<std::vector<u64>> truth;
        for (const GrElem& x : all_elems(R)) {
            std::vector<GrElem> v{x};
            if (M.apply_f(v) == v) truth.insert(vec_key(v));
        }
        CHECK(truth.size() == 4); // Z/4 inside W_2(F_4)
        CHECK(span_set(R, 1, gens) == truth);
    }
    SUBCASE("multiplication by p has only the top-torsion fixed line") {
        GrDescPtr R = GrDesc::make(3, 1, 3);
        GrMat A(R, 1, 1);
        A.at(0, 0) = GrElem::one(R).mul_pk(1);
        auto gens = fixed_points_f1(SigmaModule(R, A));
        std::set<std::vector<u64>> truth;
        for (const GrElem& x : all_elems(R)) {
            std::vector<GrElem> v{x};
            if (v[0].mul_pk(1) == v[0]) truth.insert(vec_key(v));
        }
        CHECK(span_set(R, 1, gens) == truth);
    }
}

TEST_CASE("unit-root part: extraction, stability, induced endomorphism") {
    Rng rng(stream_for(0xC0FFEE08, "unitroot"));
    GrDescPtr R = GrDesc::make(2, 1, 4);
    GrElem one = GrElem::one(R);

    auto check_stable = [](const SigmaModule& M, const UnitRootPart& ur) {
        // basis * A' == A * sigma(basis), exactly
        CHECK(gr_mul(ur.basis, ur.sub.A) == gr_mul(M.A, ur.basis.sigma()));
    };

    SUBCASE("diagonal (1, p) keeps the unit line") {
        GrMat A(R, 2, 2);
        A.at(0, 0) = one;
        A.at(1, 1) = one.mul_pk(1);
        SigmaModule M(R, A);
        UnitRootPart ur = unit_root_part(M);
        REQUIRE(ur.basis.cols == 1);
        CHECK(ur.basis.at(0, 0) == one);
        CHECK(ur.basis.at(1, 0).is_zero());
        CHECK(ur.sub.A.at(0, 0) == one);
        check_stable(M, ur);
    }
    SUBCASE("pure slope 1/2 has empty unit part") {
        GrMat A(R, 2, 2);
        A.at(0, 1) = one.mul_pk(1);
        A.at(1, 0) = one;
        CHECK(unit_root_rank(SigmaModule(R, A)) == 0);
    }
    SUBCASE("nilpotent mod p decays to zero") {
        GrMat A(R, 2, 2);
        A.at(0, 1) = one;
        A.at(0, 0) = one.mul_pk(1);
        A.at(1, 1) = one.mul_pk(1);
        CHECK(unit_root_rank(SigmaModule(R, A)) == 0);
    }
    SUBCASE("identity keeps everything") {
        SigmaModule M(R, GrMat::identity(R, 3));
        UnitRootPart ur = unit_root_part(M);
        CHECK(ur.basis.cols == 3);
        CHECK(ur.sub.A == GrMat::identity(R, 3));
        check_stable(M, ur);
    }
    SUBCASE("invertible matrices are their own unit part") {
        for (auto [p, m, n] : {std::tuple<u64, u64, u64>{2, 2, 3}, {3, 1, 3}}) {
            GrDescPtr Rr = GrDesc::make(p, m, n);
            for (int rep = 0; rep < 5; ++rep) {
                u64 k = 1 + rng.below(3);
                SigmaModule M(Rr, rand_unit_mat(Rr, k, rng));
                UnitRootPart ur = unit_root_part(M);
                CHECK(ur.basis.cols == k);
                check_stable(M, ur);
            }
        }
    }
    SUBCASE("mixed random samples agree with the slope-zero multiplicity") {
        int done = 0;
        Rng rng2(stream_for(0xC0FFEE08, "unitroot-mixed"));
        while (done < 10) {
            u64 k = 1 + rng2.below(3);
            GrMat A = rand_mat(R, k, k, rng2);
            SigmaModule M(R, A);
            std::vector<std::pair<Frac, u64>> sl;
            try {
                sl = newton_slopes(M);
            } catch (const PrecisionError&) {
                continue;
            }
            u64 zero_mult = (!sl.empty() && sl[0].first == Frac(0, 1)) ? sl[0].second : 0;
            UnitRootPart ur = unit_root_part(M);
            CHECK(ur.basis.cols == zero_mult);
            check_stable(M, ur);
            // the induced endomorphism is invertible: pure slope zero
            if (ur.basis.cols > 0) {
                auto sub_slopes = newton_slopes(ur.sub);
                REQUIRE(sub_slopes.size() == 1);
                CHECK(sub_slopes[0].first == Frac(0, 1));
                CHECK(sub_slopes[0].second == ur.basis.cols);
            }
            ++done;
        }
    }
}

namespace {

DpProfile iso_profile(u64 p = 2, u64 m = 1, u64 n = 4) {
    return DpProfile(GrDesc::make(p, m, n), 18, 16);
}

// targets kept inside the comfortable range of the window solver: positive
// exponents bounded by 2, denominator depth bounded away from the profile cap
DpSeries rand_target(const DpProfile& prof, u64 s, Rng& rng) {
    DpSeries b(prof);
    u64 p = prof.p();
    u64 nterms = 1 + rng.below(3);
    for (u64 t = 0; t < nterms; ++t) {
        u64 v = rng.below(3);
        u64 u = 1 + rng.below(2 * pow_u64(p, v));
        (void)s;
        GrElem c(prof.R);
        for (u64 i = 0; i < prof.R->m; ++i) c.c[i] = rng.below(prof.R->pn);
        if (c.is_zero()) c = GrElem::one(prof.R);
        b.add_term(PExp(p, u, v), c);
    }
    if (b.is_zero()) b.add_term(PExp(p, 1, 1), GrElem::one(prof.R));
    return b;
}

} // namespace

TEST_CASE("cyclic slope solver: residual identities hold exactly on acceptance slopes") {
    Rng rng(stream_for(0xC0FFEE09, "isocrystal"));
    for (auto [r, s] : {std::pair<u64, u64>{0, 1}, {1, 2}, {1, 1}, {2, 3}}) {
        for (u64 m : {(u64)1, (u64)2}) {
            DpProfile prof = iso_profile(2, m, 4);
            const u64 n = prof.R->n;
            for (int rep = 0; rep < 12; ++rep) {
                std::vector<DpSeries> b;
                for (u64 i = 0; i < s; ++i) b.push_back(rand_target(prof, s, rng));
                IsocrystalSolution sol = isocrystal_solve(prof, r, s, b);
                REQUIRE(sol.u.size() == s);
                CHECK(sol.scale_exp == s - 1);
                CHECK(sol.precision == n);
                // recompute every identity from scratch
                u64 lam = sol.scale_exp;
                DpSeries res1 = dp_sub(
                    dp_sub(dp_scale_pk(dp_frobenius(sol.u[s - 1]), r), dp_scale_pk(sol.u[0], 1)),
                    dp_scale_pk(b[0], lam + 1));
                CHECK(res1.is_zero());
                for (u64 i = 2; i <= s; ++i) {
                    DpSeries resi =
                        dp_sub(dp_sub(dp_frobenius(sol.u[i - 2]), dp_scale_pk(sol.u[i - 1], 1)),
                               dp_scale_pk(b[i - 1], lam + 1));
                    CHECK(resi.is_zero());
                }
            }
        }
    }
}

TEST_CASE("cyclic slope solver: worked example at slope 1/2") {
    DpProfile prof = iso_profile(2, 1, 4);
    GrElem one = GrElem::one(prof.R);
    // b_1 = x^<1>, b_2 = 0: closing target for u_2 is frob(b_1) = 2 x^<2>
    std::vector<DpSeries> b{DpSeries::monomial(prof, one, PExp(2, 1, 0)), DpSeries::zero(prof)};
    IsocrystalSolution sol = isocrystal_solve(prof, 1, 2, b);
    CHECK(sol.scale_exp == 1);
    CHECK(sol.precision == 4);
    // direct check of the defining equations
    DpSeries lhs1 = dp_sub(dp_scale_pk(dp_frobenius(sol.u[1]), 1), dp_scale_pk(sol.u[0], 1));
    CHECK(lhs1 == dp_scale_pk(b[0], 2));
    DpSeries lhs2 = dp_sub(dp_frobenius(sol.u[0]), dp_scale_pk(sol.u[1], 1));
    CHECK(lhs2 == dp_scale_pk(b[1], 2));
}

TEST_CASE("cyclic slope solver: structured refusals") {
    DpProfile prof = iso_profile(2, 1, 4);
    GrElem one = GrElem::one(prof.R);
    SUBCASE("slope above one is rejected") {
        std::vector<DpSeries> b{DpSeries::monomial(prof, one, PExp(2, 1, 1))};
        CHECK_THROWS_AS((void)isocrystal_solve(prof, 2, 1, b), InvalidError);
    }
    SUBCASE("component count must match the denominator") {
        std::vector<DpSeries> b{DpSeries::monomial(prof, one, PExp(2, 1, 1))};
        CHECK_THROWS_AS((void)isocrystal_solve(prof, 1, 2, b), MismatchError);
    }
    SUBCASE("constant slot at slope one needs a closed equation") {
        std::vector<DpSeries> b{DpSeries::monomial(prof, one, PExp(2, 0, 0))};
        CHECK_THROWS_AS((void)isocrystal_solve(prof, 1, 1, b), ClosednessError);
    }
}
