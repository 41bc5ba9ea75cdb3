#pragma once

// Exact linear algebra over the Galois ring W_n(F_{p^m}), which is a chain
// ring: every ideal is (p^k).  That makes Smith-style reduction possible with
// exact divisions only, and column spans admit canonical staircase bases with
// p-power pivots (Howell-closed so membership and coset reduction are exact).
// The case m = 1 doubles as linear algebra over Z/p^n.

#include "common.hpp"
#include "galois_ring.hpp"

#include <vector>

namespace wittcris {

struct GrMat {
    GrDescPtr R;
    u64 rows = 0, cols = 0;
    std::vector<GrElem> a; // row-major

    GrMat() = default;
    GrMat(GrDescPtr R_, u64 rows_, u64 cols_)
        : R(std::move(R_)), rows(rows_), cols(cols_), a(rows_ * cols_, GrElem::zero(R)) {}

    GrElem& at(u64 i, u64 j) { return a[i * cols + j]; }
    const GrElem& at(u64 i, u64 j) const { return a[i * cols + j]; }

    static GrMat identity(const GrDescPtr& R, u64 k) {
        GrMat m(R, k, k);
        for (u64 i = 0; i < k; ++i) m.at(i, i) = GrElem::one(R);
        return m;
    }

    GrMat sigma(u64 j = 1) const {
        GrMat m = *this;
        for (GrElem& e : m.a) e = e.sigma(j);
        return m;
    }

    std::vector<GrElem> col(u64 j) const {
        std::vector<GrElem> v;
        v.reserve(rows);
        for (u64 i = 0; i < rows; ++i) v.push_back(at(i, j));
        return v;
    }

    friend bool operator==(const GrMat& x, const GrMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const GrMat& x, const GrMat& y) { return !(x == y); }
};

GrMat gr_mul(const GrMat& x, const GrMat& y);
GrMat gr_add(const GrMat& x, const GrMat& y);
GrMat gr_sub(const GrMat& x, const GrMat& y);
std::vector<GrElem> gr_apply(const GrMat& m, const std::vector<GrElem>& v);

// U * A * V = D with U, V invertible and D diagonal with p-power entries
struct GrSmith {
    GrMat U, V, D;
    std::vector<u64> dvals; // valuation of D(i,i); n encodes a zero diagonal
    u64 diag_count = 0;     // positions processed before the submatrix vanished
};
GrSmith gr_smith(const GrMat& A);

// generators of {x : A x = 0}
std::vector<std::vector<GrElem>> gr_kernel(const GrMat& A);

struct GrSolve {
    bool ok = false;
    std::vector<GrElem> x;
};
GrSolve gr_solve_one(const GrMat& A, const std::vector<GrElem>& b);

// inverse of a matrix that is invertible over the chain ring (unit pivots
// throughout); throws InvalidError otherwise
GrMat gr_inverse(const GrMat& A);

// Canonical staircase basis of a column span, closed under the annihilator
// columns so that reduction is a complete membership test and coset
// representatives are canonical (every coordinate of the representative at a
// pivot row with pivot p^k lies in the coordinate box [0, p^k)).
struct GrSpan {
    GrDescPtr R;
    u64 dim = 0;
    std::vector<std::vector<GrElem>> basis; // staircase columns
    std::vector<u64> pivot_row;             // strictly increasing
    std::vector<u64> pivot_val;             // valuation of the pivot entry

    std::vector<GrElem> reduce(std::vector<GrElem> v) const; // canonical coset rep
    bool contains(const std::vector<GrElem>& v) const;
    bool same_span(const GrSpan& o) const;
    u64 unit_pivot_count() const {
        u64 c = 0;
        for (u64 v : pivot_val)
            if (v == 0) ++c;
        return c;
    }
};
GrSpan gr_column_span(const GrDescPtr& R, u64 dim, const std::vector<std::vector<GrElem>>& columns);
GrSpan gr_column_span(const GrMat& A);

// division-free characteristic polynomial det(X I - A); coefficient i of the
// returned vector multiplies X^i, and the leading coefficient is 1
std::vector<GrElem> gr_charpoly(const GrMat& A);

// stabilized rank over the residue field of the reduction mod p
u64 gr_residue_stable_rank(const GrMat& A);
// plain residue rank
u64 gr_residue_rank(const GrMat& A);

} // namespace wittcris
