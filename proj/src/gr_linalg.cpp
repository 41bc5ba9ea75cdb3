#include "wittcris/gr_linalg.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>

namespace wittcris {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw InvalidError(msg);
}

} // namespace

GrMat gr_mul(const GrMat& x, const GrMat& y) {
    if (x.cols != y.rows) throw MismatchError("matrix product shape mismatch");
    GrMat z(x.R, x.rows, y.cols);
    for (u64 i = 0; i < x.rows; ++i)
        for (u64 k = 0; k < x.cols; ++k) {
            const GrElem& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (u64 j = 0; j < y.cols; ++j) z.at(i, j) = z.at(i, j) + xik * y.at(k, j);
        }
    return z;
}

GrMat gr_add(const GrMat& x, const GrMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw MismatchError("matrix sum shape mismatch");
    GrMat z = x;
    for (u64 i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] + y.a[i];
    return z;
}

GrMat gr_sub(const GrMat& x, const GrMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw MismatchError("matrix difference shape mismatch");
    GrMat z = x;
    for (u64 i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] - y.a[i];
    return z;
}

std::vector<GrElem> gr_apply(const GrMat& m, const std::vector<GrElem>& v) {
    if (m.cols != v.size()) throw MismatchError("matrix-vector shape mismatch");
    std::vector<GrElem> out(m.rows, GrElem::zero(m.R));
    for (u64 i = 0; i < m.rows; ++i)
        for (u64 j = 0; j < m.cols; ++j) out[i] = out[i] + m.at(i, j) * v[j];
    return out;
}

GrSmith gr_smith(const GrMat& A) {
    require(A.R != nullptr, "smith: matrix has no ring");
    const u64 n = A.R->n;
    GrSmith s;
    s.D = A;
    s.U = GrMat::identity(A.R, A.rows);
    s.V = GrMat::identity(A.R, A.cols);
    const u64 dmax = std::min(A.rows, A.cols);
    s.dvals.assign(dmax, n);

    GrMat& D = s.D;
    GrMat& U = s.U;
    GrMat& V = s.V;

    for (u64 k = 0; k < dmax; ++k) {
        // pivot: minimal valuation in the trailing submatrix
        u64 best_i = 0, best_j = 0, best_v = n;
        for (u64 i = k; i < A.rows; ++i)
            for (u64 j = k; j < A.cols; ++j) {
                u64 v = D.at(i, j).val_p();
                if (v < best_v) {
                    best_v = v;
                    best_i = i;
                    best_j = j;
                }
            }
        if (best_v >= n) break; // remaining block is zero
        s.diag_count = k + 1;
        s.dvals[k] = best_v;

        if (best_i != k)
            for (u64 j = 0; j < A.cols; ++j) std::swap(D.at(k, j), D.at(best_i, j));
        if (best_i != k)
            for (u64 j = 0; j < A.rows; ++j) std::swap(U.at(k, j), U.at(best_i, j));
        if (best_j != k)
            for (u64 i = 0; i < A.rows; ++i) std::swap(D.at(i, k), D.at(i, best_j));
        if (best_j != k)
            for (u64 i = 0; i < A.cols; ++i) std::swap(V.at(i, k), V.at(i, best_j));

        // normalize the pivot to exactly p^v
        GrElem unit = D.at(k, k).div_exact_p(best_v);
        GrElem uinv = unit.inv();
        for (u64 j = 0; j < A.cols; ++j) D.at(k, j) = D.at(k, j) * uinv;
        for (u64 j = 0; j < A.rows; ++j) U.at(k, j) = U.at(k, j) * uinv;

        // clear the pivot column with row operations
        for (u64 i = 0; i < A.rows; ++i) {
            if (i == k || D.at(i, k).is_zero()) continue;
            GrElem q = D.at(i, k).div_exact_p(best_v);
            for (u64 j = 0; j < A.cols; ++j) D.at(i, j) = D.at(i, j) - q * D.at(k, j);
            for (u64 j = 0; j < A.rows; ++j) U.at(i, j) = U.at(i, j) - q * U.at(k, j);
        }
        // clear the pivot row with column operations (the pivot column now
        // has its single entry at row k, so only row k changes)
        for (u64 j = 0; j < A.cols; ++j) {
            if (j == k || D.at(k, j).is_zero()) continue;
            GrElem q = D.at(k, j).div_exact_p(best_v);
            for (u64 i = 0; i < A.rows; ++i) D.at(i, j) = D.at(i, j) - q * D.at(i, k);
            for (u64 i = 0; i < A.cols; ++i) V.at(i, j) = V.at(i, j) - q * V.at(i, k);
        }
    }
    return s;
}

std::vector<std::vector<GrElem>> gr_kernel(const GrMat& A) {
    GrSmith s = gr_smith(A);
    const u64 n = A.R->n;
    std::vector<std::vector<GrElem>> gens;
    for (u64 i = 0; i < A.cols; ++i) {
        u64 vi = (i < s.diag_count) ? s.dvals[i] : n;
        if (vi == 0) continue; // unit pivot contributes nothing
        std::vector<GrElem> g(A.cols, GrElem::zero(A.R));
        for (u64 r = 0; r < A.cols; ++r) g[r] = s.V.at(r, i).mul_pk(n - vi);
        gens.push_back(std::move(g));
    }
    return gens;
}

GrSolve gr_solve_one(const GrMat& A, const std::vector<GrElem>& b) {
    if (b.size() != A.rows) throw MismatchError("solve: right-hand side has wrong length");
    GrSmith s = gr_smith(A);
    std::vector<GrElem> y = gr_apply(s.U, b);
    GrSolve out;
    std::vector<GrElem> xp(A.cols, GrElem::zero(A.R));
    for (u64 i = 0; i < A.rows; ++i) {
        if (i < s.diag_count) {
            if (y[i].val_p() < s.dvals[i]) return out; // not solvable
            xp[i] = y[i].div_exact_p(s.dvals[i]);
        } else if (!y[i].is_zero()) {
            return out; // zero row with nonzero target
        }
    }
    out.x = gr_apply(s.V, xp);
    out.ok = true;
    return out;
}

GrMat gr_inverse(const GrMat& A) {
    require(A.rows == A.cols, "inverse: matrix is not square");
    GrSmith s = gr_smith(A);
    bool ok = s.diag_count == A.rows;
    for (u64 v : s.dvals) ok = ok && v == 0;
    if (!ok) throw InvalidError("inverse: matrix is not invertible over the chain ring");
    return gr_mul(s.V, s.U); // U A V = I
}

namespace {

struct SpanSlot {
    std::vector<GrElem> col;
    u64 val = 0;
};

struct SpanBuilder {
    GrDescPtr R;
    u64 dim, n;
    std::vector<std::optional<SpanSlot>> slot;
    std::deque<std::vector<GrElem>> queue;

    SpanBuilder(GrDescPtr R_, u64 dim_) : R(std::move(R_)), dim(dim_), n(R->n), slot(dim_) {}

    std::vector<GrElem> scaled_pk(const std::vector<GrElem>& v, u64 k) const {
        std::vector<GrElem> w = v;
        for (GrElem& e : w) e = e.mul_pk(k);
        return w;
    }

    void insert(std::vector<GrElem> v) {
        if (v.size() != dim) throw MismatchError("span: column has wrong length");
        u64 r = 0;
        while (r < dim) {
            if (v[r].is_zero()) {
                ++r;
                continue;
            }
            u64 vv = v[r].val_p();
            if (slot[r]) {
                u64 bv = slot[r]->val;
                if (bv <= vv) {
                    GrElem q = v[r].div_exact_p(bv);
                    for (u64 i = r; i < dim; ++i) v[i] = v[i] - q * slot[r]->col[i];
                    ++r; // entry at r is now exactly zero
                } else {
                    // incoming column has the smaller valuation: swap it in
                    GrElem uinv = v[r].div_exact_p(vv).inv();
                    for (GrElem& e : v) e = e * uinv; // pivot becomes p^vv
                    std::swap(v, slot[r]->col);
                    std::swap(vv, slot[r]->val);
                    if (slot[r]->val > 0) queue.push_back(scaled_pk(slot[r]->col, n - slot[r]->val));
                    // keep reducing the displaced column at the same row
                }
            } else {
                GrElem uinv = v[r].div_exact_p(vv).inv();
                for (GrElem& e : v) e = e * uinv;
                slot[r] = SpanSlot{std::move(v), vv};
                if (vv > 0) queue.push_back(scaled_pk(slot[r]->col, n - vv));
                return;
            }
        }
    }

    void drain() {
        while (!queue.empty()) {
            std::vector<GrElem> v = std::move(queue.front());
            queue.pop_front();
            insert(std::move(v));
        }
    }

    GrSpan finish() {
        // canonicalize bottom-up: the column with the lowest pivot row is
        // final; each column above it reduces against final lower columns
        std::vector<u64> prows;
        for (u64 r = 0; r < dim; ++r)
            if (slot[r]) prows.push_back(r);
        for (u64 idx = prows.size(); idx-- > 0;) {
            u64 r = prows[idx];
            std::vector<GrElem>& c = slot[r]->col;
            for (u64 jdx = idx + 1; jdx < prows.size(); ++jdx) {
                u64 rp = prows[jdx];
                u64 bv = slot[rp]->val;
                u64 pbv = pow_u64(R->p, bv);
                GrElem q(R);
                for (u64 t = 0; t < R->m; ++t) q.c[t] = c[rp].c[t] / pbv;
                if (q.is_zero()) continue;
                for (u64 i = rp; i < dim; ++i) c[i] = c[i] - q * slot[rp]->col[i];
            }
        }
        GrSpan out;
        out.R = R;
        out.dim = dim;
        for (u64 r : prows) {
            out.basis.push_back(slot[r]->col);
            out.pivot_row.push_back(r);
            out.pivot_val.push_back(slot[r]->val);
        }
        return out;
    }
};

} // namespace

std::vector<GrElem> GrSpan::reduce(std::vector<GrElem> v) const {
    if (v.size() != dim) throw MismatchError("span: vector has wrong length");
    for (u64 b = 0; b < basis.size(); ++b) {
        u64 r = pivot_row[b];
        if (v[r].is_zero()) continue;
        u64 pbv = pow_u64(R->p, pivot_val[b]);
        GrElem q(R);
        for (u64 t = 0; t < R->m; ++t) q.c[t] = v[r].c[t] / pbv;
        if (q.is_zero()) continue;
        for (u64 i = r; i < dim; ++i) v[i] = v[i] - q * basis[b][i];
    }
    return v;
}

bool GrSpan::contains(const std::vector<GrElem>& v) const {
    std::vector<GrElem> w = reduce(v);
    for (const GrElem& e : w)
        if (!e.is_zero()) return false;
    return true;
}

bool GrSpan::same_span(const GrSpan& o) const {
    if (dim != o.dim) return false;
    for (const auto& c : o.basis)
        if (!contains(c)) return false;
    for (const auto& c : basis)
        if (!o.contains(c)) return false;
    return true;
}

GrSpan gr_column_span(const GrDescPtr& R, u64 dim, const std::vector<std::vector<GrElem>>& columns) {
    require(R != nullptr, "span: null ring");
    SpanBuilder sb(R, dim);
    for (const auto& c : columns) {
        sb.insert(c);
        sb.drain();
    }
    return sb.finish();
}

GrSpan gr_column_span(const GrMat& A) {
    std::vector<std::vector<GrElem>> cols;
    cols.reserve(A.cols);
    for (u64 j = 0; j < A.cols; ++j) cols.push_back(A.col(j));
    return gr_column_span(A.R, A.rows, cols);
}

std::vector<GrElem> gr_charpoly(const GrMat& A) {
    require(A.rows == A.cols, "charpoly: matrix is not square");
    const GrDescPtr& R = A.R;
    const u64 r = A.rows;
    if (r == 0) return {GrElem::one(R)};
    // Berkowitz: iterate Toeplitz products over trailing principal submatrices
    std::vector<GrElem> v{GrElem::one(R)};
    for (u64 i = r; i-- > 0;) {
        const u64 t = r - i; // current submatrix size
        std::vector<GrElem> s;
        s.reserve(t + 1);
        s.push_back(GrElem::one(R));
        s.push_back(-A.at(i, i));
        if (t >= 2) {
            std::vector<GrElem> w;
            w.reserve(t - 1);
            for (u64 a = i + 1; a < r; ++a) w.push_back(A.at(a, i));
            for (u64 k = 2; k <= t; ++k) {
                GrElem dot = GrElem::zero(R);
                for (u64 b = i + 1; b < r; ++b) dot = dot + A.at(i, b) * w[b - (i + 1)];
                s.push_back(-dot);
                if (k < t) {
                    std::vector<GrElem> w2(w.size(), GrElem::zero(R));
                    for (u64 a = i + 1; a < r; ++a) {
                        GrElem acc = GrElem::zero(R);
                        for (u64 b = i + 1; b < r; ++b) acc = acc + A.at(a, b) * w[b - (i + 1)];
                        w2[a - (i + 1)] = acc;
                    }
                    w = std::move(w2);
                }
            }
        }
        std::vector<GrElem> v2(t + 1, GrElem::zero(R));
        for (u64 a = 0; a <= t; ++a)
            for (u64 b = 0; b <= a && b < t; ++b) v2[a] = v2[a] + s[a - b] * v[b];
        v = std::move(v2);
    }
    std::vector<GrElem> c(r + 1, GrElem::zero(R));
    for (u64 k = 0; k <= r; ++k) c[r - k] = v[k]; // v[k] multiplies X^{r-k}
    return c;
}

namespace {

u64 fq_rank(std::vector<std::vector<FqElem>> M) {
    if (M.empty()) return 0;
    const u64 rows = M.size(), cols = M[0].size();
    u64 rank = 0;
    for (u64 j = 0; j < cols && rank < rows; ++j) {
        u64 piv = rows;
        for (u64 i = rank; i < rows; ++i)
            if (!M[i][j].is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(M[rank], M[piv]);
        FqElem pinv = M[rank][j].inv();
        for (u64 i = rank + 1; i < rows; ++i) {
            if (M[i][j].is_zero()) continue;
            FqElem f = M[i][j] * pinv;
            for (u64 jj = j; jj < cols; ++jj) M[i][jj] = M[i][jj] - f * M[rank][jj];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<FqElem>> fq_mul(const std::vector<std::vector<FqElem>>& x,
                                        const std::vector<std::vector<FqElem>>& y,
                                        const FqDescPtr& k) {
    const u64 r = x.size(), c = y.empty() ? 0 : y[0].size(), inner = y.size();
    std::vector<std::vector<FqElem>> z(r, std::vector<FqElem>(c, FqElem::zero(k)));
    for (u64 i = 0; i < r; ++i)
        for (u64 t = 0; t < inner; ++t) {
            if (x[i][t].is_zero()) continue;
            for (u64 j = 0; j < c; ++j) z[i][j] = z[i][j] + x[i][t] * y[t][j];
        }
    return z;
}

std::vector<std::vector<FqElem>> residue_matrix(const GrMat& A) {
    std::vector<std::vector<FqElem>> M(A.rows, std::vector<FqElem>(A.cols, FqElem::zero(A.R->k)));
    for (u64 i = 0; i < A.rows; ++i)
        for (u64 j = 0; j < A.cols; ++j) M[i][j] = A.at(i, j).residue();
    return M;
}

} // namespace

u64 gr_residue_rank(const GrMat& A) { return fq_rank(residue_matrix(A)); }

u64 gr_residue_stable_rank(const GrMat& A) {
    require(A.rows == A.cols, "stable rank: matrix is not square");
    if (A.rows == 0) return 0;
    auto B = residue_matrix(A);
    auto cur = B;
    u64 rk = fq_rank(cur);
    for (u64 iter = 0; iter < A.rows + 2; ++iter) {
        cur = fq_mul(cur, B, A.R->k);
        u64 rk2 = fq_rank(cur);
        if (rk2 == rk) return rk;
        rk = rk2;
    }
    return rk;
}

} // namespace wittcris
