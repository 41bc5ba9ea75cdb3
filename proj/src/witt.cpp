#include "wittcris/witt.hpp"

#include <mutex>
#include <utility>

namespace wittcris {

UPoly UPoly::operator+(const UPoly& o) const {
    if (nvars != o.nvars) throw MismatchError("polynomial variable count mismatch");
    UPoly r = *this;
    for (const auto& [mo, c] : o.terms) {
        auto it = r.terms.find(mo);
        if (it == r.terms.end()) {
            r.terms.emplace(mo, c);
        } else {
            it->second = checked_add(it->second, c);
            if (it->second == 0) r.terms.erase(it);
        }
    }
    return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scaled(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (nvars != o.nvars) throw MismatchError("polynomial variable count mismatch");
    UPoly r = zero(nvars);
    Mono mo(nvars, 0);
    for (const auto& [ma, ca] : terms) {
        for (const auto& [mb, cb] : o.terms) {
            for (u64 i = 0; i < nvars; ++i) {
                u64 e = (u64)ma[i] + mb[i];
                if (e > 0xffff) throw Error("monomial exponent overflow");
                mo[i] = (std::uint16_t)e;
            }
            i128 c = checked_mul(ca, cb);
            auto it = r.terms.find(mo);
            if (it == r.terms.end()) {
                r.terms.emplace(mo, c);
            } else {
                it->second = checked_add(it->second, c);
                if (it->second == 0) r.terms.erase(it);
            }
        }
    }
    return r;
}

UPoly UPoly::pow(u64 e) const {
    UPoly r = constant(nvars, 1);
    UPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

UPoly UPoly::scaled(i128 c) const {
    UPoly r = zero(nvars);
    if (c == 0) return r;
    for (const auto& [mo, c0] : terms) r.terms.emplace(mo, checked_mul(c0, c));
    return r;
}

UPoly UPoly::div_exact(i128 c) const {
    if (c == 0) throw InvalidError("division by zero");
    UPoly r = zero(nvars);
    for (const auto& [mo, c0] : terms) {
        if (c0 % c != 0) throw Error("inexact integer division in structure polynomial");
        r.terms.emplace(mo, c0 / c);
    }
    return r;
}

namespace {

// ghost polynomial i over variables block starting at `base` inside `nvars`
UPoly ghost_poly(u64 p, u64 i, u64 nvars, u64 base) {
    UPoly w = UPoly::zero(nvars);
    i128 pj = 1;
    for (u64 j = 0; j <= i; ++j) {
        u64 e = pow_u64(p, i - j);
        w = w + UPoly::var(nvars, base + j, e).scaled(pj);
        pj = checked_mul(pj, (i128)p);
    }
    return w;
}

// Solve ghost_i(T) = targets[i] for T_i successively; exactness of the final
// division is the integrality theorem for the structure polynomials, and we
// let the checked division enforce it rather than assuming it.
std::vector<UPoly> solve_ghost_preimage(const std::vector<UPoly>& targets, u64 p) {
    std::vector<UPoly> T;
    for (u64 i = 0; i < targets.size(); ++i) {
        UPoly rhs = targets[i];
        i128 pj = 1;
        for (u64 j = 0; j < i; ++j) {
            rhs = rhs - T[j].pow(pow_u64(p, i - j)).scaled(pj);
            pj = checked_mul(pj, (i128)p);
        }
        T.push_back(rhs.div_exact(pj));
    }
    return T;
}

std::map<std::pair<u64, u64>, WittOps>& ops_cache() {
    static std::map<std::pair<u64, u64>, WittOps> c;
    return c;
}
std::mutex& ops_mutex() {
    static std::mutex mu;
    return mu;
}

WittOps build_ops(u64 p, u64 len) {
    if (len < 1 || len > 8) throw InvalidError("Witt length out of supported range [1,8]");
    if (p < 2) throw InvalidError("invalid prime");
    WittOps ops;
    ops.p = p;
    ops.len = len;

    for (u64 i = 0; i < len; ++i) ops.ghost.push_back(ghost_poly(p, i, len, 0));

    std::vector<UPoly> tgt_sum, tgt_prod, tgt_diff, tgt_neg, tgt_frob;
    for (u64 i = 0; i < len; ++i) {
        UPoly wx = ghost_poly(p, i, 2 * len, 0);
        UPoly wy = ghost_poly(p, i, 2 * len, len);
        tgt_sum.push_back(wx + wy);
        tgt_prod.push_back(wx * wy);
        tgt_diff.push_back(wx - wy);
        tgt_neg.push_back(ghost_poly(p, i, len, 0).scaled(-1));
        if (i + 1 < len) tgt_frob.push_back(ghost_poly(p, i + 1, len, 0));
    }
    ops.sum = solve_ghost_preimage(tgt_sum, p);
    ops.prod = solve_ghost_preimage(tgt_prod, p);
    ops.diff = solve_ghost_preimage(tgt_diff, p);
    ops.neg = solve_ghost_preimage(tgt_neg, p);
    ops.frob = solve_ghost_preimage(tgt_frob, p);
    return ops;
}

} // namespace

const WittOps& WittOps::get(u64 p, u64 len) {
    std::lock_guard<std::mutex> lock(ops_mutex());
    auto key = std::make_pair(p, len);
    auto it = ops_cache().find(key);
    if (it != ops_cache().end()) return it->second;
    auto [pos, ok] = ops_cache().emplace(key, build_ops(p, len));
    (void)ok;
    return pos->second;
}

} // namespace wittcris
