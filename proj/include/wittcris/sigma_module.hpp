#pragma once

// Free modules over the Galois ring W_n(F_{p^m}) equipped with a
// sigma-semilinear endomorphism F(v) = A * sigma(v): slope data through
// division-free characteristic polynomials and Newton polygons, fixed points
// of F, the unit-root (slope-zero) part, and an exact solver for the
// inhomogeneous equation F(a) = p * (a + b) in the cyclic model of a
// one-slope module with divided-power series coefficients.

#include "common.hpp"
#include "dp_series.hpp"
#include "galois_ring.hpp"
#include "gr_linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wittcris {

struct SigmaModule {
    GrDescPtr R;
    GrMat A; // rank x rank; F(v) = A * sigma(v)

    SigmaModule() = default;
    SigmaModule(GrDescPtr R_, GrMat A_);

    u64 rank() const { return A.rows; }
    std::vector<GrElem> apply_f(const std::vector<GrElem>& v) const;
    // matrix of F^t in the standard basis: A sigma(A) ... sigma^{t-1}(A)
    GrMat f_power_matrix(u64 t) const;
};

// reduced non-negative fraction
struct Frac {
    u64 num = 0;
    u64 den = 1;

    Frac() = default;
    Frac(u64 num_, u64 den_);

    friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
    friend bool operator<(const Frac& a, const Frac& b) {
        return (u128)a.num * b.den < (u128)b.num * a.den;
    }
    std::string to_string() const;
};

// slope/multiplicity pairs in ascending slope order; multiplicities sum to
// the rank.  Throws PrecisionError when the working length cannot see the
// total slope mass (the constant coefficient of the characteristic polynomial
// of the linearized power vanishes).
std::vector<std::pair<Frac, u64>> newton_slopes(const SigmaModule& M);

// the endomorphism as a matrix over Z/p^n in the coordinate basis (rank*m
// coordinates); exposed for cross-checks
GrMat f_linearized_matrix(const SigmaModule& M);

// generators of {v : F(v) = v} as vectors over the Galois ring
std::vector<std::vector<GrElem>> fixed_points_f1(const SigmaModule& M);

// the largest F-stable direct factor on which F is invertible, extracted from
// the stabilized image chain of F^t
struct UnitRootPart {
    GrMat basis;     // rank x subrank, unit staircase columns
    SigmaModule sub; // induced endomorphism A' with basis * A' = A * sigma(basis)
};
UnitRootPart unit_root_part(const SigmaModule& M);
u64 unit_root_rank(const SigmaModule& M);

// Exact solution of the cyclic one-slope system with divided-power series
// coefficients.  The model has components x_1..x_s with F(x_i) = x_{i+1} and
// F(x_s) = p^r x_1; the equation solved componentwise is
//   F(a)_i = p * (a_i + b_i),
// returned in the scaled unknowns u_i = p^scale_exp * a_i, which satisfy
//   frob(u_{i-1}) - p u_i = p^{scale_exp+1} b_i        (2 <= i <= s)
//   p^r frob(u_s) - p u_1 = p^{scale_exp+1} b_1
// to p-adic precision `precision` (n means the identities hold exactly at the
// working length).
struct IsocrystalSolution {
    std::vector<DpSeries> u;
    u64 scale_exp = 0;
    u64 precision = 0;
};
IsocrystalSolution isocrystal_solve(const DpProfile& prof, u64 r, u64 s, const std::vector<DpSeries>& b);

} // namespace wittcris
