#pragma once

#include <vector>

#include "sesh/rational.hpp"

namespace sesh {

// Neron-Severi-style lattice of a surface: intersection form, canonical
// class, chi(O). Everything here is exact integer/rational arithmetic on
// user-supplied data; no geometry is discovered, only checked.
struct LatticeSurface {
    int rank = 0;
    std::vector<std::vector<long>> gram; // symmetric rank x rank
    std::vector<long> canonical;         // K
    long chi = 0;                        // chi(O)

    static LatticeSurface make(std::vector<std::vector<long>> gram, std::vector<long> canonical,
                               long chi);

    // Hodge-index style advisory: signature (1, rank-1). A violation is a
    // warning for the caller, never an error.
    bool signature_ok() const;
};

// Blow-up at points of residue degrees alphas: the lattice gains one class
// E_i per point with E_i.E_i = -alpha_i, mutually orthogonal and orthogonal
// to pullbacks. Extended vectors are [base coords..., e_1, ..., e_t].
struct BlowupLattice {
    LatticeSurface base;
    std::vector<int> alphas;

    static BlowupLattice make(LatticeSurface base, std::vector<int> alphas);

    int total_rank() const { return base.rank + static_cast<int>(alphas.size()); }
    std::vector<std::vector<long>> extended_gram() const;
    long pairing_ext(const std::vector<long>& u, const std::vector<long>& v) const;
};

// A curve on the base together with its vanishing orders at the blown-up
// points; the strict transform is pi*C - sum l_i E_i, and pairing it with
// E_i recovers l_i * alpha_i, the multiplicity over the base field.
struct CurveClass {
    std::vector<long> base_class;
    std::vector<int> mults;
};

std::vector<long> strict_transform(const CurveClass& c, const BlowupLattice& b);

long pairing(const std::vector<long>& u, const std::vector<long>& v, const LatticeSurface& s);

// chi(O) + D.(D - K)/2.
Rational chi_rr_lattice(const std::vector<long>& d, const LatticeSurface& s);

// cls is a class on the blow-up (extended coordinates). Nef against the
// supplied list: pairs >= 0 with every strict transform and with every E_i.
bool is_nef_against(const std::vector<long>& cls, const std::vector<CurveClass>& curves,
                    const BlowupLattice& b);

struct SupOutcome {
    Rational value;   // min over curves of (L.C) / (sum of l_i alpha_i over chosen points)
    Rational sq_cap;  // L^2 / sum of alphas over chosen points; eps^2 <= sq_cap always
    bool cap_binding; // value^2 > sq_cap: the square bound is the sharper constraint
    bool exact;       // complete list and the cap not binding
};

// Single- or multi-point Seshadri value from a supplied curve list. L is a
// class on the base, points are indices of blown-up points. Every listed
// curve must pass through at least one chosen point and L must pair >= 0
// with every listed curve. With an incomplete list the value is only an
// upper bound; that status is carried, never guessed away.
SupOutcome seshadri_sup(const std::vector<long>& l, const std::vector<int>& points,
                        const std::vector<CurveClass>& curves, bool complete,
                        const BlowupLattice& b);

// Exact rational identities sup(n^2 L) = n^2 sup(L) and sup(nL) = n sup(L)
// on a fixed curve list (the numerical shadow of pulling back along
// multiplication by n).
bool scaling_check(const std::vector<long>& l, int n, const std::vector<int>& points,
                   const std::vector<CurveClass>& curves, bool complete,
                   const BlowupLattice& b);

struct CoverReport {
    Rational eps_base;         // single point z on Z
    Rational eps_cover_multi;  // all fiber points on Y
    Rational eps_cover_single; // first fiber point only
    bool equality = false;     // multi-point value equals the base value
    bool single_point_ge = false;
    bool list_incomplete_flag = false; // set when equality fails on the data
};

// Numerical check of the finite-cover identities on matched curve lists.
// phi is the pullback Pic Z -> Pic Y (rankY x rankZ, column action). A
// failed equality flags the curve lists as incomplete; it is not a
// counterexample.
CoverReport cover_check(const std::vector<std::vector<long>>& phi, int z_alpha,
                        const std::vector<int>& fiber_alphas, const std::vector<long>& l,
                        const std::vector<CurveClass>& z_curves,
                        const std::vector<CurveClass>& y_curves, const LatticeSurface& z,
                        const LatticeSurface& y, bool z_complete, bool y_complete);

} // namespace sesh
