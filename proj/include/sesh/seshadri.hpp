#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sesh/linsys.hpp"

namespace sesh {

// Parameters of the certified bracket on P^2 for L = O(bundle_degree).
// gamma is the threshold the lower bound is certified against; it must
// satisfy gamma > 0 and alpha*gamma^2 < L.L (checked against the point's
// residue degree when the computation starts, since alpha is not known
// here).
struct BracketParams {
    Rational gamma;
    int bundle_degree = 1;
    int ample_shift_r = -2; // smallest r with r*bundle_degree + 3 >= 1
    long chi = 1;
};

BracketParams make_bracket_params(const Rational& gamma, int bundle_degree = 1);

// Squared upper bound L^2/alpha; callers compare eps^2 against it so no
// square root is ever materialized.
Rational sqrt_bound_sq(const Rational& l_self, int alpha);

// m-th power of the multipoint upper bound L_top / sum(degs).
Rational multipoint_bound_mth_power(const Rational& l_top, const std::vector<int>& degs, int m);

struct DegreeBound {
    long d = 0;             // smallest admissible d
    long m = 0;             // d * gamma, integral by construction
    Rational quadratic_value; // value of the sufficient quadratic at d, logged
};

// Smallest d with d > r, d*gamma integral, and h0(d * bundle_degree) >
// alpha*m(m+1)/2 where m = d*gamma. The quadratic
// (L^2 - a g^2) d^2 - (a g + r L^2) d + 2 chi is evaluated at d for
// cross-checking; the exact section count is the operative condition. Every
// curve with Seshadri ratio below gamma has degree at most d*bundle_degree.
DegreeBound degree_bound(const BracketParams& p, int alpha);

enum class ResultKind { Exact, Interval };

template <class F>
struct BracketOutcome {
    ResultKind kind = ResultKind::Interval;
    int alpha = 0;

    Rational value; // Exact: bundle_degree * e / (alpha * m) for the witness

    Rational lower;           // Interval: the certified gamma
    Rational upper_candidate; // Interval: best enumerated curve ratio
    Rational upper_sq_bound;  // Interval: L^2/alpha, compared on squares

    std::optional<Form<F>> witness; // the ratio-minimizing kernel vector
    int witness_degree = 0;
    int witness_order = 0;

    std::vector<MultTableEntry<F>> table; // e = 1 .. enumeration_degree
    long degree_bound_d = 0;
    long enumeration_degree = 0; // degree_bound_d * bundle_degree
    Rational quadratic_value;

    Rational best_ratio() const { return kind == ResultKind::Exact ? value : upper_candidate; }
};

using SeshadriResult = BracketOutcome<Rational>;
using SeshadriResultExt = BracketOutcome<NfElement>;

// The bracket algorithm over base field Q. Enumerates m_max(e) for
// e = 1 .. d*d0, takes the minimal ratio d0*e/(alpha*m_max(e)), and returns
// it as the exact Seshadri constant when it beats gamma: every curve with
// ratio below gamma is a component of a degree-d*d0 kernel curve, a
// reducible witness never beats its best component, and the minimizing
// ratio is attained by a component, so the enumeration minimum is the
// infimum. Otherwise gamma is a certified lower bound and the pair
// (candidate, sqrt bound) a two-sided bracket.
SeshadriResult seshadri_p2(const ClosedPoint& x, const BracketParams& p);

// Same computation with the point's coordinate field K as base field
// (point built with make_over_coordinate_field; forms take K coefficients).
SeshadriResultExt seshadri_p2_over_extension(const ClosedPoint& x, const BracketParams& p);

struct BaseChangeReport {
    enum class Mode { RationalPoint, ResidueField } mode;
    int alpha = 0;
    Rational ext_gamma;
    SeshadriResult base;     // over Q
    SeshadriResultExt extended; // over K
    // Mode::RationalPoint: the tables and results must be identical.
    bool tables_match = false;
    bool results_match = false;
    bool witness_match = false;
    // Mode::ResidueField: verified bracket inequality eps_K >= eps_Q.
    bool inequality_holds = false;
    bool strict = false;
};

// Case (a): x is Q-rational, K arbitrary; recompute over K and assert the
// table is identical, which is the computational content of base-change
// invariance. Case (b): x has residue degree alpha >= 2 and K is its
// coordinate field; the same coordinates give a K-rational point y0, and
// the report verifies eps_K >= eps_Q from the two brackets. The extension
// side of case (b) runs with its own threshold ext_gamma (default 9/10 of
// the bundle degree; the input gamma was calibrated to alpha and is
// usually far too low for a rational point). Anything else (a genuine
// relative extension) is rejected.
BaseChangeReport base_change_compare(const ClosedPoint& x, const NumberFieldPtr& K,
                                     const BracketParams& p,
                                     std::optional<Rational> ext_gamma = std::nullopt);

// Witness ratios 1/delta at the points [2^(1/delta), 1, 0] for
// delta = 2 .. dmax, each computed from the actual line x2 through the
// point. The ratios tend to 0, which is how the global Seshadri constant
// of the plane over Q degenerates.
std::vector<std::pair<int, Rational>> global_trend(int dmax);

} // namespace sesh
