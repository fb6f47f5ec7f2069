#pragma once

#include <optional>
#include <vector>

#include "sesh/matrix.hpp"
#include "sesh/p2geom.hpp"

namespace sesh {

// Sections of O(d) on P^2.
inline long h0(long d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

// Euler characteristic of O(d): chi(O) + d(d+3)/2 with chi(O) = 1 and
// K = O(-3). Equals h0(d) for d >= 0 since the higher cohomology vanishes.
inline long chi_rr(long d) { return 1 + d * (d + 3) / 2; }

struct FatPointSpec {
    ClosedPoint point;
    int order = 1; // required vanishing order m >= 1
};

// Base-field policies for the evaluation matrices. Over base field Q the
// rows are Q-rows: each derivative evaluation lands in the residue field
// k(x) and is expanded over its Q-basis into alpha rows. Over base field K
// (points built with make_over_coordinate_field) each derivative is a
// single K-row.
struct RationalBase {
    using Scalar = Rational;
    using Ctx = FieldTraits<Rational>::Ctx;
    static Ctx matrix_ctx(const ClosedPoint&) { return {}; }
    static int rows_per_derivative(const ClosedPoint& x) { return x.residue_degree(); }
    static void expand(const NfElement& value, const ClosedPoint& x,
                       std::vector<Rational>& out) {
        auto coords = x.residue_basis().coords_of(value);
        if (!coords)
            throw Error("evaluation left the residue field; point normalization broken");
        out = std::move(*coords);
    }
};

struct ExtensionBase {
    using Scalar = NfElement;
    using Ctx = FieldTraits<NfElement>::Ctx;
    static Ctx matrix_ctx(const ClosedPoint& x) { return x.coord_field(); }
    static int rows_per_derivative(const ClosedPoint&) { return 1; }
    static void expand(const NfElement& value, const ClosedPoint&, std::vector<NfElement>& out) {
        out.assign(1, value);
    }
};

namespace detail {

// Partial-derivative multi-indices of total order < m along the two affine
// (non-chart) axes, in the fixed row order: total ascending, then the first
// affine axis descending. Count m(m+1)/2 (the local ring at a surface point
// has two coordinates; chart-direction partials are dependent by Euler's
// relation, so they add no conditions). The chart axis entry is always 0.
std::vector<std::array<int, 3>> derivative_orders(int m, int chart);

} // namespace detail

// Rows of the evaluation matrix for one point, extendable in the required
// order m. Row blocks for order m are a prefix of those for m+1, so the
// per-degree multiplicity scan reuses them.
template <class P>
class ConditionRowsBuilder {
public:
    ConditionRowsBuilder(int d, const ClosedPoint& x)
        : d_(d), x_(x), powers_(x, d), basis_(monomial_basis(d)) {}

    // Matrix with h0(d) columns and rows_per_derivative * m(m+1)/2 rows.
    Matrix<typename P::Scalar> matrix_up_to(int m) {
        extend(m);
        const std::size_t rows = static_cast<std::size_t>(P::rows_per_derivative(x_)) *
                                 static_cast<std::size_t>(m) * (m + 1) / 2;
        Matrix<typename P::Scalar> out(rows, basis_.size(), P::matrix_ctx(x_));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < basis_.size(); ++j) out.at(i, j) = rows_[i][j];
        return out;
    }

private:
    void extend(int m) {
        if (m <= built_m_) return;
        auto orders = detail::derivative_orders(m, x_.chart());
        std::size_t first = static_cast<std::size_t>(built_m_) * (built_m_ + 1) / 2;
        std::vector<typename P::Scalar> expanded;
        for (std::size_t oi = first; oi < orders.size(); ++oi) {
            auto [a, b, c] = orders[oi];
            std::vector<std::vector<typename P::Scalar>> block(
                P::rows_per_derivative(x_),
                std::vector<typename P::Scalar>(basis_.size(),
                                                FieldTraits<typename P::Scalar>::zero(
                                                    P::matrix_ctx(x_))));
            for (std::size_t j = 0; j < basis_.size(); ++j) {
                const Mono& mono = basis_[j];
                if (mono.e0 < a || mono.e1 < b || mono.e2 < c) continue;
                Rational k = detail::falling_factorial(mono.e0, a) *
                             detail::falling_factorial(mono.e1, b) *
                             detail::falling_factorial(mono.e2, c);
                NfElement v = x_.coord_field()->from_rational(k) *
                              powers_.pw[0][mono.e0 - a] * powers_.pw[1][mono.e1 - b] *
                              powers_.pw[2][mono.e2 - c];
                std::vector<typename P::Scalar> col;
                P::expand(v, x_, col);
                for (int t = 0; t < P::rows_per_derivative(x_); ++t) block[t][j] = col[t];
            }
            for (auto& row : block) rows_.push_back(std::move(row));
        }
        built_m_ = m;
    }

    int d_;
    ClosedPoint x_;
    PointPowers powers_;
    std::vector<Mono> basis_;
    std::vector<std::vector<typename P::Scalar>> rows_;
    int built_m_ = 0;
};

// Evaluation matrix for several fat points: h0(d) columns in the graded-lex
// monomial basis, and for each point alpha * m(m+1)/2 rows. A form vanishes
// to order >= m_i at every x_i iff its coefficient vector lies in the
// kernel. Redundant rows are fine; the kernel machinery does not need
// independent conditions.
template <class P>
Matrix<typename P::Scalar> conditions_matrix(int d, const std::vector<FatPointSpec>& specs) {
    if (specs.empty()) throw InputError("conditions_matrix needs at least one fat point");
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (specs[i].order < 1) throw InputError("fat point order must be >= 1");
        for (std::size_t j = i + 1; j < specs.size(); ++j)
            if (specs[i].point.same_presentation(specs[j].point))
                throw DuplicatePoint("fat points must be pairwise distinct");
    }
    typename P::Ctx ctx = P::matrix_ctx(specs.front().point);
    std::vector<std::vector<typename P::Scalar>> rows;
    for (const auto& spec : specs) {
        ConditionRowsBuilder<P> builder(d, spec.point);
        Matrix<typename P::Scalar> m = builder.matrix_up_to(spec.order);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<typename P::Scalar> row;
            row.reserve(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
            rows.push_back(std::move(row));
        }
        ctx = P::matrix_ctx(spec.point);
    }
    Matrix<typename P::Scalar> out(rows.size(), static_cast<std::size_t>(h0(d)), ctx);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = rows[i][j];
    return out;
}

template <class F>
struct MaxMultResult {
    int m_max = 0;
    long kernel_dim = 0; // kernel dimension at m_max (0 when m_max = 0)
    std::optional<Form<F>> witness;
};

namespace detail {
// Certified-empty probe: true means the kernel is {0} for sure.
bool probe_kernel_empty(const Matrix<Rational>& m);
bool probe_kernel_empty(const Matrix<NfElement>& m);
} // namespace detail

// Largest m in [1, d] whose fat-point system at x has a nonzero kernel,
// with the canonical first kernel vector as witness. The scan walks m
// upward on cheap one-prime probes; the final claim is then re-established
// by the certified kernel, walking down if a probe was fooled by an
// unlucky prime.
template <class P>
MaxMultResult<typename P::Scalar> max_mult(int d, const ClosedPoint& x) {
    using F = typename P::Scalar;
    MaxMultResult<F> out;
    if (d < 1) return out;
    ConditionRowsBuilder<P> builder(d, x);
    int m = 1;
    while (m <= d && !detail::probe_kernel_empty(builder.matrix_up_to(m))) ++m;
    for (int cand = m - 1; cand >= 1; --cand) {
        auto basis = kernel_basis(builder.matrix_up_to(cand));
        if (basis.empty()) continue;
        out.m_max = cand;
        out.kernel_dim = static_cast<long>(basis.size());
        std::vector<std::pair<Mono, F>> terms;
        auto mon = monomial_basis(d);
        for (std::size_t j = 0; j < mon.size(); ++j)
            if (!FieldTraits<F>::is_zero(basis.front()[j]))
                terms.push_back({mon[j], basis.front()[j]});
        out.witness = Form<F>::from_terms(d, std::move(terms), P::matrix_ctx(x));
        break;
    }
    return out;
}

// One table row of the per-degree search; the certificate payload.
template <class F>
struct MultTableEntry {
    int degree = 0;
    int m_max = 0;
    long kernel_dim = 0;
    std::optional<Form<F>> witness;
};

} // namespace sesh
