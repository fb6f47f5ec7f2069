#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sesh/errors.hpp"
#include "sesh/rational.hpp"

namespace sesh {

// The linear algebra is generic over an exact field. A field plugs in by
// specializing FieldTraits: a context (empty for Q, the number field
// otherwise), exact arithmetic helpers, and the canonical scaling used for
// kernel vectors and certificates.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    struct Ctx {
        bool operator==(const Ctx&) const = default;
    };
    static Rational zero(const Ctx&) { return Rational(0); }
    static Rational one(const Ctx&) { return Rational(1); }
    static Rational from_int(long n, const Ctx&) { return Rational(n); }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational inv(const Rational& x) {
        if (is_zero(x)) throw DivisionByZero("inverse of zero");
        return Rational(1) / x;
    }
    // Clear denominators, divide by integer content, make the first nonzero
    // entry positive. Identity on the zero vector.
    static void normalize_span(std::vector<Rational>& v);
    static std::string str(const Rational& x) { return rat_str(x); }
};

template <class F>
class Matrix {
public:
    using Traits = FieldTraits<F>;
    using Ctx = typename Traits::Ctx;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, Ctx ctx = Ctx{})
        : rows_(rows), cols_(cols), ctx_(std::move(ctx)),
          a_(rows * cols, Traits::zero(ctx_)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Ctx& ctx() const { return ctx_; }

    F& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    Ctx ctx_;
    std::vector<F> a_;
};

// In-place Gauss-Jordan over the field; pivot = first nonzero in column.
// Returns pivot columns ascending. The result is the reduced row echelon
// form, which is unique, so everything derived from it is canonical.
template <class F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
    using T = FieldTraits<F>;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pr = r;
        while (pr < rows && T::is_zero(m.at(pr, col))) ++pr;
        if (pr == rows) continue;
        if (pr != r) {
            for (std::size_t j = col; j < cols; ++j) std::swap(m.at(r, j), m.at(pr, j));
        }
        F piv_inv = T::inv(m.at(r, col));
        for (std::size_t j = col; j < cols; ++j) m.at(r, j) = m.at(r, j) * piv_inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || T::is_zero(m.at(i, col))) continue;
            F f = m.at(i, col);
            for (std::size_t j = col; j < cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

// Kernel basis read off a reduced row echelon form, one vector per free
// column (ascending), normalized via the field's canonical scaling.
template <class F>
std::vector<std::vector<F>> kernel_from_rref(const Matrix<F>& r,
                                             const std::vector<std::size_t>& pivots) {
    using T = FieldTraits<F>;
    const std::size_t cols = r.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<F> v(cols, T::zero(r.ctx()));
        v[f] = T::one(r.ctx());
        for (std::size_t t = 0; t < pivots.size(); ++t) v[pivots[t]] = -r.at(t, f);
        T::normalize_span(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::vector<std::vector<F>> kernel_basis(const Matrix<F>& m) {
    Matrix<F> w = m;
    auto pivots = rref_in_place(w);
    return kernel_from_rref(w, pivots);
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    Matrix<F> w = m;
    return rref_in_place(w).size();
}

// ---- rational matrices: certified modular/fraction-free hybrid ----

struct RationalKernel {
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> basis;
};

// Fraction-free (Bareiss) forward elimination on the denominator-cleared
// integer matrix, followed by exact back substitution to the RREF. Always
// available; used directly on small inputs and as the fallback of the
// modular path.
RationalKernel kernel_rational_exact(const Matrix<Rational>& m);

// Modular path: RREF mod 30-bit primes, CRT + rational reconstruction of
// the entries the kernel needs, then exact re-multiplication of every
// candidate vector. Full rank mod a single good prime certifies an empty
// kernel outright (rank cannot increase under reduction); a reconstructed
// basis is only reported after Mv = 0 passes exactly, which pins the rank
// from both sides. Falls back to the exact path when the prime budget runs
// out. Output is identical to kernel_rational_exact.
RationalKernel kernel_rational(const Matrix<Rational>& m);

// One-prime probe: true means the kernel is certainly {0}. False means a
// kernel is likely; callers that need certainty go through kernel_rational.
bool probe_full_column_rank(const Matrix<Rational>& m);

template <>
inline std::vector<std::vector<Rational>> kernel_basis<Rational>(const Matrix<Rational>& m) {
    return kernel_rational(m).basis;
}

template <>
inline std::size_t rank<Rational>(const Matrix<Rational>& m) {
    return kernel_rational(m).rank;
}

} // namespace sesh
