#pragma once

#include <cstddef>
#include <vector>

#include "sesh/errors.hpp"
#include "sesh/matrix.hpp"

namespace sesh {

// Dense univariate polynomials over an exact field, c[i] = coefficient of
// t^i, no trailing zeros; the zero polynomial is the empty vector. Used for
// minimal polynomials over Q and as the coefficient ring of the bivariate
// gcd (forms treated as univariate over a polynomial coefficient ring).
template <class F>
using UPoly = std::vector<F>;

template <class F>
void up_trim(UPoly<F>& a) {
    while (!a.empty() && FieldTraits<F>::is_zero(a.back())) a.pop_back();
}

template <class F>
int up_deg(const UPoly<F>& a) {
    return static_cast<int>(a.size()) - 1;
}

template <class F>
UPoly<F> up_add(const UPoly<F>& a, const UPoly<F>& b) {
    UPoly<F> c = a.size() >= b.size() ? a : b;
    const UPoly<F>& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) c[i] = c[i] + s[i];
    up_trim(c);
    return c;
}

template <class F>
UPoly<F> up_neg(UPoly<F> a) {
    for (auto& x : a) x = -x;
    return a;
}

template <class F>
UPoly<F> up_sub(const UPoly<F>& a, const UPoly<F>& b) {
    return up_add(a, up_neg(b));
}

template <class F>
UPoly<F> up_mul(const UPoly<F>& a, const UPoly<F>& b,
                const typename FieldTraits<F>::Ctx& ctx) {
    if (a.empty() || b.empty()) return {};
    UPoly<F> c(a.size() + b.size() - 1, FieldTraits<F>::zero(ctx));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    up_trim(c);
    return c;
}

template <class F>
UPoly<F> up_scale(UPoly<F> a, const F& s) {
    for (auto& x : a) x = x * s;
    up_trim(a);
    return a;
}

// Euclidean division by a nonzero divisor; returns {quotient, remainder}.
template <class F>
std::pair<UPoly<F>, UPoly<F>> up_divmod(UPoly<F> a, const UPoly<F>& b,
                                        const typename FieldTraits<F>::Ctx& ctx) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    UPoly<F> q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, FieldTraits<F>::zero(ctx));
    F lead_inv = FieldTraits<F>::inv(b.back());
    for (std::size_t k = a.size(); k-- >= b.size();) {
        if (FieldTraits<F>::is_zero(a[k])) {
            if (k == 0) break;
            continue;
        }
        F f = a[k] * lead_inv;
        q[k - b.size() + 1] = f;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[k - b.size() + 1 + j] = a[k - b.size() + 1 + j] - f * b[j];
        if (k == 0) break;
    }
    up_trim(a);
    up_trim(q);
    return {q, a};
}

template <class F>
UPoly<F> up_monic(UPoly<F> a) {
    if (a.empty()) return a;
    F inv = FieldTraits<F>::inv(a.back());
    for (auto& x : a) x = x * inv;
    return a;
}

// Monic gcd; gcd(0, 0) = 0.
template <class F>
UPoly<F> up_gcd(UPoly<F> a, UPoly<F> b, const typename FieldTraits<F>::Ctx& ctx) {
    up_trim(a);
    up_trim(b);
    while (!b.empty()) {
        auto [q, r] = up_divmod(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    return up_monic(std::move(a));
}

// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class F>
std::array<UPoly<F>, 3> up_xgcd(UPoly<F> a, UPoly<F> b,
                                const typename FieldTraits<F>::Ctx& ctx) {
    UPoly<F> s0{FieldTraits<F>::one(ctx)}, s1{};
    UPoly<F> t0{}, t1{FieldTraits<F>::one(ctx)};
    up_trim(a);
    up_trim(b);
    while (!b.empty()) {
        auto [q, r] = up_divmod(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
        UPoly<F> s2 = up_sub(s0, up_mul(q, s1, ctx));
        s0 = std::move(s1);
        s1 = std::move(s2);
        UPoly<F> t2 = up_sub(t0, up_mul(q, t1, ctx));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.empty()) {
        F inv = FieldTraits<F>::inv(a.back());
        a = up_scale(std::move(a), inv);
        s0 = up_scale(std::move(s0), inv);
        t0 = up_scale(std::move(t0), inv);
    }
    return {std::move(a), std::move(s0), std::move(t0)};
}

template <class F>
UPoly<F> up_derivative(const UPoly<F>& a, const typename FieldTraits<F>::Ctx& ctx) {
    if (a.size() <= 1) return {};
    UPoly<F> d(a.size() - 1, FieldTraits<F>::zero(ctx));
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = a[i] * FieldTraits<F>::from_int(static_cast<long>(i), ctx);
    up_trim(d);
    return d;
}

template <class F>
F up_eval(const UPoly<F>& a, const F& x, const typename FieldTraits<F>::Ctx& ctx) {
    F acc = FieldTraits<F>::zero(ctx);
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = acc * x + a[i];
        if (i == 0) break;
    }
    return acc;
}

// ---- bivariate layer: polynomials in v over F[u] ----
//
// Representation: b[k] is the F[u]-coefficient of v^k. Used only by the
// form gcd, where the subresultant remainder sequence runs over F[u].

template <class F>
using BPoly = std::vector<UPoly<F>>;

template <class F>
void bp_trim(BPoly<F>& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}

template <class F>
int bp_deg(const BPoly<F>& a) {
    return static_cast<int>(a.size()) - 1;
}

template <class F>
BPoly<F> bp_mul(const BPoly<F>& a, const BPoly<F>& b,
                const typename FieldTraits<F>::Ctx& ctx) {
    if (a.empty() || b.empty()) return {};
    BPoly<F> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = up_add(c[i + j], up_mul(a[i], b[j], ctx));
    bp_trim(c);
    return c;
}

// gcd over F[u] of all coefficients (monic); zero polynomial has content 0.
template <class F>
UPoly<F> bp_content(const BPoly<F>& a, const typename FieldTraits<F>::Ctx& ctx) {
    UPoly<F> c;
    for (const auto& coeff : a) c = up_gcd(c, coeff, ctx);
    return c;
}

// Exact division of every coefficient by d (remainders must vanish).
template <class F>
BPoly<F> bp_div_exact_upoly(const BPoly<F>& a, const UPoly<F>& d,
                            const typename FieldTraits<F>::Ctx& ctx) {
    BPoly<F> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [q, r] = up_divmod(a[i], d, ctx);
        if (!r.empty()) throw Error("inexact coefficient division in bivariate gcd");
        c[i] = std::move(q);
    }
    bp_trim(c);
    return c;
}

template <class F>
BPoly<F> bp_primitive_part(const BPoly<F>& a, const typename FieldTraits<F>::Ctx& ctx) {
    if (a.empty()) return a;
    return bp_div_exact_upoly(a, bp_content(a, ctx), ctx);
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg_v r < deg_v b.
template <class F>
BPoly<F> bp_pseudo_rem(BPoly<F> a, const BPoly<F>& b,
                       const typename FieldTraits<F>::Ctx& ctx) {
    bp_trim(a);
    const int db = bp_deg(b);
    const UPoly<F>& lb = b.back();
    while (bp_deg(a) >= db) {
        int da = bp_deg(a);
        UPoly<F> la = a.back();
        // a = lb*a - la*v^(da-db)*b
        BPoly<F> scaled(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = up_mul(a[i], lb, ctx);
        for (int j = 0; j <= db; ++j) {
            std::size_t idx = static_cast<std::size_t>(da - db + j);
            scaled[idx] = up_sub(scaled[idx], up_mul(la, b[j], ctx));
        }
        a = std::move(scaled);
        bp_trim(a);
        if (bp_deg(a) == da) throw Error("pseudo-remainder failed to reduce degree");
    }
    return a;
}

template <class F>
UPoly<F> up_pow(const UPoly<F>& a, int e, const typename FieldTraits<F>::Ctx& ctx) {
    UPoly<F> r{FieldTraits<F>::one(ctx)};
    for (int i = 0; i < e; ++i) r = up_mul(r, a, ctx);
    return r;
}

// Subresultant PRS gcd in F[u][v]. Returns an associate of the gcd;
// callers normalize. Contents are split off first, so the remainder
// sequence runs on primitive parts only.
template <class F>
BPoly<F> bp_gcd(BPoly<F> a, BPoly<F> b, const typename FieldTraits<F>::Ctx& ctx) {
    bp_trim(a);
    bp_trim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    UPoly<F> cont = up_gcd(bp_content(a, ctx), bp_content(b, ctx), ctx);
    BPoly<F> p0 = bp_primitive_part(a, ctx);
    BPoly<F> p1 = bp_primitive_part(b, ctx);
    if (bp_deg(p0) < bp_deg(p1)) std::swap(p0, p1);
    UPoly<F> g{FieldTraits<F>::one(ctx)};
    UPoly<F> h{FieldTraits<F>::one(ctx)};
    while (true) {
        int delta = bp_deg(p0) - bp_deg(p1);
        BPoly<F> r = bp_pseudo_rem(p0, p1, ctx);
        if (r.empty()) break;
        if (bp_deg(r) == 0) {
            // coprime up to content
            p1 = BPoly<F>{UPoly<F>{FieldTraits<F>::one(ctx)}};
            break;
        }
        UPoly<F> divisor = up_mul(g, up_pow(h, delta, ctx), ctx);
        p0 = std::move(p1);
        p1 = bp_div_exact_upoly(r, divisor, ctx);
        g = p0.back();
        if (delta > 0) {
            auto [q, rem] = up_divmod(up_pow(g, delta, ctx), up_pow(h, delta - 1, ctx), ctx);
            if (!rem.empty()) throw Error("subresultant h-sequence division inexact");
            h = std::move(q);
        }
    }
    BPoly<F> pp = bp_primitive_part(p1, ctx);
    BPoly<F> result(pp.size());
    for (std::size_t i = 0; i < pp.size(); ++i) result[i] = up_mul(pp[i], cont, ctx);
    bp_trim(result);
    return result;
}

} // namespace sesh
