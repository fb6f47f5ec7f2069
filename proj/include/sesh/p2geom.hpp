#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sesh/numfield.hpp"
#include "sesh/upoly.hpp"

namespace sesh {

// Exponent triple of a monomial x0^e0 x1^e1 x2^e2.
struct Mono {
    int e0 = 0, e1 = 0, e2 = 0;
    int total() const { return e0 + e1 + e2; }
    bool operator==(const Mono&) const = default;
};

// Graded-lex with x0 > x1 > x2: within a degree, (d,0,0) comes first.
// This is the fixed monomial order for matrices, witnesses and certificates.
struct MonoOrder {
    bool operator()(const Mono& a, const Mono& b) const {
        if (a.total() != b.total()) return a.total() < b.total();
        if (a.e0 != b.e0) return a.e0 > b.e0;
        return a.e1 > b.e1;
    }
};

// Monomials of degree d in graded-lex order; these index the columns of
// every evaluation matrix. Count is (d+1)(d+2)/2.
std::vector<Mono> monomial_basis(int d);

// Homogeneous trivariate form over an exact field. Canonical scaling over
// Q: denominators cleared, integer content 1, first nonzero coefficient in
// graded-lex order positive. Over a number field: first nonzero coefficient
// is 1.
template <class F>
class Form {
public:
    using Ctx = typename FieldTraits<F>::Ctx;

    static Form from_terms(int degree, std::vector<std::pair<Mono, F>> terms, Ctx ctx = Ctx{}) {
        Form f;
        f.degree_ = degree;
        f.ctx_ = std::move(ctx);
        for (auto& [m, c] : terms) {
            if (m.total() != degree) throw InputError("form term of wrong degree");
            if (FieldTraits<F>::is_zero(c)) continue;
            auto it = f.coeffs_.find(m);
            if (it == f.coeffs_.end())
                f.coeffs_.emplace(m, std::move(c));
            else {
                it->second = it->second + c;
                if (FieldTraits<F>::is_zero(it->second)) f.coeffs_.erase(it);
            }
        }
        if (f.coeffs_.empty()) throw InputError("zero form");
        f.normalize();
        return f;
    }

    int degree() const { return degree_; }
    const std::map<Mono, F, MonoOrder>& terms() const { return coeffs_; }
    const Ctx& ctx() const { return ctx_; }

    F coeff(const Mono& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? FieldTraits<F>::zero(ctx_) : it->second;
    }

    Form operator*(const Form& o) const {
        std::vector<std::pair<Mono, F>> terms;
        for (const auto& [ma, ca] : coeffs_)
            for (const auto& [mb, cb] : o.coeffs_)
                terms.push_back({Mono{ma.e0 + mb.e0, ma.e1 + mb.e1, ma.e2 + mb.e2}, ca * cb});
        return from_terms(degree_ + o.degree_, std::move(terms), ctx_);
    }

    bool operator==(const Form& o) const {
        return degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    void normalize() {
        std::vector<F> v;
        v.reserve(coeffs_.size());
        for (const auto& [m, c] : coeffs_) v.push_back(c);
        FieldTraits<F>::normalize_span(v);
        std::size_t i = 0;
        for (auto& [m, c] : coeffs_) c = v[i++];
    }

private:
    Form() = default;
    int degree_ = 0;
    Ctx ctx_{};
    std::map<Mono, F, MonoOrder> coeffs_;
};

// A closed point of P^2, presented by homogeneous coordinates in a number
// field, normalized so the first nonzero coordinate (the chart) equals 1.
// By default the base field is Q and the residue degree is the dimension of
// the Q-subalgebra generated by the two affine coordinates. A point built
// with make_over_coordinate_field instead treats its coordinate field K as
// the base, which makes it K-rational (residue degree 1); that is the
// presentation base-change computations work with.
class ClosedPoint {
public:
    ClosedPoint() = default; // empty shell, only for containers and members

    static ClosedPoint make(const NumberFieldPtr& field, std::array<NfElement, 3> coords);
    static ClosedPoint make_over_coordinate_field(const NumberFieldPtr& field,
                                                  std::array<NfElement, 3> coords);

    const NumberFieldPtr& coord_field() const { return field_; }
    const std::array<NfElement, 3>& coords() const { return coords_; }
    int chart() const { return chart_; }
    int residue_degree() const { return alpha_; }
    bool base_is_coordinate_field() const { return base_is_coord_field_; }
    const SubalgebraBasis& residue_basis() const { return residue_basis_; }

    bool same_presentation(const ClosedPoint& o) const;

private:
    static ClosedPoint make_normalized(const NumberFieldPtr& field,
                                       std::array<NfElement, 3> coords, int chart,
                                       bool base_is_coord_field);
    NumberFieldPtr field_;
    std::array<NfElement, 3> coords_;
    int chart_ = 0;
    int alpha_ = 1;
    bool base_is_coord_field_ = false;
    SubalgebraBasis residue_basis_;
};

// Coordinate powers cache for repeated evaluations at one point.
struct PointPowers {
    std::array<std::vector<NfElement>, 3> pw;

    PointPowers(const ClosedPoint& x, int max_degree) {
        for (int k = 0; k < 3; ++k) {
            pw[k].reserve(max_degree + 1);
            pw[k].push_back(x.coord_field()->one());
            for (int t = 1; t <= max_degree; ++t) pw[k].push_back(pw[k].back() * x.coords()[k]);
        }
    }
};

namespace detail {
inline NfElement promote(const Rational& c, const NumberFieldPtr& f) { return f->from_rational(c); }
inline const NfElement& promote(const NfElement& c, const NumberFieldPtr&) { return c; }

// falling factorial i(i-1)...(i-a+1) as a rational
Rational falling_factorial(int i, int a);
} // namespace detail

// Value of the order-(a,b,c) partial derivative at the point. Terms with an
// exponent below the derivative order vanish.
template <class F>
NfElement derivative_eval(const Form<F>& f, int a, int b, int c, const ClosedPoint& x,
                          const PointPowers& powers) {
    NfElement acc = x.coord_field()->zero();
    for (const auto& [m, coeff] : f.terms()) {
        if (m.e0 < a || m.e1 < b || m.e2 < c) continue;
        Rational k = detail::falling_factorial(m.e0, a) * detail::falling_factorial(m.e1, b) *
                     detail::falling_factorial(m.e2, c);
        NfElement term = detail::promote(coeff, x.coord_field()) * k;
        term = term * powers.pw[0][m.e0 - a];
        term = term * powers.pw[1][m.e1 - b];
        term = term * powers.pw[2][m.e2 - c];
        acc = acc + term;
    }
    return acc;
}

// Largest l such that every partial derivative of total order < l vanishes
// at x (characteristic 0, so this is the vanishing order of a local
// equation). 0 <= l <= deg f for a nonzero form, and l = 0 iff f(x) != 0.
template <class F>
int vanishing_order(const Form<F>& f, const ClosedPoint& x) {
    PointPowers powers(x, f.degree());
    for (int t = 0; t <= f.degree(); ++t) {
        for (int a = t; a >= 0; --a)
            for (int b = t - a; b >= 0; --b) {
                int c = t - a - b;
                if (!derivative_eval(f, a, b, c, x, powers).is_zero()) return t;
            }
    }
    return f.degree() + 1; // unreachable for nonzero forms
}

// Multiplicity over the base field: residue degree times vanishing order.
template <class F>
int mult_point(const Form<F>& f, const ClosedPoint& x) {
    return x.residue_degree() * vanishing_order(f, x);
}

// O(d) paired with a curve of degree e on P^2 is d*e.
template <class F>
Rational intersection_number(int bundle_degree, const Form<F>& c) {
    return Rational(bundle_degree) * Rational(c.degree());
}

// ---- gcd of forms ----
//
// A form splits as x0^a * G with x0 not dividing G; G dehomogenizes
// bijectively to a bivariate polynomial of the same total degree, products
// map to products, so the gcd is x0^min(a1,a2) times the homogenized
// bivariate gcd. The bivariate gcd runs a subresultant remainder sequence
// over F[x1].

template <class F>
Form<F> form_gcd(const Form<F>& f1, const Form<F>& f2) {
    const auto& ctx = f1.ctx();
    auto strip = [](const Form<F>& f) {
        int a = f.degree();
        for (const auto& [m, c] : f.terms()) a = std::min(a, m.e0);
        return a;
    };
    int a1 = strip(f1), a2 = strip(f2);
    // Dehomogenization w.r.t. x0 forgets e0, so it does not matter whether
    // the x0 power is stripped first; only the reconstruction degree does.
    auto dehom = [&](const Form<F>& f) {
        BPoly<F> b;
        for (const auto& [m, c] : f.terms()) {
            if (static_cast<int>(b.size()) <= m.e2) b.resize(m.e2 + 1);
            UPoly<F>& row = b[m.e2];
            if (static_cast<int>(row.size()) <= m.e1)
                row.resize(m.e1 + 1, FieldTraits<F>::zero(f.ctx()));
            row[m.e1] = c;
        }
        for (auto& row : b) up_trim(row);
        bp_trim(b);
        return b;
    };
    BPoly<F> g = bp_gcd(dehom(f1), dehom(f2), ctx);
    int shift = std::min(a1, a2);
    int total = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < g[j].size(); ++i)
            if (!FieldTraits<F>::is_zero(g[j][i]))
                total = std::max(total, static_cast<int>(i + j));
    std::vector<std::pair<Mono, F>> terms;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < g[j].size(); ++i)
            if (!FieldTraits<F>::is_zero(g[j][i]))
                terms.push_back({Mono{total - static_cast<int>(i + j) + shift,
                                      static_cast<int>(i), static_cast<int>(j)},
                                 g[j][i]});
    return Form<F>::from_terms(total + shift, std::move(terms), ctx);
}

template <class F>
bool common_component(const Form<F>& f1, const Form<F>& f2) {
    return form_gcd(f1, f2).degree() > 0;
}

// D.C >= mult(D) mult(C) / alpha for curves with no common component
// through x; compared exactly as alpha*degD*degC >= mult(D)*mult(C).
template <class F>
bool bezout_verify(const Form<F>& d, const Form<F>& c, const ClosedPoint& x) {
    if (common_component(d, c)) throw CommonComponent("forms share a component");
    long alpha = x.residue_degree();
    long lhs = alpha * d.degree() * c.degree();
    long rhs = static_cast<long>(mult_point(d, x)) * mult_point(c, x);
    return lhs >= rhs;
}

// ---- text form of Q-coefficient forms: "3/2*x0^2*x1 - x2^3 + ..." ----
std::string form_str(const Form<Rational>& f);
std::optional<Form<Rational>> form_parse(const std::string& text);
std::string form_str(const Form<NfElement>& f);

} // namespace sesh
