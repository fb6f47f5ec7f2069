#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sesh/matrix.hpp"
#include "sesh/rational.hpp"

namespace sesh {

class NumberField;
using NumberFieldPtr = std::shared_ptr<const NumberField>;

// Element of Q[t]/(f), stored as coordinates in the power basis
// 1, th, ..., th^(n-1).
class NfElement {
public:
    NfElement() = default; // empty shell, only for container resizing
    NfElement(NumberFieldPtr field, std::vector<Rational> coeffs);

    const NumberFieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const; // lies in Q, i.e. all higher coordinates vanish
    const Rational& rational_value() const; // requires is_rational

    NfElement operator-() const;
    NfElement inv() const; // DivisionByZero on 0

    friend NfElement operator+(const NfElement& a, const NfElement& b);
    friend NfElement operator-(const NfElement& a, const NfElement& b);
    friend NfElement operator*(const NfElement& a, const NfElement& b);
    friend NfElement operator*(const NfElement& a, const Rational& s);
    friend NfElement operator*(const Rational& s, const NfElement& a);
    bool operator==(const NfElement& o) const;

    std::string str(const std::string& var = "th") const;

private:
    NumberFieldPtr field_;
    std::vector<Rational> c_;
};

// Q[t]/(f) with f monic, squarefree, and irreducible. Irreducibility is
// certified at construction from factor degree patterns modulo several
// primes of good reduction: a rational factor of degree k would reduce to a
// degree-k product of modular factors for every good prime, so once the
// intersection of achievable subset sums over the observed patterns is
// {0, n}, no proper factor can exist. Inconclusive certification rejects
// the input; it is never accepted silently.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    struct Options {
        int prime_budget = 25;           // good primes consumed at most
        std::uint32_t prime_bound = 1000; // primes searched below this
    };

    // min_poly: constant term first, leading coefficient 1, degree >= 1.
    // Throws NotSquarefree or IrreducibilityUnverified.
    static NumberFieldPtr create(std::vector<Rational> min_poly, const Options& opt);
    static NumberFieldPtr create(std::vector<Rational> min_poly) {
        return create(std::move(min_poly), Options());
    }

    // The degree-1 field Q = Q[t]/(t); cached singleton.
    static NumberFieldPtr rationals();

    int degree() const { return degree_; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }
    bool same(const NumberField& o) const { return min_poly_ == o.min_poly_; }

    NfElement zero() const;
    NfElement one() const;
    NfElement gen() const; // th
    NfElement from_rational(const Rational& r) const;
    NfElement element(std::vector<Rational> coeffs) const; // length = degree

    // th^(degree + j) in the power basis, j = 0 .. degree-2.
    const std::vector<std::vector<Rational>>& power_reductions() const { return pow_red_; }

private:
    explicit NumberField(std::vector<Rational> mp);

    std::vector<Rational> min_poly_;
    int degree_;
    std::vector<std::vector<Rational>> pow_red_;
};

// Dimension over Q of the Q-subalgebra generated by gens (with 1), computed
// by saturating the spanned subspace under multiplication by the
// generators. Empty input yields 1. All generators must share one field.
int subalgebra_degree(const std::vector<NfElement>& gens);

// Echelonized Q-basis of the subalgebra, with exact coordinate extraction.
// This is how evaluations landing in a residue field get expanded into
// rows over Q.
class SubalgebraBasis {
public:
    static SubalgebraBasis compute(const NumberFieldPtr& field,
                                   const std::vector<NfElement>& gens);

    int dimension() const { return static_cast<int>(rows_.size()); }
    const NumberFieldPtr& field() const { return field_; }

    // Coordinates of e w.r.t. the basis; nullopt if e lies outside.
    std::optional<std::vector<Rational>> coords_of(const NfElement& e) const;

private:
    NumberFieldPtr field_;
    std::vector<std::vector<Rational>> rows_; // RREF rows of length degree
    std::vector<std::size_t> pivots_;
};

// "p/q", "th^2", "1/2*th - 3", ... ; nullopt on syntax errors.
std::optional<NfElement> nf_parse(const NumberFieldPtr& field, const std::string& text);

// "t^2-2", "t^3 - t - 1", ... as a coefficient vector, constant term first
// and including the leading term. nullopt on syntax errors.
std::optional<std::vector<Rational>> poly_parse(const std::string& text,
                                                const std::string& var = "t");

template <>
struct FieldTraits<NfElement> {
    using Ctx = NumberFieldPtr;
    static NfElement zero(const Ctx& f) { return f->zero(); }
    static NfElement one(const Ctx& f) { return f->one(); }
    static NfElement from_int(long n, const Ctx& f) { return f->from_rational(Rational(n)); }
    static bool is_zero(const NfElement& x) { return x.is_zero(); }
    static NfElement inv(const NfElement& x) { return x.inv(); }
    // Scale so the first nonzero entry is 1 (the number-field analogue of
    // content-and-sign normalization over Q).
    static void normalize_span(std::vector<NfElement>& v);
    static std::string str(const NfElement& x) { return x.str(); }
};

} // namespace sesh
