#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sesh/p2geom.hpp"

using namespace sesh;

namespace {

NumberFieldPtr sqrt2() { return NumberField::create({rat(-2), rat(0), rat(1)}); }
NumberFieldPtr cbrt2() { return NumberField::create({rat(-2), rat(0), rat(0), rat(1)}); }
NumberFieldPtr cubic() { return NumberField::create({rat(-1), rat(-1), rat(0), rat(1)}); }

ClosedPoint sqrt2_point() {
    auto f = sqrt2();
    return ClosedPoint::make(f, {f->gen(), f->one(), f->zero()});
}

Form<Rational> f(const std::string& s) { return *form_parse(s); }

Form<Rational> random_form(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<long> c(-5, 5);
    std::vector<std::pair<Mono, Rational>> terms;
    for (const Mono& m : monomial_basis(degree)) terms.push_back({m, Rational(c(rng))});
    bool all_zero = true;
    for (const auto& [m, q] : terms) all_zero = all_zero && sgn(q) == 0;
    if (all_zero) terms[0].second = 1;
    return Form<Rational>::from_terms(degree, std::move(terms));
}

} // namespace

TEST_CASE("make_point: residue degrees on the stated examples") {
    auto q = NumberField::rationals();
    ClosedPoint origin = ClosedPoint::make(q, {q->zero(), q->zero(), q->one()});
    CHECK(origin.residue_degree() == 1);
    CHECK(origin.chart() == 2);

    ClosedPoint s = sqrt2_point();
    CHECK(s.residue_degree() == 2);
    CHECK(s.chart() == 0);
    // normalized so the chart coordinate is 1; 1/sqrt2 = th/2
    CHECK(s.coords()[0] == sqrt2()->one());
    CHECK(s.coords()[1].coeffs() == std::vector<Rational>{rat(0), rat(1, 2)});

    auto k = cubic();
    ClosedPoint t = ClosedPoint::make(k, {k->gen(), k->gen() * k->gen(), k->one()});
    CHECK(t.residue_degree() == 3);

    CHECK_THROWS_AS(ClosedPoint::make(q, {q->zero(), q->zero(), q->zero()}), AllCoordsZero);
}

TEST_CASE("vanishing order on the stated examples") {
    ClosedPoint x = sqrt2_point();
    CHECK(vanishing_order(f("x2"), x) == 1);
    CHECK(vanishing_order(f("x2^2"), x) == 2);
    // conic through the conjugate pair, smooth there
    CHECK(vanishing_order(f("x0^2 - 2*x1^2"), x) == 1);
    CHECK(vanishing_order(f("x0"), x) == 0);
}

TEST_CASE("mult_point = alpha * order") {
    auto q = NumberField::rationals();
    ClosedPoint e0 = ClosedPoint::make(q, {q->one(), q->zero(), q->zero()});
    CHECK(mult_point(f("x1"), e0) == 1);
    ClosedPoint x = sqrt2_point();
    CHECK(mult_point(f("x2"), x) == 2);
    CHECK(mult_point(f("x2^2"), x) == 4);
}

TEST_CASE("intersection numbers are products of degrees") {
    std::mt19937_64 rng(1);
    CHECK(intersection_number(1, f("x0 + x1")) == Rational(1));
    CHECK(intersection_number(3, f("x0^2 - x1*x2")) == Rational(6));
    CHECK(intersection_number(2, random_form(rng, 5)) == Rational(10));
}

TEST_CASE("common components via the form gcd") {
    CHECK(common_component(f("x0*x1"), f("x1*x2")));
    CHECK(!common_component(f("x0"), f("x1")));
    // irreducible over Q even though it splits over Q(sqrt 2)
    CHECK(!common_component(f("x0^2 - 2*x1^2"), f("x0 - x1")));
    CHECK(common_component(f("x0^2 - x1^2"), f("x0 - x1")));
    // powers of x0 only
    CHECK(common_component(f("x0^2*x1"), f("x0*x2^3")));

    Form<Rational> g = form_gcd(f("x0^2 - x1^2"), f("x0^2 + 2*x0*x1 + x1^2"));
    CHECK(g.degree() == 1);
    CHECK(g == f("x0 + x1"));
}

TEST_CASE("gcd of random products recovers a common factor") {
    std::mt19937_64 rng(505);
    for (int it = 0; it < 25; ++it) {
        Form<Rational> common = random_form(rng, 1 + static_cast<int>(rng() % 2));
        Form<Rational> a = common * random_form(rng, 1 + static_cast<int>(rng() % 2));
        Form<Rational> b = common * random_form(rng, 1 + static_cast<int>(rng() % 2));
        Form<Rational> g = form_gcd(a, b);
        CHECK(g.degree() >= common.degree());
        CHECK(common_component(a, b));
    }
}

TEST_CASE("bezout on the stated examples") {
    auto q = NumberField::rationals();
    ClosedPoint origin = ClosedPoint::make(q, {q->zero(), q->zero(), q->one()});
    CHECK(bezout_verify(f("x0"), f("x1"), origin)); // 1 >= 1

    ClosedPoint x = sqrt2_point();
    // line and conic meeting at the conjugate pair: equality 2 >= (1/2)*2*2
    CHECK(bezout_verify(f("x2"), f("x0^2 - 2*x1^2"), x));
    CHECK_THROWS_AS(bezout_verify(f("x2"), f("x2"), x), CommonComponent);
}

TEST_CASE("order is bounded by degree and additive on products") {
    std::mt19937_64 rng(2718);
    std::vector<ClosedPoint> pts;
    {
        auto q = NumberField::rationals();
        pts.push_back(ClosedPoint::make(q, {q->zero(), q->zero(), q->one()}));
        pts.push_back(ClosedPoint::make(q, {q->one(), q->from_rational(rat(2)), q->one()}));
        pts.push_back(sqrt2_point());
        auto k = cubic();
        pts.push_back(ClosedPoint::make(k, {k->gen(), k->gen() * k->gen(), k->one()}));
    }
    for (int it = 0; it < 30; ++it) {
        const ClosedPoint& x = pts[rng() % pts.size()];
        Form<Rational> a = random_form(rng, 1 + static_cast<int>(rng() % 3));
        Form<Rational> b = random_form(rng, 1 + static_cast<int>(rng() % 3));
        int oa = vanishing_order(a, x), ob = vanishing_order(b, x);
        CHECK(oa <= a.degree());
        CHECK(ob <= b.degree());
        CHECK(vanishing_order(a * b, x) == oa + ob);
    }
}

TEST_CASE("multiplicity is stable across presentations over a larger field") {
    // the conjugate pair [sqrt2, 1, 0] presented inside Q(2^(1/4)) via th^2
    auto f4 = NumberField::create({rat(-2), rat(0), rat(0), rat(0), rat(1)});
    NfElement s = f4->gen() * f4->gen();
    ClosedPoint big = ClosedPoint::make(f4, {s, f4->one(), f4->zero()});
    ClosedPoint small = sqrt2_point();
    CHECK(big.residue_degree() == small.residue_degree());
    for (const char* s_form : {"x2", "x2^2", "x0^2 - 2*x1^2", "x0 - x1", "x0*x2 - x1^2"}) {
        Form<Rational> ff = f(s_form);
        CHECK(vanishing_order(ff, big) == vanishing_order(ff, small));
        CHECK(mult_point(ff, big) == mult_point(ff, small));
    }
}

TEST_CASE("bezout holds on random pairs with no common component") {
    std::mt19937_64 rng(161803);
    std::vector<ClosedPoint> pts;
    {
        auto q = NumberField::rationals();
        pts.push_back(ClosedPoint::make(q, {q->zero(), q->zero(), q->one()}));
        pts.push_back(sqrt2_point());
        auto k = cbrt2();
        pts.push_back(ClosedPoint::make(k, {k->gen(), k->one(), k->zero()}));
    }
    int checked = 0;
    while (checked < 120) {
        const ClosedPoint& x = pts[rng() % pts.size()];
        Form<Rational> d = random_form(rng, 1 + static_cast<int>(rng() % 3));
        Form<Rational> c = random_form(rng, 1 + static_cast<int>(rng() % 3));
        try {
            CHECK(bezout_verify(d, c, x));
            ++checked;
        } catch (const CommonComponent&) {
            // resample
        }
    }
}

TEST_CASE("form text round-trips") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        Form<Rational> a = random_form(rng, 1 + static_cast<int>(rng() % 4));
        auto back = form_parse(form_str(a));
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
    CHECK(!form_parse("x0 + x1^2").has_value()); // not homogeneous
    CHECK(!form_parse("x3").has_value());
    CHECK(!form_parse("").has_value());
}

TEST_CASE("form normalization: cleared denominators, content 1, positive lead") {
    Form<Rational> a = Form<Rational>::from_terms(
        2, {{Mono{2, 0, 0}, rat(-2, 3)}, {Mono{0, 2, 0}, rat(-4, 3)}});
    // canonical: first graded-lex coefficient positive, integer content 1
    CHECK(a.coeff(Mono{2, 0, 0}) == Rational(1));
    CHECK(a.coeff(Mono{0, 2, 0}) == Rational(2));
}
