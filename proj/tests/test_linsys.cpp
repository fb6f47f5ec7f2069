#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sesh/linsys.hpp"

using namespace sesh;

namespace {

NumberFieldPtr sqrt2() { return NumberField::create({rat(-2), rat(0), rat(1)}); }

ClosedPoint sqrt2_point() {
    auto f = sqrt2();
    return ClosedPoint::make(f, {f->gen(), f->one(), f->zero()});
}

ClosedPoint cubic_point() {
    auto k = NumberField::create({rat(-1), rat(-1), rat(0), rat(1)});
    return ClosedPoint::make(k, {k->gen(), k->gen() * k->gen(), k->one()});
}

ClosedPoint rational_point(long a, long b, long c) {
    auto q = NumberField::rationals();
    return ClosedPoint::make(
        q, {q->from_rational(rat(a)), q->from_rational(rat(b)), q->from_rational(rat(c))});
}

} // namespace

TEST_CASE("section counts and Riemann-Roch") {
    CHECK(h0(0) == 1);
    CHECK(h0(1) == 3);
    CHECK(h0(10) == 66);
    CHECK(chi_rr(0) == 1);
    CHECK(chi_rr(3) == 10);
    CHECK(chi_rr(3) == h0(3));
    CHECK(chi_rr(-3) == 1);
    for (long d = 0; d <= 20; ++d) CHECK(chi_rr(d) == h0(d));
}

TEST_CASE("conditions matrix shapes and kernels on the stated examples") {
    // rational point, one simple condition on lines: a pencil survives
    auto m1 = conditions_matrix<RationalBase>(1, {{rational_point(0, 0, 1), 1}});
    CHECK(m1.rows() == 1);
    CHECK(m1.cols() == 3);
    CHECK(kernel_basis(m1).size() == 2);

    // the conjugate pair kills all lines except x2
    auto m2 = conditions_matrix<RationalBase>(1, {{sqrt2_point(), 1}});
    CHECK(m2.rows() == 2);
    CHECK(m2.cols() == 3);
    auto k2 = kernel_basis(m2);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == std::vector<Rational>{rat(0), rat(0), rat(1)}); // x2

    // order 2 at the pair: 6x6, kernel contains x2^2
    auto m3 = conditions_matrix<RationalBase>(2, {{sqrt2_point(), 2}});
    CHECK(m3.rows() == 6);
    CHECK(m3.cols() == 6);
    auto k3 = kernel_basis(m3);
    REQUIRE(k3.size() >= 1);
    bool has_x2sq = false;
    for (const auto& v : k3)
        has_x2sq = has_x2sq || v == std::vector<Rational>{rat(0), rat(0), rat(0),
                                                          rat(0), rat(0), rat(1)};
    CHECK(has_x2sq);
}

TEST_CASE("duplicate points are rejected") {
    auto x = rational_point(0, 0, 1);
    CHECK_THROWS_AS(conditions_matrix<RationalBase>(2, {{x, 1}, {x, 2}}), DuplicatePoint);
}

TEST_CASE("two distinct points impose independent line conditions") {
    auto m = conditions_matrix<RationalBase>(
        1, {{rational_point(0, 0, 1), 1}, {rational_point(0, 1, 0), 1}});
    CHECK(m.rows() == 2);
    CHECK(kernel_basis(m).size() == 1); // the line through both
}

TEST_CASE("max_mult on the stated examples") {
    auto r1 = max_mult<RationalBase>(1, rational_point(0, 0, 1));
    CHECK(r1.m_max == 1);
    REQUIRE(r1.witness.has_value());
    CHECK(vanishing_order(*r1.witness, rational_point(0, 0, 1)) >= 1);

    auto r2 = max_mult<RationalBase>(1, sqrt2_point());
    CHECK(r2.m_max == 1);
    REQUIRE(r2.witness.has_value());
    CHECK(form_str(*r2.witness) == "x2");

    // no rational line through the non-collinear cubic point
    auto r3 = max_mult<RationalBase>(1, cubic_point());
    CHECK(r3.m_max == 0);
    CHECK(!r3.witness.has_value());

    // but the conjugate-triangle cubic gives a double point at degree 3
    auto r4 = max_mult<RationalBase>(3, cubic_point());
    CHECK(r4.m_max == 2);
    CHECK(r4.kernel_dim == 1);
    REQUIRE(r4.witness.has_value());
    CHECK(vanishing_order(*r4.witness, cubic_point()) >= 2);
}

TEST_CASE("kernel nonzero is forced when sections outnumber conditions") {
    std::mt19937_64 rng(777);
    std::vector<ClosedPoint> pts = {rational_point(1, 2, 1), sqrt2_point(), cubic_point()};
    for (int it = 0; it < 12; ++it) {
        const ClosedPoint& x = pts[rng() % pts.size()];
        int d = 1 + static_cast<int>(rng() % 5);
        long alpha = x.residue_degree();
        for (int m = 1; m <= d; ++m) {
            if (h0(d) > alpha * m * (m + 1) / 2) {
                auto r = max_mult<RationalBase>(d, x);
                CHECK(r.m_max >= m);
            }
        }
    }
}

TEST_CASE("m_max is monotone and superadditive in the degree") {
    for (const ClosedPoint& x : {rational_point(2, 3, 1), sqrt2_point(), cubic_point()}) {
        std::vector<int> mm{0};
        for (int e = 1; e <= 6; ++e) mm.push_back(max_mult<RationalBase>(e, x).m_max);
        for (int e = 1; e < 6; ++e) CHECK(mm[e + 1] >= mm[e]);
        for (int e1 = 1; e1 <= 3; ++e1)
            for (int e2 = 1; e1 + e2 <= 6; ++e2) CHECK(mm[e1 + e2] >= mm[e1] + mm[e2]);
    }
}

TEST_CASE("witness orders re-verify through the direct evaluation path") {
    for (const ClosedPoint& x : {rational_point(0, 0, 1), sqrt2_point(), cubic_point()}) {
        for (int e = 1; e <= 5; ++e) {
            auto r = max_mult<RationalBase>(e, x);
            if (r.m_max >= 1) {
                REQUIRE(r.witness.has_value());
                CHECK(r.witness->degree() == e);
                CHECK(vanishing_order(*r.witness, x) >= r.m_max);
            }
        }
    }
}

TEST_CASE("extension-base conditions: same kernels for embedded rational data") {
    // a rational point examined over Q(i): ranks cannot move
    auto gauss = NumberField::create({rat(1), rat(0), rat(1)});
    ClosedPoint over_q = rational_point(0, 0, 1);
    ClosedPoint over_k = ClosedPoint::make_over_coordinate_field(
        gauss, {gauss->zero(), gauss->zero(), gauss->one()});
    CHECK(over_k.residue_degree() == 1);
    for (int e = 1; e <= 4; ++e) {
        auto rq = max_mult<RationalBase>(e, over_q);
        auto rk = max_mult<ExtensionBase>(e, over_k);
        CHECK(rq.m_max == rk.m_max);
        CHECK(rq.kernel_dim == rk.kernel_dim);
    }
}

TEST_CASE("derivative row order is the documented one") {
    auto orders = detail::derivative_orders(3, 0);
    REQUIRE(orders.size() == 6);
    CHECK(orders[0] == std::array<int, 3>{0, 0, 0});
    CHECK(orders[1] == std::array<int, 3>{0, 1, 0});
    CHECK(orders[2] == std::array<int, 3>{0, 0, 1});
    CHECK(orders[3] == std::array<int, 3>{0, 2, 0});
    CHECK(orders[4] == std::array<int, 3>{0, 1, 1});
    CHECK(orders[5] == std::array<int, 3>{0, 0, 2});
}
