#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sesh/matrix.hpp"
#include "sesh/modp.hpp"

using namespace sesh;

namespace {

Matrix<Rational> from_rows(const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
    Matrix<Rational> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rational(rows[i][j]);
    return m;
}

bool is_kernel_vector(const Matrix<Rational>& m, const std::vector<Rational>& v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m.at(i, j) * v[j];
        if (sgn(s) != 0) return false;
    }
    return true;
}

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rat(num(rng), den(rng));
    return m;
}

} // namespace

TEST_CASE("rank on the stated examples") {
    CHECK(rank(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(rank(from_rows({{0, 0, 0}, {0, 0, 0}})) == 0);
    // second row twice the first: hand row-reduction gives a single pivot
    CHECK(rank(from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);
}

TEST_CASE("kernel on the stated examples") {
    CHECK(kernel_basis(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());

    auto zero_kernel = kernel_basis(from_rows({{0, 0, 0}, {0, 0, 0}}));
    REQUIRE(zero_kernel.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(zero_kernel[i][j] == Rational(i == j ? 1 : 0));

    auto m = from_rows({{1, 2, 3}, {2, 4, 6}});
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(is_kernel_vector(m, v));
}

TEST_CASE("rank + kernel size = cols, and Mv = 0, on random matrices") {
    std::mt19937_64 rng(20240811);
    for (int it = 0; it < 60; ++it) {
        std::size_t rows = 1 + static_cast<std::size_t>(rng() % 8);
        std::size_t cols = 1 + static_cast<std::size_t>(rng() % 8);
        auto m = random_matrix(rng, rows, cols);
        auto k = kernel_rational(m);
        CHECK(k.rank + k.basis.size() == cols);
        for (const auto& v : k.basis) CHECK(is_kernel_vector(m, v));
    }
}

TEST_CASE("modular and fraction-free paths produce identical bases") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 40; ++it) {
        std::size_t rows = 1 + static_cast<std::size_t>(rng() % 10);
        std::size_t cols = 1 + static_cast<std::size_t>(rng() % 10);
        auto m = random_matrix(rng, rows, cols);
        auto a = kernel_rational(m);
        auto b = kernel_rational_exact(m);
        CHECK(a.rank == b.rank);
        CHECK(a.basis == b.basis);
    }
    // force low-rank structure so the modular lift actually runs
    for (int it = 0; it < 20; ++it) {
        auto m = random_matrix(rng, 4, 9);
        auto a = kernel_rational(m);
        auto b = kernel_rational_exact(m);
        CHECK(a.rank == b.rank);
        CHECK(a.basis == b.basis);
    }
}

TEST_CASE("determinism: repeated calls give bit-identical bases") {
    std::mt19937_64 rng(99);
    auto m = random_matrix(rng, 6, 9);
    auto a = kernel_rational(m);
    auto b = kernel_rational(m);
    CHECK(a.rank == b.rank);
    REQUIRE(a.basis.size() == b.basis.size());
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        for (std::size_t j = 0; j < a.basis[i].size(); ++j) {
            CHECK(a.basis[i][j] == b.basis[i][j]);
            // same sign and same canonical reduced form, not just equality
            CHECK(a.basis[i][j].get_num() == b.basis[i][j].get_num());
            CHECK(a.basis[i][j].get_den() == b.basis[i][j].get_den());
        }
}

TEST_CASE("kernel vectors are content-normalized integers with positive lead") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 25; ++it) {
        auto m = random_matrix(rng, 3, 7);
        for (const auto& v : kernel_rational(m).basis) {
            Integer content = 0;
            int lead = 0;
            for (const auto& q : v) {
                CHECK(rat_is_integer(q));
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), q.get_num().get_mpz_t());
                if (lead == 0) lead = sgn(q);
            }
            CHECK(content == 1);
            CHECK(lead > 0);
        }
    }
}

TEST_CASE("rank over Q >= rank mod p; equality at full rank empties the kernel") {
    std::mt19937_64 rng(123);
    const std::uint32_t p = modp::prime_table()[0];
    for (int it = 0; it < 30; ++it) {
        std::size_t rows = 2 + static_cast<std::size_t>(rng() % 6);
        std::size_t cols = 2 + static_cast<std::size_t>(rng() % 6);
        Matrix<Rational> m(rows, cols);
        std::uniform_int_distribution<long> num(-20, 20);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rational(num(rng));
        std::vector<std::uint32_t> red(rows * cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                long v = m.at(i, j).get_num().get_si() % static_cast<long>(p);
                red[i * cols + j] = static_cast<std::uint32_t>(v < 0 ? v + p : v);
            }
        std::size_t rp = modp::rank_mod_p(red, rows, cols, p);
        auto k = kernel_rational(m);
        CHECK(k.rank >= rp);
        if (rp == cols) CHECK(k.basis.empty());
    }
}

TEST_CASE("mod-p kernels: AVX2 variant matches the scalar reference bitwise") {
    const auto& scalar = modp::scalar_kernels();
    const modp::KernelSet* avx2 = modp::avx2_kernels();
    if (!avx2) {
        MESSAGE("AVX2 not available at runtime; dispatch falls back to scalar");
        CHECK(std::string(modp::active_kernels().name) == "scalar");
        return;
    }
    std::mt19937_64 rng(2024);
    for (std::uint32_t p : {modp::prime_table()[0], modp::prime_table()[5], 97u, 3u}) {
        for (int it = 0; it < 50; ++it) {
            std::size_t n = rng() % 70; // exercises tails and empty rows
            std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
            std::vector<std::uint32_t> src(n), d1(n), d2(n);
            for (std::size_t i = 0; i < n; ++i) {
                src[i] = entry(rng);
                d1[i] = entry(rng);
            }
            d2 = d1;
            std::uint32_t c = entry(rng);
            scalar.axpy(d1.data(), src.data(), n, c, p);
            avx2->axpy(d2.data(), src.data(), n, c, p);
            CHECK(d1 == d2);
            d2 = d1;
            scalar.scale(d1.data(), n, c, p);
            avx2->scale(d2.data(), n, c, p);
            CHECK(d1 == d2);
        }
    }
}

TEST_CASE("mod-p elimination agrees between kernel sets") {
    const modp::KernelSet* avx2 = modp::avx2_kernels();
    if (!avx2) return;
    std::mt19937_64 rng(31337);
    const std::uint32_t p = modp::prime_table()[3];
    for (int it = 0; it < 10; ++it) {
        std::size_t rows = 5 + rng() % 20, cols = 5 + rng() % 30;
        std::vector<std::uint32_t> a(rows * cols);
        std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
        for (auto& x : a) x = entry(rng);
        auto b = a;
        auto piv1 = modp::eliminate_mod_p(a, rows, cols, p, true, modp::scalar_kernels());
        auto piv2 = modp::eliminate_mod_p(b, rows, cols, p, true, *avx2);
        CHECK(piv1 == piv2);
        CHECK(a == b);
    }
}

TEST_CASE("prime table is 30-bit primes, descending") {
    const auto& t = modp::prime_table();
    REQUIRE(t.size() == 64);
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(t[i] < modp::kPrimeUpperBound);
        CHECK(t[i] > modp::kPrimeUpperBound - 5000);
        if (i > 0) CHECK(t[i] < t[i - 1]);
    }
}
