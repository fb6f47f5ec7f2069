#include <algorithm>
#include <cstdint>
#include <optional>

#include "sesh/matrix.hpp"
#include "sesh/modp.hpp"

namespace sesh {

void FieldTraits<Rational>::normalize_span(std::vector<Rational>& v) {
    Integer den = common_denominator(v);
    Integer content = 0;
    for (auto& q : v) {
        Integer n = q.get_num() * den / q.get_den();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
    }
    if (content == 0) return; // zero vector
    int lead = 0;
    for (const auto& q : v) {
        if (sgn(q) != 0) {
            lead = sgn(q);
            break;
        }
    }
    Rational scale(lead > 0 ? den : -den, content);
    scale.canonicalize();
    for (auto& q : v) q *= scale;
}

namespace {

// Denominator-cleared copy: each row scaled by the lcm of its denominators.
// Row scaling preserves the RREF, hence the canonical kernel.
std::vector<std::vector<Integer>> integer_rows(const Matrix<Rational>& m) {
    std::vector<std::vector<Integer>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        rows[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m.at(i, j);
            rows[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    return rows;
}

} // namespace

RationalKernel kernel_rational_exact(const Matrix<Rational>& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    auto a = integer_rows(m);

    // Bareiss fraction-free forward elimination; every division is exact.
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pr = r;
        while (pr < rows && a[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(a[r], a[pr]);
        const Integer piv = a[r][col];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Integer f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                Integer t = piv * a[i][j] - f * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = piv;
        pivots.push_back(col);
        ++r;
    }

    // Back substitution to the reduced echelon form, now over Q.
    Matrix<Rational> rr(pivots.size(), cols);
    for (std::size_t t = pivots.size(); t-- > 0;) {
        Rational piv_inv = FieldTraits<Rational>::inv(Rational(a[t][pivots[t]]));
        for (std::size_t j = pivots[t]; j < cols; ++j) rr.at(t, j) = Rational(a[t][j]) * piv_inv;
        for (std::size_t u = t + 1; u < pivots.size(); ++u) {
            Rational f = rr.at(t, pivots[u]);
            if (sgn(f) == 0) continue;
            for (std::size_t j = pivots[u]; j < cols; ++j)
                rr.at(t, j) -= f * rr.at(u, j);
        }
    }
    RationalKernel out;
    out.rank = pivots.size();
    out.basis = kernel_from_rref(rr, pivots);
    return out;
}

namespace {

// Entry reduced mod p, or nullopt when p divides a denominator (bad prime).
std::optional<std::uint32_t> reduce_entry(const Rational& q, std::uint32_t p) {
    std::uint32_t den = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_den().get_mpz_t(), p));
    if (den == 0) return std::nullopt;
    std::uint32_t num = static_cast<std::uint32_t>(mpz_fdiv_ui(q.get_num().get_mpz_t(), p));
    return modp::mul_mod(num, modp::inv_mod(den, p), p);
}

std::optional<std::vector<std::uint32_t>> reduce_matrix(const Matrix<Rational>& m,
                                                        std::uint32_t p) {
    std::vector<std::uint32_t> a(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto e = reduce_entry(m.at(i, j), p);
            if (!e) return std::nullopt;
            a[i * m.cols() + j] = *e;
        }
    return a;
}

// Rational reconstruction of x mod modulus with the symmetric bound
// N = D = floor(sqrt(modulus/2)). Returns nullopt when no admissible
// fraction exists yet.
std::optional<Rational> rational_reconstruct(const Integer& x, const Integer& modulus) {
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());
    Integer r0 = modulus, r1 = x % modulus;
    if (r1 < 0) r1 += modulus;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Integer num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1 && !(num == 0 && den == 1)) return std::nullopt;
    Rational out(num);
    out /= Rational(den);
    return out;
}

bool verify_kernel_vector(const Matrix<Rational>& m, const std::vector<Rational>& v) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (sgn(v[j]) != 0) support.push_back(j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational s(0);
        for (std::size_t j : support) s += m.at(i, j) * v[j];
        if (sgn(s) != 0) return false;
    }
    return true;
}

struct ModularAccum {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;
    // residues of rref(pivot row t, free col f), flattened t-major
    std::vector<Integer> residues;
    Integer modulus = 1;

    void reset(const std::vector<std::uint32_t>& piv, std::size_t cols) {
        pivots.assign(piv.begin(), piv.end());
        rank = pivots.size();
        free_cols.clear();
        std::vector<bool> is_pivot(cols, false);
        for (std::size_t p : pivots) is_pivot[p] = true;
        for (std::size_t j = 0; j < cols; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        residues.assign(rank * free_cols.size(), Integer(0));
        modulus = 1;
    }

    void add_prime(const std::vector<std::uint32_t>& rref, std::size_t cols, std::uint32_t p) {
        std::uint32_t m_mod_p = static_cast<std::uint32_t>(mpz_fdiv_ui(modulus.get_mpz_t(), p));
        std::uint32_t minv = modp::inv_mod(m_mod_p, p);
        for (std::size_t t = 0; t < rank; ++t)
            for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
                Integer& x = residues[t * free_cols.size() + fi];
                std::uint32_t xp = static_cast<std::uint32_t>(mpz_fdiv_ui(x.get_mpz_t(), p));
                std::uint32_t target = rref[t * cols + free_cols[fi]];
                std::uint32_t delta = modp::mul_mod(target >= xp ? target - xp : target + p - xp,
                                                    minv, p);
                x += modulus * delta;
            }
        modulus *= p;
    }
};

} // namespace

bool probe_full_column_rank(const Matrix<Rational>& m) {
    if (m.cols() == 0) return true;
    if (m.rows() < m.cols()) return false;
    for (std::uint32_t p : modp::prime_table()) {
        auto red = reduce_matrix(m, p);
        if (!red) continue;
        return modp::rank_mod_p(*red, m.rows(), m.cols(), p) == m.cols();
    }
    return kernel_rational_exact(m).rank == m.cols();
}

RationalKernel kernel_rational(const Matrix<Rational>& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (cols == 0) return {0, {}};
    if (rows * cols <= 64) return kernel_rational_exact(m);

    ModularAccum acc;
    bool have_base = false;
    for (std::uint32_t p : modp::prime_table()) {
        auto red = reduce_matrix(m, p);
        if (!red) continue;
        auto piv = modp::eliminate_mod_p(*red, rows, cols, p, /*full=*/true);
        if (piv.size() == cols) return {cols, {}}; // certified: rank cannot grow over Q
        if (!have_base) {
            acc.reset(piv, cols);
            have_base = true;
        } else if (piv.size() > acc.rank ||
                   (piv.size() == acc.rank &&
                    std::lexicographical_compare(piv.begin(), piv.end(), acc.pivots.begin(),
                                                 acc.pivots.end()))) {
            // Higher rank, or same rank with earlier pivots: the previous
            // base prime was unlucky. Start over from this one.
            acc.reset(piv, cols);
        } else if (piv.size() < acc.rank ||
                   !std::equal(piv.begin(), piv.end(), acc.pivots.begin())) {
            continue; // this prime is the unlucky one
        }
        acc.add_prime(*red, cols, p);

        // Try to lift: every needed entry must reconstruct, then every
        // candidate vector must re-multiply to zero exactly.
        std::vector<Rational> lifted(acc.residues.size());
        bool ok = true;
        for (std::size_t i = 0; i < acc.residues.size() && ok; ++i) {
            auto q = rational_reconstruct(acc.residues[i], acc.modulus);
            if (!q)
                ok = false;
            else
                lifted[i] = *q;
        }
        if (!ok) continue;
        std::vector<std::vector<Rational>> basis;
        basis.reserve(acc.free_cols.size());
        bool verified = true;
        for (std::size_t fi = 0; fi < acc.free_cols.size() && verified; ++fi) {
            std::vector<Rational> v(cols, Rational(0));
            v[acc.free_cols[fi]] = 1;
            for (std::size_t t = 0; t < acc.rank; ++t)
                v[acc.pivots[t]] = -lifted[t * acc.free_cols.size() + fi];
            FieldTraits<Rational>::normalize_span(v);
            verified = verify_kernel_vector(m, v);
            basis.push_back(std::move(v));
        }
        if (verified) return {acc.rank, std::move(basis)};
    }
    return kernel_rational_exact(m);
}

} // namespace sesh
