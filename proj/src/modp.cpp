#include "sesh/modp.hpp"

#include <cstdlib>
#include <mutex>

namespace sesh::modp {

namespace {

// Deterministic Miller-Rabin; bases {2,3,5,7} decide primality below 3.2e9.
bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n % q == 0) return n == q;
    }
    std::uint32_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
        std::uint64_t x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1) x = x * base % n;
            base = base * base % n;
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace

const std::vector<std::uint32_t>& prime_table() {
    static const std::vector<std::uint32_t> table = [] {
        std::vector<std::uint32_t> t;
        for (std::uint32_t n = kPrimeUpperBound - 1; t.size() < 64; --n) {
            if (is_prime_u32(n)) t.push_back(n);
        }
        return t;
    }();
    return table;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on (a, p); p prime and a != 0 mod p
    std::int64_t t = 0, newt = 1;
    std::int64_t r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

namespace {

// Shoup multiplication: with w = floor(c * 2^32 / p) precomputed,
// c*b mod p is c*b - floor(w*b / 2^32)*p up to one correction by p.
inline std::uint32_t shoup_precompute(std::uint32_t c, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
}

inline std::uint32_t shoup_mul(std::uint32_t b, std::uint32_t c, std::uint32_t w,
                               std::uint32_t p) {
    std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(w) * b) >> 32);
    std::uint32_t t = c * b - q * p; // mod 2^32; true value in [0, 2p)
    return t >= p ? t - p : t;
}

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
                 std::uint32_t p) {
    if (c == 0) return;
    const std::uint32_t w = shoup_precompute(c, p);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t s = dst[i] + shoup_mul(src[i], c, w, p);
        dst[i] = s >= p ? s - p : s;
    }
}

void scale_scalar(std::uint32_t* dst, std::size_t n, std::uint32_t c, std::uint32_t p) {
    const std::uint32_t w = shoup_precompute(c, p);
    for (std::size_t i = 0; i < n; ++i) dst[i] = shoup_mul(dst[i], c, w, p);
}

const KernelSet kScalar = {axpy_scalar, scale_scalar, "scalar"};

} // namespace

const KernelSet& scalar_kernels() { return kScalar; }

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

const KernelSet& active_kernels() {
    static const KernelSet* selected = [] {
        const char* env = std::getenv("SESH_SIMD");
        if (env && std::string(env) == "scalar") return &kScalar;
        if (const KernelSet* k = avx2_kernels()) return k;
        return &kScalar;
    }();
    return *selected;
}

std::vector<std::uint32_t> eliminate_mod_p(std::vector<std::uint32_t>& a, std::size_t rows,
                                           std::size_t cols, std::uint32_t p, bool full,
                                           const KernelSet& k) {
    std::vector<std::uint32_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pr = r;
        while (pr < rows && a[pr * cols + col] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r) {
            for (std::size_t j = col; j < cols; ++j)
                std::swap(a[r * cols + j], a[pr * cols + j]);
        }
        std::uint32_t* prow = &a[r * cols];
        std::uint32_t pv = prow[col];
        if (pv != 1) k.scale(prow + col, cols - col, inv_mod(pv, p), p);
        std::size_t start = full ? 0 : r + 1;
        for (std::size_t i = start; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t* row = &a[i * cols];
            std::uint32_t v = row[col];
            if (v == 0) continue;
            k.axpy(row + col, prow + col, cols - col, p - v, p);
        }
        pivots.push_back(static_cast<std::uint32_t>(col));
        ++r;
    }
    return pivots;
}

} // namespace sesh::modp
