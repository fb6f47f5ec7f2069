// AVX2 variants of the mod-p row kernels. Compiled with -mavx2 and picked
// at runtime by active_kernels(); must match the scalar reference bit for
// bit (see the equivalence tests).

#include "sesh/modp.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace sesh::modp {

namespace {

// floor(w*b / 2^32) for 8 lanes: 32x32->64 multiplies on even/odd lanes,
// then the high halves are blended back into dword positions.
inline __m256i mulhi_epu32(__m256i b, __m256i w) {
    __m256i pe = _mm256_mul_epu32(b, w);
    __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(b, 32), _mm256_srli_epi64(w, 32));
    __m256i qe = _mm256_srli_epi64(pe, 32);
    return _mm256_blend_epi32(qe, po, 0xAA);
}

// value in [0, 2p) -> [0, p): min works because t - p wraps when t < p.
inline __m256i reduce_once(__m256i t, __m256i pv) {
    return _mm256_min_epu32(t, _mm256_sub_epi32(t, pv));
}

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n, std::uint32_t c,
               std::uint32_t p) {
    if (c == 0) return;
    const std::uint32_t w32 =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i wv = _mm256_set1_epi32(static_cast<int>(w32));
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
        __m256i q = mulhi_epu32(b, wv);
        __m256i t = _mm256_sub_epi32(_mm256_mullo_epi32(cv, b), _mm256_mullo_epi32(q, pv));
        t = reduce_once(t, pv);
        __m256i s = reduce_once(_mm256_add_epi32(d, t), pv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), s);
    }
    for (; i < n; ++i) {
        std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(w32) * src[i]) >> 32);
        std::uint32_t t = c * src[i] - q * p;
        if (t >= p) t -= p;
        std::uint32_t s = dst[i] + t;
        dst[i] = s >= p ? s - p : s;
    }
}

void scale_avx2(std::uint32_t* dst, std::size_t n, std::uint32_t c, std::uint32_t p) {
    const std::uint32_t w32 =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) << 32) / p);
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i wv = _mm256_set1_epi32(static_cast<int>(w32));
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i q = mulhi_epu32(b, wv);
        __m256i t = _mm256_sub_epi32(_mm256_mullo_epi32(cv, b), _mm256_mullo_epi32(q, pv));
        t = reduce_once(t, pv);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), t);
    }
    for (; i < n; ++i) {
        std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(w32) * dst[i]) >> 32);
        std::uint32_t t = c * dst[i] - q * p;
        dst[i] = t >= p ? t - p : t;
    }
}

const KernelSet kAvx2 = {axpy_avx2, scale_avx2, "avx2"};

} // namespace

const KernelSet* avx2_kernels() { return avx2_available() ? &kAvx2 : nullptr; }

} // namespace sesh::modp

#else

namespace sesh::modp {
const KernelSet* avx2_kernels() { return nullptr; }
} // namespace sesh::modp

#endif
