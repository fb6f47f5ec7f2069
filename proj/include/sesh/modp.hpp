#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sesh::modp {

// All primes used by the modular linear algebra are < 2^30 so that a value
// in [0, 2p) always fits a uint32 and row entries can be kept reduced with
// one conditional subtract. The table is generated once, descending from
// 2^30, and is part of the deterministic output contract of the kernel
// engine.
inline constexpr std::uint32_t kPrimeUpperBound = 1u << 30;

const std::vector<std::uint32_t>& prime_table(); // 64 primes, descending

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p); // a != 0 mod p

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

// Row kernels. dst and src are rows of length n with entries in [0, p);
// c is in [0, p). axpy computes dst += c*src (mod p), scale computes
// dst *= c (mod p). The hot loops of the modular elimination live here;
// the AVX2 variants use Shoup's precomputed-quotient multiplication and
// must produce bit-identical rows to the scalar reference.
using AxpyFn = void (*)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                        std::uint32_t c, std::uint32_t p);
using ScaleFn = void (*)(std::uint32_t* dst, std::size_t n, std::uint32_t c, std::uint32_t p);

struct KernelSet {
    AxpyFn axpy;
    ScaleFn scale;
    const char* name;
};

const KernelSet& scalar_kernels();
bool avx2_available();
const KernelSet* avx2_kernels(); // nullptr when unsupported at runtime
// The set used by the elimination routines: AVX2 when the CPU has it,
// scalar otherwise. Overridable with SESH_SIMD=scalar for debugging.
const KernelSet& active_kernels();

// Gauss-Jordan elimination mod p on a rows x cols row-major matrix.
// Pivots are chosen as the first nonzero entry in each column (no pivoting
// heuristics: determinism matters more than fill here). Returns the pivot
// columns in ascending order; on return with full = true the matrix is in
// reduced row echelon form, otherwise only forward-eliminated (sufficient
// for rank).
std::vector<std::uint32_t> eliminate_mod_p(std::vector<std::uint32_t>& a, std::size_t rows,
                                           std::size_t cols, std::uint32_t p, bool full,
                                           const KernelSet& k = active_kernels());

inline std::size_t rank_mod_p(std::vector<std::uint32_t>& a, std::size_t rows, std::size_t cols,
                              std::uint32_t p) {
    return eliminate_mod_p(a, rows, cols, p, /*full=*/false).size();
}

} // namespace sesh::modp
