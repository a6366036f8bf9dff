// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "spinboson/kernels.hpp"

#include <immintrin.h>

namespace spinboson::kernels::detail {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d x) { _mm256_storeu_pd(reinterpret_cast<double*>(p), x); }

inline __m256d cmul(__m256d a, __m256d b)
{
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d x)
{
    const __m128d lo = _mm256_castpd256_pd128(x);
    const __m128d hi = _mm256_extractf128_pd(x, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx dot_avx2(const cplx* u, const cplx* v, std::size_t n)
{
    // acc_rr = [ur vr, ui vi, ...], acc_x = [ui vr, ur vi, ...]
    __m256d acc_rr = _mm256_setzero_pd();
    __m256d acc_x = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = load2(u + i);
        const __m256d b = load2(v + i);
        acc_rr = _mm256_fmadd_pd(a, b, acc_rr);
        acc_x = _mm256_fmadd_pd(_mm256_permute_pd(a, 0x5), b, acc_x);
    }
    alignas(32) double x[4];
    _mm256_store_pd(x, acc_x);
    double re = hsum(acc_rr);
    double im = (x[1] + x[3]) - (x[0] + x[2]);
    for (; i < n; ++i) {
        re += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
        im += u[i].real() * v[i].imag() - u[i].imag() * v[i].real();
    }
    return {re, im};
}

double norm2_avx2(const cplx* v, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = load2(v + i);
        acc = _mm256_fmadd_pd(a, a, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    return s;
}

void tridiag_avx2(const cplx* sub, const cplx* diag, const cplx* sup,
                  const cplx* v, cplx* out, std::size_t n)
{
    if (n < 4) {
        scalar_table().tridiag(sub, diag, sup, v, out, n);
        return;
    }
    out[0] = diag[0] * v[0] + sup[0] * v[1];
    std::size_t m = 1;
    for (; m + 2 < n; m += 2) {
        __m256d acc = cmul(load2(diag + m), load2(v + m));
        acc = _mm256_add_pd(acc, cmul(load2(sub + m), load2(v + m - 1)));
        acc = _mm256_add_pd(acc, cmul(load2(sup + m), load2(v + m + 1)));
        store2(out + m, acc);
    }
    for (; m < n; ++m) {
        cplx acc = diag[m] * v[m] + sub[m] * v[m - 1];
        if (m + 1 < n) acc += sup[m] * v[m + 1];
        out[m] = acc;
    }
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n)
{
    const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(load2(x + i), av)));
    for (; i < n; ++i) y[i] += a * x[i];
}

constexpr KernelTable kAvx2{Isa::avx2, dot_avx2, norm2_avx2, tridiag_avx2, axpy_avx2};

} // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

} // namespace spinboson::kernels::detail
