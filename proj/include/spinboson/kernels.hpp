#pragma once

// Data-parallel inner loops over the Fock index. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant selected at
// runtime. Set SPINBOSON_ISA=scalar to force the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace spinboson::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    // sum_n conj(u[n]) * v[n]
    cplx (*dot)(const cplx* u, const cplx* v, std::size_t n);
    // sum_n |v[n]|^2
    double (*norm2)(const cplx* v, std::size_t n);
    // out[m] = sub[m] v[m-1] + diag[m] v[m] + sup[m] v[m+1], missing neighbours taken as 0.
    // out must not alias v.
    void (*tridiag)(const cplx* sub, const cplx* diag, const cplx* sup,
                    const cplx* v, cplx* out, std::size_t n);
    // y[n] += a * x[n]
    void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
bool avx2_available() noexcept;
// Throws DomainError if the ISA was not compiled in or the CPU lacks it.
const KernelTable& table(Isa isa);
// Best available table, honouring SPINBOSON_ISA. Resolved once.
const KernelTable& active() noexcept;

std::string_view to_string(Isa isa) noexcept;

inline cplx dot(std::span<const cplx> u, std::span<const cplx> v)
{
    return active().dot(u.data(), v.data(), u.size());
}

inline double norm2(std::span<const cplx> v)
{
    return active().norm2(v.data(), v.size());
}

inline void tridiag(std::span<const cplx> sub, std::span<const cplx> diag, std::span<const cplx> sup,
                    std::span<const cplx> v, std::span<cplx> out)
{
    active().tridiag(sub.data(), diag.data(), sup.data(), v.data(), out.data(), v.size());
}

inline void axpy(cplx a, std::span<const cplx> x, std::span<cplx> y)
{
    active().axpy(a, x.data(), y.data(), x.size());
}

namespace detail {
#if defined(SPINBOSON_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table() noexcept;
#endif
} // namespace detail

} // namespace spinboson::kernels
