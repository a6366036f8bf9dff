#include "spinboson/kernels.hpp"

namespace spinboson::kernels {
namespace {

cplx dot_scalar(const cplx* u, const cplx* v, std::size_t n)
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += u[i].real() * v[i].real() + u[i].imag() * v[i].imag();
        im += u[i].real() * v[i].imag() - u[i].imag() * v[i].real();
    }
    return {re, im};
}

double norm2_scalar(const cplx* v, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += v[i].real() * v[i].real() + v[i].imag() * v[i].imag();
    return acc;
}

void tridiag_scalar(const cplx* sub, const cplx* diag, const cplx* sup,
                    const cplx* v, cplx* out, std::size_t n)
{
    if (n == 0) return;
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc = diag[m] * v[m];
        if (m > 0) acc += sub[m] * v[m - 1];
        if (m + 1 < n) acc += sup[m] * v[m + 1];
        out[m] = acc;
    }
}

void axpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

constexpr KernelTable kScalar{Isa::scalar, dot_scalar, norm2_scalar, tridiag_scalar, axpy_scalar};

} // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

} // namespace spinboson::kernels
