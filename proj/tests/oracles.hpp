#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical paths.

#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// c_0 = e^{-nbar/2}, c_{n+1} = c_n nu / sqrt(n+1), nu = sqrt(nbar) e^{-i phi}.
inline std::vector<cplx> coherent_by_recursion(double nbar, double phi, int n_max)
{
    std::vector<cplx> c(static_cast<std::size_t>(n_max) + 1);
    const cplx nu = std::polar(std::sqrt(nbar), -phi);
    c[0] = std::exp(-0.5 * nbar);
    for (int n = 0; n < n_max; ++n) c[n + 1] = c[n] * nu / std::sqrt(n + 1.0);
    return c;
}

// e^{-nbar} nbar^n / n! by running product in long double.
inline std::vector<double> poisson_weights(double nbar, int n_max)
{
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    long double p = std::exp(-static_cast<long double>(nbar));
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) p *= static_cast<long double>(nbar) / n;
        w[n] = static_cast<double>(p);
    }
    return w;
}

struct Dense {
    std::size_t n = 0;
    std::vector<cplx> m;  // row-major

    explicit Dense(std::size_t size) : n(size), m(size * size) {}
    cplx& operator()(std::size_t r, std::size_t c) { return m[r * n + c]; }
    cplx operator()(std::size_t r, std::size_t c) const { return m[r * n + c]; }
};

inline Dense multiply(const Dense& x, const Dense& y)
{
    Dense z(x.n);
    for (std::size_t r = 0; r < x.n; ++r)
        for (std::size_t k = 0; k < x.n; ++k) {
            const cplx a = x(r, k);
            if (a == cplx{}) continue;
            for (std::size_t c = 0; c < x.n; ++c) z(r, c) += a * y(k, c);
        }
    return z;
}

// exp(s X) by scaling and squaring with a 24-term Taylor series.
inline Dense expm(const Dense& x, cplx s)
{
    double norm = 0.0;
    for (std::size_t r = 0; r < x.n; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < x.n; ++c) row += std::abs(x(r, c));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scale = std::abs(s) * norm;
    while (scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const cplx h = s / std::pow(2.0, squarings);

    Dense result(x.n), term(x.n);
    for (std::size_t i = 0; i < x.n; ++i) result(i, i) = term(i, i) = 1.0;
    for (int k = 1; k <= 24; ++k) {
        term = multiply(term, x);
        for (auto& v : term.m) v *= h / static_cast<double>(k);
        for (std::size_t i = 0; i < result.m.size(); ++i) result.m[i] += term.m[i];
    }
    for (int i = 0; i < squarings; ++i) result = multiply(result, result);
    return result;
}

// Resonant RWA generator on [A(0..N), B(0..N)]:
//   H = 1/2 [[ a† + a, a - a† ], [ a† - a, -(a† + a) ]]
inline Dense rwa_generator(int n_max)
{
    const std::size_t L = static_cast<std::size_t>(n_max) + 1;
    Dense h(2 * L);
    for (std::size_t n = 0; n + 1 < L; ++n) {
        const double s = 0.5 * std::sqrt(n + 1.0);
        // <n+1| a† |n> = sqrt(n+1), <n| a |n+1> = sqrt(n+1)
        h(n + 1, n) += s;                  // aa: a†
        h(n, n + 1) += s;                  // aa: a
        h(n + 1, L + n) -= s;              // ab: -a†
        h(n, L + n + 1) += s;              // ab: a
        h(L + n + 1, n) += s;              // ba: a†
        h(L + n, n + 1) -= s;              // ba: -a
        h(L + n + 1, L + n) -= s;          // bb: -a†
        h(L + n, L + n + 1) -= s;          // bb: -a
    }
    return h;
}

// exp(-i H t') (alpha c, beta c); returns [A, B].
inline std::vector<cplx> propagate_dense(cplx alpha, cplx beta, const std::vector<cplx>& c, double t_prime)
{
    const std::size_t L = c.size();
    const Dense u = expm(rwa_generator(static_cast<int>(L) - 1), cplx{0.0, -t_prime});
    std::vector<cplx> psi(2 * L), out(2 * L);
    for (std::size_t n = 0; n < L; ++n) {
        psi[n] = alpha * c[n];
        psi[L + n] = beta * c[n];
    }
    for (std::size_t r = 0; r < 2 * L; ++r)
        for (std::size_t k = 0; k < 2 * L; ++k) out[r] += u(r, k) * psi[k];
    return out;
}

} // namespace oracles
