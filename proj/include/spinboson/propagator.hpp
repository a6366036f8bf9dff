#pragma once

// Exact resonant RWA evolution operator
//   U(t) = E1 |a><a| + E2 |a><b| + E3 |b><a| + E4 |b><b|
// with each E_i tridiagonal in the Fock basis:
//   E_i |n> = f_i1(n) |n+1> + f_i2(n) |n> + f_i3(n) |n-1>.
// The blocks are built from scalar band coefficients only, so the 1/sqrt(N)
// factors of the operator form never appear and n = 0 needs no special case.

#include "spinboson/fock.hpp"

#include <array>
#include <vector>

namespace spinboson {

struct BandCoeffs {
    cplx f1;   // -(i/2) sin(t' sqrt(n+1)), weight of |n+1>
    cplx f2;   // (cos(t' sqrt n) + cos(t' sqrt(n+1))) / 2
    cplx f3;   // (cos(t' sqrt n) - cos(t' sqrt(n+1))) / 2
    cplx f1p;  // -(i/2) sin(t' sqrt n), weight of |n-1>
};

BandCoeffs band_coeffs(int n, double t_prime);

enum class Block { E1, E2, E3, E4 };

// Coefficients of one block acting on |n>: raise -> |n+1>, keep -> |n>, lower -> |n-1>.
struct BlockCoeffs {
    cplx raise;
    cplx keep;
    cplx lower;
};

BlockCoeffs block_coeffs(Block which, const BandCoeffs& f) noexcept;

// A linear combination sum_i w_i E_i laid out as a tridiagonal matrix in the
// output index m: out[m] = sub[m] v[m-1] + diag[m] v[m] + sup[m] v[m+1].
// overflow is the coefficient that would carry v[n_max] to |n_max+1>.
struct Band {
    std::vector<cplx> sub;
    std::vector<cplx> diag;
    std::vector<cplx> sup;
    cplx overflow{};
};

// Weights for E1..E4 in that order.
Band combined_band(const std::array<cplx, 4>& weights, int n_max, double t_prime);

struct BlockResult {
    FieldVector vec;
    double leakage = 0.0;  // |amplitude pushed to |n_max+1>|^2, dropped from vec
};

// Applies the band; no guard. Used for truncation probes.
BlockResult apply_band_unchecked(const Band& band, const FieldVector& v);

// Throws TruncationError if any amplitude within 3 levels of n_max exceeds
// 1e-10 of the largest amplitude.
void check_boundary(const FieldVector& v);

BlockResult apply_block(Block which, const FieldVector& v, double t_prime);

// Max deviation from unitarity over basis states |a,n>, |b,n> with
// n <= n_max - interior_margin: | ||U e||^2 - 1 | and |<U e_i, U e_j>| over
// every pair drawn from levels at most two apart. interior_margin = 0 includes
// the cutoff level and exposes truncation leakage.
double unitarity_defect(double t_prime, int n_max, int interior_margin);

} // namespace spinboson
