#pragma once

#include "spinboson/fock.hpp"

namespace spinboson {

// alpha |a> + beta |b> in the sigma_z basis.
struct QubitState {
    cplx alpha;
    cplx beta;

    static QubitState upper() noexcept { return {1.0, 0.0}; }
    static QubitState lower() noexcept { return {0.0, 1.0}; }
    // Throws DomainError for the zero vector.
    static QubitState normalized(cplx alpha, cplx beta);

    double norm2() const noexcept { return std::norm(alpha) + std::norm(beta); }
};

// <x|y>
cplx overlap(const QubitState& x, const QubitState& y) noexcept;

// |psi> = A |a> + B |b>
struct JointState {
    FieldVector a;
    FieldVector b;
    double t_prime = 0.0;
    double leakage = 0.0;  // probability dropped at |n_max+1>

    double norm2() const { return a.norm2() + b.norm2(); }
};

// Reduced qubit state; rho22 = 1 - rho11 and rho21 = conj(rho12) are implied.
struct DensityMatrix2 {
    double rho11 = 1.0;
    cplx rho12{};

    double rho22() const noexcept { return 1.0 - rho11; }
};

// Exact RWA evolution of (q ⊗ field) to t'. field is usually coherent().
// Throws TruncationError if field has weight near n_max.
JointState evolve_product(const QubitState& q, const FieldVector& field, double t_prime);

// Partial trace over the field: rho11 = ||A||^2, rho12 = <B|A>.
DensityMatrix2 reduce(const JointState& joint);

// Closed series for the reduced state: weights gamma, delta, lambda of the
// initial qubit times the Fock sums f0..f4, g0..g2 of the initial field.
// Independent of evolve_product.
DensityMatrix2 rho_series(const QubitState& q, const FieldVector& field, double t_prime);
DensityMatrix2 rho_series(const QubitState& q, const SimConfig& config, double t_prime);

// W = rho11 - rho22
double population_inversion(const QubitState& q, const SimConfig& config, double t_prime);

// The coherent field of config.
FieldVector initial_field(const SimConfig& config);

} // namespace spinboson
