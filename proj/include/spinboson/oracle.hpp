#pragma once

// Brute-force RK4 integration of the interaction-picture Schrödinger equation
//   i d|psi>/dt' = [sigma_z cos(D t') - sigma_y sin(D t')] ⊗ [a† e^{i W t'} + a e^{-i W t'}] |psi>
// with W = omega/g, D = delta0/g. With rwa set, each sigma entry is split into
// e^{±i D t'} parts and only the products stationary at resonance are kept.

#include "spinboson/dynamics.hpp"

#include <span>
#include <vector>

namespace spinboson {

struct OracleConfig {
    double g = 1.0;
    double delta0 = 50.0;
    double omega = 50.0;
    bool rwa = true;
    double step_dt_prime = 1e-3;
    double tolerance = 1e-9;  // max amplitude change allowed when the step is halved
    int max_halvings = 12;

    // Throws DomainError on non-positive rates or steps, or delta0 != omega.
    void validate() const;
};

struct OracleRun {
    std::vector<JointState> states;  // one per grid point
    double norm_drift = 0.0;         // max | ||psi||^2 - ||psi(0)||^2 | over the grid
};

// Throws IntegratorFailure if step halving does not reach tolerance,
// TruncationError if the state reaches the Fock cutoff.
OracleRun integrate(const OracleConfig& cfg, const QubitState& q, const FieldVector& field,
                    std::span<const double> t_grid);

// || psi_full(t') - psi_rwa_analytic(t') ||. cfg.rwa must be false.
double rwa_error(const OracleConfig& cfg, const QubitState& q, const FieldVector& field, double t_prime);

} // namespace spinboson
