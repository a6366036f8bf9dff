#pragma once

// Entanglement measure q(t), purity and the validity horizon of the pointer picture.

#include "spinboson/dynamics.hpp"
#include "spinboson/validity.hpp"

#include <span>
#include <vector>

namespace spinboson {

struct EntanglementReport {
    double q_abs = 0.0;
    cplx q_complex{};
    double t_prime = 0.0;
    Validity validity = Validity::inside;  // t' against nbar
};

// q = <A|G B> / ||A||^2. Throws DegenerateBranch when ||A|| = 0.
EntanglementReport q_from_joint(const JointState& joint, cplx g_val, double nbar);

// |q| = |rho12| / sqrt(rho11 (1 - rho11)). Throws UndefinedRatio at rho11 in {0, 1}.
double q_from_rho(const DensityMatrix2& rho);

// Tr rho^2
double purity(const DensityMatrix2& rho) noexcept;

// |<B|A>| / (||A|| ||B||). Throws DegenerateBranch if either branch vanishes.
double branch_overlap(const JointState& joint);

// Largest grid time t' such that |q| >= threshold at every grid point up to it,
// for a start in the plus pointer state. Returns 0 if the first point fails.
double validity_horizon(double nbar, double phi, std::span<const double> t_grid, double threshold,
                        int n_max = 0);

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

// Ordinary least squares y = slope x + intercept. Throws DomainError for
// fewer than two points or mismatched sizes.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace spinboson
