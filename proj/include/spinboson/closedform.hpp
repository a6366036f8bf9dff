#pragma once

// Large-nbar closed forms for the qubit coherence, each tagged with the
// regime in which its derivation holds.

#include "spinboson/fock.hpp"
#include "spinboson/pointer.hpp"
#include "spinboson/validity.hpp"

#include <utility>

namespace spinboson {

// Finite-nbar substitute for exp(-i t'/(2 sqrt nbar)):
//   exp(-i t'/(2 sqrt nbar)) exp(-t'^2 / (32 nbar^2)).
// validity: t' against nbar^{3/2}.
Tagged<cplx> correction_factor(double nbar, double t_prime);

// sum_n |c_n|^2 exp(-i t' (sqrt(n+1) - sqrt n)) over the coherent weights of field.
cplx correction_factor_direct(const FieldVector& field, double t_prime);

// rho12 for a start in |±(0)>:
//   plus:  -(i/2) sin(phi + t'/(2 sqrt nbar)) e^{-t'^2/32nbar^2}
//   minus: +(i/2) sin(phi - t'/(2 sqrt nbar)) e^{-t'^2/32nbar^2}
Tagged<cplx> rho12_pointer_start(double phi, double nbar, double t_prime, PointerSign s);

// (<a|+><-|b>, <a|-><+|b>) with the e^{-t'^2/64nbar^2} correction.
std::pair<cplx, cplx> cross_term_factors(double phi, double nbar, double t_prime);

struct EnvOverlap {
    cplx value;                   // <Phi_-|Phi_+>, coherent-state approximation
    double modulus_sq;            // exp(-4 nbar sin^2[(t'/2 sqrt nbar)(5/4 - 1/(4 nbar))])
    double short_time_gaussian;   // exp(-(25/16) t'^2)
    Validity validity;            // t' against nbar^{3/2}
    Validity short_time_validity; // t' against sqrt(nbar)
};

EnvOverlap env_overlap_approx(double nbar, double t_prime);

// Closed-form rho12 for an arbitrary start alpha'|+(0)> + beta'|-(0)>.
// Cross terms use the full overlap value (with its recurrences).
Tagged<cplx> rho12_closed(cplx alpha_p, cplx beta_p, double phi, double nbar, double t_prime);

// rho12 in the initial pointer basis at short times: alpha' conj(beta') <Phi_-|Phi_+>.
// validity: t' against sqrt(nbar).
Tagged<cplx> rho12_pointer_basis(cplx alpha_p, cplx beta_p, double nbar, double t_prime);

} // namespace spinboson
