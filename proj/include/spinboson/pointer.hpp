#pragma once

// Time-dependent pointer states of qubit and field for a coherent initial field.

#include "spinboson/dynamics.hpp"
#include "spinboson/fock.hpp"
#include "spinboson/validity.hpp"

#include <utility>
#include <vector>

namespace spinboson {

enum class PointerSign { plus, minus };

// theta_± = phi/2 ± t' / (4 sqrt(nbar)); normalizations N+ = sin theta+, N- = cos theta-.
struct PointerAngles {
    double theta_plus;
    double theta_minus;

    double norm_plus() const;
    double norm_minus() const;
};

PointerAngles pointer_angles(double phi, double nbar, double t_prime);

// (|+(0)>, |-(0)>):  -i cos(phi/2)|a> + sin(phi/2)|b>,  i sin(phi/2)|a> + cos(phi/2)|b>
std::pair<QubitState, QubitState> initial_pointer_states(double phi);

// Never fails, also where G(t) has a pole. Throws DomainError for nbar <= 0.
QubitState pointer_state_at(double phi, double nbar, double t_prime, PointerSign s);

// Coordinates (alpha', beta') of q in the initial pointer basis.
std::pair<cplx, cplx> to_pointer_basis(const QubitState& q, double phi);

// Parallelism ratio A = G B: -i cot(theta+) for plus, i tan(theta-) for minus.
// Throws SingularConfiguration at a pole (pointer state along |b> or |a>).
cplx g_scalar(double phi, double nbar, double t_prime, PointerSign s);

// |Phi_±(t)> = sum_n c_n exp(∓ i t'/2 (sqrt(n+1) + sqrt n)) |n>
FieldVector env_pointer_exact(const SimConfig& config, double t_prime, PointerSign s);
FieldVector env_pointer_exact(const FieldVector& coherent_field, double t_prime, PointerSign s);

// Coherent-state approximation |Phi_±> ≈ global_phase * |nu_eff>.
struct CoherentApprox {
    cplx global_phase;
    cplx nu_eff;
    Validity validity;  // t' against nbar^{3/2}
};

CoherentApprox env_pointer_coherent_approx(const SimConfig& config, double t_prime, PointerSign s);

// Coherent state with complex amplitude nu (c_n = e^{-|nu|^2/2} nu^n / sqrt(n!)).
FieldVector coherent_from_amplitude(cplx nu, int n_max);

enum class CoincidenceKind { t1, t2 };

struct Coincidence {
    double t_prime;
    QubitState state;
    CoincidenceKind kind;
};

// Times where |+(t)> and |-(t)> coincide, in increasing order:
// (4k+1) pi sqrt(nbar) (t1 type) interleaved with (4k-1) pi sqrt(nbar) (t2 type).
// Returns the first k_max entries. Throws DomainError for k_max < 1 or nbar <= 0.
std::vector<Coincidence> coincidence_times(double nbar, double phi, int k_max);

} // namespace spinboson
