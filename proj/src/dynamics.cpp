#include "spinboson/dynamics.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/propagator.hpp"

#include <cmath>

namespace spinboson {

namespace {
constexpr cplx kI{0.0, 1.0};
} // namespace

QubitState QubitState::normalized(cplx alpha, cplx beta)
{
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(n > 0.0)) throw DomainError("qubit state must be nonzero");
    return {alpha / n, beta / n};
}

cplx overlap(const QubitState& x, const QubitState& y) noexcept
{
    return std::conj(x.alpha) * y.alpha + std::conj(x.beta) * y.beta;
}

JointState evolve_product(const QubitState& q, const FieldVector& field, double t_prime)
{
    check_boundary(field);
    // A = (alpha E1 + beta E2) c, B = (alpha E3 + beta E4) c
    const Band band_a = combined_band({q.alpha, q.beta, 0.0, 0.0}, field.n_max(), t_prime);
    const Band band_b = combined_band({0.0, 0.0, q.alpha, q.beta}, field.n_max(), t_prime);
    BlockResult a = apply_band_unchecked(band_a, field);
    BlockResult b = apply_band_unchecked(band_b, field);
    return {std::move(a.vec), std::move(b.vec), t_prime, a.leakage + b.leakage};
}

DensityMatrix2 reduce(const JointState& joint)
{
    return {joint.a.norm2(), inner(joint.b, joint.a)};
}

DensityMatrix2 rho_series(const QubitState& q, const FieldVector& field, double t_prime)
{
    const double gamma = 0.25 * std::norm(q.alpha - q.beta);
    const double delta = 0.25 * std::norm(q.alpha + q.beta);
    const cplx lambda = 0.25 * (std::norm(q.alpha) - std::norm(q.beta) + q.alpha * std::conj(q.beta) -
                                q.beta * std::conj(q.alpha));

    const int n_max = field.n_max();
    auto c = [&](int n) -> cplx {
        return (n < 0 || n > n_max) ? cplx{} : field[static_cast<std::size_t>(n)];
    };

    cplx f0{}, f1{}, f2{}, f3{}, f4{}, g0{}, g1{}, g2{};
    for (int n = 0; n <= n_max; ++n) {
        const double r0 = std::sqrt(static_cast<double>(n));
        const double r1 = std::sqrt(n + 1.0);
        const double s0 = std::sin(t_prime * r0), c0 = std::cos(t_prime * r0);
        const double s1 = std::sin(t_prime * r1), c1 = std::cos(t_prime * r1);
        const cplx cm = c(n - 1), cn = c(n), cp = c(n + 1);
        const double wm = std::norm(cm), wn = std::norm(cn), wp = std::norm(cp);

        f0 += wm * s0 * s0 + kI * (cm * std::conj(cn) + std::conj(cm) * cn) * s0 * c1 - wn * c1 * c1;
        f1 += wn * c0 * c0 - kI * (cn * std::conj(cp) + std::conj(cn) * cp) * c0 * s1 - wp * s1 * s1;
        f2 += -kI * cm * std::conj(cn) * s0 * c0 - cm * std::conj(cp) * s0 * s1 -
              kI * cn * std::conj(cp) * s1 * c1;
        f3 += kI * cn * std::conj(cm) * s0 * c0 + cp * std::conj(cm) * s0 * s1 +
              kI * cp * std::conj(cn) * s1 * c1;
        f4 += wn * c0 * c1;
        g0 += wm * s0 * s0 + kI * (cn * std::conj(cm) - std::conj(cn) * cm) * s0 * c1 + wn * c1 * c1;
        g1 += wn * c0 * c0 + kI * (cn * std::conj(cp) - std::conj(cn) * cp) * c0 * s1 + wp * s1 * s1;
        g2 += -kI * cm * std::conj(cn) * s0 * c0 + cm * std::conj(cp) * s0 * s1 + wn * c0 * c1 +
              kI * cn * std::conj(cp) * s1 * c1;
    }

    const cplx rho12 = gamma * f0 + delta * f1 + lambda * f2 + std::conj(lambda) * f3 +
                       (lambda - std::conj(lambda)) * f4;
    const cplx rho11 = gamma * g0 + delta * g1 + lambda * g2 + std::conj(lambda) * std::conj(g2);
    return {rho11.real(), rho12};
}

FieldVector initial_field(const SimConfig& config)
{
    return coherent(config.nbar, config.phi, config.n_max);
}

DensityMatrix2 rho_series(const QubitState& q, const SimConfig& config, double t_prime)
{
    return rho_series(q, initial_field(config), t_prime);
}

double population_inversion(const QubitState& q, const SimConfig& config, double t_prime)
{
    return 2.0 * rho_series(q, config, t_prime).rho11 - 1.0;
}

} // namespace spinboson
