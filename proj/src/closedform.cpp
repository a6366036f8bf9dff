#include "spinboson/closedform.hpp"

#include "spinboson/errors.hpp"

#include <cmath>

namespace spinboson {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_positive_nbar(double nbar)
{
    if (!(nbar > 0.0)) throw DomainError("closed forms need nbar > 0");
}

double envelope32(double nbar, double t) { return std::exp(-t * t / (32.0 * nbar * nbar)); }
double envelope64(double nbar, double t) { return std::exp(-t * t / (64.0 * nbar * nbar)); }

} // namespace

Tagged<cplx> correction_factor(double nbar, double t_prime)
{
    require_positive_nbar(nbar);
    const cplx value = std::polar(envelope32(nbar, t_prime), -t_prime / (2.0 * std::sqrt(nbar)));
    return {value, classify(t_prime, std::pow(nbar, 1.5))};
}

cplx correction_factor_direct(const FieldVector& field, double t_prime)
{
    cplx sum{};
    for (std::size_t n = 0; n < field.size(); ++n) {
        const double gap = std::sqrt(n + 1.0) - std::sqrt(static_cast<double>(n));
        sum += std::norm(field[n]) * std::polar(1.0, -t_prime * gap);
    }
    return sum;
}

Tagged<cplx> rho12_pointer_start(double phi, double nbar, double t_prime, PointerSign s)
{
    require_positive_nbar(nbar);
    const double drift = t_prime / (2.0 * std::sqrt(nbar));
    const double env = envelope32(nbar, t_prime);
    const cplx value = s == PointerSign::plus ? -0.5 * kI * std::sin(phi + drift) * env
                                              : 0.5 * kI * std::sin(phi - drift) * env;
    return {value, classify(t_prime, std::pow(nbar, 1.5))};
}

std::pair<cplx, cplx> cross_term_factors(double phi, double nbar, double t_prime)
{
    const PointerAngles th = pointer_angles(phi, nbar, t_prime);
    const double env = envelope64(nbar, t_prime);
    return {-kI * std::cos(th.theta_plus) * std::cos(th.theta_minus) * env,
            kI * std::sin(th.theta_plus) * std::sin(th.theta_minus) * env};
}

EnvOverlap env_overlap_approx(double nbar, double t_prime)
{
    require_positive_nbar(nbar);
    const double root = std::sqrt(nbar);
    const double phase_rate = 0.75 + 0.75 / nbar - 1.0 / (8.0 * nbar * nbar);
    const double rotation_rate = 1.25 - 0.25 / nbar;

    const cplx global = std::polar(1.0, -t_prime * root * phase_rate);
    const cplx rotated = std::polar(1.0, -t_prime / root * rotation_rate);
    const cplx value = global * std::exp(nbar * (rotated - 1.0));

    const double half_angle = std::sin(t_prime / (2.0 * root) * rotation_rate);
    return {value,
            std::exp(-4.0 * nbar * half_angle * half_angle),
            std::exp(-25.0 / 16.0 * t_prime * t_prime),
            classify(t_prime, std::pow(nbar, 1.5)),
            classify(t_prime, root)};
}

Tagged<cplx> rho12_closed(cplx alpha_p, cplx beta_p, double phi, double nbar, double t_prime)
{
    const cplx diag_plus = rho12_pointer_start(phi, nbar, t_prime, PointerSign::plus).value;
    const cplx diag_minus = rho12_pointer_start(phi, nbar, t_prime, PointerSign::minus).value;
    const auto [plus_minus, minus_plus] = cross_term_factors(phi, nbar, t_prime);
    const cplx ov = env_overlap_approx(nbar, t_prime).value;

    const cplx value = std::norm(alpha_p) * diag_plus + std::norm(beta_p) * diag_minus +
                       alpha_p * std::conj(beta_p) * plus_minus * ov +
                       beta_p * std::conj(alpha_p) * minus_plus * std::conj(ov);
    return {value, classify(t_prime, std::pow(nbar, 1.5))};
}

Tagged<cplx> rho12_pointer_basis(cplx alpha_p, cplx beta_p, double nbar, double t_prime)
{
    const EnvOverlap ov = env_overlap_approx(nbar, t_prime);
    return {alpha_p * std::conj(beta_p) * ov.value, ov.short_time_validity};
}

} // namespace spinboson
