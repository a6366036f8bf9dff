#include "spinboson/pointer.hpp"

#include "spinboson/errors.hpp"

#include <cmath>
#include <numbers>

namespace spinboson {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPoleTolerance = 1e-12;

void require_positive_nbar(double nbar)
{
    if (!(nbar > 0.0)) throw DomainError("pointer states need nbar > 0");
}

} // namespace

double PointerAngles::norm_plus() const { return std::sin(theta_plus); }
double PointerAngles::norm_minus() const { return std::cos(theta_minus); }

PointerAngles pointer_angles(double phi, double nbar, double t_prime)
{
    require_positive_nbar(nbar);
    const double drift = t_prime / (4.0 * std::sqrt(nbar));
    return {0.5 * phi + drift, 0.5 * phi - drift};
}

std::pair<QubitState, QubitState> initial_pointer_states(double phi)
{
    const double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
    return {QubitState{-kI * c, s}, QubitState{kI * s, c}};
}

QubitState pointer_state_at(double phi, double nbar, double t_prime, PointerSign s)
{
    const PointerAngles th = pointer_angles(phi, nbar, t_prime);
    if (s == PointerSign::plus) return {-kI * std::cos(th.theta_plus), std::sin(th.theta_plus)};
    return {kI * std::sin(th.theta_minus), std::cos(th.theta_minus)};
}

std::pair<cplx, cplx> to_pointer_basis(const QubitState& q, double phi)
{
    const auto [plus, minus] = initial_pointer_states(phi);
    return {overlap(plus, q), overlap(minus, q)};
}

cplx g_scalar(double phi, double nbar, double t_prime, PointerSign s)
{
    const PointerAngles th = pointer_angles(phi, nbar, t_prime);
    if (s == PointerSign::plus) {
        const double sn = std::sin(th.theta_plus);
        if (std::abs(sn) < kPoleTolerance)
            throw SingularConfiguration("G_+ has a pole: |+(t)> lies along |a>");
        return -kI * (std::cos(th.theta_plus) / sn);
    }
    const double cs = std::cos(th.theta_minus);
    if (std::abs(cs) < kPoleTolerance)
        throw SingularConfiguration("G_- has a pole: |-(t)> lies along |a>");
    return kI * (std::sin(th.theta_minus) / cs);
}

FieldVector env_pointer_exact(const FieldVector& c, double t_prime, PointerSign s)
{
    const double sign = s == PointerSign::plus ? -1.0 : 1.0;
    FieldVector out = c;
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double phase = sign * 0.5 * t_prime * (std::sqrt(n + 1.0) + std::sqrt(static_cast<double>(n)));
        out[n] = c[n] * std::polar(1.0, phase);
    }
    return out;
}

FieldVector env_pointer_exact(const SimConfig& config, double t_prime, PointerSign s)
{
    return env_pointer_exact(initial_field(config), t_prime, s);
}

CoherentApprox env_pointer_coherent_approx(const SimConfig& config, double t_prime, PointerSign s)
{
    require_positive_nbar(config.nbar);
    const double nbar = config.nbar;
    const double root = std::sqrt(nbar);
    const double sign = s == PointerSign::plus ? -1.0 : 1.0;
    const double phase = sign * 0.5 * t_prime * root * (0.75 + 0.75 / nbar - 1.0 / (8.0 * nbar * nbar));
    const double rotation = sign * t_prime / (2.0 * root) * (1.25 - 0.25 / nbar);
    const cplx nu = std::polar(root, -config.phi);
    return {std::polar(1.0, phase), nu * std::polar(1.0, rotation),
            classify(t_prime, std::pow(nbar, 1.5))};
}

FieldVector coherent_from_amplitude(cplx nu, int n_max)
{
    const double nbar = std::norm(nu);
    return coherent(nbar, -std::arg(nu), n_max);
}

std::vector<Coincidence> coincidence_times(double nbar, double phi, int k_max)
{
    require_positive_nbar(nbar);
    if (k_max < 1) throw DomainError("coincidence_times: k_max must be >= 1");
    const double root = std::sqrt(nbar);
    const double quarter = std::numbers::pi / 4.0;
    const QubitState t1_state{kI * std::sin(0.5 * phi - quarter), std::cos(0.5 * phi - quarter)};
    const QubitState t2_state{kI * std::sin(0.5 * phi + quarter), std::cos(0.5 * phi + quarter)};

    // Odd multiples of pi sqrt(nbar): 1 -> t1 (k=0), 3 -> t2 (k=1), 5 -> t1 (k=1), ...
    std::vector<Coincidence> out;
    out.reserve(static_cast<std::size_t>(k_max));
    for (int j = 0; j < k_max; ++j) {
        const int odd = 2 * j + 1;
        const bool is_t1 = odd % 4 == 1;
        out.push_back({odd * std::numbers::pi * root, is_t1 ? t1_state : t2_state,
                       is_t1 ? CoincidenceKind::t1 : CoincidenceKind::t2});
    }
    return out;
}

} // namespace spinboson
