#include "spinboson/diagnostics.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/pointer.hpp"

#include <cmath>

namespace spinboson {

EntanglementReport q_from_joint(const JointState& joint, cplx g_val, double nbar)
{
    const double a2 = joint.a.norm2();
    if (!(a2 > 0.0)) throw DegenerateBranch("q undefined: the |a> branch vanishes");
    const cplx q = g_val * inner(joint.a, joint.b) / a2;
    return {std::abs(q), q, joint.t_prime, classify(joint.t_prime, nbar)};
}

double q_from_rho(const DensityMatrix2& rho)
{
    const double denom = rho.rho11 * (1.0 - rho.rho11);
    if (!(denom > 0.0)) throw UndefinedRatio("|q| undefined: rho11 is 0 or 1");
    return std::abs(rho.rho12) / std::sqrt(denom);
}

double purity(const DensityMatrix2& rho) noexcept
{
    const double r22 = rho.rho22();
    return rho.rho11 * rho.rho11 + r22 * r22 + 2.0 * std::norm(rho.rho12);
}

double branch_overlap(const JointState& joint)
{
    const double a2 = joint.a.norm2();
    const double b2 = joint.b.norm2();
    if (!(a2 > 0.0) || !(b2 > 0.0)) throw DegenerateBranch("branch overlap needs two nonzero branches");
    return std::abs(inner(joint.b, joint.a)) / std::sqrt(a2 * b2);
}

double validity_horizon(double nbar, double phi, std::span<const double> t_grid, double threshold,
                        int n_max)
{
    SimConfig config;
    config.nbar = nbar;
    config.phi = phi;
    config.n_max = n_max > 0 ? n_max : default_n_max(nbar);
    config.t_prime_grid.assign(t_grid.begin(), t_grid.end());
    config.validate();

    const FieldVector field = initial_field(config);
    const QubitState start = initial_pointer_states(phi).first;

    double horizon = 0.0;
    for (double t : t_grid) {
        const double q = q_from_rho(reduce(evolve_product(start, field, t)));
        if (q < threshold) break;
        horizon = t;
    }
    return horizon;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw DomainError("linear_fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DomainError("linear_fit needs distinct x values");

    const double slope = sxy / sxx;
    const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return {slope, my - slope * mx, r2};
}

} // namespace spinboson
