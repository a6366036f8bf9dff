#include <doctest.h>

// Quantitative statements about the model checked at their stated thresholds.
// The derivations behind some of these are approximate; failures here are
// findings about the approximations, not about the implementation, which the
// other suites check against independent references.

#include "spinboson/closedform.hpp"
#include "spinboson/diagnostics.hpp"
#include "spinboson/oracle.hpp"
#include "spinboson/pointer.hpp"

#include <numbers>

using namespace spinboson;

namespace {

constexpr double kPhi = std::numbers::pi / 6.0;

SimConfig figure_config()
{
    SimConfig c;
    c.nbar = 50.0;
    c.phi = kPhi;
    c.n_max = 150;
    return c;
}

} // namespace

TEST_CASE("overlap modulus law at t' = 0.5 within 1e-3")
{
    const FieldVector c = initial_field(figure_config());
    const double exact =
        std::norm(inner(env_pointer_exact(c, 0.5, PointerSign::minus), env_pointer_exact(c, 0.5, PointerSign::plus)));
    const double approx = env_overlap_approx(50.0, 0.5).modulus_sq;
    MESSAGE("exact " << exact << ", closed form " << approx);
    CHECK(std::abs(exact - approx) < 1e-3);
    CHECK(std::abs(exact - approx) / exact < 1e-2);
}

TEST_CASE("coherent approximation fidelity above 0.99 for t' <= 2")
{
    const SimConfig cfg = figure_config();
    const FieldVector c = initial_field(cfg);
    double worst = 1.0;
    for (double t : uniform_grid(2.0, 20)) {
        for (PointerSign s : {PointerSign::plus, PointerSign::minus}) {
            const CoherentApprox a = env_pointer_coherent_approx(cfg, t, s);
            const FieldVector approx = a.global_phase * coherent_from_amplitude(a.nu_eff, cfg.n_max);
            worst = std::min(worst, std::norm(inner(env_pointer_exact(c, t, s), approx)));
        }
    }
    MESSAGE("min fidelity " << worst);
    CHECK(worst > 0.99);
}

TEST_CASE("branch parallelism within 0.05 for t' <= sqrt(nbar)")
{
    const SimConfig cfg = figure_config();
    const FieldVector c = initial_field(cfg);
    const QubitState start = initial_pointer_states(kPhi).first;
    double worst = 0.0;
    for (double t : uniform_grid(std::sqrt(50.0), 70)) {
        const JointState j = evolve_product(start, c, t);
        const cplx g = g_scalar(kPhi, 50.0, t, PointerSign::plus);
        worst = std::max(worst, std::sqrt((j.a - g * j.b).norm2() / j.a.norm2()));
    }
    MESSAGE("max relative ||A - G B||: " << worst);
    CHECK(worst < 0.05);
}

TEST_CASE("q from branch vectors equals q from the reduced state to 1e-10")
{
    const SimConfig cfg = figure_config();
    const FieldVector c = initial_field(cfg);
    const QubitState start = initial_pointer_states(kPhi).first;
    double worst = 0.0;
    for (double t : uniform_grid(5.0, 50)) {
        const JointState j = evolve_product(start, c, t);
        const double joint = q_from_joint(j, g_scalar(kPhi, 50.0, t, PointerSign::plus), 50.0).q_abs;
        worst = std::max(worst, std::abs(joint - q_from_rho(reduce(j))));
    }
    MESSAGE("max | |q_joint| - |q_rho| |: " << worst);
    CHECK(worst < 1e-10);
}

TEST_CASE("weak coupling: rotating-wave error below 1e-8 at g = 1e-6 omega")
{
    // t' = 1e-3 keeps the counter-rotating oscillation (period ~3e-6 in t') resolvable
    const FieldVector c = coherent(50.0, kPhi, default_n_max(50.0));
    OracleConfig cfg;
    cfg.rwa = false;
    cfg.omega = cfg.delta0 = 1e6;
    cfg.step_dt_prime = 1e-7;
    const double err = rwa_error(cfg, QubitState::upper(), c, 1e-3);
    MESSAGE("rwa error " << err);
    CHECK(err < 1e-8);
}
