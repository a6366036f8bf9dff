#include <doctest.h>

#include "spinboson/diagnostics.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/pointer.hpp"

#include <numbers>
#include <random>

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

TEST_CASE("q from branch vectors")
{
    const FieldVector b = coherent(8.0, 0.2, 50);
    SUBCASE("A = G B gives q = 1")
    {
        const cplx g{0.3, -1.4};
        const JointState j{g * b, b, 2.0, 0.0};
        const EntanglementReport r = q_from_joint(j, g, 50.0);
        CHECK(std::abs(r.q_complex - 1.0) < 1e-14);
        CHECK(r.q_abs == doctest::Approx(std::abs(r.q_complex)).epsilon(1e-12));
        CHECK(r.t_prime == 2.0);
        CHECK(r.validity == Validity::inside);
    }
    SUBCASE("orthogonal branches give q = 0")
    {
        FieldVector a(50), bb(50);
        a[3] = 1.0;
        bb[4] = 1.0;
        CHECK(q_from_joint({a, bb, 0.0, 0.0}, {0.0, 5.0}, 50.0).q_abs == 0.0);
    }
    SUBCASE("vanishing |a> branch")
    {
        CHECK_THROWS_AS(q_from_joint({FieldVector(50), b, 0.0, 0.0}, 1.0, 50.0), DegenerateBranch);
    }
    SUBCASE("validity against nbar")
    {
        const JointState j{b, b, 30.0, 0.0};
        CHECK(q_from_joint(j, 1.0, 50.0).validity == Validity::marginal);
    }
}

TEST_CASE("q from the reduced state")
{
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(q_from_rho({0.5, {0.5, 0.0}}) == doctest::Approx(1.0));
    CHECK(q_from_rho({h * h, h * h}) == doctest::Approx(1.0));
    CHECK(q_from_rho({0.5, 0.0}) == 0.0);
    CHECK_THROWS_AS(q_from_rho({1.0, 0.0}), UndefinedRatio);
    CHECK_THROWS_AS(q_from_rho({0.0, 0.0}), UndefinedRatio);
}

TEST_CASE("q from rho equals the normalized branch overlap")
{
    const FieldVector c = initial_field(figure_config());
    const QubitState start = initial_pointer_states(kPhi).first;
    for (double t : uniform_grid(60.0, 120)) {
        const JointState j = evolve_product(start, c, t);
        CHECK(q_from_rho(reduce(j)) == doctest::Approx(branch_overlap(j)).epsilon(1e-10));
    }
}

TEST_CASE("global phase invariance")
{
    const FieldVector c = initial_field(figure_config());
    const QubitState q = QubitState::normalized({0.3, 0.1}, {0.2, -0.9});
    const cplx ph = std::polar(1.0, 2.1);
    for (double t : {0.5, 5.0, 40.0}) {
        const JointState j = evolve_product(q, c, t);
        const JointState k{ph * j.a, ph * j.b, t, 0.0};
        CHECK(q_from_rho(reduce(k)) == doctest::Approx(q_from_rho(reduce(j))).epsilon(1e-12));
    }
}

TEST_CASE("purity")
{
    CHECK(purity({1.0, 0.0}) == 1.0);
    CHECK(purity({0.5, {0.5, 0.0}}) == doctest::Approx(1.0));
    CHECK(purity({0.5, 0.0}) == 0.5);
}

TEST_CASE("purity = 1 exactly when |q| = 1")
{
    // 1 - purity = 2 rho11 rho22 (1 - |q|^2) whenever 0 < rho11 < 1
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    const FieldVector c = initial_field(figure_config());
    for (int i = 0; i < 5; ++i) {
        const QubitState q = QubitState::normalized({g(rng), g(rng)}, {g(rng), g(rng)});
        for (double t : uniform_grid(80.0, 40)) {
            const DensityMatrix2 rho = reduce(evolve_product(q, c, t));
            const double qa = q_from_rho(rho);
            CHECK(1.0 - purity(rho) == doctest::Approx(2.0 * rho.rho11 * rho.rho22() * (1.0 - qa * qa)).epsilon(1e-9).scale(1.0));
            if (std::abs(qa - 1.0) < 1e-12) CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("plus-pointer start: |q| stays high for t' <= sqrt(nbar) and degrades by t' ~ nbar")
{
    const FieldVector c = initial_field(figure_config());
    const QubitState start = initial_pointer_states(kPhi).first;
    double q_short = 1.0;
    for (double t : uniform_grid(std::sqrt(50.0), 200))
        q_short = std::min(q_short, q_from_rho(reduce(evolve_product(start, c, t))));
    MESSAGE("min |q| on t' <= sqrt(nbar): " << q_short);
    CHECK(q_short > 0.95);

    double q_long = 1.0;
    for (double t : uniform_grid(50.0, 500)) {
        const DensityMatrix2 rho = reduce(evolve_product(start, c, t));
        if (rho.rho11 > 1e-6 && rho.rho11 < 1.0 - 1e-6) q_long = std::min(q_long, q_from_rho(rho));
    }
    MESSAGE("min |q| on t' <= nbar: " << q_long);
    CHECK(q_long < 0.9);
}

TEST_CASE("state preparation at the first coincidence time")
{
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    const FieldVector c = initial_field(figure_config());
    const double t1 = std::numbers::pi * std::sqrt(50.0);
    for (int i = 0; i < 10; ++i) {
        const QubitState q = QubitState::normalized({g(rng), g(rng)}, {g(rng), g(rng)});
        CHECK(purity(reduce(evolve_product(q, c, t1))) > 0.95);
    }
}

TEST_CASE("linear fit")
{
    const std::vector<double> x{1.0, 2.0, 4.0}, y{3.0, 5.0, 9.0};
    const LinearFit f = linear_fit(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0));

    const std::vector<double> yn{1.0, 0.0, 1.0, 0.0}, xn{0.0, 1.0, 2.0, 3.0};
    CHECK(linear_fit(xn, yn).r_squared == doctest::Approx(0.2));
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
    CHECK_THROWS_AS(linear_fit(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("validity horizon")
{
    const std::vector<double> grid = uniform_grid(2.0, 200);
    const double h = validity_horizon(50.0, kPhi, grid, 0.99);
    CHECK(h >= 0.0);
    CHECK(h <= 2.0);
    // a threshold no state can fail returns the end of the grid
    CHECK(validity_horizon(50.0, kPhi, grid, 0.0) == 2.0);
    // every |q| is below 1 + eps, so an unreachable threshold returns 0
    CHECK(validity_horizon(50.0, kPhi, grid, 1.5) == 0.0);
}
