#include <doctest.h>

#include "oracles.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/propagator.hpp"

#include <numbers>
#include <random>

using namespace spinboson;

namespace {
constexpr cplx kI{0.0, 1.0};
}

TEST_CASE("band coefficients")
{
    SUBCASE("identity at t' = 0")
    {
        for (int n : {0, 1, 7, 100}) {
            const BandCoeffs f = band_coeffs(n, 0.0);
            CHECK(f.f1 == cplx{});
            CHECK(f.f2 == cplx{1.0});
            CHECK(f.f3 == cplx{});
            CHECK(f.f1p == cplx{});
        }
    }
    SUBCASE("vacuum has no lowering branch")
    {
        for (double t : {0.3, 2.0, 17.0}) CHECK(band_coeffs(0, t).f1p == cplx{});
    }
    SUBCASE("n = 3, t' = 1")
    {
        const BandCoeffs f = band_coeffs(3, 1.0);
        CHECK(f.f2.real() == doctest::Approx(0.5 * (std::cos(std::sqrt(3.0)) + std::cos(2.0))).epsilon(1e-15));
        CHECK(f.f3.real() == doctest::Approx(0.5 * (std::cos(std::sqrt(3.0)) - std::cos(2.0))).epsilon(1e-15));
        CHECK(f.f1 == -0.5 * kI * std::sin(2.0));
        CHECK(std::abs(f.f1p - (-0.5 * kI * std::sin(std::sqrt(3.0)))) < 1e-16);
    }
    SUBCASE("sum and difference identities")
    {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> level(0, 300);
        std::uniform_real_distribution<double> time(0.0, 200.0);
        for (int i = 0; i < 200; ++i) {
            const int n = level(rng);
            const double t = time(rng);
            const BandCoeffs f = band_coeffs(n, t);
            CHECK(std::abs(f.f2 + f.f3 - std::cos(t * std::sqrt(double(n)))) < 1e-15);
            CHECK(std::abs(f.f2 - f.f3 - std::cos(t * std::sqrt(n + 1.0))) < 1e-15);
        }
    }
}

TEST_CASE("block sign pattern")
{
    const BandCoeffs f = band_coeffs(5, 2.3);
    const BlockCoeffs e1 = block_coeffs(Block::E1, f), e2 = block_coeffs(Block::E2, f);
    const BlockCoeffs e3 = block_coeffs(Block::E3, f), e4 = block_coeffs(Block::E4, f);
    CHECK(e2.raise == -e1.raise);
    CHECK(e3.lower == -e1.lower);
    CHECK(e2.keep == f.f3);
    CHECK(e3.keep == f.f3);
    CHECK(e1.keep == f.f2);
    CHECK(e4.keep == f.f2);
    CHECK(e4.raise == -f.f1);
    CHECK(e4.lower == -f.f1p);
}

TEST_CASE("apply_block at t' = 0")
{
    const FieldVector v = coherent(10.0, 0.4, default_n_max(10.0));
    const BlockResult e1 = apply_block(Block::E1, v, 0.0);
    const BlockResult e3 = apply_block(Block::E3, v, 0.0);
    for (std::size_t n = 0; n < v.size(); ++n) {
        CHECK(e1.vec[n] == v[n]);
        CHECK(e3.vec[n] == cplx{});
    }
    CHECK(e1.leakage == 0.0);
}

TEST_CASE("column identity ||E1 v||^2 + ||E3 v||^2 = ||v||^2")
{
    const FieldVector v = coherent(50.0, std::numbers::pi / 6.0, 150);
    const double lhs = apply_block(Block::E1, v, 5.0).vec.norm2() + apply_block(Block::E3, v, 5.0).vec.norm2();
    CHECK(std::abs(lhs - v.norm2()) < 1e-9);
    const double rhs2 = apply_block(Block::E2, v, 5.0).vec.norm2() + apply_block(Block::E4, v, 5.0).vec.norm2();
    CHECK(std::abs(rhs2 - v.norm2()) < 1e-9);
}

TEST_CASE("blocks equal the sub-blocks of exp(-i H t') from a dense generator")
{
    const int n_max = 40;
    const std::vector<cplx> c = oracles::coherent_by_recursion(4.0, 0.7, n_max);
    const FieldVector v(c);
    for (double t : {0.5, 3.0, 9.0}) {
        CAPTURE(t);
        const auto from_a = oracles::propagate_dense(1.0, 0.0, c, t);  // (E1 c, E3 c)
        const auto from_b = oracles::propagate_dense(0.0, 1.0, c, t);  // (E2 c, E4 c)
        const BlockResult e1 = apply_block(Block::E1, v, t), e2 = apply_block(Block::E2, v, t);
        const BlockResult e3 = apply_block(Block::E3, v, t), e4 = apply_block(Block::E4, v, t);
        const std::size_t L = c.size();
        for (std::size_t n = 0; n < L; ++n) {
            CHECK(std::abs(e1.vec[n] - from_a[n]) < 1e-12);
            CHECK(std::abs(e3.vec[n] - from_a[L + n]) < 1e-12);
            CHECK(std::abs(e2.vec[n] - from_b[n]) < 1e-12);
            CHECK(std::abs(e4.vec[n] - from_b[L + n]) < 1e-12);
        }
    }
}

TEST_CASE("boundary guard")
{
    FieldVector v(20);
    v[5] = 1.0;
    CHECK_NOTHROW(check_boundary(v));
    v[18] = 1e-9;
    CHECK_THROWS_AS(check_boundary(v), TruncationError);
    CHECK_THROWS_AS(apply_block(Block::E1, v, 1.0), TruncationError);

    // the unchecked path reports what it drops at |n_max + 1>
    FieldVector edge(10);
    edge[10] = 1.0;
    const BlockResult r = apply_band_unchecked(combined_band({1.0, 0.0, 0.0, 0.0}, 10, 1.0), edge);
    CHECK(r.leakage == doctest::Approx(0.25 * std::pow(std::sin(std::sqrt(11.0)), 2)).epsilon(1e-14));
}

TEST_CASE("unitarity defect")
{
    CHECK(unitarity_defect(0.0, 150, 5) == 0.0);
    CHECK(unitarity_defect(10.0, 150, 5) < 1e-10);
    for (double t : {1.0, 5.0, 50.0, 100.0}) CHECK(unitarity_defect(t, 150, 1) < 1e-10);

    // cutoff level included: the dropped |n_max+1> amplitude shows up
    const double edge = unitarity_defect(100.0, 150, 0);
    CHECK(edge > 1e-3);
    CHECK(edge <= 0.25 + 1e-12);
    CHECK_THROWS_AS(unitarity_defect(1.0, 150, -1), DomainError);
}

TEST_CASE("the propagator is not a semigroup in t'")
{
    const FieldVector v = coherent(10.0, 0.2, default_n_max(10.0));
    const FieldVector twice = apply_block(Block::E1, apply_block(Block::E1, v, 2.0).vec, 2.0).vec;
    const FieldVector direct = apply_block(Block::E1, v, 4.0).vec;
    CHECK((twice - direct).norm2() > 1e-3);
}
