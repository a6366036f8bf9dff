#include "spinboson/oracle.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/kernels.hpp"
#include "spinboson/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace spinboson {

namespace {

constexpr cplx kI{0.0, 1.0};

// Joint state stored as [A(0..N), B(0..N)].
using Vec = std::vector<cplx>;

// Coefficients of a† and a in one sigma-matrix entry of the generator.
struct LadderWeights {
    cplx up;
    cplx down;
};

// Generator H(t') = sum_{xy} |x><y| ⊗ (w_xy.up a† + w_xy.down a).
struct Generator {
    LadderWeights aa, ab, ba, bb;
};

// Each entry of sigma_z cos(D t) - sigma_y sin(D t) written as p e^{iDt} + m e^{-iDt}.
struct SigmaSplit {
    double p;
    double m;
};
constexpr SigmaSplit kSplitAA{0.5, 0.5};
constexpr SigmaSplit kSplitAB{0.5, -0.5};
constexpr SigmaSplit kSplitBA{-0.5, 0.5};
constexpr SigmaSplit kSplitBB{-0.5, -0.5};

LadderWeights entry_weights(const SigmaSplit& s, double field_rate, double qubit_rate, double t, bool rwa)
{
    if (rwa) {
        // keep m e^{i(W-D)t} a† and p e^{i(D-W)t} a
        const double detune = (field_rate - qubit_rate) * t;
        return {s.m * std::polar(1.0, detune), s.p * std::polar(1.0, -detune)};
    }
    const cplx sigma = s.p * std::polar(1.0, qubit_rate * t) + s.m * std::polar(1.0, -qubit_rate * t);
    return {sigma * std::polar(1.0, field_rate * t), sigma * std::polar(1.0, -field_rate * t)};
}

Generator generator_at(const OracleConfig& cfg, double t)
{
    const double w = cfg.omega / cfg.g;
    const double d = cfg.delta0 / cfg.g;
    return {entry_weights(kSplitAA, w, d, t, cfg.rwa), entry_weights(kSplitAB, w, d, t, cfg.rwa),
            entry_weights(kSplitBA, w, d, t, cfg.rwa), entry_weights(kSplitBB, w, d, t, cfg.rwa)};
}

class Rhs {
public:
    Rhs(const OracleConfig& cfg, std::size_t levels)
        : cfg_(cfg), levels_(levels), up_a_(levels), down_a_(levels), up_b_(levels), down_b_(levels),
          zero_(levels), raise_(levels), lower_(levels)
    {
        for (std::size_t m = 0; m < levels; ++m) {
            raise_[m] = std::sqrt(static_cast<double>(m));
            lower_[m] = std::sqrt(m + 1.0);
        }
    }

    // out = -i H(t) psi
    void operator()(double t, const Vec& psi, Vec& out)
    {
        const Generator h = generator_at(cfg_, t);
        const std::span<const cplx> a(psi.data(), levels_);
        const std::span<const cplx> b(psi.data() + levels_, levels_);
        ladder(a, up_a_, down_a_);
        ladder(b, up_b_, down_b_);

        std::fill(out.begin(), out.end(), cplx{});
        std::span<cplx> out_a(out.data(), levels_);
        std::span<cplx> out_b(out.data() + levels_, levels_);
        kernels::axpy(-kI * h.aa.up, up_a_, out_a);
        kernels::axpy(-kI * h.aa.down, down_a_, out_a);
        kernels::axpy(-kI * h.ab.up, up_b_, out_a);
        kernels::axpy(-kI * h.ab.down, down_b_, out_a);
        kernels::axpy(-kI * h.ba.up, up_a_, out_b);
        kernels::axpy(-kI * h.ba.down, down_a_, out_b);
        kernels::axpy(-kI * h.bb.up, up_b_, out_b);
        kernels::axpy(-kI * h.bb.down, down_b_, out_b);
    }

private:
    // a† v and a v on the truncated space; a† v[n_max] is dropped.
    void ladder(std::span<const cplx> v, Vec& up, Vec& down)
    {
        kernels::tridiag(raise_, zero_, zero_, v, up);
        kernels::tridiag(zero_, zero_, lower_, v, down);
    }

    const OracleConfig& cfg_;
    std::size_t levels_;
    Vec up_a_, down_a_, up_b_, down_b_;
    Vec zero_;
    Vec raise_;  // (a† v)[m] = sqrt(m) v[m-1]
    Vec lower_;  // (a v)[m] = sqrt(m+1) v[m+1]
};

void rk4_steps(Rhs& rhs, Vec& psi, double t0, double t1, long steps)
{
    const double h = (t1 - t0) / static_cast<double>(steps);
    const std::size_t n = psi.size();
    Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (long s = 0; s < steps; ++s) {
        const double t = t0 + h * static_cast<double>(s);
        rhs(t, psi, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

double max_abs_diff(const Vec& x, const Vec& y)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

// Advances psi over [t0, t1]: the step count doubles until two successive
// resolutions agree to tolerance; the finer one is kept.
void advance(const OracleConfig& cfg, Rhs& rhs, Vec& psi, double t0, double t1)
{
    const double span = t1 - t0;
    if (span <= 0.0) return;
    long steps = std::max(1L, static_cast<long>(std::ceil(span / cfg.step_dt_prime - 1e-9)));

    Vec coarse = psi;
    rk4_steps(rhs, coarse, t0, t1, steps);
    for (int halving = 0; halving < cfg.max_halvings; ++halving) {
        steps *= 2;
        Vec fine = psi;
        rk4_steps(rhs, fine, t0, t1, steps);
        if (max_abs_diff(coarse, fine) <= cfg.tolerance) {
            psi = std::move(fine);
            return;
        }
        coarse = std::move(fine);
    }
    throw IntegratorFailure("step halving did not converge on [" + std::to_string(t0) + ", " +
                            std::to_string(t1) + "]");
}

JointState unpack(const Vec& psi, std::size_t levels, double t_prime, double tail)
{
    JointState js;
    js.a = FieldVector(std::vector<cplx>(psi.begin(), psi.begin() + static_cast<long>(levels)), tail);
    js.b = FieldVector(std::vector<cplx>(psi.begin() + static_cast<long>(levels), psi.end()), tail);
    js.t_prime = t_prime;
    return js;
}

double norm2(const Vec& psi) { return kernels::norm2(psi); }

} // namespace

void OracleConfig::validate() const
{
    if (!(g > 0.0) || !(omega > 0.0) || !(delta0 > 0.0))
        throw DomainError("oracle rates g, omega, delta0 must be > 0");
    if (std::abs(delta0 - omega) > 1e-12 * omega) throw DomainError("oracle requires resonance delta0 = omega");
    if (!(step_dt_prime > 0.0)) throw DomainError("oracle step must be > 0");
    if (!(tolerance > 0.0)) throw DomainError("oracle tolerance must be > 0");
    if (max_halvings < 1) throw DomainError("oracle max_halvings must be >= 1");
}

OracleRun integrate(const OracleConfig& cfg, const QubitState& q, const FieldVector& field,
                    std::span<const double> t_grid)
{
    cfg.validate();
    if (field.tail_mass() > kMaxTailMass) throw TruncationError("field tail mass above threshold");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] >= 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
            throw DomainError("oracle grid must be increasing from t' >= 0");
    }
    check_boundary(field);

    const std::size_t levels = field.size();
    Vec psi(2 * levels);
    for (std::size_t n = 0; n < levels; ++n) {
        psi[n] = q.alpha * field[n];
        psi[levels + n] = q.beta * field[n];
    }
    const double norm0 = norm2(psi);

    Rhs rhs(cfg, levels);
    OracleRun run;
    run.states.reserve(t_grid.size());
    double t = 0.0;
    for (double target : t_grid) {
        advance(cfg, rhs, psi, t, target);
        t = target;
        JointState js = unpack(psi, levels, t, field.tail_mass());
        check_boundary(js.a);
        check_boundary(js.b);
        run.norm_drift = std::max(run.norm_drift, std::abs(norm2(psi) - norm0));
        run.states.push_back(std::move(js));
    }
    return run;
}

double rwa_error(const OracleConfig& cfg, const QubitState& q, const FieldVector& field, double t_prime)
{
    if (cfg.rwa) throw DomainError("rwa_error needs the full generator (rwa = false)");
    const double grid[] = {t_prime};
    const JointState full = integrate(cfg, q, field, grid).states.front();
    const JointState rwa = evolve_product(q, field, t_prime);
    const FieldVector da = full.a - rwa.a;
    const FieldVector db = full.b - rwa.b;
    return std::sqrt(da.norm2() + db.norm2());
}

} // namespace spinboson
