#include "spinboson/acceptance.hpp"

#include "spinboson/cli.hpp"
#include "spinboson/closedform.hpp"
#include "spinboson/diagnostics.hpp"
#include "spinboson/oracle.hpp"
#include "spinboson/parallel.hpp"
#include "spinboson/pointer.hpp"
#include "spinboson/propagator.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace spinboson::acceptance {

namespace {

std::vector<QubitState> random_states(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<QubitState> out;
    for (int i = 0; i < count; ++i) {
        const cplx a{gauss(rng), gauss(rng)};
        const cplx b{gauss(rng), gauss(rng)};
        out.push_back(QubitState::normalized(a, b));
    }
    return out;
}

SimConfig config_of(const Options& o)
{
    SimConfig c;
    c.nbar = o.nbar;
    c.phi = o.phi;
    c.n_max = o.n_max;
    c.validate();
    return c;
}

// Shortest round-trip form, for report text.
std::string fmt(double v)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

double max_abs_diff(const FieldVector& x, const FieldVector& y)
{
    double worst = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) worst = std::max(worst, std::abs(x[n] - y[n]));
    return worst;
}

struct Crossing {
    double t;
    bool rising;
};

// Sign changes of y, located by linear interpolation and merged when closer
// than `merge` (fast ripple around a slow zero counts once).
std::vector<Crossing> zero_crossings(const std::vector<double>& x, const std::vector<double>& y, double merge)
{
    std::vector<Crossing> raw;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if ((y[i - 1] < 0.0) != (y[i] < 0.0)) {
            const double t = x[i - 1] + (x[i] - x[i - 1]) * y[i - 1] / (y[i - 1] - y[i]);
            raw.push_back({t, y[i] > y[i - 1]});
        }
    }
    std::vector<Crossing> merged;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i;
        while (j + 1 < raw.size() && raw[j + 1].t - raw[j].t < merge) ++j;
        // an even cluster is ripple that returns to the same sign
        if ((j - i) % 2 == 0) merged.push_back({0.5 * (raw[i].t + raw[j].t), raw[i].rising});
        i = j + 1;
    }
    return merged;
}

} // namespace

std::vector<double> peak_envelope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (y.size() < 2) return y;
    std::vector<std::size_t> peaks{0};
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] >= y[i - 1] && y[i] > y[i + 1]) peaks.push_back(i);
    peaks.push_back(y.size() - 1);

    std::vector<double> env(y.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        while (k + 2 < peaks.size() && peaks[k + 1] <= i) ++k;
        const std::size_t l = peaks[k], r = peaks[k + 1];
        const double w = (x[i] - x[l]) / (x[r] - x[l]);
        env[i] = (1.0 - w) * y[l] + w * y[r];
    }
    return env;
}

CriterionResult unitarity(const Options& o)
{
    double worst = 0.0;
    for (double t : {1.0, 5.0, 10.0, 50.0, 100.0}) worst = std::max(worst, unitarity_defect(t, o.n_max, 1));
    return {1, "unitarity", worst < 1e-10, worst, 1e-10,
            "max defect over t' in {1,5,10,50,100}, levels n <= n_max - 1"};
}

CriterionResult two_path_equivalence(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const std::vector<double> grid = uniform_grid(200.0, 199);
    const auto states = random_states(o.seed, 10);

    const auto worst_per_state = parallel_map(
        states.size(),
        [&](std::size_t s) {
            double worst = 0.0;
            for (double t : grid) {
                const DensityMatrix2 direct = reduce(evolve_product(states[s], field, t));
                const DensityMatrix2 series = rho_series(states[s], field, t);
                worst = std::max({worst, std::abs(direct.rho11 - series.rho11), std::abs(direct.rho12 - series.rho12)});
            }
            return worst;
        },
        o.threads);
    const double worst = *std::max_element(worst_per_state.begin(), worst_per_state.end());
    return {2, "two-path equivalence", worst < 1e-10, worst, 1e-10,
            "10 random states x 200 grid points on [0, 200]"};
}

CriterionResult oracle_equivalence(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const std::vector<double> grid = uniform_grid(10.0, 20);
    const auto [plus, minus] = initial_pointer_states(o.phi);
    const std::vector<QubitState> starts{QubitState::upper(), QubitState::lower(), plus,
                                         random_states(o.seed + 1, 1).front()};

    OracleConfig cfg;
    const auto results = parallel_map(
        starts.size(),
        [&](std::size_t s) {
            const OracleRun run = integrate(cfg, starts[s], field, grid);
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const JointState exact = evolve_product(starts[s], field, grid[i]);
                worst = std::max({worst, max_abs_diff(exact.a, run.states[i].a), max_abs_diff(exact.b, run.states[i].b)});
            }
            return std::pair{worst, run.norm_drift};
        },
        o.threads);
    double worst = 0.0, drift = 0.0;
    for (const auto& [w, d] : results) {
        worst = std::max(worst, w);
        drift = std::max(drift, d);
    }
    return {3, "oracle equivalence", worst < 1e-6, worst, 1e-6,
            "upper, lower, plus-pointer, random start; t' in [0, 10]; oracle norm drift " + fmt(drift)};
}

CriterionResult figure2_reproduction(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const std::vector<double> grid = uniform_grid(200.0, 2000);
    const QubitState start = initial_pointer_states(o.phi).first;

    const auto rho12 = parallel_map(
        grid.size(), [&](std::size_t i) { return reduce(evolve_product(start, field, grid[i])).rho12; }, o.threads);

    double deviation = 0.0;
    std::vector<double> imag(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx closed = rho12_pointer_start(o.phi, o.nbar, grid[i], PointerSign::plus).value;
        deviation = std::max(deviation, std::abs(std::abs(rho12[i]) - std::abs(closed)));
        imag[i] = rho12[i].imag();
    }

    // Zeros of the exact coherence against the sinusoid's zeros
    // t' = 2 sqrt(nbar) (k pi - phi) and its period 4 pi sqrt(nbar).
    const double root = std::sqrt(o.nbar);
    const double period = 4.0 * std::numbers::pi * root;
    const auto zeros = zero_crossings(grid, imag, 2.0);
    std::vector<double> predicted;
    for (int k = 0;; ++k) {
        const double t = 2.0 * root * (k * std::numbers::pi - o.phi);
        if (t > grid.back()) break;
        if (t > 0.0) predicted.push_back(t);
    }

    bool zeros_ok = zeros.size() == predicted.size();
    double position_err = 0.0;
    for (std::size_t i = 0; zeros_ok && i < zeros.size(); ++i)
        position_err = std::max(position_err, std::abs(zeros[i].t - predicted[i]));
    zeros_ok = zeros_ok && position_err < 2.0;

    double period_err = 0.0;
    int periods = 0;
    for (std::size_t i = 0; i < zeros.size(); ++i)
        for (std::size_t j = i + 1; j < zeros.size(); ++j)
            if (zeros[j].rising == zeros[i].rising) {
                period_err = std::max(period_err, std::abs(zeros[j].t - zeros[i].t - period));
                ++periods;
                break;
            }
    zeros_ok = zeros_ok && periods > 0 && period_err < 2.0;

    std::ostringstream detail;
    detail << "zeros at";
    for (const auto& z : zeros) detail << ' ' << fmt(std::round(z.t * 100.0) / 100.0);
    detail << "; max position error " << fmt(position_err) << " vs closed-form zeros; repeat spacing error "
           << fmt(period_err) << " vs 4 pi sqrt(nbar) = " << fmt(period) << " over " << periods
           << " pairs (adjacent zeros are half that apart)";
    return {4, "figure 2 reproduction", deviation < 0.03 && zeros_ok, deviation, 0.03, detail.str()};
}

CriterionResult figure3_reproduction(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const std::vector<double> grid = uniform_grid(10.0, 2000);
    const QubitState start = QubitState::lower();
    const auto [ap, bp] = to_pointer_basis(start, o.phi);

    const auto exact = parallel_map(
        grid.size(), [&](std::size_t i) { return std::abs(reduce(evolve_product(start, field, grid[i])).rho12); },
        o.threads);
    std::vector<double> closed(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) closed[i] = std::abs(rho12_closed(ap, bp, o.phi, o.nbar, grid[i]).value);

    const auto env_exact = peak_envelope(grid, exact);
    const auto env_closed = peak_envelope(grid, closed);
    double worst = 0.0, raw = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(env_exact[i] - env_closed[i]));
        raw = std::max(raw, std::abs(exact[i] - closed[i]));
    }
    return {5, "figure 3 reproduction", worst < 0.05, worst, 0.05,
            "peak envelopes, lower-state start, t' in [0, 10]; pointwise max difference " + fmt(raw)};
}

CriterionResult overlap_law(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    auto exact_sq = [&](double t) {
        return std::norm(inner(env_pointer_exact(field, t, PointerSign::minus), env_pointer_exact(field, t, PointerSign::plus)));
    };

    double worst = 0.0, worst_t = 0.0;
    for (double t : uniform_grid(2.0, 40)) {
        const double exact = exact_sq(t);
        const double rel = std::abs(env_overlap_approx(o.nbar, t).modulus_sq - exact) / exact;
        if (rel > worst) {
            worst = rel;
            worst_t = t;
        }
    }
    const double at_one = exact_sq(1.0);
    const double gaussian_err = std::abs(env_overlap_approx(o.nbar, 1.0).short_time_gaussian - at_one);
    const bool passed = worst < 1e-2 && gaussian_err < 5e-3;
    return {6, "overlap law", passed, worst, 1e-2,
            "worst relative error at t'=" + fmt(worst_t) + "; exact |overlap|^2 at t'=1 is " + fmt(at_one) +
                ", short-time Gaussian error " + fmt(gaussian_err) + " (threshold 5e-3)"};
}

CriterionResult entanglement_horizon(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const QubitState start = initial_pointer_states(o.phi).first;
    const std::vector<double> grid = uniform_grid(5.0, 500);
    const auto q = parallel_map(
        grid.size(), [&](std::size_t i) { return q_from_rho(reduce(evolve_product(start, field, grid[i]))); },
        o.threads);
    const double q_min = *std::min_element(q.begin(), q.end());

    const std::vector<double> nbars{25.0, 50.0, 100.0};
    const auto horizons = parallel_map(
        nbars.size(),
        [&](std::size_t i) {
            const double n = nbars[i];
            return validity_horizon(n, o.phi, uniform_grid(3.0 * n, static_cast<int>(300.0 * n)), 0.99);
        },
        o.threads);
    const LinearFit fit = linear_fit(nbars, horizons);
    const bool passed = q_min >= 0.99 && fit.slope > 0.0 && fit.r_squared > 0.9;

    std::ostringstream detail;
    detail << "min |q| on t' in [0, 5] = " << fmt(q_min) << "; horizons (nbar 25/50/100) = " << fmt(horizons[0])
           << '/' << fmt(horizons[1]) << '/' << fmt(horizons[2]) << "; slope " << fmt(fit.slope) << ", R^2 "
           << fmt(fit.r_squared) << " (needs slope > 0, R^2 > 0.9)";
    return {7, "entanglement horizon", passed, q_min, 0.99, detail.str()};
}

CriterionResult state_preparation(const Options& o)
{
    const SimConfig c = config_of(o);
    const FieldVector field = initial_field(c);
    const double t1 = std::numbers::pi * std::sqrt(o.nbar);
    double worst = 1.0;
    for (const QubitState& q : random_states(o.seed + 2, 10))
        worst = std::min(worst, purity(reduce(evolve_product(q, field, t1))));
    return {8, "state preparation", worst > 0.95, worst, 0.95,
            "min purity of 10 random starts at t' = pi sqrt(nbar) = " + fmt(t1)};
}

CriterionResult correction_factor_fidelity(const Options& o)
{
    const FieldVector field = coherent(o.nbar, o.phi, o.n_max);
    double worst = 0.0, worst_t = 0.0, worst_complex = 0.0;
    for (double t : uniform_grid(100.0, 1000)) {
        const cplx closed = correction_factor(o.nbar, t).value;
        const cplx direct = correction_factor_direct(field, t);
        const double err = std::abs(std::abs(closed) - std::abs(direct));
        worst_complex = std::max(worst_complex, std::abs(closed - direct));
        if (err > worst) {
            worst = err;
            worst_t = t;
        }
    }
    return {9, "correction-factor fidelity", worst < 1e-3, worst, 1e-3,
            "max modulus error on t' in [0, 100] at t'=" + fmt(worst_t) + "; max complex difference " +
                fmt(worst_complex)};
}

CriterionResult determinism(const Options& o)
{
    bool identical = true;
    std::string checked;
    for (const char* scenario : {"figure1", "figure2", "figure3"}) {
        const std::vector<std::string> args{"spinboson", scenario, "--nbar", fmt(o.nbar), "--phi", fmt(o.phi),
                                            "--threads", std::to_string(o.threads)};
        std::ostringstream sink;
        const auto spec = cli::parse(args, sink);
        const std::string first = cli::render_csv(*spec);
        const std::string second = cli::render_csv(*spec);
        identical = identical && first == second;
        checked += std::string(checked.empty() ? "" : ", ") + scenario + " (" + std::to_string(first.size()) + " bytes)";
    }
    return {10, "determinism", identical, identical ? 0.0 : 1.0, 0.0, "byte comparison of two renders: " + checked};
}

std::vector<CriterionResult> run_all(const Options& o)
{
    return {unitarity(o),
            two_path_equivalence(o),
            oracle_equivalence(o),
            figure2_reproduction(o),
            figure3_reproduction(o),
            overlap_law(o),
            entanglement_horizon(o),
            state_preparation(o),
            correction_factor_fidelity(o),
            determinism(o)};
}

std::string format_line(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": measured=" << fmt(r.measured)
       << " threshold=" << fmt(r.threshold) << "  " << r.detail;
    return os.str();
}

std::string to_json(const Options& o, const std::vector<CriterionResult>& results)
{
    nlohmann::json report;
    report["nbar"] = o.nbar;
    report["phi"] = o.phi;
    report["n_max"] = o.n_max;
    report["seed"] = o.seed;
    bool all = true;
    nlohmann::json criteria = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        criteria.push_back({{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"measured", r.measured},
                            {"threshold", r.threshold},
                            {"detail", r.detail}});
    }
    report["all_passed"] = all;
    report["criteria"] = criteria;
    return report.dump(2);
}

} // namespace spinboson::acceptance
