#include "spinboson/cli.hpp"

#include "spinboson/acceptance.hpp"
#include "spinboson/closedform.hpp"
#include "spinboson/diagnostics.hpp"
#include "spinboson/oracle.hpp"
#include "spinboson/parallel.hpp"
#include "spinboson/pointer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

namespace spinboson::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, Scenario> kScenarios = {
    {"figure1", Scenario::figure1}, {"figure2", Scenario::figure2},     {"figure3", Scenario::figure3},
    {"sweep", Scenario::sweep},     {"verify", Scenario::verify},       {"pointer-demo", Scenario::pointer_demo},
};

const std::map<std::string, Initial> kInitials = {
    {"upper", Initial::upper},
    {"lower", Initial::lower},
    {"plus-pointer", Initial::plus_pointer},
    {"minus-pointer", Initial::minus_pointer},
    {"custom", Initial::custom},
};

const std::vector<std::string> kSweepColumns = {
    "nbar", "phi", "t_prime", "W", "rho11", "re_rho12", "im_rho12",
    "abs_rho12_exact", "abs_rho12_closed", "q_abs", "purity",
};

template <class E>
std::string name_of(const std::map<std::string, E>& table, E value)
{
    for (const auto& [k, v] : table)
        if (v == value) return k;
    return "?";
}

Initial default_initial(Scenario s)
{
    switch (s) {
    case Scenario::figure2:
    case Scenario::pointer_demo: return Initial::plus_pointer;
    case Scenario::figure3: return Initial::lower;
    default: return Initial::upper;
    }
}

double default_tmax(Scenario s, double nbar)
{
    switch (s) {
    case Scenario::figure1: return 400.0;
    case Scenario::figure2: return 200.0;
    case Scenario::pointer_demo: return 4.0 * std::numbers::pi * std::sqrt(nbar);
    default: return 10.0;
    }
}

int default_steps(Scenario s)
{
    switch (s) {
    case Scenario::figure1: return 4000;
    case Scenario::figure2: return 2000;
    case Scenario::sweep: return 100;
    default: return 1000;
    }
}

// "re,im" or "re"
cplx parse_complex(const std::string& text, const char* flag)
{
    auto to_double = [&](std::string_view s) {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc{} || ptr != end)
            throw UsageError(std::string(flag) + " expects \"re,im\" or \"re\", got \"" + text + "\"");
        return v;
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {to_double(text), 0.0};
    return {to_double(std::string_view(text).substr(0, comma)), to_double(std::string_view(text).substr(comma + 1))};
}

std::string join(const std::vector<std::string>& parts, char sep = ',')
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string join_numbers(const std::vector<double>& xs, char sep)
{
    std::vector<std::string> parts;
    for (double x : xs) parts.push_back(format_number(x));
    return join(parts, sep);
}

SimConfig config_for(const RunSpec& spec, double nbar, double phi)
{
    SimConfig c = spec.config;
    c.nbar = nbar;
    c.phi = phi;
    if (!spec.nmax_given) c.n_max = default_n_max(nbar);
    c.validate();
    return c;
}

QubitState initial_for(const RunSpec& spec, double phi)
{
    const auto [plus, minus] = initial_pointer_states(phi);
    switch (spec.initial) {
    case Initial::upper: return QubitState::upper();
    case Initial::lower: return QubitState::lower();
    case Initial::plus_pointer: return plus;
    case Initial::minus_pointer: return minus;
    case Initial::custom: return QubitState::normalized(spec.alpha, spec.beta);
    }
    return QubitState::upper();
}

double q_or_nan(const DensityMatrix2& rho)
{
    try {
        return q_from_rho(rho);
    } catch (const UndefinedRatio&) {
        return kNaN;
    }
}

std::string params_line(const RunSpec& spec)
{
    std::ostringstream os;
    os << "# params scenario=" << name_of(kScenarios, spec.scenario)
       << " nbar=" << format_number(spec.config.nbar) << " phi=" << format_number(spec.config.phi)
       << " g=" << format_number(spec.config.g) << " nmax=" << spec.config.n_max
       << " tmax_prime=" << format_number(spec.tmax_prime) << " steps=" << spec.steps
       << " initial=" << name_of(kInitials, spec.initial);
    if (spec.initial == Initial::custom) {
        const QubitState q = initial_state(spec);
        os << " alpha=" << format_number(q.alpha.real()) << ',' << format_number(q.alpha.imag())
           << " beta=" << format_number(q.beta.real()) << ',' << format_number(q.beta.imag());
    }
    os << " oracle=" << (spec.oracle ? "true" : "false") << " rwa=" << (spec.rwa ? "true" : "false")
       << " omega=" << format_number(spec.omega) << " oracle_step=" << format_number(spec.oracle_step);
    if (spec.scenario == Scenario::sweep) {
        os << " sweep_nbar=" << join_numbers(spec.sweep_nbar, ';') << " sweep_phi=" << join_numbers(spec.sweep_phi, ';')
           << " columns=" << join(spec.columns, ';');
    }
    os << '\n';
    return os.str();
}

void append_row(std::string& out, const std::vector<double>& row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_number(row[i]);
    }
    out += '\n';
}

// Oracle states on the run grid, or empty when not requested.
std::vector<JointState> oracle_states(const RunSpec& spec, const QubitState& q, const FieldVector& field)
{
    if (!spec.oracle) return {};
    OracleConfig cfg;
    cfg.g = spec.config.g;
    cfg.omega = spec.omega * spec.config.g;
    cfg.delta0 = cfg.omega;
    cfg.rwa = spec.rwa;
    cfg.step_dt_prime = spec.oracle_step;
    return integrate(cfg, q, field, spec.config.t_prime_grid).states;
}

std::string render_figure(const RunSpec& spec)
{
    const SimConfig& c = spec.config;
    const QubitState q = initial_state(spec);
    const FieldVector field = initial_field(c);
    const auto [alpha_p, beta_p] = to_pointer_basis(q, c.phi);
    const std::vector<JointState> oracle = oracle_states(spec, q, field);
    const auto& grid = c.t_prime_grid;

    const bool inversion = spec.scenario == Scenario::figure1;
    std::string out = params_line(spec);
    if (inversion)
        out += spec.oracle ? "t_prime,W,W_oracle\n" : "t_prime,W\n";
    else
        out += spec.oracle ? "t_prime,abs_rho12_exact,abs_rho12_closed,abs_rho12_oracle\n"
                           : "t_prime,abs_rho12_exact,abs_rho12_closed\n";

    const auto rows = parallel_map(
        grid.size(),
        [&](std::size_t i) {
            const double t = grid[i];
            const DensityMatrix2 rho = reduce(evolve_product(q, field, t));
            std::vector<double> row{t};
            if (inversion) {
                row.push_back(2.0 * rho.rho11 - 1.0);
                if (!oracle.empty()) row.push_back(2.0 * reduce(oracle[i]).rho11 - 1.0);
            } else {
                row.push_back(std::abs(rho.rho12));
                row.push_back(std::abs(rho12_closed(alpha_p, beta_p, c.phi, c.nbar, t).value));
                if (!oracle.empty()) row.push_back(std::abs(reduce(oracle[i]).rho12));
            }
            return row;
        },
        spec.threads);
    for (const auto& row : rows) append_row(out, row);
    return out;
}

std::vector<double> sweep_row(const RunSpec& spec, double nbar, double phi, const QubitState& q,
                              const FieldVector& field, double t)
{
    const DensityMatrix2 rho = reduce(evolve_product(q, field, t));
    std::vector<double> row;
    for (const auto& col : spec.columns) {
        if (col == "nbar") row.push_back(nbar);
        else if (col == "phi") row.push_back(phi);
        else if (col == "t_prime") row.push_back(t);
        else if (col == "W") row.push_back(2.0 * rho.rho11 - 1.0);
        else if (col == "rho11") row.push_back(rho.rho11);
        else if (col == "re_rho12") row.push_back(rho.rho12.real());
        else if (col == "im_rho12") row.push_back(rho.rho12.imag());
        else if (col == "abs_rho12_exact") row.push_back(std::abs(rho.rho12));
        else if (col == "abs_rho12_closed") {
            const auto [ap, bp] = to_pointer_basis(q, phi);
            row.push_back(std::abs(rho12_closed(ap, bp, phi, nbar, t).value));
        }
        else if (col == "q_abs") row.push_back(q_or_nan(rho));
        else if (col == "purity") row.push_back(purity(rho));
    }
    return row;
}

std::string render_sweep(const RunSpec& spec)
{
    struct Point {
        double nbar, phi, t;
        std::size_t group;
    };
    struct Group {
        QubitState q;
        FieldVector field;
        double nbar, phi;
    };
    std::vector<Group> groups;
    std::vector<Point> points;
    for (double nbar : spec.sweep_nbar) {
        for (double phi : spec.sweep_phi) {
            const SimConfig c = config_for(spec, nbar, phi);
            groups.push_back({initial_for(spec, phi), initial_field(c), nbar, phi});
            for (double t : spec.config.t_prime_grid) points.push_back({nbar, phi, t, groups.size() - 1});
        }
    }

    std::string out = params_line(spec) + join(spec.columns) + '\n';
    const auto rows = parallel_map(
        points.size(),
        [&](std::size_t i) {
            const Point& p = points[i];
            const Group& g = groups[p.group];
            return sweep_row(spec, p.nbar, p.phi, g.q, g.field, p.t);
        },
        spec.threads);
    for (const auto& row : rows) append_row(out, row);
    return out;
}

std::string render_pointer_demo(const RunSpec& spec)
{
    const SimConfig& c = spec.config;
    const QubitState q = initial_state(spec);
    const FieldVector field = initial_field(c);
    const auto& grid = c.t_prime_grid;

    std::string out = params_line(spec);
    out += "t_prime,plus_re_a,plus_im_a,plus_re_b,plus_im_b,minus_re_a,minus_im_a,minus_re_b,minus_im_b,"
           "overlap_abs,q_abs\n";
    const auto rows = parallel_map(
        grid.size(),
        [&](std::size_t i) {
            const double t = grid[i];
            const QubitState p = pointer_state_at(c.phi, c.nbar, t, PointerSign::plus);
            const QubitState m = pointer_state_at(c.phi, c.nbar, t, PointerSign::minus);
            const DensityMatrix2 rho = reduce(evolve_product(q, field, t));
            return std::vector<double>{t,
                                       p.alpha.real(), p.alpha.imag(), p.beta.real(), p.beta.imag(),
                                       m.alpha.real(), m.alpha.imag(), m.beta.real(), m.beta.imag(),
                                       std::abs(overlap(p, m)), q_or_nan(rho)};
        },
        spec.threads);
    for (const auto& row : rows) append_row(out, row);
    return out;
}

std::string coincidence_path(const std::string& output)
{
    std::filesystem::path p(output);
    const std::string stem = p.stem().string();
    return (p.parent_path() / (stem + ".coincidences.csv")).string();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file " + path);
    f << text;
    if (!f) throw UsageError("failed writing " + path);
}

} // namespace

std::string format_number(double v)
{
    if (v == 0.0) v = 0.0;  // fold -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out)
{
    CLI::App app{"Resonant spin-boson simulator: figure series, sweeps, pointer states, verification",
                 "spinboson"};
    app.option_defaults()->always_capture_default();

    std::string scenario = "figure1";
    double nbar = 50.0, phi = std::numbers::pi / 6.0, g = 1.0, omega = 50.0, oracle_step = 1e-3;
    int nmax = 0, steps = 0;
    double tmax = 0.0;
    std::string initial, alpha = "1", beta = "0", output;
    bool rwa = true, oracle = false;
    std::vector<double> sweep_nbar, sweep_phi;
    std::vector<std::string> columns;
    unsigned threads = 0;

    app.add_option("scenario", scenario, "figure1 | figure2 | figure3 | sweep | verify | pointer-demo")
        ->check(CLI::IsMember({"figure1", "figure2", "figure3", "sweep", "verify", "pointer-demo"}))
        ->envname("SPINBOSON_SCENARIO");
    app.add_option("--nbar", nbar, "mean photon number")->envname("SPINBOSON_NBAR");
    app.add_option("--phi", phi, "coherent-state phase (rad)")->envname("SPINBOSON_PHI");
    app.add_option("--g", g, "coupling; t' = g t")->envname("SPINBOSON_G");
    app.add_option("--nmax", nmax, "Fock cutoff (default: at least ceil(nbar + 10 sqrt(nbar) + 10))")
        ->envname("SPINBOSON_NMAX");
    app.add_option("--tmax-prime", tmax, "end of the t' grid (scenario default if 0)")
        ->envname("SPINBOSON_TMAX_PRIME");
    app.add_option("--steps", steps, "grid intervals (scenario default if 0)")->envname("SPINBOSON_STEPS");
    app.add_option("--initial", initial, "upper | lower | plus-pointer | minus-pointer | custom")
        ->check(CLI::IsMember({"upper", "lower", "plus-pointer", "minus-pointer", "custom"}))
        ->envname("SPINBOSON_INITIAL");
    app.add_option("--alpha", alpha, "custom |a> amplitude, \"re,im\"")->envname("SPINBOSON_ALPHA");
    app.add_option("--beta", beta, "custom |b> amplitude, \"re,im\"")->envname("SPINBOSON_BETA");
    app.add_flag("--rwa,!--no-rwa", rwa, "oracle generator: rotating-wave or full")->envname("SPINBOSON_RWA");
    app.add_flag("--oracle", oracle, "append an ODE-oracle column to figure scenarios")
        ->envname("SPINBOSON_ORACLE");
    app.add_option("--omega", omega, "field frequency in units of g (oracle)")->envname("SPINBOSON_OMEGA");
    app.add_option("--oracle-step", oracle_step, "oracle RK4 base step in t'")->envname("SPINBOSON_ORACLE_STEP");
    app.add_option("--sweep-nbar", sweep_nbar, "sweep: nbar values")->delimiter(',')->envname("SPINBOSON_SWEEP_NBAR");
    app.add_option("--sweep-phi", sweep_phi, "sweep: phi values")->delimiter(',')->envname("SPINBOSON_SWEEP_PHI");
    app.add_option("--columns", columns, "sweep: output columns")
        ->delimiter(',')
        ->check(CLI::IsMember(kSweepColumns))
        ->envname("SPINBOSON_COLUMNS");
    app.add_option("--threads", threads, "worker threads (0: all cores)")->envname("SPINBOSON_THREADS");
    app.add_option("-o,--output", output, "output path (stdout if omitted)")->envname("SPINBOSON_OUTPUT");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunSpec spec;
    spec.scenario = kScenarios.at(scenario);
    spec.initial = initial.empty() ? default_initial(spec.scenario) : kInitials.at(initial);
    if (spec.initial == Initial::custom) {
        spec.alpha = parse_complex(alpha, "--alpha");
        spec.beta = parse_complex(beta, "--beta");
        if (std::norm(spec.alpha) + std::norm(spec.beta) == 0.0) throw UsageError("custom state must be nonzero");
        const QubitState q = QubitState::normalized(spec.alpha, spec.beta);
        spec.alpha = q.alpha;
        spec.beta = q.beta;
    } else if (app.count("--alpha") || app.count("--beta")) {
        throw UsageError("--alpha/--beta require --initial custom");
    }

    if (!(nbar > 0.0)) throw UsageError("--nbar must be > 0");
    if (!(g > 0.0)) throw UsageError("--g must be > 0");
    if (steps < 0) throw UsageError("--steps must be >= 1");
    if (tmax < 0.0) throw UsageError("--tmax-prime must be > 0");
    if (!(omega > 0.0) || !(oracle_step > 0.0)) throw UsageError("--omega and --oracle-step must be > 0");
    if (oracle && spec.scenario != Scenario::figure1 && spec.scenario != Scenario::figure2 &&
        spec.scenario != Scenario::figure3)
        throw UsageError("--oracle applies to figure scenarios only");

    spec.config.g = g;
    spec.config.nbar = nbar;
    spec.config.phi = phi;
    spec.nmax_given = nmax > 0;
    spec.config.n_max = spec.nmax_given ? nmax : default_n_max(nbar);
    spec.tmax_prime = tmax > 0.0 ? tmax : default_tmax(spec.scenario, nbar);
    spec.steps = steps > 0 ? steps : default_steps(spec.scenario);
    spec.config.t_prime_grid = uniform_grid(spec.tmax_prime, spec.steps);
    spec.output_path = output;
    spec.oracle = oracle;
    spec.rwa = rwa;
    spec.omega = omega;
    spec.oracle_step = oracle_step;
    spec.threads = threads;

    if (spec.scenario == Scenario::sweep) {
        spec.sweep_nbar = sweep_nbar.empty() ? std::vector<double>{nbar} : sweep_nbar;
        spec.sweep_phi = sweep_phi.empty() ? std::vector<double>{phi} : sweep_phi;
        spec.columns = columns.empty() ? std::vector<std::string>{"nbar", "phi", "t_prime", "W", "abs_rho12_exact"}
                                       : columns;
        for (double n : spec.sweep_nbar)
            if (!(n > 0.0)) throw UsageError("--sweep-nbar values must be > 0");
    } else if (!sweep_nbar.empty() || !sweep_phi.empty() || !columns.empty()) {
        throw UsageError("--sweep-nbar, --sweep-phi and --columns apply to sweep only");
    }

    try {
        spec.config.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return spec;
}

QubitState initial_state(const RunSpec& spec) { return initial_for(spec, spec.config.phi); }

std::string render_csv(const RunSpec& spec)
{
    switch (spec.scenario) {
    case Scenario::figure1:
    case Scenario::figure2:
    case Scenario::figure3: return render_figure(spec);
    case Scenario::sweep: return render_sweep(spec);
    case Scenario::pointer_demo: return render_pointer_demo(spec);
    case Scenario::verify: break;
    }
    throw UsageError("verify produces a report, not a CSV");
}

std::string render_coincidences(const RunSpec& spec)
{
    const SimConfig& c = spec.config;
    const int k_max = static_cast<int>(std::ceil(spec.tmax_prime / (std::numbers::pi * std::sqrt(c.nbar)))) + 2;
    std::string out = params_line(spec);
    out += "index,t_prime,kind,re_alpha,im_alpha,re_beta,im_beta\n";
    int index = 0;
    for (const Coincidence& co : coincidence_times(c.nbar, c.phi, k_max)) {
        if (co.t_prime > spec.tmax_prime) break;
        out += std::to_string(++index) + ',' + format_number(co.t_prime) + ',' +
               (co.kind == CoincidenceKind::t1 ? "t1" : "t2");
        for (double v : {co.state.alpha.real(), co.state.alpha.imag(), co.state.beta.real(), co.state.beta.imag()})
            out += ',' + format_number(v);
        out += '\n';
    }
    return out;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err)
{
    if (spec.scenario == Scenario::verify) {
        acceptance::Options opts;
        opts.nbar = spec.config.nbar;
        opts.phi = spec.config.phi;
        opts.n_max = spec.nmax_given ? spec.config.n_max : std::max(150, default_n_max(spec.config.nbar));
        opts.threads = spec.threads;
        const auto results = acceptance::run_all(opts);
        bool all = true;
        for (const auto& r : results) {
            err << acceptance::format_line(r) << '\n';
            all = all && r.passed;
        }
        const std::string report = acceptance::to_json(opts, results);
        if (spec.output_path.empty())
            out << report << '\n';
        else
            write_file(spec.output_path, report + '\n');
        return all ? kExitOk : kExitVerifyFailed;
    }

    const std::string csv = render_csv(spec);
    if (spec.output_path.empty()) {
        out << csv;
        if (spec.scenario == Scenario::pointer_demo) out << '\n' << render_coincidences(spec);
    } else {
        write_file(spec.output_path, csv);
        if (spec.scenario == Scenario::pointer_demo)
            write_file(coincidence_path(spec.output_path), render_coincidences(spec));
    }
    return kExitOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        const auto spec = parse(args, out);
        if (!spec) return kExitOk;
        return run(*spec, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun with --help for options\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalGuard& e) {
        err << "numerical guard: " << e.what() << '\n';
        return kExitGuard;
    }
}

} // namespace spinboson::cli
