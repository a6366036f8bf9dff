#include "spinboson/fock.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/kernels.hpp"

#include <cmath>
#include <string>

namespace spinboson {

FieldVector::FieldVector(int n_max, double tail_mass)
    : amps_(static_cast<std::size_t>(n_max < 0 ? 0 : n_max + 1)), tail_mass_(tail_mass)
{
    if (n_max < 0) throw DomainError("n_max must be >= 0");
}

FieldVector::FieldVector(std::vector<cplx> amps, double tail_mass)
    : amps_(std::move(amps)), tail_mass_(tail_mass)
{
    if (amps_.empty()) throw DomainError("FieldVector needs at least |0>");
}

double FieldVector::norm2() const { return kernels::norm2(amps_); }

FieldVector& FieldVector::operator*=(cplx s)
{
    for (auto& a : amps_) a *= s;
    return *this;
}

FieldVector& FieldVector::operator+=(const FieldVector& o)
{
    if (o.size() != size()) throw DomainError("FieldVector truncation mismatch");
    kernels::axpy(1.0, o.amps(), amps_);
    return *this;
}

FieldVector& FieldVector::operator-=(const FieldVector& o)
{
    if (o.size() != size()) throw DomainError("FieldVector truncation mismatch");
    kernels::axpy(-1.0, o.amps(), amps_);
    return *this;
}

FieldVector operator*(cplx s, FieldVector v) { return v *= s; }
FieldVector operator+(FieldVector a, const FieldVector& b) { return a += b; }
FieldVector operator-(FieldVector a, const FieldVector& b) { return a -= b; }

namespace {
double log_poisson(double nbar, int n);
} // namespace

int default_n_max(double nbar)
{
    int n_max = static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 10.0));
    if (!(nbar > 0.0)) return n_max;
    // Widen until the amplitude 3 levels below the cutoff is a decade under
    // the propagator's boundary guard (1e-10 of the peak amplitude).
    const double log_peak = log_poisson(nbar, static_cast<int>(std::floor(nbar)));
    const double log_limit = 2.0 * std::log(1e-11);
    while (log_poisson(nbar, n_max - 3) - log_peak > log_limit) ++n_max;
    return n_max;
}

int minimum_n_max(double nbar)
{
    return static_cast<int>(std::ceil(nbar + 8.0 * std::sqrt(nbar)));
}

void SimConfig::validate() const
{
    if (!(g > 0.0)) throw DomainError("g must be > 0");
    if (!(nbar >= 0.0)) throw DomainError("nbar must be >= 0");
    if (n_max < minimum_n_max(nbar))
        throw DomainError("n_max " + std::to_string(n_max) + " below nbar + 8 sqrt(nbar) = " +
                          std::to_string(minimum_n_max(nbar)));
    for (std::size_t i = 0; i < t_prime_grid.size(); ++i) {
        if (!(t_prime_grid[i] >= 0.0)) throw DomainError("t' grid must be >= 0");
        if (i > 0 && !(t_prime_grid[i] > t_prime_grid[i - 1]))
            throw DomainError("t' grid must be strictly increasing");
    }
}

std::vector<double> uniform_grid(double t_max, int steps)
{
    if (steps < 1 || !(t_max > 0.0)) throw DomainError("grid needs steps >= 1 and t_max > 0");
    std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / steps;
    return grid;
}

namespace {

// log of the Poisson weight e^{-nbar} nbar^n / n!
double log_poisson(double nbar, int n)
{
    const double n_log = n == 0 ? 0.0 : n * std::log(nbar);
    return n_log - nbar - std::lgamma(n + 1.0);
}

} // namespace

double poisson_tail(double nbar, int n_max)
{
    if (nbar == 0.0) return 0.0;
    // Terms beyond the mode decay geometrically once n > nbar; stop when negligible.
    double tail = 0.0;
    for (int n = n_max + 1;; ++n) {
        const double w = std::exp(log_poisson(nbar, n));
        tail += w;
        if (n > nbar && w < 1e-18 * (tail > 0 ? tail : 1.0)) break;
        if (n > n_max + 100000) break;
    }
    return tail;
}

FieldVector coherent(double nbar, double phi, int n_max)
{
    if (!(nbar >= 0.0)) throw DomainError("nbar must be >= 0");
    if (n_max < 0) throw DomainError("n_max must be >= 0");

    const double tail = poisson_tail(nbar, n_max);
    if (tail > kMaxTailMass)
        throw TruncationError("coherent state tail mass " + std::to_string(tail) +
                              " above n_max = " + std::to_string(n_max));

    std::vector<cplx> amps(static_cast<std::size_t>(n_max) + 1);
    if (nbar == 0.0) {
        amps[0] = 1.0;
        return FieldVector(std::move(amps), 0.0);
    }
    // Long double keeps the log-domain cancellation (n log nbar - nbar - log n!) from
    // costing ~1e-14 relative error near the Poisson peak.
    const long double log_nbar = std::log(static_cast<long double>(nbar));
    for (int n = 0; n <= n_max; ++n) {
        const long double log_w = (n == 0 ? 0.0L : n * log_nbar) - nbar - std::lgamma(n + 1.0L);
        const double mag = static_cast<double>(std::exp(0.5L * log_w));
        amps[static_cast<std::size_t>(n)] = std::polar(mag, -n * phi);
    }
    return FieldVector(std::move(amps), tail);
}

cplx inner(const FieldVector& u, const FieldVector& v)
{
    if (u.size() != v.size()) throw DomainError("inner: mismatched truncation");
    // Self inner product is real by construction; avoid a rounding-order imaginary residue.
    if (&u == &v) return cplx(u.norm2(), 0.0);
    return kernels::dot(u.amps(), v.amps());
}

} // namespace spinboson
