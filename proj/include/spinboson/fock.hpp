#pragma once

// Truncated Fock space of the single field mode, |0> .. |n_max>.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinboson {

using cplx = std::complex<double>;

// Amplitudes over |0> .. |n_max>. Tail mass is the probability that lives
// above n_max in the untruncated state; it is carried along, never
// renormalized away.
class FieldVector {
public:
    FieldVector() = default;
    explicit FieldVector(int n_max, double tail_mass = 0.0);
    FieldVector(std::vector<cplx> amps, double tail_mass = 0.0);

    int n_max() const noexcept { return static_cast<int>(amps_.size()) - 1; }
    std::size_t size() const noexcept { return amps_.size(); }
    double tail_mass() const noexcept { return tail_mass_; }

    cplx operator[](std::size_t n) const noexcept { return amps_[n]; }
    cplx& operator[](std::size_t n) noexcept { return amps_[n]; }

    std::span<const cplx> amps() const noexcept { return amps_; }
    std::span<cplx> amps() noexcept { return amps_; }

    double norm2() const;

    FieldVector& operator*=(cplx s);
    FieldVector& operator+=(const FieldVector& o);
    FieldVector& operator-=(const FieldVector& o);

private:
    std::vector<cplx> amps_;
    double tail_mass_ = 0.0;
};

FieldVector operator*(cplx s, FieldVector v);
FieldVector operator+(FieldVector a, const FieldVector& b);
FieldVector operator-(FieldVector a, const FieldVector& b);

// Physical and numerical parameters. Times are dimensionless, t' = g t.
struct SimConfig {
    double g = 1.0;
    double nbar = 50.0;
    double phi = 0.0;
    int n_max = 0;
    std::vector<double> t_prime_grid;

    // Throws DomainError on g <= 0, nbar < 0, n_max below the tail-mass
    // rule, or a grid that is not strictly increasing from t' >= 0.
    void validate() const;
};

// ceil(nbar + 10 sqrt(nbar) + 10), widened where needed so the coherent state
// clears the propagator boundary guard with a decade to spare.
int default_n_max(double nbar);
// Smallest cutoff allowed by SimConfig: nbar + 8 sqrt(nbar).
int minimum_n_max(double nbar);

// Uniform grid of steps+1 points on [0, t_max].
std::vector<double> uniform_grid(double t_max, int steps);

// Coherent-state coefficients c_n = e^{-nbar/2} nu^n / sqrt(n!), nu = sqrt(nbar) e^{-i phi}.
// Throws DomainError for nbar < 0 or n_max < 0, TruncationError when the
// Poisson tail above n_max exceeds kMaxTailMass.
FieldVector coherent(double nbar, double phi, int n_max);

// Poisson probability above n_max, summed directly.
double poisson_tail(double nbar, int n_max);

inline constexpr double kMaxTailMass = 1e-8;

// sum_n conj(u[n]) v[n]. Throws DomainError on mismatched n_max.
cplx inner(const FieldVector& u, const FieldVector& v);

} // namespace spinboson
