#include "spinboson/propagator.hpp"

#include "spinboson/errors.hpp"
#include "spinboson/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinboson {

namespace {
constexpr cplx kI{0.0, 1.0};
constexpr int kBoundaryLayer = 3;
constexpr double kBoundaryRatio = 1e-10;
} // namespace

BandCoeffs band_coeffs(int n, double t_prime)
{
    if (n < 0) throw DomainError("band_coeffs: n must be >= 0");
    const double c0 = std::cos(t_prime * std::sqrt(static_cast<double>(n)));
    const double c1 = std::cos(t_prime * std::sqrt(n + 1.0));
    const double s0 = std::sin(t_prime * std::sqrt(static_cast<double>(n)));
    const double s1 = std::sin(t_prime * std::sqrt(n + 1.0));
    return {-0.5 * kI * s1, 0.5 * (c0 + c1), 0.5 * (c0 - c1), -0.5 * kI * s0};
}

BlockCoeffs block_coeffs(Block which, const BandCoeffs& f) noexcept
{
    switch (which) {
    case Block::E1: return {f.f1, f.f2, f.f1p};
    case Block::E2: return {-f.f1, f.f3, f.f1p};
    case Block::E3: return {f.f1, f.f3, -f.f1p};
    case Block::E4: return {-f.f1, f.f2, -f.f1p};
    }
    return {};
}

Band combined_band(const std::array<cplx, 4>& w, int n_max, double t_prime)
{
    if (n_max < 0) throw DomainError("combined_band: n_max must be >= 0");
    const auto size = static_cast<std::size_t>(n_max) + 1;
    Band band{std::vector<cplx>(size), std::vector<cplx>(size), std::vector<cplx>(size), {}};

    // Source |n> feeds out[n+1] (raise), out[n] (keep), out[n-1] (lower).
    for (int n = 0; n <= n_max; ++n) {
        const BandCoeffs f = band_coeffs(n, t_prime);
        cplx raise = 0.0, keep = 0.0, lower = 0.0;
        for (int i = 0; i < 4; ++i) {
            if (w[static_cast<std::size_t>(i)] == cplx{}) continue;
            const BlockCoeffs b = block_coeffs(static_cast<Block>(i), f);
            raise += w[static_cast<std::size_t>(i)] * b.raise;
            keep += w[static_cast<std::size_t>(i)] * b.keep;
            lower += w[static_cast<std::size_t>(i)] * b.lower;
        }
        const auto un = static_cast<std::size_t>(n);
        band.diag[un] = keep;
        if (n < n_max)
            band.sub[un + 1] = raise;
        else
            band.overflow = raise;
        if (n > 0) band.sup[un - 1] = lower;
    }
    return band;
}

BlockResult apply_band_unchecked(const Band& band, const FieldVector& v)
{
    if (band.diag.size() != v.size()) throw DomainError("band/vector truncation mismatch");
    FieldVector out(v.n_max(), v.tail_mass());
    kernels::tridiag(band.sub, band.diag, band.sup, v.amps(), out.amps());
    return {std::move(out), std::norm(band.overflow * v[v.size() - 1])};
}

void check_boundary(const FieldVector& v)
{
    double peak = 0.0;
    for (auto a : v.amps()) peak = std::max(peak, std::abs(a));
    const std::size_t first = v.size() > kBoundaryLayer ? v.size() - kBoundaryLayer : 0;
    for (std::size_t n = first; n < v.size(); ++n) {
        if (std::abs(v[n]) > kBoundaryRatio * peak)
            throw TruncationError("amplitude at |" + std::to_string(n) + "> is within " +
                                  std::to_string(kBoundaryLayer) + " levels of n_max = " +
                                  std::to_string(v.n_max()) + "; increase n_max");
    }
}

BlockResult apply_block(Block which, const FieldVector& v, double t_prime)
{
    check_boundary(v);
    std::array<cplx, 4> w{};
    w[static_cast<std::size_t>(which)] = 1.0;
    return apply_band_unchecked(combined_band(w, v.n_max(), t_prime), v);
}

double unitarity_defect(double t_prime, int n_max, int interior_margin)
{
    if (interior_margin < 0) throw DomainError("interior_margin must be >= 0");
    const int top = n_max - interior_margin;
    if (top < 0) return 0.0;

    // Columns of U for |a,n> are (E1|n>, E3|n>), for |b,n> are (E2|n>, E4|n>).
    // The |n_max+1> component is dropped, so truncation shows up as norm loss.
    const Band e1 = combined_band({1.0, 0.0, 0.0, 0.0}, n_max, t_prime);
    const Band e2 = combined_band({0.0, 1.0, 0.0, 0.0}, n_max, t_prime);
    const Band e3 = combined_band({0.0, 0.0, 1.0, 0.0}, n_max, t_prime);
    const Band e4 = combined_band({0.0, 0.0, 0.0, 1.0}, n_max, t_prime);

    struct Column {
        FieldVector upper;
        FieldVector lower;
    };
    auto column = [&](const Band& top_band, const Band& bottom_band, int n) {
        FieldVector basis(n_max);
        basis[static_cast<std::size_t>(n)] = 1.0;
        return Column{apply_band_unchecked(top_band, basis).vec, apply_band_unchecked(bottom_band, basis).vec};
    };
    auto overlap = [](const Column& x, const Column& y) {
        return inner(x.upper, y.upper) + inner(x.lower, y.lower);
    };

    // Columns from levels more than two apart share no Fock component.
    double defect = 0.0;
    std::vector<Column> older, prev;
    for (int n = 0; n <= top; ++n) {
        std::vector<Column> cur;
        cur.push_back(column(e1, e3, n));
        cur.push_back(column(e2, e4, n));
        for (std::size_t i = 0; i < cur.size(); ++i) {
            defect = std::max(defect, std::abs(overlap(cur[i], cur[i]).real() - 1.0));
            for (std::size_t j = i + 1; j < cur.size(); ++j)
                defect = std::max(defect, std::abs(overlap(cur[i], cur[j])));
            for (const auto& p : prev) defect = std::max(defect, std::abs(overlap(p, cur[i])));
            for (const auto& p : older) defect = std::max(defect, std::abs(overlap(p, cur[i])));
        }
        older = std::move(prev);
        prev = std::move(cur);
    }
    return defect;
}

} // namespace spinboson
