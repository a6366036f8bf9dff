#pragma once

#include <string_view>

namespace spinboson {

// Regime tag for asymptotic formulas valid when x << limit.
enum class Validity { inside, marginal, outside };

// inside: x <= 0.1 * limit, marginal: x <= limit, outside otherwise.
constexpr Validity classify(double x, double limit) noexcept
{
    if (x <= 0.1 * limit) return Validity::inside;
    if (x <= limit) return Validity::marginal;
    return Validity::outside;
}

constexpr std::string_view to_string(Validity v) noexcept
{
    switch (v) {
    case Validity::inside: return "inside";
    case Validity::marginal: return "marginal";
    case Validity::outside: return "outside";
    }
    return "outside";
}

template <class T>
struct Tagged {
    T value;
    Validity validity;
};

} // namespace spinboson
