#include "spinboson/errors.hpp"
#include "spinboson/kernels.hpp"

#include <cstdlib>
#include <string>

namespace spinboson::kernels {

bool avx2_available() noexcept
{
#if defined(SPINBOSON_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& table(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return scalar_table();
    case Isa::avx2:
#if defined(SPINBOSON_HAVE_AVX2_KERNELS)
        if (avx2_available()) return detail::avx2_table();
#endif
        throw DomainError("AVX2 kernels not available on this build or CPU");
    }
    throw DomainError("unknown ISA");
}

namespace {

const KernelTable& resolve() noexcept
{
    if (const char* env = std::getenv("SPINBOSON_ISA"); env && std::string(env) == "scalar")
        return scalar_table();
#if defined(SPINBOSON_HAVE_AVX2_KERNELS)
    if (avx2_available()) return detail::avx2_table();
#endif
    return scalar_table();
}

} // namespace

const KernelTable& active() noexcept
{
    static const KernelTable& t = resolve();
    return t;
}

std::string_view to_string(Isa isa) noexcept
{
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

} // namespace spinboson::kernels
