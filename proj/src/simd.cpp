#include "sfcnl/simd.hpp"

namespace sfcnl {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool compiled_with_avx2() {
#if defined(SFCNL_HAVE_AVX2)
    return true;
#else
    return false;
#endif
}

Isa resolve_isa(Isa requested) {
    switch (requested) {
        case Isa::automatic:
            return (compiled_with_avx2() && cpu_supports_avx2()) ? Isa::avx2 : Isa::scalar;
        case Isa::scalar:
            return Isa::scalar;
        case Isa::avx2:
            if (!compiled_with_avx2()) throw InputError("AVX2 support not compiled in");
            if (!cpu_supports_avx2()) throw InputError("CPU does not support AVX2");
            return Isa::avx2;
    }
    throw InputError("unknown ISA");
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::automatic: return "auto";
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace sfcnl
