#include <cstdlib>
#include <string>

#include "qes/kernels.hpp"

namespace qes::kernels {

namespace {

constexpr KernelTable kScalar{scalar::dot, scalar::axpy, scalar::rank2, scalar::rotate};
constexpr KernelTable kAvx2{avx2::dot, avx2::axpy, avx2::rank2, avx2::rotate};
constexpr KernelTable kNeon{neon::dot, neon::axpy, neon::rank2, neon::rotate};

Isa detect() {
    if (const char* env = std::getenv("QES_KERNELS")) {
        if (std::string(env) == "scalar") return Isa::Scalar;
    }
    if (avx2::available()) return Isa::Avx2;
    if (neon::available()) return Isa::Neon;
    return Isa::Scalar;
}

}  // namespace

const KernelTable& table(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return avx2::available() ? kAvx2 : kScalar;
        case Isa::Neon: return neon::available() ? kNeon : kScalar;
        case Isa::Scalar: break;
    }
    return kScalar;
}

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

const KernelTable& active() {
    static const KernelTable& t = table(active_isa());
    return t;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
        case Isa::Scalar: break;
    }
    return "scalar";
}

}  // namespace qes::kernels
