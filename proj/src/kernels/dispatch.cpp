#include "thinlayer/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace thinlayer::kernels {

namespace {

Isa detect() noexcept {
    if (const char* env = std::getenv("THINLAYER_JKR_ISA")) {
        if (std::string_view(env) == "scalar") return Isa::Scalar;
    }
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("kernels: span length mismatch");
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
    if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
    return isa;
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
    require_same_size(w.size(), f.size());
    if (active_isa() == Isa::Avx2) return avx2::weighted_sum(w.data(), f.data(), w.size());
    return scalar::weighted_sum(w.data(), f.data(), w.size());
}

void paraboloid_pressure(std::span<const double> x, std::span<const double> y,
                         std::span<double> out, double k, double delta0, double cx,
                         double cy) {
    require_same_size(x.size(), y.size());
    require_same_size(x.size(), out.size());
    if (active_isa() == Isa::Avx2) {
        avx2::paraboloid_pressure(x.data(), y.data(), out.data(), x.size(), k, delta0, cx, cy);
    } else {
        scalar::paraboloid_pressure(x.data(), y.data(), out.data(), x.size(), k, delta0, cx,
                                    cy);
    }
}

void parabolic_radial_pressure(std::span<const double> r, std::span<double> out, double m,
                               double c, double a, double delta0) {
    require_same_size(r.size(), out.size());
    if (active_isa() == Isa::Avx2) {
        avx2::parabolic_radial_pressure(r.data(), out.data(), r.size(), m, c, a, delta0);
    } else {
        scalar::parabolic_radial_pressure(r.data(), out.data(), r.size(), m, c, a, delta0);
    }
}

}  // namespace thinlayer::kernels
