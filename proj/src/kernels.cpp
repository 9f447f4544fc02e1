#include "mge/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace mge::kernels {

namespace {

void fill_scalar(double* y, double value, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = value;
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

const Ops scalar{"scalar", fill_scalar, axpy_scalar};

} // namespace

const Ops& scalar_ops() { return scalar; }

#if defined(__x86_64__) || defined(_M_X64)
const Ops* avx2_ops(); // kernels_avx2.cpp; null when the CPU lacks AVX2
#else
static const Ops* avx2_ops() { return nullptr; }
#endif

std::vector<const Ops*> available_backends() {
    std::vector<const Ops*> list{&scalar};
    if (const Ops* avx2 = avx2_ops()) list.push_back(avx2);
    return list;
}

const Ops& active() {
    static const Ops* selected = [] {
        const auto backends = available_backends();
        if (const char* forced = std::getenv("MGE_KERNELS")) {
            for (const Ops* ops : backends)
                if (std::strcmp(ops->name, forced) == 0) return ops;
        }
        return backends.back();
    }();
    return *selected;
}

void sigmoid_inplace(double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 1.0 / (1.0 + std::exp(-y[i]));
}

} // namespace mge::kernels
