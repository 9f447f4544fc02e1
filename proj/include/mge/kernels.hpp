#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mge::kernels {

// Element-wise kernels behind the batched network evaluation. Each backend
// performs the identical per-element operation (multiply then add, never
// fused), so backends agree bit for bit and runs reproduce regardless of the
// machine they land on.
struct Ops {
    const char* name;
    void (*fill)(double* y, double value, std::size_t n);
    void (*axpy)(double* y, const double* x, double a, std::size_t n); // y[i] += a * x[i]
};

const Ops& scalar_ops();

// Backends usable on this machine, scalar first.
std::vector<const Ops*> available_backends();

// Runtime selection: best available backend, unless the MGE_KERNELS
// environment variable names one ("scalar", "avx2").
const Ops& active();

// sig(x) = 1/(1+exp(-x)) applied in place. One implementation for every
// backend: exp stays on libm for accuracy, and the surrounding axpy work is
// what dominates.
void sigmoid_inplace(double* y, std::size_t n);

} // namespace mge::kernels
