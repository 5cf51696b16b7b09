#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops behind the tensor engine. Every kernel has a
// scalar reference implementation and (on x86-64) an AVX2 variant; the active
// set is chosen once at startup from CPUID and can be forced with the
// MGLC_KERNELS environment variable ("scalar" or "avx2"). The two variants
// are equivalence-tested against each other.
namespace mglc::kernels {

struct Ops {
    // out[i] = a[i] + b[i]
    void (*add)(double* out, const double* a, const double* b, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
    // out[i] = alpha * a[i]
    void (*scale)(double* out, double alpha, const double* a, std::size_t n);
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    // out[i] = max(a[i], 0)
    void (*relu)(double* out, const double* a, std::size_t n);
    // dx[i] += dy[i] * (x[i] > 0)
    void (*relu_backward)(double* dx, const double* dy, const double* x, std::size_t n);
    // Adam update with precomputed bias corrections bc1 = 1-b1^t, bc2 = 1-b2^t.
    void (*adam_update)(double* p, double* m, double* v, const double* g, std::size_t n,
                        double lr, double beta1, double beta2, double eps,
                        double bc1, double bc2);
    // Row-major C[rows_a x cols_b] += A[rows_a x cols_a] * B[cols_a x cols_b]
    void (*matmul_acc)(double* c, const double* a, const double* b,
                       std::size_t rows_a, std::size_t cols_a, std::size_t cols_b);
};

// Active kernel set (dispatch is resolved on first use).
const Ops& active();

// Specific variants, exposed for equivalence tests.
const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops(); // valid only when avx2_available()

// Name of the active variant ("scalar" or "avx2").
const std::string& active_name();

} // namespace mglc::kernels
