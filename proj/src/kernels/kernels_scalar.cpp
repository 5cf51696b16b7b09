#include "mglc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace mglc::kernels {
namespace {

void add_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* out, double alpha, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * a[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
}

void relu_scalar(double* out, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
}

void relu_backward_scalar(double* dx, const double* dy, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > 0.0) dx[i] += dy[i];
}

void adam_update_scalar(double* p, double* m, double* v, const double* g, std::size_t n,
                        double lr, double beta1, double beta2, double eps,
                        double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        double mhat = m[i] / bc1;
        double vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

// C += A*B, row-major. The inner loop is an axpy over a row of B, which keeps
// the access pattern contiguous for both variants.
void matmul_acc_scalar(double* c, const double* a, const double* b,
                       std::size_t rows_a, std::size_t cols_a, std::size_t cols_b) {
    for (std::size_t i = 0; i < rows_a; ++i) {
        double* crow = c + i * cols_b;
        for (std::size_t l = 0; l < cols_a; ++l) {
            double aval = a[i * cols_a + l];
            if (aval == 0.0) continue;
            const double* brow = b + l * cols_b;
            for (std::size_t j = 0; j < cols_b; ++j) crow[j] += aval * brow[j];
        }
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        add_scalar,  mul_scalar,  axpy_scalar,          scale_scalar,
        dot_scalar,  sum_scalar,  relu_scalar,          relu_backward_scalar,
        adam_update_scalar,       matmul_acc_scalar,
    };
    return ops;
}

} // namespace mglc::kernels
