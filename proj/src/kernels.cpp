#include "nmc/kernels.hpp"

#include <cassert>

namespace nmc::kernels {

namespace {

// std::complex multiplication carries inf/nan recovery branches that block
// vectorisation; the sums here work on the interleaved doubles directly.
inline const double* raw(std::span<const cplx> v) { return reinterpret_cast<const double*>(v.data()); }

} // namespace

cplx history_sum_serial(std::span<const cplx> kernel, std::span<const cplx> y, std::size_t m)
{
    assert(m >= 1 && m <= kernel.size() && m <= y.size());
    const double* k = raw(kernel);
    const double* s = raw(y);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 1; j < m; ++j) {
        const double kr = k[2 * (m - j)];
        const double ki = k[2 * (m - j) + 1];
        const double yr = s[2 * j];
        const double yi = s[2 * j + 1];
        re += kr * yr - ki * yi;
        im += kr * yi + ki * yr;
    }
    return {re, im};
}

cplx history_sum_openmp(std::span<const cplx> kernel, std::span<const cplx> y, std::size_t m)
{
    assert(m >= 1 && m <= kernel.size() && m <= y.size());
    const double* k = raw(kernel);
    const double* s = raw(y);
    double re = 0.0;
    double im = 0.0;
    const long long last = static_cast<long long>(m);
#pragma omp parallel for simd reduction(+ : re, im) schedule(static) if (m > parallel_threshold)
    for (long long j = 1; j < last; ++j) {
        const long long i = last - j;
        const double kr = k[2 * i];
        const double ki = k[2 * i + 1];
        const double yr = s[2 * j];
        const double yi = s[2 * j + 1];
        re += kr * yr - ki * yi;
        im += kr * yi + ki * yr;
    }
    return {re, im};
}

} // namespace nmc::kernels
