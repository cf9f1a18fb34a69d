#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version that
// the tests compare against and the benchmark target times side by side.

#include <complex>
#include <cstddef>
#include <span>

namespace nmc::kernels {

using cplx = std::complex<double>;

enum class Backend { serial, openmp };

/// Interior part of the discrete memory convolution at target index m >= 1:
///   sum_{j=1}^{m-1} kernel[m-j] * y[j].
/// Both endpoints are left to the caller (the j = m term is evaluated for
/// trial values during the corrector step).
cplx history_sum_serial(std::span<const cplx> kernel, std::span<const cplx> y, std::size_t m);
cplx history_sum_openmp(std::span<const cplx> kernel, std::span<const cplx> y, std::size_t m);

inline cplx history_sum(Backend b, std::span<const cplx> kernel, std::span<const cplx> y, std::size_t m)
{
    return b == Backend::openmp ? history_sum_openmp(kernel, y, m) : history_sum_serial(kernel, y, m);
}

/// Below this length the OpenMP version runs serially.
inline constexpr std::size_t parallel_threshold = 8192;

} // namespace nmc::kernels
