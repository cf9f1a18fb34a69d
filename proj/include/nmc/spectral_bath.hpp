#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nmc {

using cplx = std::complex<double>;

/// Bath spectral density J(w) = eta * w * (w/wc)^(n-1) * exp(-w/wc).
///
/// Frequencies are measured in units of the cavity frequency. The exponent is
/// continuous; the named presets cover the three standard bath classes.
struct SpectralDensity {
    double exponent = 1.0; ///< n > 0
    double coupling = 0.0; ///< eta >= 0
    double cutoff = 1.0;   ///< wc > 0

    static SpectralDensity ohmic(double eta, double wc) { return {1.0, eta, wc}; }
    static SpectralDensity sub_ohmic(double eta, double wc) { return {0.5, eta, wc}; }
    static SpectralDensity super_ohmic(double eta, double wc) { return {3.0, eta, wc}; }

    /// Throws DomainError when any field is out of range.
    void validate() const;

    /// mu(0) = eta * wc^2 * Gamma(n+1).
    double kernel_at_zero() const;
};

double evaluate_density(const SpectralDensity& sd, double omega);

/// Closed form of mu(tau) = int_0^inf J(w) exp(-i w tau) dw. Negative tau is
/// handled through mu(-tau) = conj(mu(tau)).
cplx kernel_closed(const SpectralDensity& sd, double tau);

struct QuadratureResult {
    cplx value;
    double error_estimate = 0.0;
};

/// Independent evaluation of mu(tau) by adaptive Gauss-Kronrod quadrature.
/// Throws QuadratureError if the achieved error exceeds tol * mu(0).
QuadratureResult kernel_quadrature(const SpectralDensity& sd, double tau, double tol);

/// Samples mu(k*dt), k = 0..size-1, on a uniform grid.
class KernelTable {
public:
    KernelTable(double dt, std::vector<cplx> values) : dt_(dt), values_(std::move(values)) {}

    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<cplx>& values() const noexcept { return values_; }
    const cplx& operator[](std::size_t k) const { return values_[k]; }

private:
    double dt_;
    std::vector<cplx> values_;
};

/// Upper bound on kernel-table length accepted by build_kernel_table.
inline constexpr std::size_t max_table_size = std::size_t{1} << 27;

KernelTable build_kernel_table(const SpectralDensity& sd, double dt, std::size_t size);

/// Product-trapezoid weights for the rotated kernel K(x) = mu(x) e^{i phase_rate x}.
///
/// The unknown is interpolated linearly between grid points and K is
/// integrated exactly against each hat function, so
///   int_0^{t_m} K(t_m - tau) y(tau) dtau
///     = interior[0] y_m + sum_{j=1}^{m-1} interior[m-j] y_j + start[m-1] y_0.
/// Cell integrals use 8-point Gauss-Legendre; a cell spans dt * wc << 1 of the
/// kernel's own scale, so the rule is exact to rounding.
struct ProductWeights {
    double dt = 0.0;
    double phase_rate = 0.0;
    std::vector<cplx> interior;
    std::vector<cplx> start;

    std::size_t size() const noexcept { return interior.size(); }
};

ProductWeights build_product_weights(const SpectralDensity& sd, double dt, std::size_t size, double phase_rate);

} // namespace nmc
