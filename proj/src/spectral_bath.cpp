#include "nmc/spectral_bath.hpp"

#include "nmc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nmc {

void SpectralDensity::validate() const
{
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw DomainError("spectral density: exponent n must be > 0, got " + std::to_string(exponent));
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw DomainError("spectral density: coupling eta must be >= 0, got " + std::to_string(coupling));
    if (!(cutoff > 0.0) || !std::isfinite(cutoff))
        throw DomainError("spectral density: cutoff omega_c must be > 0, got " + std::to_string(cutoff));
}

double SpectralDensity::kernel_at_zero() const
{
    return coupling * cutoff * cutoff * std::tgamma(exponent + 1.0);
}

double evaluate_density(const SpectralDensity& sd, double omega)
{
    if (!(omega >= 0.0))
        throw DomainError("evaluate_density: frequency must be >= 0, got " + std::to_string(omega));
    if (omega == 0.0)
        return 0.0;
    const double x = omega / sd.cutoff;
    return sd.coupling * omega * std::pow(x, sd.exponent - 1.0) * std::exp(-x);
}

cplx kernel_closed(const SpectralDensity& sd, double tau)
{
    if (tau < 0.0)
        return std::conj(kernel_closed(sd, -tau));
    const cplx base(1.0, sd.cutoff * tau);
    return sd.kernel_at_zero() * std::pow(base, -(sd.exponent + 1.0));
}

namespace {

using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

// Integrand after w = wc * x: x^n exp(-x) exp(-i wc tau x). The prefactor
// eta * wc^2 is applied by the caller.
struct Panel {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;
};

// One Gauss-Kronrod pass per panel, bisected until the panel's error estimate fits its
// share of the absolute budget (error per unit length) or reaches the rounding floor set
// by the size of the oscillation phase.
template <class F>
Panel integrate_panel(F&& integrand, double a, double b, double density, double phase_rate, unsigned depth = 0)
{
    constexpr unsigned max_depth = 12;
    Panel p;
    double err_re = 0.0;
    double err_im = 0.0;
    double l1_re = 0.0;
    double l1_im = 0.0;
    p.re = GaussKronrod::integrate([&](double x) { return integrand(x).real(); }, a, b, 0, 0.0, &err_re, &l1_re);
    p.im = GaussKronrod::integrate([&](double x) { return integrand(x).imag(); }, a, b, 0, 0.0, &err_im, &l1_im);
    p.err = std::hypot(err_re, err_im);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + phase_rate * b) * (l1_re + l1_im);
    if (p.err <= density * (b - a) || p.err <= noise || depth >= max_depth)
        return p;
    const double mid = 0.5 * (a + b);
    const Panel lo = integrate_panel(integrand, a, mid, density, phase_rate, depth + 1);
    const Panel hi = integrate_panel(integrand, mid, b, density, phase_rate, depth + 1);
    return {lo.re + hi.re, lo.im + hi.im, lo.err + hi.err};
}

} // namespace

QuadratureResult kernel_quadrature(const SpectralDensity& sd, double tau, double tol)
{
    if (!(tol > 0.0))
        throw DomainError("kernel_quadrature: tol must be > 0");
    sd.validate();
    if (tau < 0.0) {
        auto r = kernel_quadrature(sd, -tau, tol);
        r.value = std::conj(r.value);
        return r;
    }

    const double n = sd.exponent;
    const double phase_rate = sd.cutoff * tau;
    auto g = [n, phase_rate](double x) -> cplx {
        if (x <= 0.0)
            return {0.0, 0.0};
        return std::pow(x, n) * std::exp(-x) * std::polar(1.0, -phase_rate * x);
    };
    // Near the origin x^n is not smooth for fractional n; x = y^2 regularises it.
    auto g_sq = [&g](double y) -> cplx { return 2.0 * y * g(y * y); };

    // x^n e^{-x} is below 1e-20 of its peak well before this.
    const double upper = 80.0 + 4.0 * n;
    const double width = std::min(0.5, std::numbers::pi / std::max(phase_rate, 1e-300));

    // Absolute budget in the scaled variable, shared evenly along [0, upper].
    const double density = 0.1 * tol * std::tgamma(n + 1.0) / upper;

    double re = 0.0;
    double im = 0.0;
    double err = 0.0;
    {
        const double y_end = std::sqrt(width);
        const Panel p = integrate_panel(g_sq, 0.0, y_end, density * width / y_end, phase_rate * y_end);
        re += p.re;
        im += p.im;
        err += p.err;
    }
    for (double a = width; a < upper; a += width) {
        const Panel p = integrate_panel(g, a, std::min(a + width, upper), density, phase_rate);
        re += p.re;
        im += p.im;
        err += p.err;
    }

    const double scale = sd.coupling * sd.cutoff * sd.cutoff;
    QuadratureResult out{scale * cplx(re, im), scale * err};
    const double budget = tol * sd.kernel_at_zero();
    if (out.error_estimate > budget && out.error_estimate > 0.0)
        throw QuadratureError("kernel_quadrature: did not converge at tau=" + std::to_string(tau) +
                                  ", error estimate " + std::to_string(out.error_estimate),
                              out.error_estimate);
    return out;
}

KernelTable build_kernel_table(const SpectralDensity& sd, double dt, std::size_t size)
{
    sd.validate();
    if (!(dt > 0.0))
        throw DomainError("build_kernel_table: dt must be > 0");
    if (size < 1)
        throw DomainError("build_kernel_table: size must be >= 1");
    if (size > max_table_size)
        throw ResourceError("build_kernel_table: " + std::to_string(size) + " samples exceeds the limit of " +
                            std::to_string(max_table_size));
    std::vector<cplx> values(size);
    for (std::size_t k = 0; k < size; ++k)
        values[k] = kernel_closed(sd, static_cast<double>(k) * dt);
    return KernelTable(dt, std::move(values));
}

ProductWeights build_product_weights(const SpectralDensity& sd, double dt, std::size_t size, double phase_rate)
{
    sd.validate();
    if (!(dt > 0.0))
        throw DomainError("build_product_weights: dt must be > 0");
    if (size < 1)
        throw DomainError("build_product_weights: size must be >= 1");
    if (size > max_table_size)
        throw ResourceError("build_product_weights: " + std::to_string(size) + " samples exceeds the limit of " +
                            std::to_string(max_table_size));

    using Gauss = boost::math::quadrature::gauss<double, 8>;
    const auto& nodes = Gauss::abscissa();
    const auto& gw = Gauss::weights();

    // Per cell q = [q dt, (q+1) dt]: whole[q] = int K, ramp[q] = int K (x - q dt)/dt.
    std::vector<cplx> whole(size);
    std::vector<cplx> ramp(size);
    for (std::size_t q = 0; q < size; ++q) {
        const double a = static_cast<double>(q) * dt;
        cplx sum_whole{};
        cplx sum_ramp{};
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                if (nodes[i] == 0.0 && sign > 0.0)
                    continue;
                const double f = 0.5 * (1.0 + sign * nodes[i]); // position within the cell, [0, 1]
                const double x = a + f * dt;
                const cplx k = kernel_closed(sd, x) * std::polar(1.0, phase_rate * x);
                sum_whole += gw[i] * k;
                sum_ramp += gw[i] * f * k;
            }
        }
        whole[q] = 0.5 * dt * sum_whole;
        ramp[q] = 0.5 * dt * sum_ramp;
    }

    ProductWeights pw;
    pw.dt = dt;
    pw.phase_rate = phase_rate;
    pw.interior.resize(size);
    pw.start = ramp;
    pw.interior[0] = whole[0] - ramp[0];
    for (std::size_t p = 1; p < size; ++p)
        pw.interior[p] = whole[p] - ramp[p] + ramp[p - 1];
    return pw;
}

} // namespace nmc
