#pragma once

// Brute-force number-basis constructions used as independent references for
// the Gaussian closed forms. Test-only.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace nmc::test {

using cplx = std::complex<double>;

/// Amplitudes c_k of exp(r(a1 a2 - a1^dag a2^dag))|00> on |k,k>, k < cutoff,
/// obtained by RK4 integration of d psi/d lambda = G psi over lambda in [0, 1].
inline std::vector<double> tmsv_amplitudes(double r, std::size_t cutoff)
{
    std::vector<double> psi(cutoff, 0.0);
    psi[0] = 1.0;
    auto apply = [&](const std::vector<double>& x, std::vector<double>& out) {
        for (std::size_t k = 0; k < cutoff; ++k) {
            double v = 0.0;
            // a1 a2 |k+1,k+1> = (k+1)|k,k>;  a1^dag a2^dag |k-1,k-1> = k |k,k>
            if (k + 1 < cutoff)
                v += static_cast<double>(k + 1) * x[k + 1];
            if (k >= 1)
                v -= static_cast<double>(k) * x[k - 1];
            out[k] = r * v;
        }
    };
    const double norm_g = 2.0 * r * static_cast<double>(cutoff) + 1e-300;
    const auto steps = static_cast<std::size_t>(std::ceil(norm_g / 0.5)) + 1;
    const double h = 1.0 / static_cast<double>(steps);
    std::vector<double> k1(cutoff), k2(cutoff), k3(cutoff), k4(cutoff), tmp(cutoff);
    for (std::size_t s = 0; s < steps; ++s) {
        apply(psi, k1);
        for (std::size_t i = 0; i < cutoff; ++i)
            tmp[i] = psi[i] + 0.5 * h * k1[i];
        apply(tmp, k2);
        for (std::size_t i = 0; i < cutoff; ++i)
            tmp[i] = psi[i] + 0.5 * h * k2[i];
        apply(tmp, k3);
        for (std::size_t i = 0; i < cutoff; ++i)
            tmp[i] = psi[i] + h * k3[i];
        apply(tmp, k4);
        for (std::size_t i = 0; i < cutoff; ++i)
            psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return psi;
}

struct TwoModeSectorMoments {
    double n1 = 0.0;   // <a1^dag a1> = <a2^dag a2>
    double a1a2 = 0.0; // <a1 a2> (real for real amplitudes)
    double norm = 0.0;
};

inline TwoModeSectorMoments sector_moments(const std::vector<double>& c)
{
    TwoModeSectorMoments m;
    for (std::size_t k = 0; k < c.size(); ++k) {
        m.norm += c[k] * c[k];
        m.n1 += static_cast<double>(k) * c[k] * c[k];
        if (k >= 1)
            m.a1a2 += static_cast<double>(k) * c[k - 1] * c[k];
    }
    return m;
}

struct SingleModeMoments {
    double n = 0.0;
    cplx m{};
};

/// Normalised exp(x a^dag^2)|0> truncated below `cutoff` quanta.
inline SingleModeMoments squeezed_ket_moments(cplx x, std::size_t cutoff)
{
    std::vector<cplx> c(cutoff, 0.0);
    c[0] = 1.0;
    for (std::size_t k = 0; 2 * k + 2 < cutoff; ++k) {
        const double a = static_cast<double>(2 * k + 1);
        const double b = static_cast<double>(2 * k + 2);
        c[2 * k + 2] = c[2 * k] * x * std::sqrt(a * b) / static_cast<double>(k + 1);
    }
    double norm = 0.0;
    for (const auto& z : c)
        norm += std::norm(z);
    SingleModeMoments out;
    for (std::size_t k = 0; k < cutoff; ++k) {
        out.n += static_cast<double>(k) * std::norm(c[k]);
        if (k >= 2)
            out.m += std::conj(c[k - 2]) * c[k] * std::sqrt(static_cast<double>(k * (k - 1)));
    }
    out.n /= norm;
    out.m /= norm;
    return out;
}

} // namespace nmc::test
