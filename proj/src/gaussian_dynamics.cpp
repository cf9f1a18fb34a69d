#include "nmc/gaussian_dynamics.hpp"

#include "nmc/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace nmc {

NormalModeMoments initial_normal_moments(double r)
{
    if (!(r >= 0.0) || !std::isfinite(r))
        throw DomainError("initial_normal_moments: squeezing r must be >= 0");
    const double sh = std::sinh(r);
    const double half_sinh_2r = 0.5 * std::sinh(2.0 * r);
    return {sh * sh, cplx(-half_sinh_2r, 0.0), sh * sh, cplx(half_sinh_2r, 0.0)};
}

NormalModeMoments propagate_moments(const NormalModeMoments& m0, cplx s, cplx c)
{
    return {std::norm(s) * m0.n_center, s * s * m0.m_center, m0.n_relative, c * c * m0.m_relative};
}

namespace {

void check_physical(double n, cplx m, const char* mode)
{
    // Pure modes sit on the boundary |M|^2 = N(N+1).
    const double slack = 1e-10 * (1.0 + n) * (1.0 + n);
    if (!(n >= -1e-12) || std::norm(m) > n * (n + 1.0) + slack) {
        std::ostringstream os;
        os << "covariance_from_moments: unphysical " << mode << " mode (N=" << n << ", M=" << m << ")";
        throw DomainError(os.str());
    }
}

Eigen::Matrix2d mode_block(double n, cplx m)
{
    Eigen::Matrix2d b;
    b << 0.5 + n + m.real(), m.imag(), m.imag(), 0.5 + n - m.real();
    return b;
}

double mode_symplectic(double n, cplx m)
{
    const double diag = 0.5 + n;
    const double mag = std::abs(m);
    return std::sqrt(std::max(0.0, (diag - mag) * (diag + mag)));
}

} // namespace

std::pair<double, double> normal_mode_symplectic(const NormalModeMoments& m)
{
    const double a = mode_symplectic(m.n_center, m.m_center);
    const double b = mode_symplectic(m.n_relative, m.m_relative);
    return {std::min(a, b), std::max(a, b)};
}

CovarianceMatrix covariance_from_moments(const NormalModeMoments& m)
{
    check_physical(m.n_center, m.m_center, "center");
    check_physical(m.n_relative, m.m_relative, "relative");

    // Normal-mode quadratures (xA, pA, xa, pa) = R (x1, p1, x2, p2).
    Eigen::Matrix4d normal = Eigen::Matrix4d::Zero();
    normal.block<2, 2>(0, 0) = mode_block(m.n_center, m.m_center);
    normal.block<2, 2>(2, 2) = mode_block(m.n_relative, m.m_relative);

    const double h = std::numbers::sqrt2 / 2.0;
    Eigen::Matrix4d rot;
    rot << h, 0, h, 0,
           0, h, 0, h,
           h, 0, -h, 0,
           0, h, 0, -h;
    CovarianceMatrix out;
    out.v = rot.transpose() * normal * rot;
    out.v = 0.5 * (out.v + out.v.transpose()).eval();
    return out;
}

namespace {

struct Rates {
    double center_n;     // dN_A/dt = center_n * N_A
    cplx center_m;       // dM_A/dt = center_m * M_A
    cplx relative_m;     // dM_a/dt = relative_m * M_a
};

Rates rates_at(const MasterCoefficients& c)
{
    return {-4.0 * c.gamma, -2.0 * (cplx(0.0, c.omega + c.omega_prime) + 2.0 * c.gamma),
            cplx(0.0, -2.0 * (c.omega - c.omega_prime))};
}

template <class T, class R>
T rk4(T y, const R& r0, const R& r1, const R& r2, double h)
{
    const T k1 = r0 * y;
    const T k2 = r1 * (y + 0.5 * h * k1);
    const T k3 = r1 * (y + 0.5 * h * k2);
    const T k4 = r2 * (y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class T, class R>
T heun(T y, const R& r0, const R& r1, double h)
{
    const T k1 = r0 * y;
    const T k2 = r1 * (y + h * k1);
    return y + 0.5 * h * (k1 + k2);
}

} // namespace

std::vector<NormalModeMoments> moment_ode_oracle(const NormalModeMoments& m0,
                                                 const std::vector<MasterCoefficients>& coeffs)
{
    std::vector<NormalModeMoments> out(coeffs.size());
    if (coeffs.empty())
        return out;
    out[0] = m0;
    NormalModeMoments y = m0;
    for (std::size_t k = 0; k + 1 < coeffs.size(); k += 2) {
        const Rates r0 = rates_at(coeffs[k]);
        const Rates r1 = rates_at(coeffs[k + 1]);
        const double h1 = coeffs[k + 1].t - coeffs[k].t;
        NormalModeMoments half = y;
        half.n_center = heun(y.n_center, r0.center_n, r1.center_n, h1);
        half.m_center = heun(y.m_center, r0.center_m, r1.center_m, h1);
        half.m_relative = heun(y.m_relative, r0.relative_m, r1.relative_m, h1);
        out[k + 1] = half;
        if (k + 2 >= coeffs.size())
            break;
        const Rates r2 = rates_at(coeffs[k + 2]);
        const double h = coeffs[k + 2].t - coeffs[k].t;
        y.n_center = rk4(y.n_center, r0.center_n, r1.center_n, r2.center_n, h);
        y.m_center = rk4(y.m_center, r0.center_m, r1.center_m, r2.center_m, h);
        y.m_relative = rk4(y.m_relative, r0.relative_m, r1.relative_m, r2.relative_m, h);
        out[k + 2] = y;
    }
    return out;
}

BCoefficients appendix_b_coefficients(cplx u, cplx v, double r)
{
    if (!(r >= 0.0) || !std::isfinite(r))
        throw DomainError("appendix_b_coefficients: squeezing r must be >= 0");
    const double th = std::tanh(r);
    const double th2 = th * th;
    const double th3 = th2 * th;
    const double th4 = th2 * th2;
    const double ch = std::cosh(r);
    const cplx ub = std::conj(u);
    const cplx vb = std::conj(v);

    const cplx m = ub * u + vb * v - 1.0;
    const cplx n = ub * v + vb * u;
    const cplx c = 1.0 - th2 * (m * m + n * n);
    const cplx e = th * m * n;
    const cplx mn_diff = m * m - n * n;
    const cplx denom = 1.0 - 2.0 * th2 * (m * m + n * n) + th4 * mn_diff * mn_diff;
    const double denom_scale = 1.0 + std::abs(2.0 * th2 * (m * m + n * n)) + std::abs(th4 * mn_diff * mn_diff);

    // m and n are real, so is the denominator.
    if (!(denom.real() > 1e-13 * denom_scale) || !std::isfinite(denom.real())) {
        std::ostringstream os;
        os << "appendix_b_coefficients: vanishing denominator for u=" << u << ", v=" << v << ", r=" << r;
        throw DomainError(os.str());
    }

    const cplx p = u * n + v * m; // (un + vm)
    const cplx q = u * m + v * n; // (um + vn)

    BCoefficients b;
    b.b0 = 1.0 / (ch * ch * std::sqrt(denom.real()));
    b.b1 = (e * th4 * (p * p + q * q) + c * th3 * p * q) / denom + th * u * v;
    b.b2 = (e * th2 * (ub * ub + vb * vb) + c * th * ub * vb) / denom;
    b.b3 = (e * (-4.0 * th4 * p * q) + c * (-th3 * (p * p + q * q))) / denom - th * (u * u + v * v);
    b.b4 = (e * (-2.0 * th3 * (ub * p + vb * q)) + c * (-th2 * (ub * q + vb * p))) / denom;
    b.b5 = (e * (2.0 * th3 * (ub * q + vb * p)) + c * (th2 * (ub * p + vb * q))) / denom;
    b.b6 = (e * (-4.0 * th2 * ub * vb) + c * (-th * (ub * ub + vb * vb))) / denom;
    return b;
}

} // namespace nmc
