#include "nmc/entanglement.hpp"

#include "nmc/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <exception>
#include <cmath>
#include <sstream>

namespace nmc {

Eigen::Matrix4d symplectic_form()
{
    Eigen::Matrix4d u = Eigen::Matrix4d::Zero();
    u(0, 1) = 1.0;
    u(1, 0) = -1.0;
    u(2, 3) = 1.0;
    u(3, 2) = -1.0;
    return u;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& cm)
{
    CovarianceMatrix out = cm;
    out.v.row(3) *= -1.0;
    out.v.col(3) *= -1.0;
    return out;
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cm)
{
    const Eigen::Matrix4d& v = cm.v;
    const double det_a = v.block<2, 2>(0, 0).determinant();
    const double det_b = v.block<2, 2>(2, 2).determinant();
    const double det_c = v.block<2, 2>(0, 2).determinant();
    const double delta = det_a + det_b + 2.0 * det_c;

    // Squeezed states make V badly conditioned; the eigenvalue product keeps
    // det V accurate where cofactor expansion loses it.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(v, Eigen::EigenvaluesOnly);
    const double det_v = eig.eigenvalues().prod();

    // Rounding in Delta scales with the block determinants it cancels, not
    // with Delta itself; the clamp window follows that scale.
    const double magnitude = std::abs(det_a) + std::abs(det_b) + 2.0 * std::abs(det_c);
    const double clamp = 1e-12 * std::max(1.0, std::abs(delta) * magnitude + 4.0 * std::abs(det_v));
    double disc = delta * delta - 4.0 * det_v;
    if (disc < 0.0 && disc >= -clamp)
        disc = 0.0;
    if (!(det_v > 0.0) || disc < 0.0 || !(delta > 0.0)) {
        std::ostringstream os;
        os << "symplectic_spectrum: not a valid covariance matrix (det V=" << det_v << ", Delta=" << delta << ")";
        throw DomainError(os.str());
    }
    const double root = std::sqrt(disc);
    const double nu_max_sq = 0.5 * (delta + root);
    // Rationalised form of (Delta - root)/2 avoids cancellation.
    const double nu_min_sq = det_v / nu_max_sq;
    return {std::sqrt(nu_min_sq), std::sqrt(nu_max_sq)};
}

SymplecticSpectrum symplectic_spectrum_oracle(const CovarianceMatrix& cm)
{
    const Eigen::Matrix4cd m = std::complex<double>(0.0, 1.0) * (symplectic_form() * cm.v).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw DomainError("symplectic_spectrum_oracle: eigensolver failed");
    std::array<double, 4> re{};
    for (int i = 0; i < 4; ++i)
        re[static_cast<std::size_t>(i)] = solver.eigenvalues()(i).real();
    std::sort(re.begin(), re.end());
    // Spectrum is {-nu2, -nu1, nu1, nu2}.
    return {re[2], re[3]};
}

double log_negativity(const CovarianceMatrix& cm)
{
    const SymplecticSpectrum spec = symplectic_spectrum(partial_transpose(cm));
    return std::max(0.0, -std::log2(2.0 * spec.nu_min));
}

} // namespace nmc

namespace nmc {

EntanglementSeries entanglement_series(const PropagatorTrajectory& traj, double r, kernels::Backend backend)
{
    const NormalModeMoments m0 = initial_normal_moments(r);
    const std::size_t n = traj.size();
    EntanglementSeries out;
    out.e_n.resize(n);
    out.nu_min.resize(n);
    out.purity_det.resize(n);

    auto eval = [&](std::size_t k) {
        const NormalModeMoments mk = propagate_moments(m0, traj.s[k], traj.c[k]);
        const CovarianceMatrix cm = covariance_from_moments(mk);
        out.e_n[k] = log_negativity(cm);
        out.nu_min[k] = normal_mode_symplectic(mk).first;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(2.0 * cm.v, Eigen::EigenvaluesOnly);
        out.purity_det[k] = eig.eigenvalues().prod();
    };

    if (backend == kernels::Backend::serial) {
        for (std::size_t k = 0; k < n; ++k)
            eval(k);
        return out;
    }

    // Exceptions must not escape the parallel region; the first one is rethrown.
    std::exception_ptr failure;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < count; ++k) {
        try {
            eval(static_cast<std::size_t>(k));
        } catch (...) {
#pragma omp critical(nmc_entanglement_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace nmc
