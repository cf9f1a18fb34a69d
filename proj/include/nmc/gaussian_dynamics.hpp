#pragma once

#include "nmc/coefficients.hpp"
#include "nmc/spectral_bath.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace nmc {

/// Second moments of the normalised normal modes
///   A = (a1 + a2)/sqrt2  (center of mass, couples to the bath)
///   a = (a1 - a2)/sqrt2  (relative, decoherence free).
/// Cross moments between the two modes vanish for every state handled here.
struct NormalModeMoments {
    double n_center = 0.0;  ///< <A^dag A>
    cplx m_center{};        ///< <A^2>
    double n_relative = 0.0; ///< <a^dag a>
    cplx m_relative{};      ///< <a^2>
};

/// Symmetrised quadrature covariance over (x1, p1, x2, p2); vacuum is I/2.
struct CovarianceMatrix {
    Eigen::Matrix4d v = 0.5 * Eigen::Matrix4d::Identity();
};

/// Two-mode squeezed vacuum exp(r(a1 a2 - a1^dag a2^dag))|00>.
NormalModeMoments initial_normal_moments(double r);

/// Exact moment evolution: the center mode is damped into the zero-temperature
/// bath through s, the relative mode only rotates through c.
NormalModeMoments propagate_moments(const NormalModeMoments& m0, cplx s, cplx c);

/// Symplectic eigenvalues of the two normal modes, sqrt((1/2 + N)^2 - |M|^2),
/// smallest first. Exact for states without cross-mode correlations and free
/// of the square-root conditioning the generic two-mode formula has at
/// degenerate (pure-state) spectra.
std::pair<double, double> normal_mode_symplectic(const NormalModeMoments& m);

/// Throws DomainError if a mode violates |M|^2 <= N(N+1).
CovarianceMatrix covariance_from_moments(const NormalModeMoments& m);

/// Reference path: integrates dN_A/dt = -4 Gamma N_A,
/// dM_A/dt = -2(i(Omega+Omega') + 2 Gamma) M_A,  dM_a/dt = -2i(Omega-Omega') M_a
/// with classical RK4 over pairs of grid intervals (the midpoint is the odd
/// sample). Output holds one entry per coefficient sample; odd entries are
/// filled by a single Heun step from the preceding even one.
std::vector<NormalModeMoments> moment_ode_oracle(const NormalModeMoments& m0,
                                                 const std::vector<MasterCoefficients>& coeffs);

/// Parameters b0..b6 of the reduced density matrix in the coherent-state
/// representation. b1 uses (u m + v n) in its second square; the printed
/// '(u m + w n)' has no other reading consistent with b3.
struct BCoefficients {
    double b0 = 0.0;
    cplx b1{}, b2{}, b3{}, b4{}, b5{}, b6{};
};

BCoefficients appendix_b_coefficients(cplx u, cplx v, double r);

} // namespace nmc
