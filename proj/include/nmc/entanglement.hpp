#pragma once

#include "nmc/gaussian_dynamics.hpp"
#include "nmc/kernels.hpp"

#include <vector>

namespace nmc {

struct SymplecticSpectrum {
    double nu_min = 0.5;
    double nu_max = 0.5;
};

/// Mirror reflection p2 -> -p2, i.e. Lambda V Lambda with Lambda = diag(1,1,1,-1).
CovarianceMatrix partial_transpose(const CovarianceMatrix& cm);

/// Two-mode invariant formula nu^2 = (Delta -+ sqrt(Delta^2 - 4 det V)) / 2,
/// Delta = det A + det B + 2 det C for V = [[A, C], [C^T, B]].
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& cm);

/// Moduli of the eigenvalues of i U V from a general complex eigensolver.
SymplecticSpectrum symplectic_spectrum_oracle(const CovarianceMatrix& cm);

/// E_N = max(0, -log2(2 nu_min)) of the partially transposed matrix.
double log_negativity(const CovarianceMatrix& cm);

/// Symplectic form U = diag(J, J), J = [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

} // namespace nmc

namespace nmc {

/// Per-sample entanglement diagnostics along a trajectory.
struct EntanglementSeries {
    std::vector<double> e_n;
    std::vector<double> nu_min; ///< smallest un-transposed symplectic eigenvalue (normal-mode route)
    std::vector<double> purity_det; ///< det(2V); 1 for pure states
};

/// Evaluates the initial two-mode squeezed state of squeezing r propagated to
/// every trajectory sample. Samples are independent, so the OpenMP backend
/// splits them across threads.
EntanglementSeries entanglement_series(const PropagatorTrajectory& traj, double r,
                                       kernels::Backend backend = kernels::Backend::openmp);

} // namespace nmc
