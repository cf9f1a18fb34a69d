#pragma once

#include "nmc/kernels.hpp"
#include "nmc/spectral_bath.hpp"

#include <cstddef>
#include <vector>

namespace nmc {

/// Cavity pair and time grid. Frequencies in units of the cavity frequency.
struct ModelConfig {
    double field_frequency = 1.0; ///< omega_0 (fixed at 1 in internal units)
    double coupling = 0.5;        ///< kappa, beam-splitter coupling between the fields
    double t_max = 50.0;
    double dt = 1e-3;

    void validate() const;
    /// Number of steps round(t_max / dt); the grid has steps() + 1 points.
    std::size_t steps() const;
    double time(std::size_t k) const { return static_cast<double>(k) * dt; }
    /// Center-of-mass free frequency omega_0 + kappa.
    double center_frequency() const { return field_frequency + coupling; }
    /// Relative-mode frequency omega_0 - kappa.
    double relative_frequency() const { return field_frequency - coupling; }
};

/// Damped center-of-mass amplitude s = u - v and its exact derivative.
struct CenterAmplitude {
    std::vector<cplx> s;
    std::vector<cplx> sdot;
};

struct PropagatorTrajectory {
    double dt = 0.0;
    double field_frequency = 1.0;
    double coupling = 0.0;
    std::vector<double> times;
    std::vector<cplx> s;
    std::vector<cplx> sdot;
    std::vector<cplx> c; ///< relative amplitude u + v = exp(-i(omega_0 - kappa) t)
    std::vector<cplx> u;
    std::vector<cplx> v;

    std::size_t size() const noexcept { return times.size(); }
};

/// Solves  s' = -i(omega_0+kappa) s - 2 int_0^t mu(t-tau) s(tau) dtau,  s(0) = 1.
///
/// The free rotation is factored out exactly (s = e^{-i w t} y); y is advanced
/// with an explicit Euler predictor and one trapezoidal corrector, and the
/// memory integral uses product-trapezoid weights over the full history.
/// sdot is evaluated from the right-hand side at each accepted sample.
CenterAmplitude solve_center_amplitude(const ProductWeights& weights, const ModelConfig& cfg,
                                       kernels::Backend backend = kernels::Backend::openmp);
CenterAmplitude solve_center_amplitude(const SpectralDensity& sd, const ModelConfig& cfg,
                                       kernels::Backend backend = kernels::Backend::openmp);

PropagatorTrajectory assemble_trajectory(const CenterAmplitude& amp, const ModelConfig& cfg);

struct DirectSolution {
    std::vector<cplx> u;
    std::vector<cplx> v;
};

/// Integrates the coupled (u, v) pair without the center/relative split, using
/// the same predictor-corrector and product-trapezoid memory rule in the frame
/// rotating at omega_0. Test oracle.
DirectSolution solve_uv_direct(const SpectralDensity& sd, const ModelConfig& cfg);

struct ConvergenceReport {
    double coarse_dt = 0.0;
    double max_change = 0.0; ///< sup |s_dt - s_2dt| over the shared grid
    double estimate = 0.0;   ///< Richardson estimate of the dt solution's error
    bool passed = true;
};

/// Step-halving check: re-solves on a grid with twice the step and compares
/// against the fine solution on the shared points. Passes when the Richardson
/// error estimate of the fine solution is below threshold.
ConvergenceReport check_step_halving(const SpectralDensity& sd, const ModelConfig& cfg,
                                     const CenterAmplitude& fine, double threshold = 1e-5);

} // namespace nmc
