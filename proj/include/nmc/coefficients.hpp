#pragma once

#include "nmc/propagator.hpp"

#include <vector>

namespace nmc {

/// Time-dependent master-equation coefficients at one grid point.
struct MasterCoefficients {
    double t = 0.0;
    double omega = 0.0;       ///< shifted single-field frequency
    double omega_prime = 0.0; ///< shifted inter-field coupling
    double gamma = 0.0;       ///< individual decay rate
    double gamma_prime = 0.0; ///< correlated decay rate
    bool saturated = false;   ///< |s| fell below saturation_threshold; values held from the last valid sample
};

inline constexpr double saturation_threshold = 1e-12;

/// Coefficients from the logarithmic derivative of the center amplitude:
///   -Gamma  - i Omega  = (s'/s + c'/c) / 2
///   -Gamma' - i Omega' = (s'/s - c'/c) / 2,   c'/c = -i(omega_0 - kappa).
std::vector<MasterCoefficients> master_coefficients(const PropagatorTrajectory& traj);

struct FrequencyShift {
    double delta_omega = 0.0;       ///< omega_0 - Omega
    double delta_omega_prime = 0.0; ///< kappa - Omega'
};

std::vector<FrequencyShift> frequency_shifts(const std::vector<MasterCoefficients>& coeffs, double omega0,
                                             double kappa);

/// First grid time at which the coefficients saturate, or a negative value.
double saturation_time(const std::vector<MasterCoefficients>& coeffs);

} // namespace nmc
