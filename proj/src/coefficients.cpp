#include "nmc/coefficients.hpp"

#include "nmc/error.hpp"

#include <cmath>

namespace nmc {

std::vector<MasterCoefficients> master_coefficients(const PropagatorTrajectory& traj)
{
    const std::size_t n = traj.size();
    if (traj.sdot.size() != n || traj.s.size() != n)
        throw UsageError("master_coefficients: trajectory lacks sdot samples on its grid");

    const double half_relative = 0.5 * (traj.field_frequency - traj.coupling);
    // The free rotation is split off so that only the bath part of sdot is divided by s.
    const cplx bare(0.0, -(traj.field_frequency + traj.coupling));
    std::vector<MasterCoefficients> out(n);
    MasterCoefficients last;
    bool have_last = false;
    for (std::size_t k = 0; k < n; ++k) {
        MasterCoefficients mc;
        mc.t = traj.times[k];
        if (std::abs(traj.s[k]) < saturation_threshold && have_last) {
            mc = last;
            mc.t = traj.times[k];
            mc.saturated = true;
        } else {
            const cplx rate = bare + (traj.sdot[k] - bare * traj.s[k]) / traj.s[k];
            mc.gamma = -0.5 * rate.real();
            mc.gamma_prime = mc.gamma;
            mc.omega = -0.5 * rate.imag() + half_relative;
            mc.omega_prime = -0.5 * rate.imag() - half_relative;
            last = mc;
            have_last = true;
        }
        out[k] = mc;
    }
    return out;
}

std::vector<FrequencyShift> frequency_shifts(const std::vector<MasterCoefficients>& coeffs, double omega0,
                                             double kappa)
{
    std::vector<FrequencyShift> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs)
        out.push_back({omega0 - c.omega, kappa - c.omega_prime});
    return out;
}

double saturation_time(const std::vector<MasterCoefficients>& coeffs)
{
    for (const auto& c : coeffs)
        if (c.saturated)
            return c.t;
    return -1.0;
}

} // namespace nmc
